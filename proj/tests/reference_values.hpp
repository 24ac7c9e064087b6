#pragma once

#include <vector>

#include <plate_modes/config.hpp>

// Published values at sigma = 0.2, l = pi/150, as printed (block multipliers applied).
namespace reference {

using plate_modes::ModeId;

struct Eigen {
    ModeId mode;
    double lambda;
};

inline std::vector<Eigen> eigenvalues() {
    std::vector<Eigen> v;
    const double mu1[] = {0.96,    15.36,   77.77,   245.8,   600.14,  1244.6,  2306.05,
                          3934.57, 6303.42, 9609.09, 14071.4, 19933.4, 27461.6, 36946};
    const double mu2[] = {1.626, 1.628, 1.63,  1.634, 1.638, 1.643, 1.649,
                          1.657, 1.665, 1.674, 1.684, 1.695, 1.707, 1.72};
    const double nu2[] = {10943.63, 43785.82, 98560.47, 175324.1, 274155.8};
    const double nu3[] = {1.2356e9, 1.2359e9, 1.2365e9, 1.2372e9, 1.2382e9};
    for (int m = 1; m <= 14; ++m) v.push_back({ModeId::longitudinal(m, 1), mu1[m - 1]});
    for (int m = 1; m <= 14; ++m) v.push_back({ModeId::longitudinal(m, 2), mu2[m - 1] * 1e8});
    for (int n = 1; n <= 5; ++n) v.push_back({ModeId::torsional(n, 2), nu2[n - 1]});
    for (int n = 1; n <= 5; ++n) v.push_back({ModeId::torsional(n, 3), nu3[n - 1]});
    return v;
}

struct Deriv {
    ModeId mode;
    int h;  // 0 = width
    double value;
    int digits;  // printed significant digits
};

inline std::vector<Deriv> derivatives() {
    std::vector<Deriv> v;
    struct Cell {
        double value;
        int digits;
    };
    const Cell mu1[4][14] = {
        {{89e-5, 2}, {57e-3, 2}, {65e-2, 2}, {3.6, 2}, {13.7, 3}, {40.8, 3}, {102.2, 4}, {225.7, 4}, {453.2, 4},
         {843.6, 4}, {1476.8, 5}, {2457.2, 5}, {3917, 4}, {6019.6, 5}},
        {{19e-5, 2}, {31e-3, 2}, {39e-2, 2}, {2.23, 3}, {8.58, 3}, {25.6, 3}, {64.4, 3}, {143, 3}, {287, 3},
         {534, 3}, {936, 3}, {16e2, 2}, {25e2, 2}, {38e2, 2}},
        {{26e-4, 2}, {-57e-3, 2}, {13e-2, 2}, {1.55, 3}, {7.02, 3}, {22.5, 3}, {58.7, 3}, {133, 3}, {272, 3},
         {512, 3}, {904, 3}, {15e2, 2}, {24e2, 2}, {37e2, 2}},
        {{19e-4, 2}, {24e-2, 2}, {-1.47, 3}, {-0.66, 2}, {2.89, 3}, {15.0, 3}, {45.9, 3}, {112, 3}, {240, 3},
         {464, 3}, {836, 3}, {14e2, 2}, {23e2, 2}, {36e2, 2}},
    };
    const double mu2[4][14] = {
        {-3.106, -3.107, -3.109, -3.113, -3.117, -3.122, -3.128, -3.135, -3.142, -3.151, -3.16, -3.17, -3.18, -3.19},
        {-2.636, -2.110, -2.036, -2.013, -2.004, -2.001, -2.002, -2.004, -2.007, -2.011, -2.016, -2.022, -2.029,
         -2.037},
        {1.583, -4.524, -2.641, -2.307, -2.182, -2.121, -2.088, -2.069, -2.059, -2.053, -2.051, -2.052, -2.055,
         -2.059},
        {0.377, 3.522, -6.488, -3.257, -2.650, -2.409, -2.286, -2.215, -2.171, -2.143, -2.125, -2.114, -2.107,
         -2.104},
    };
    const Cell nu[4][10] = {
        {{-1e6, 1}, {-42e5, 2}, {-94e5, 2}, {-17e6, 2}, {-26e6, 2}, {-24e10, 2}, {-24e10, 2}, {-24e10, 2},
         {-24e10, 2}, {-24e10, 2}},
        {{-11e5, 2}, {-30e5, 2}, {-63e5, 2}, {-11e6, 2}, {-17e6, 2}, {-20e10, 2}, {-16e10, 2}, {-15e10, 2},
         {-15e10, 2}, {-15e10, 2}},
        {{17e5, 2}, {-95e5, 2}, {-10e6, 2}, {-14e6, 2}, {-20e6, 2}, {12e10, 2}, {-34e10, 2}, {-20e10, 2},
         {-17e10, 2}, {-17e10, 2}},
        {{92e4, 2}, {12e6, 2}, {-33e6, 2}, {-24e6, 2}, {-28e6, 2}, {29e9, 2}, {27e10, 2}, {-49e10, 2},
         {-25e10, 2}, {-20e10, 2}},
    };
    const int hs[4] = {0, 1, 3, 5};
    for (int r = 0; r < 4; ++r) {
        for (int m = 1; m <= 14; ++m) v.push_back({ModeId::longitudinal(m, 1), hs[r], mu1[r][m - 1].value, mu1[r][m - 1].digits});
        for (int m = 1; m <= 14; ++m) {
            const double x = mu2[r][m - 1];
            const int digits = (x == -3.16 || x == -3.17 || x == -3.18 || x == -3.19 || x == 0.377) ? 3 : 4;
            v.push_back({ModeId::longitudinal(m, 2), hs[r], x * 1e10, digits});
        }
        for (int c = 0; c < 10; ++c) {
            const ModeId id = c < 5 ? ModeId::torsional(c + 1, 2) : ModeId::torsional(c - 4, 3);
            v.push_back({id, hs[r], nu[r][c].value, nu[r][c].digits});
        }
    }
    return v;
}

// nu_{2,2} / mu_{m,1}, m = 1..14
inline std::vector<double> ratios() {
    return {45609.8, 2850.53, 563.04, 178.14, 72.96, 35.18, 18.99, 11.13, 6.95, 4.56, 3.11, 2.2, 1.6, 1.18};
}

// derivatives of nu_{2,2} / mu_{m,1}: width, sin x, 3 sin 3x
inline std::vector<double> ratio_width_derivs() {
    const double row[] = {-4.3e4, -2721.2, -537.5, -170.1, -69.6, -33.6, -18.1, -10.6, -6.6, -4.3, -3, -2.01, -1.5, -1.1};
    std::vector<double> v;
    for (double x : row) v.push_back(x * 1e2);
    return v;
}

inline std::vector<double> ratio_sin1_derivs() {
    const double row[] = {-31e3, -20e2, -388, -123, -50.3, -24.2, -13.1, -7.67, -4.79, -3.14, -2.15, -1.51, -1.10, -0.82};
    std::vector<double> v;
    for (double x : row) v.push_back(x * 1e2);
    return v;
}

inline std::vector<double> ratio_sin3_derivs() {
    const double row[] = {-99e3, -62e2, -12e2, -387, -158, -76.4, -41.2, -24.2, -15.1, -9.89, -6.76, -4.77, -3.46, -2.57};
    std::vector<double> v;
    for (double x : row) v.push_back(x * 1e2);
    return v;
}

struct LawConstants {
    double c0, c1;
};

inline LawConstants law_width() { return {0.14, 95.53}; }
inline LawConstants law_sin1() { return {1.897e-3, 1.443}; }
inline LawConstants law_sin3() { return {19e-4, 4.546}; }

}  // namespace reference
