#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace plate_modes {

struct PlateConfig {
    double sigma = 0.2;
    double half_width = std::numbers::pi / 150.0;

    void validate() const {
        if (!(sigma > 0.0 && sigma < 0.5))
            throw DomainError("sigma must lie in (0, 0.5)");
        if (!(half_width > 0.0 && half_width < std::numbers::pi / 2))
            throw DomainError("half_width must lie in (0, pi/2)");
    }
};

enum class Branch { Longitudinal, Torsional };

struct ModeId {
    Branch branch = Branch::Longitudinal;
    int axial = 1;   // m or n
    int family = 1;  // k or j

    static ModeId longitudinal(int m, int k) { return {Branch::Longitudinal, m, k}; }
    static ModeId torsional(int n, int j) { return {Branch::Torsional, n, j}; }

    bool is_longitudinal() const { return branch == Branch::Longitudinal; }

    void validate() const {
        if (axial < 1 || family < 1)
            throw DomainError("mode indices must be >= 1");
    }

    friend bool operator==(const ModeId&, const ModeId&) = default;
};

inline std::string to_string(const ModeId& id) {
    return std::string(id.is_longitudinal() ? "mu(" : "nu(") + std::to_string(id.axial) + "," +
           std::to_string(id.family) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const ModeId& id) { return os << to_string(id); }

enum class CharTag { PhiM, UpsilonM, PsiN, GammaN };

struct CharFamily {
    CharTag tag = CharTag::PhiM;
    int q = 1;

    // below q^4 (Phi, Gamma) or above it (Upsilon, Psi)
    bool below_q4() const { return tag == CharTag::PhiM || tag == CharTag::GammaN; }
    bool has_tan() const { return tag == CharTag::UpsilonM || tag == CharTag::PsiN; }
};

inline CharFamily family_of(const ModeId& id) {
    id.validate();
    if (id.is_longitudinal())
        return {id.family == 1 ? CharTag::PhiM : CharTag::UpsilonM, id.axial};
    return {id.family == 1 ? CharTag::GammaN : CharTag::PsiN, id.axial};
}

inline const char* to_string(CharTag t) {
    switch (t) {
        case CharTag::PhiM: return "Phi";
        case CharTag::UpsilonM: return "Upsilon";
        case CharTag::PsiN: return "Psi";
        case CharTag::GammaN: return "Gamma";
    }
    return "?";
}

}  // namespace plate_modes
