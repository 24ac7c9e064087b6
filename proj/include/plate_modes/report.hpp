#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace plate_modes {

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string command;
    std::vector<Table> tables;
    std::vector<std::string> warnings;

    const Table* find(const std::string& name) const {
        for (const auto& t : tables)
            if (t.name == name) return &t;
        return nullptr;
    }
};

enum class Format { Csv, Json };

// shortest round-trip text, or 4 significant digits
inline std::string format_number(double v, bool paper_digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    if (paper_digits) {
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string cell_text(const Cell& c, bool four_digits) {
    struct V {
        bool four_digits;
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v, four_digits); }
        std::string operator()(const std::string& v) const { return csv_escape(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(V{four_digits}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c, bool four_digits) {
    struct V {
        bool four_digits;
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return four_digits ? std::stod(format_number(v, true)) : v;
        }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
    };
    return std::visit(V{four_digits}, c);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Report& rep, bool paper_digits) {
    const bool many = rep.tables.size() > 1;
    for (std::size_t t = 0; t < rep.tables.size(); ++t) {
        const auto& tab = rep.tables[t];
        if (many) {
            if (t) os << '\n';
            os << "# " << tab.name << '\n';
        }
        for (std::size_t i = 0; i < tab.columns.size(); ++i) os << (i ? "," : "") << detail::csv_escape(tab.columns[i]);
        os << '\n';
        for (const auto& row : tab.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::cell_text(row[i], paper_digits);
            os << '\n';
        }
    }
}

inline nlohmann::ordered_json to_json(const Report& rep, bool paper_digits) {
    nlohmann::ordered_json j;
    j["command"] = rep.command;
    j["tables"] = nlohmann::ordered_json::object();
    for (const auto& tab : rep.tables) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : tab.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) r[tab.columns[i]] = detail::cell_json(row[i], paper_digits);
            rows.push_back(std::move(r));
        }
        j["tables"][tab.name] = {{"columns", tab.columns}, {"rows", std::move(rows)}};
    }
    j["warnings"] = rep.warnings;
    return j;
}

inline void write_json(std::ostream& os, const Report& rep, bool paper_digits) {
    os << to_json(rep, paper_digits).dump(2) << '\n';
}

inline void write_report(std::ostream& os, const Report& rep, Format fmt, bool paper_digits) {
    if (fmt == Format::Csv)
        write_csv(os, rep, paper_digits);
    else
        write_json(os, rep, paper_digits);
}

}  // namespace plate_modes
