#include "pbsim/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pbsim {

std::string report_schema() { return "pbsim.report.v1"; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void Table::add_meta(const std::string& key, double value) {
    meta.emplace_back(key, format_double(value));
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string cell_csv(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return "";
        case Cell::Kind::number: return format_double(c.num);
        case Cell::Kind::boolean: return c.flag ? "true" : "false";
        case Cell::Kind::text: return csv_quote(c.str);
    }
    return "";
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
    os << "# schema = " << report_schema() << "\n";
    for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw std::logic_error("write_csv: row width mismatch");
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_csv(row[i]);
        os << "\n";
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json j;
    j["meta"]["schema"] = report_schema();
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw std::logic_error("write_json: row width mismatch");
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            switch (c.kind) {
                case Cell::Kind::empty: r.push_back(nullptr); break;
                case Cell::Kind::number:
                    // NaN serializes to null by the library convention.
                    r.push_back(c.num);
                    break;
                case Cell::Kind::boolean: r.push_back(c.flag); break;
                case Cell::Kind::text: r.push_back(c.str); break;
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

}  // namespace pbsim
