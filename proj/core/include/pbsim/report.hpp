// Tabular output shared by all CLI commands: ordered metadata header plus
// typed cells, serialized as CSV (with '#' comment header) or JSON
// {meta, columns, rows}. Full double precision, deterministic formatting.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pbsim {

struct Cell {
    enum class Kind { empty, number, boolean, text };
    Kind kind = Kind::empty;
    double num = 0.0;
    bool flag = false;
    std::string str;

    static Cell number(double v) { return {Kind::number, v, false, {}}; }
    static Cell boolean(bool v) { return {Kind::boolean, 0.0, v, {}}; }
    static Cell text(std::string v) { return {Kind::text, 0.0, false, std::move(v)}; }
    static Cell none() { return {}; }
};

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;  // ordered key/value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(const std::string& key, const std::string& value) { meta.emplace_back(key, value); }
    void add_meta(const std::string& key, double value);
};

// Schema identifier recorded in every output.
std::string report_schema();

std::string format_double(double v);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

}  // namespace pbsim
