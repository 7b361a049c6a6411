#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracalc/fractal_sets.hpp"

namespace fracalc {

// {"type":"cantor"} | {"type":"gap_ifs","ratios":[..],"offsets":[..]} | {"type":"finite","points":[..]}
// | {"type":"harmonic"} | {"type":"interval","lo":..,"hi":..} | {"type":"empty"},
// each with optional "scale" then "translate", or wrapped as {"scale":l,"set":{..}} / {"translate":m,"set":{..}}.
SetSpec parse_set_json(const std::string& text);

// A built-in name (cantor, harmonic, empty, unit), inline JSON, or the path of a JSON file.
SetSpec parse_set_arg(const std::string& arg);

// {"set":{..}, "alpha": number | "auto", "v0":.., "x0":.., "kappa":..} or "k":{"x":[..],"k":[..]}
struct FrictionConfig {
    SetSpec set = SetSpec::empty();
    std::optional<double> alpha;  // empty means auto
    double v0 = 1.0;
    double x0 = 0.0;
    std::optional<double> kappa;
    std::vector<double> table_x, table_k;
};
FrictionConfig parse_friction_json(const std::string& text);

std::string read_text_file(const std::string& path);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
// {"columns":[..],"rows":[[..],..]}
void write_json(std::ostream& os, const Table& t);

}  // namespace fracalc
