#include <charconv>
#include <cmath>
#include <ostream>

#include "fracalc/io.hpp"
#include "json.hpp"

namespace fracalc {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
    if (auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::json j;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::json::array();
        for (const auto& c : row) {
            if (auto* d = std::get_if<double>(&c)) {
                // JSON has no inf or nan; keep them as strings so columns stay aligned
                if (std::isfinite(*d))
                    r.push_back(*d);
                else
                    r.push_back(format_double(*d));
            } else if (auto* i = std::get_if<long long>(&c)) {
                r.push_back(*i);
            } else {
                r.push_back(std::get<std::string>(c));
            }
        }
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(1) << '\n';
}

}  // namespace fracalc
