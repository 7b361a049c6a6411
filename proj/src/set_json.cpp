#include <fstream>
#include <set>
#include <sstream>

#include "fracalc/error.hpp"
#include "fracalc/io.hpp"
#include "json.hpp"

namespace fracalc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::invalid_spec, what); }

double number(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("set spec is missing \"") + key + "\"");
    if (!j[key].is_number()) bad(std::string("\"") + key + "\" must be a number");
    return j[key].get<double>();
}

std::vector<double> numbers(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) bad(std::string("set spec needs an array \"") + key + "\"");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) bad(std::string("\"") + key + "\" must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void only_keys(const json& j, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) bad("unexpected key \"" + it.key() + "\" in set spec");
}

SetSpec apply_maps(SetSpec F, const json& j) {
    if (j.contains("scale")) F = F.scaled(number(j, "scale"));
    if (j.contains("translate")) F = F.translated(number(j, "translate"));
    return F;
}

SetSpec from_json(const json& j) {
    if (!j.is_object()) bad("set spec must be a JSON object");
    if (!j.contains("type")) {
        if (!j.contains("set")) bad("set spec needs \"type\" or a wrapped \"set\"");
        only_keys(j, {"set", "scale", "translate"});
        return apply_maps(from_json(j["set"]), j);
    }
    if (!j["type"].is_string()) bad("\"type\" must be a string");
    const auto type = j["type"].get<std::string>();
    SetSpec F = SetSpec::empty();
    if (type == "cantor") {
        only_keys(j, {"type", "scale", "translate"});
        F = SetSpec::cantor();
    } else if (type == "harmonic") {
        only_keys(j, {"type", "scale", "translate"});
        F = SetSpec::harmonic();
    } else if (type == "empty") {
        only_keys(j, {"type", "scale", "translate"});
    } else if (type == "gap_ifs") {
        only_keys(j, {"type", "ratios", "offsets", "scale", "translate"});
        F = SetSpec::gap_ifs(numbers(j, "ratios"), numbers(j, "offsets"));
    } else if (type == "finite") {
        only_keys(j, {"type", "points", "scale", "translate"});
        F = SetSpec::finite(numbers(j, "points"));
    } else if (type == "interval") {
        only_keys(j, {"type", "lo", "hi", "scale", "translate"});
        F = SetSpec::interval(number(j, "lo"), number(j, "hi"));
    } else {
        bad("unknown set type \"" + type + "\" (cantor, gap_ifs, finite, harmonic, interval, empty)");
    }
    return apply_maps(F, j);
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::usage, "cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SetSpec parse_set_json(const std::string& text) { return from_json(parse(text)); }

SetSpec parse_set_arg(const std::string& arg) {
    if (arg == "cantor") return SetSpec::cantor();
    if (arg == "harmonic") return SetSpec::harmonic();
    if (arg == "empty") return SetSpec::empty();
    if (arg == "unit") return SetSpec::interval(0.0, 1.0);
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') return parse_set_json(arg);
    std::ifstream probe(arg);
    if (!probe)
        throw Error(Errc::usage, "unknown set \"" + arg +
                                     "\": use cantor, harmonic, unit, empty, inline JSON or a JSON file path");
    return parse_set_json(read_text_file(arg));
}

FrictionConfig parse_friction_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) bad("friction parameters must be a JSON object");
    only_keys(j, {"set", "alpha", "v0", "x0", "kappa", "k"});
    FrictionConfig c;
    if (!j.contains("set")) bad("friction parameters need a \"set\"");
    c.set = from_json(j["set"]);
    if (j.contains("alpha")) {
        if (j["alpha"].is_string()) {
            if (j["alpha"].get<std::string>() != "auto") bad("\"alpha\" must be a number or \"auto\"");
        } else {
            c.alpha = number(j, "alpha");
        }
    }
    if (j.contains("v0")) c.v0 = number(j, "v0");
    if (j.contains("x0")) c.x0 = number(j, "x0");
    if (j.contains("kappa") == j.contains("k")) bad("give exactly one of \"kappa\" and a tabulated \"k\"");
    if (j.contains("kappa")) {
        c.kappa = number(j, "kappa");
    } else {
        const auto& k = j["k"];
        if (!k.is_object()) bad("\"k\" must be {\"x\":[..],\"k\":[..]}");
        c.table_x = numbers(k, "x");
        c.table_k = numbers(k, "k");
        if (c.table_x.size() != c.table_k.size() || c.table_x.empty())
            bad("tabulated k needs matching nonempty \"x\" and \"k\"");
    }
    return c;
}

}  // namespace fracalc
