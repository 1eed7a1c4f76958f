#include "sasaki/app/config.hpp"

#include "sasaki/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace sasaki::app {

namespace {
const std::vector<std::pair<std::string, std::string>>& defaults() {
    static const std::vector<std::pair<std::string, std::string>> d = {
        {"bitension_tol", "1e-4"},   {"tension_floor", "1e-3"},  {"constant_tol", "1e-5"},
        {"path_tol", "1e-5"},        {"condition_tol", "1e-5"},  {"case_margin", "1e-3"},
        {"curve_step", "1e-2"},      {"drop_tol", "1e-6"},       {"max_order", "6"},
        {"immersion_step", "1e-2"},  {"grid_accuracy", "8"},     {"subsample", "0.05"},
        {"refine_tol", "1e-4"},      {"samples", "512"},         {"resolution", "64"},
        {"resolution_3d", "48"},     {"seed", "1"},              {"threads", "0"},
    };
    return d;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw InvalidInput(fmt::format("config value for '{}' is not a number: '{}'", key, v));
    return x;
}
}  // namespace

Config::Config() {
    for (const auto& [k, v] : defaults()) values_[k] = v;
}

const std::vector<std::string>& Config::keys() {
    static const std::vector<std::string> k = [] {
        std::vector<std::string> out;
        for (const auto& [key, v] : defaults()) out.push_back(key);
        return out;
    }();
    return k;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) throw InvalidInput(fmt::format("unknown config key '{}'", key));
    parse_number(key, value);
    values_[key] = value;
}

void Config::load_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidInput(fmt::format("{}:{}: expected key=value", origin, lineno));
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(fmt::format("cannot open config file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), path);
}

double Config::number(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw InvalidInput(fmt::format("unknown config key '{}'", key));
    return parse_number(key, it->second);
}

int Config::integer(const std::string& key) const {
    const double x = number(key);
    if (x != static_cast<double>(static_cast<long long>(x))) throw InvalidInput(fmt::format("config value '{}' must be an integer", key));
    return static_cast<int>(x);
}

unsigned long long Config::seed() const {
    const double x = number("seed");
    if (x < 0) throw InvalidInput("seed must be non-negative");
    return static_cast<unsigned long long>(x);
}

BiharmonicOptions Config::biharmonic() const {
    BiharmonicOptions o;
    o.bitension_tol = number("bitension_tol");
    o.tension_floor = number("tension_floor");
    o.constant_tol = number("constant_tol");
    o.path_tol = number("path_tol");
    o.condition_tol = number("condition_tol");
    o.case_margin = number("case_margin");
    return o;
}

CurveEvalOptions Config::curve_eval() const {
    CurveEvalOptions o;
    o.analytic_step = number("curve_step");
    o.drop_tol = number("drop_tol");
    o.max_order = integer("max_order");
    return o;
}

ImmersionEvalOptions Config::immersion_eval() const {
    ImmersionEvalOptions o;
    o.step = number("immersion_step");
    o.grid_accuracy = integer("grid_accuracy");
    o.subsample = number("subsample");
    o.refine_tol = number("refine_tol");
    o.seed = seed();
    o.threads = integer("threads");
    return o;
}

Json Config::to_json() const {
    Json j = Json::object();
    for (const auto& k : keys()) j[k] = number(k);
    return j;
}

}  // namespace sasaki::app
