#include "sasaki/interchange.hpp"

#include "sasaki/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace sasaki {

namespace {
void emit(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
    const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    // arrays of scalars stay on one line
    auto flat = [](const Json& a) {
        for (const auto& e : a)
            if (e.is_structured()) return false;
        return true;
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                out += Json(it.key()).dump();
                out += indent > 0 ? ": " : ":";
                emit(it.value(), out, indent, depth + 1);
            }
            out += nl;
            out += close;
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty() || flat(j)) {
                out += "[";
                bool first = true;
                for (const auto& e : j) {
                    if (!first) out += indent > 0 ? ", " : ",";
                    first = false;
                    emit(e, out, indent, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[";
            out += nl;
            bool first = true;
            for (const auto& e : j) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                emit(e, out, indent, depth + 1);
            }
            out += nl;
            out += close;
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            out += fmt::format("{:.17g}", v);
            return;
        }
        default:
            out += j.dump();
    }
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec json_vec(const Json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) throw InvalidInput(fmt::format("point must have {} coordinates", dim));
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
    return v;
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInput(fmt::format("missing field '{}'", key));
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidInput(fmt::format("field '{}' has the wrong type", key));
    }
}

void put_family(Json& j, const std::string& family, const std::map<std::string, double>& params) {
    if (family.empty()) return;
    j["family"] = family;
    Json p = Json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["family_params"] = p;
}

void get_family(const Json& j, std::string& family, std::map<std::string, double>& params) {
    if (j.contains("family") && j["family"].is_string()) family = j["family"].get<std::string>();
    if (j.contains("family_params") && j["family_params"].is_object())
        for (auto it = j["family_params"].begin(); it != j["family_params"].end(); ++it)
            params[it.key()] = it.value().get<double>();
}
}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    emit(j, out, indent, 0);
    out += "\n";
    return out;
}

Json to_json(const CurveDocument& d) {
    Json j;
    j["kind"] = "curve";
    j["n"] = d.n;
    j["a"] = d.a;
    j["structure_index"] = d.structure_index;
    j["periodic"] = d.curve.periodic;
    j["period"] = d.curve.period;
    Json params = Json::array();
    for (double t : d.curve.params) params.push_back(t);
    j["params"] = params;
    Json pts = Json::array();
    for (const Vec& p : d.curve.points) pts.push_back(vec_json(p));
    j["points"] = pts;
    put_family(j, d.curve.family, d.curve.family_params);
    return j;
}

Json to_json(const ImmersionDocument& d) {
    Json j;
    j["kind"] = "immersion";
    j["n"] = d.n;
    j["a"] = d.a;
    j["structure_index"] = d.structure_index;
    j["dim"] = d.grid.dim;
    Json grids = Json::array();
    for (const GridAxis& ax : d.grid.axes)
        grids.push_back(Json{{"start", ax.start}, {"step", ax.step}, {"count", ax.count}, {"periodic", ax.periodic}});
    j["grids"] = grids;
    Json pts = Json::array();
    for (const Vec& p : d.grid.points) pts.push_back(vec_json(p));
    j["points"] = pts;
    put_family(j, d.grid.family, d.grid.family_params);
    if (d.grid.seed != 0) j["seed"] = d.grid.seed;
    return j;
}

bool is_immersion_document(const Json& j) { return j.contains("dim") || j.contains("grids"); }

namespace {

CurveDocument read_curve(const Json& j) {
    CurveDocument d;
    d.n = field<int>(j, "n");
    d.a = field<double>(j, "a");
    d.structure_index = j.contains("structure_index") ? field<int>(j, "structure_index") : 1;
    const int dim = 2 * d.n + 2;
    const std::vector<double> params = field<std::vector<double>>(j, "params");
    const Json& pts = j.at("points");
    if (!pts.is_array() || pts.size() != params.size()) throw InvalidInput("params and points differ in length");
    std::vector<Vec> points;
    for (const auto& p : pts) points.push_back(json_vec(p, dim));
    const bool periodic = field<bool>(j, "periodic");
    const double period = j.contains("period") ? field<double>(j, "period") : 0.0;
    d.curve = SampledCurve::from_points(params, points, periodic, period);
    get_family(j, d.curve.family, d.curve.family_params);
    return d;
}

ImmersionDocument read_immersion(const Json& j) {
    ImmersionDocument d;
    d.n = field<int>(j, "n");
    d.a = field<double>(j, "a");
    d.structure_index = j.contains("structure_index") ? field<int>(j, "structure_index") : 1;
    const int dim = 2 * d.n + 2;
    ImmersionGrid& g = d.grid;
    g.dim = field<int>(j, "dim");
    if (g.dim < 1 || g.dim > 3) throw InvalidInput("immersion dim must be 1, 2 or 3");
    g.ambient_dim = dim;
    const Json& grids = j.at("grids");
    if (!grids.is_array() || static_cast<int>(grids.size()) != g.dim) throw InvalidInput("grids must list one axis per dimension");
    for (const auto& a : grids) {
        GridAxis ax{field<double>(a, "start"), field<double>(a, "step"), field<int>(a, "count"), field<bool>(a, "periodic")};
        if (!(ax.step > 0) || ax.count < 8) throw InvalidInput("grid axis needs positive step and at least 8 samples");
        g.axes.push_back(ax);
    }
    const Json& pts = j.at("points");
    if (!pts.is_array() || static_cast<int>(pts.size()) != g.node_count()) throw InvalidInput("point count does not match the grid");
    for (const auto& p : pts) {
        Vec z = json_vec(p, dim);
        if (std::abs(z.squaredNorm() - 1.0) >= 1e-12) throw InvalidInput("immersion point off the sphere");
        g.points.push_back(std::move(z));
    }
    get_family(j, g.family, g.family_params);
    if (j.contains("seed")) g.seed = j["seed"].get<unsigned long long>();
    return d;
}

}  // namespace

CurveDocument curve_from_json(const Json& j) {
    try {
        return read_curve(j);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(fmt::format("malformed curve document: {}", e.what()));
    }
}

ImmersionDocument immersion_from_json(const Json& j) {
    try {
        return read_immersion(j);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(fmt::format("malformed immersion document: {}", e.what()));
    }
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(fmt::format("cannot open '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput(fmt::format("cannot write '{}'", path));
    out << text;
}

}  // namespace sasaki
