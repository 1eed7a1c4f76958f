#include "sasaki/app/report.hpp"

#include "sasaki/errors.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>

namespace sasaki::app {

namespace {
double param(const std::map<std::string, double>& p, const std::string& k, double dflt) {
    const auto it = p.find(k);
    return it == p.end() ? dflt : it->second;
}

bool same_points(const std::vector<Vec>& x, const std::vector<Vec>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].size() != y[i].size() || (x[i] - y[i]).lpNorm<Eigen::Infinity>() > 1e-12) return false;
    return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

Json InputDescriptor::to_json() const {
    Json j;
    j["source"] = source;
    if (!family.empty()) j["family"] = family;
    if (!params.empty()) {
        Json p = Json::object();
        for (const auto& [k, v] : params) p[k] = v;
        j["params"] = p;
    }
    if (!file.empty()) j["file"] = file;
    j["evaluation"] = evaluation;
    return j;
}

Json verdict_json(const ClassificationVerdict& v) {
    Json j;
    j["case"] = v.case_name;
    j["biharmonic"] = v.biharmonic;
    j["proper"] = v.proper;
    j["conditions_hold"] = v.conditions_hold;
    Json m;
    m["kappa1"] = v.measured.kappa1;
    m["kappa2"] = v.measured.kappa2;
    m["kappa3"] = v.measured.kappa3;
    m["f"] = v.measured.f;
    m["f_spread"] = v.measured.f_spread;
    if (v.measured.alpha0) {
        m["alpha0"] = *v.measured.alpha0;
        m["alpha0_std"] = *v.measured.alpha0_std;
    }
    if (v.measured.omega0) {
        m["omega0"] = *v.measured.omega0;
        m["omega0_variance"] = *v.measured.omega0_var;
    }
    j["measured"] = m;
    Json c = Json::array();
    for (const Condition& k : v.conditions) c.push_back(Json{{"name", k.name}, {"residual", k.residual}, {"ok", k.ok}});
    j["conditions"] = c;
    j["notes"] = v.notes;
    return j;
}

Json to_json(const BiharmonicReport& r) {
    Json j;
    j["object"] = r.object;
    j["input"] = r.input.to_json();
    j["structure"] = Json{{"n", r.n}, {"a", r.a}, {"c", r.c}, {"structure_index", r.structure_index}};
    Json res;
    res["legendre"] = r.legendre;
    res["speed"] = r.speed;
    res["tension_sup"] = r.tension_sup;
    res["tension_inf"] = r.tension_inf;
    res["bitension_sup"] = r.bitension_sup;
    res["bitension_L2"] = r.bitension_l2;
    res["path_disagreement"] = r.path_disagreement;
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) res[it.key()] = it.value();
    j["residuals"] = res;
    Json v = verdict_json(r.verdict);
    v["label"] = r.label;
    if (r.expected_case) v["expected_case"] = *r.expected_case;
    j["verdict"] = v;
    j["tolerances"] = Json{{"bitension_tol", r.tolerances.bitension_tol},
                           {"tension_floor", r.tolerances.tension_floor},
                           {"constant_tol", r.tolerances.constant_tol},
                           {"path_tol", r.tolerances.path_tol},
                           {"condition_tol", r.tolerances.condition_tol},
                           {"case_margin", r.tolerances.case_margin}};
    j["config"] = r.config;
    j["pass"] = r.pass;
    j["failures"] = r.failures;
    j["exit_code"] = r.exit_code();
    j["wall_time_s"] = r.wall_time;
    j["seed"] = r.seed;
    return j;
}

std::optional<std::string> expected_case(CurveFamily f) {
    switch (f) {
        case CurveFamily::Thm39Circle:
        case CurveFamily::Thm39Helix: return "I";
        case CurveFamily::Thm310Circle:
        case CurveFamily::Thm310Helix: return "II";
        case CurveFamily::Thm311: return "III";
    }
    return std::nullopt;
}

SampledCurve great_circle(const SasakianSphere& S, int samples) {
    const int N = S.dim();
    const double w = 1.0 / std::sqrt(S.a());
    auto map = std::make_shared<TrigMap>(1, N);
    Vec om(1);
    om[0] = w;
    // on Legendre great circles η₀ vanishes, so g-speed is √a times the Euclidean speed
    map->add(om, basis_vector(N, 0), basis_vector(N, 1));
    SampledCurve c = SampledCurve::from_map(map, 0.0, 2 * 3.14159265358979323846 / w, samples, true);
    c.unit_speed = true;
    c.family = "great_circle";
    c.family_params = {{"n", S.n()}, {"a", S.a()}};
    return c;
}

bool reattach_analytic(SampledCurve& curve, int n, double a) {
    if (curve.analytic || curve.family.empty()) return static_cast<bool>(curve.analytic);
    try {
        SampledCurve ref;
        if (curve.family == "great_circle") {
            ref = great_circle(SasakianSphere(n, a), curve.size());
        } else {
            if (!is_curve_family(curve.family)) return false;
            CurveSpec spec;
            spec.family = parse_curve_family(curve.family);
            spec.n = n;
            spec.a = a;
            spec.kappa1 = param(curve.family_params, "kappa1", 0.0);
            spec.detune = param(curve.family_params, "detune", 1.0);
            spec.twist = param(curve.family_params, "twist", 0.0);
            ref = make_curve(spec, curve.size());
        }
        if (ref.periodic != curve.periodic || !same_points(ref.points, curve.points)) return false;
        for (int i = 0; i < curve.size(); ++i)
            if (std::abs(ref.params[i] - curve.params[i]) > 1e-12) return false;
        curve.analytic = ref.analytic;
        curve.unit_speed = true;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool reattach_analytic(ImmersionGrid& grid, int n, double a) {
    if (grid.analytic || grid.family.empty()) return static_cast<bool>(grid.analytic);
    try {
        ImmersionSpec spec;
        spec.family = parse_immersion_family(grid.family);
        spec.n = n;
        spec.a = a;
        spec.kappa1 = param(grid.family_params, "kappa1", 0.6);
        for (const GridAxis& ax : grid.axes) spec.resolution.push_back(ax.count);
        ImmersionGrid ref = make_immersion(spec);
        if (!same_points(ref.points, grid.points)) return false;
        grid.analytic = ref.analytic;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

BiharmonicReport verify_curve(const SasakianSphere& S, const SampledCurve& input_curve, const InputDescriptor& input,
                              const Config& cfg, std::optional<std::string> expected) {
    const auto t0 = std::chrono::steady_clock::now();
    BiharmonicReport r;
    r.input = input;
    r.input.evaluation = input_curve.analytic ? "analytic" : "grid";
    r.n = S.n();
    r.a = S.a();
    r.c = S.c();
    r.structure_index = S.structure_index();
    r.tolerances = cfg.biharmonic();
    r.config = cfg.to_json();
    r.seed = cfg.seed();
    r.expected_case = expected;

    SampledCurve curve = input_curve;
    r.legendre = legendre_residual(S, curve);
    double speed = 0;
    for (double v : speed_profile(S, curve)) speed = std::max(speed, std::abs(v - 1.0));
    r.speed = speed;
    if (speed > 1e-6) {
        curve = reparametrize_by_arclength(S, curve);
        r.extra["reparametrized"] = true;
    }
    const Connection C(S);
    const CurveEvalOptions eval = cfg.curve_eval();
    const CurveAnalysis an = analyze_curve(C, curve, eval);
    const BitensionBreakdown b = bitension(C, an, curve, r.tolerances);
    r.verdict = classify(S, an, b, r.tolerances);
    r.tension_sup = b.tension_sup;
    r.tension_inf = b.tension_inf;
    r.bitension_sup = b.sup;
    r.bitension_l2 = b.l2;
    r.path_disagreement = b.path_disagreement;
    r.extra["frenet_bitension_sup"] = b.frenet_sup;
    r.extra["resum"] = b.resum_residual;
    r.extra["curvature_term"] = b.curvature_term_residual;
    r.extra["tangential"] = b.tangential_residual;
    r.extra["osculating_order"] = an.apparatus.order;
    r.extra["frame_continuity"] = an.apparatus.frame_continuity;
    r.extra["samples"] = static_cast<int>(an.samples.size());

    const ClassificationVerdict& v = r.verdict;
    const bool proper_case = v.case_name == "I" || v.case_name == "II" || v.case_name == "III" || v.case_name == "IV";
    if (v.case_name == "geodesic") r.label = "biharmonic (not proper)";
    else if (v.case_name == "non-biharmonic") r.label = "non-biharmonic";
    else if (proper_case && v.proper) r.label = "proper-biharmonic";
    else r.label = "indeterminate";

    if (r.label == "non-biharmonic") r.failures.push_back(fmt::format("bitension sup {:.3e} >= {:.3e}", b.sup, r.tolerances.bitension_tol));
    if (r.label == "indeterminate") r.failures.push_back("verdict indeterminate");
    if (proper_case && !v.conditions_hold)
        for (const Condition& k : v.conditions)
            if (!k.ok) r.failures.push_back(fmt::format("condition '{}' residual {:.3e}", k.name, k.residual));
    if (!b.paths_agree && r.label != "non-biharmonic")
        r.failures.push_back(fmt::format("bitension paths disagree by {:.3e}", b.path_disagreement));
    if (expected && r.label == "proper-biharmonic" && v.case_name != *expected)
        r.failures.push_back(fmt::format("expected case {}, classified {}", *expected, v.case_name));
    if (r.legendre > 1e-8) r.extra["not_legendre"] = true;
    r.pass = r.failures.empty();
    r.wall_time = seconds_since(t0);
    return r;
}

BiharmonicReport verify_immersion(const SasakianSphere& S, const ImmersionGrid& grid, const InputDescriptor& input,
                                  const Config& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    BiharmonicReport r;
    r.object = "immersion";
    r.input = input;
    r.input.evaluation = grid.analytic ? "analytic" : "grid";
    r.n = S.n();
    r.a = S.a();
    r.c = S.c();
    r.structure_index = S.structure_index();
    r.tolerances = cfg.biharmonic();
    r.config = cfg.to_json();
    r.seed = cfg.seed();
    double on_sphere = 0;
    for (const Vec& z : grid.points) on_sphere = std::max(on_sphere, std::abs(z.squaredNorm() - 1.0));
    r.extra["on_sphere"] = on_sphere;
    r.legendre = std::nan("");
    r.speed = std::nan("");
    const ImmersionEvalOptions eo = cfg.immersion_eval();
    const ImmersionFields f = immersion_fields(S, grid, eo);
    r.tension_sup = f.tension_sup;
    r.tension_inf = f.tension_inf;
    r.bitension_sup = f.bitension_sup;
    r.bitension_l2 = std::nan("");
    r.path_disagreement = f.refinement_disagreement;
    r.extra["tension_rel_std"] = f.tension_rel_std;
    r.extra["evaluation_nodes"] = static_cast<int>(f.bitension.nodes.size());
    r.extra["subsampled"] = f.subsampled;
    r.extra["mode"] = f.mode;
    const FlowGeometry fg = flow_geometry(S, grid, f.bitension.nodes);
    r.extra["anti_invariance"] = fg.anti_invariance;
    r.extra["first_direction_reeb"] = fg.reeb_tangent;
    r.extra["first_direction_orthogonality"] = fg.orthogonality;

    const bool harmonic = f.tension_sup < r.tolerances.tension_floor;
    const bool bih = f.bitension_sup < r.tolerances.bitension_tol;
    ClassificationVerdict& v = r.verdict;
    v.biharmonic = bih;
    v.proper = bih && f.tension_inf > r.tolerances.tension_floor;
    v.case_name = harmonic ? "geodesic" : (bih ? (v.proper ? "proper" : "indeterminate") : "non-biharmonic");
    v.notes = f.notes;
    if (harmonic) r.label = "biharmonic (not proper)";
    else if (!bih) r.label = "non-biharmonic";
    else r.label = v.proper ? "proper-biharmonic" : "indeterminate";
    if (r.label == "non-biharmonic") r.failures.push_back(fmt::format("bitension sup {:.3e} >= {:.3e}", f.bitension_sup, r.tolerances.bitension_tol));
    if (r.label == "indeterminate") r.failures.push_back("tension vanishes at some nodes");
    if (!f.resolved) r.failures.push_back(fmt::format("resolution insufficient (refinement {:.3e})", f.refinement_disagreement));
    r.pass = r.failures.empty();
    r.wall_time = seconds_since(t0);
    return r;
}

}  // namespace sasaki::app
