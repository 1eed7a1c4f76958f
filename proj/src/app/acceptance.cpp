#include "sasaki/app/acceptance.hpp"

#include "sasaki/app/report.hpp"
#include "sasaki/biharmonic.hpp"
#include "sasaki/chart.hpp"
#include "sasaki/connection.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/flows.hpp"
#include "sasaki/generators.hpp"
#include "sasaki/sasakian.hpp"
#include "sasaki/variational.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <ostream>
#include <sstream>

namespace sasaki::app {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Recorder {
public:
    explicit Recorder(CriterionResult& r) : r_(r) {}
    void less(const std::string& name, double value, double thr) { add(name, value, thr, "<", value < thr); }
    void greater(const std::string& name, double value, double thr) { add(name, value, thr, ">", value > thr); }
    void holds(const std::string& name, bool ok) { add(name, ok ? 1 : 0, 1, "==", ok); }

private:
    void add(const std::string& name, double v, double t, const char* rel, bool ok) {
        r_.checks.push_back(Check{name, v, t, rel, ok && std::isfinite(v)});
    }
    CriterionResult& r_;
};

Vec contact_unit(const SasakianSphere& S, const Vec& z, Rng& rng) {
    Vec X = random_tangent(z, rng);
    X -= S.eta(z, X) * S.xi(z);
    return X / S.norm(z, X);
}

Vec random_tangent_g(const SasakianSphere& S, const Vec& z, Rng& rng) {
    const Vec X = random_tangent(z, rng);
    return X / S.norm(z, X);
}

double sup_distance(const SasakianSphere& S, const std::vector<Vec>& pts, const std::vector<Vec>& u,
                    const std::vector<Vec>& v) {
    double m = 0;
    for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, S.norm(pts[k], u[k] - v[k]));
    return m;
}

// ---------------------------------------------------------------------------------------

void structure_axioms(Recorder& rec, const AcceptanceOptions& opt) {
    Rng rng(opt.seed);
    const int count = 100;
    const int fd_count = opt.fast ? 10 : 100;
    for (int n : {1, 2, 3}) {
        for (double a : {0.4, 1.0, 2.5}) {
            const SasakianSphere S(n, a);
            const Connection C(S);
            double phi2 = 0, compat = 0, unit = 0, contact = 0, normal = 0;
            for (int k = 0; k < count; ++k) {
                const Vec z = random_sphere_point(S.dim(), rng);
                const Vec X = random_tangent(z, rng), Y = random_tangent(z, rng);
                const Vec xi = S.xi(z);
                phi2 = std::max(phi2, (S.phi(z, S.phi(z, X)) + X - S.eta(z, X) * xi).norm());
                compat = std::max(compat, std::abs(S.g(z, S.phi(z, X), S.phi(z, Y)) - S.g(z, X, Y) +
                                                   S.eta(z, X) * S.eta(z, Y)));
                unit = std::max(unit, std::abs(S.eta(z, xi) - 1.0));
                if (k < fd_count) {
                    contact = std::max(contact, check_contact_form(C, z, X, Y).value);
                    normal = std::max(normal, check_normality(C, z, X, Y).value);
                }
            }
            const std::string tag = fmt::format("n={} a={}", n, a);
            rec.less("phi^2 = -Id + eta xi (" + tag + ")", phi2, 1e-12);
            rec.less("g(phi X, phi Y) = g - eta eta (" + tag + ")", compat, 1e-12);
            rec.less("eta(xi) = 1 (" + tag + ")", unit, 1e-12);
            rec.less("g(X, phi Y) = d eta (" + tag + ")", contact, 1e-5);
            rec.less("normality (" + tag + ")", normal, 1e-5);
        }
    }
}

void connection_checks(Recorder& rec, const AcceptanceOptions& opt) {
    Rng rng(opt.seed + 1);
    const int count = opt.fast ? 10 : 50;
    for (double a : {0.4, 1.0, 2.5}) {
        const SasakianSphere S(2, a);
        const Connection C(S);
        double tors = 0, comp = 0, sas = 0, reeb = 0;
        for (int k = 0; k < count; ++k) {
            const Vec z = random_sphere_point(S.dim(), rng);
            const Vec X = random_tangent_g(S, z, rng), Y = random_tangent_g(S, z, rng), Z = random_tangent_g(S, z, rng);
            tors = std::max(tors, check_torsion(C, z, X, Y).value);
            comp = std::max(comp, check_compatibility(C, z, X, Y, Z).value);
            sas = std::max(sas, check_sasakian_identity(C, z, X, Y).value);
            reeb = std::max(reeb, check_reeb_derivative(C, z, X).value);
        }
        const std::string tag = fmt::format("a={}", a);
        rec.less("torsion-free (" + tag + ")", tors, 1e-5);
        rec.less("metric compatibility (" + tag + ")", comp, 1e-5);
        rec.less("(nabla_X phi)Y = g(X,Y) xi - eta(Y) X (" + tag + ")", sas, 1e-4);
        rec.less("nabla_X xi = -phi X (" + tag + ")", reeb, 1e-5);
    }
}

void curvature_checks(Recorder& rec, const AcceptanceOptions& opt) {
    Rng rng(opt.seed + 2);
    const int count = opt.fast ? 8 : 25;
    for (double a : {0.5, 1.0, 2.0}) {
        const SasakianSphere S(2, a);
        double rel = 0, sect = 0;
        for (int k = 0; k < count; ++k) {
            const Vec z = random_sphere_point(S.dim(), rng);
            const Vec X = random_tangent_g(S, z, rng), Y = random_tangent_g(S, z, rng), Z = random_tangent_g(S, z, rng);
            const Vec formula = curvature_formula(S, z, X, Y, Z);
            const Vec fd = curvature_fd(S, z, X, Y, Z);
            rel = std::max(rel, S.norm(z, formula - fd) / std::max(S.norm(z, formula), 1e-12));
            const Vec U = contact_unit(S, z, rng);
            const Vec pU = S.phi(z, U);
            sect = std::max(sect, std::abs(S.g(z, curvature_formula(S, z, U, pU, pU), U) - S.c()));
        }
        const std::string tag = fmt::format("a={}", a);
        rec.less("curvature formula vs finite differences, relative (" + tag + ")", rel, 1e-3);
        rec.less("phi-sectional curvature = 4/a - 3 (" + tag + ")", sect, 1e-6);
    }
}

struct CurveRun {
    SasakianSphere S;
    SampledCurve curve;
    CurveAnalysis an;
    BitensionBreakdown b;
    ClassificationVerdict v;
};

CurveRun run_curve(const CurveSpec& spec, int samples) {
    const SasakianSphere S(spec.n, spec.a);
    const Connection C(S);
    SampledCurve curve = make_curve(spec, samples);
    CurveAnalysis an = analyze_curve(C, curve);
    BitensionBreakdown b = bitension(C, an, curve);
    ClassificationVerdict v = classify(S, an, b);
    return CurveRun{S, std::move(curve), std::move(an), std::move(b), std::move(v)};
}

double kappa_error(const CurveRun& r, int i, double target) {
    double m = 0;
    for (const SampleAnalysis& d : r.an.data) {
        const double k = static_cast<int>(d.kappa.size()) > i ? d.kappa[i] : 0.0;
        m = std::max(m, std::abs(k - target));
    }
    return m;
}

// sup over samples of |L(γ)| for a linear combination of exact derivatives.
double ode_residual(const SampledCurve& c, const std::vector<std::pair<int, double>>& terms) {
    double m = 0;
    for (double t : c.params) {
        const std::vector<Vec> jet = c.analytic->curve_jet(t, 4);
        Vec acc = Vec::Zero(c.ambient_dim());
        for (const auto& [order, coeff] : terms) acc += coeff * jet[order];
        m = std::max(m, acc.norm());
    }
    return m;
}

int samples_for(const AcceptanceOptions& opt) { return opt.fast ? 128 : 512; }

void theorem_c1(Recorder& rec, const AcceptanceOptions& opt) {
    const CurveRun circle = run_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, samples_for(opt));
    rec.less("circle |kappa1 - 1|", kappa_error(circle, 0, 1.0), 1e-6);
    rec.less("circle Legendre residual", legendre_residual(circle.S, circle.curve), 1e-10);
    rec.less("circle |tau2|_sup", circle.b.sup, 1e-5);
    rec.less("circle bitension path disagreement", circle.b.path_disagreement, 1e-5);
    rec.less("circle gamma''' + 2 gamma'", ode_residual(circle.curve, {{3, 1.0}, {1, 2.0}}), 1e-10);

    const CurveRun helix = run_curve(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}, samples_for(opt));
    rec.less("helix |kappa2 - 0.8|", kappa_error(helix, 1, 0.8), 1e-6);
    rec.less("helix |tau2|_sup", helix.b.sup, 1e-5);
    rec.less("helix gamma'''' + 2 gamma'' + kappa2^2 gamma",
             ode_residual(helix.curve, {{4, 1.0}, {2, 2.0}, {0, 0.64}}), 1e-10);
}

double max_g_x1_phiT(const CurveRun& r) {
    double m = 0;
    for (const SampleAnalysis& d : r.an.data) m = std::max(m, std::abs(r.S.g(d.point, d.X1, d.phiT)));
    return m;
}

void theorem_c_minus1(Recorder& rec, const AcceptanceOptions& opt) {
    const CurveRun circle = run_curve(CurveSpec{CurveFamily::Thm310Circle, 2, 2.0}, samples_for(opt));
    rec.less("circle |kappa1 - 1/sqrt2|", kappa_error(circle, 0, 1.0 / std::sqrt(2.0)), 1e-6);
    rec.less("circle g(nabla_T T, phi T)", max_g_x1_phiT(circle), 1e-6);
    rec.less("circle |tau2|_sup", circle.b.sup, 1e-4);
    const CurveRun helix = run_curve(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.5}, samples_for(opt));
    rec.less("helix |kappa2 - 0.5|", kappa_error(helix, 1, 0.5), 1e-6);
    rec.less("helix g(nabla_T T, phi T)", max_g_x1_phiT(helix), 1e-6);
    rec.less("helix |tau2|_sup", helix.b.sup, 1e-4);
}

void theorem_c5(Recorder& rec, const AcceptanceOptions& opt) {
    const CurveSpec spec{CurveFamily::Thm311, 2, 0.5};
    const FamilyData d = family_data(spec);
    rec.less("|A - (sqrt3 - 1)|", std::abs(d.A - (std::sqrt(3.0) - 1.0)), 1e-12);
    rec.less("|B - (sqrt3 + 1)|", std::abs(d.B - (std::sqrt(3.0) + 1.0)), 1e-12);
    const CurveRun r = run_curve(spec, samples_for(opt));
    rec.less("|kappa1 - 2|", kappa_error(r, 0, 2.0), 1e-5);
    rec.less("|kappa2 - 1|", kappa_error(r, 1, 1.0), 1e-5);
    double hyp = 0;
    for (const SampleAnalysis& s : r.an.data) hyp = std::max(hyp, r.S.norm(s.point, s.X1 - 2.0 * s.phiT));
    rec.less("nabla_T T = 2 phi T", hyp, 1e-5);
    rec.less("|tau2|_sup", r.b.sup, 1e-4);
    rec.holds("verdict Case III", r.v.case_name == "III");
}

void negative_controls(Recorder& rec, const AcceptanceOptions& opt) {
    const std::vector<CurveSpec> families = {
        {CurveFamily::Thm39Circle, 2, 1.0},       {CurveFamily::Thm39Helix, 3, 1.0, 0.6},
        {CurveFamily::Thm310Circle, 2, 2.0},      {CurveFamily::Thm310Helix, 3, 2.0, 0.5},
        {CurveFamily::Thm311, 2, 0.5},
    };
    Config cfg;
    cfg.set("samples", std::to_string(samples_for(opt)));
    for (const CurveSpec& base : families) {
        const CurveSpec spec = detuned(base, 1.01);
        const SasakianSphere S(spec.n, spec.a);
        const SampledCurve c = make_curve(spec, samples_for(opt));
        InputDescriptor d;
        d.source = "family";
        d.family = to_string(spec.family);
        const BiharmonicReport rep = verify_curve(S, c, d, cfg);
        rec.greater(d.family + " detuned |tau2|_sup", rep.bitension_sup, 1e-2);
        rec.holds(d.family + " detuned verdict non-biharmonic", rep.label == "non-biharmonic");
    }
}

void equivariance(Recorder& rec, const AcceptanceOptions& opt) {
    const int res = opt.fast ? 32 : 64;
    ComposeOptions co;
    co.t_count = res;
    ImmersionEvalOptions eo;
    struct Case {
        std::string name;
        SasakianSphere S;
        ImmersionGrid base;
    };
    const std::vector<Case> cases = {
        {"helix", SasakianSphere(3, 1.0), curve_as_grid(make_curve(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}, res))},
        {"integral surface", SasakianSphere(2, 1.0), integral_surface_grid(opt.fast ? 24 : 32)},
    };
    for (const Case& c : cases) {
        const ImmersionGrid F = compose_flow(c.S, c.base, co);
        const EquivarianceReport eq = check_equivariance(c.S, c.base, F, eo);
        const FlowGeometry geo = flow_geometry(c.S, F, eq.composed.tension.nodes);
        rec.less(c.name + ": tau2(F) - dphi_t tau2(base)", eq.residual, 1e-4);
        rec.less(c.name + ": dF(d/dt) = xi o F", geo.reeb_tangent, 1e-6);
        rec.less(c.name + ": orthogonality", geo.orthogonality, 1e-6);
        rec.less(c.name + ": mean curvature relative stddev", eq.composed.tension_rel_std, 1e-5);
    }
}

double quaternion_residual() {
    const int N = 8;
    const Mat I = ComplexStructure::make(StructureTag::I, N).matrix();
    const Mat J = ComplexStructure::make(StructureTag::J, N).matrix();
    const Mat K = ComplexStructure::make(StructureTag::K, N).matrix();
    const Mat Id = Mat::Identity(N, N);
    double m = 0;
    for (const Mat* A : {&I, &J, &K}) {
        m = std::max(m, (*A * *A + Id).cwiseAbs().maxCoeff());
        m = std::max(m, (*A + A->transpose()).cwiseAbs().maxCoeff());
    }
    m = std::max(m, (I * J + J * I).cwiseAbs().maxCoeff());
    m = std::max(m, (J * K + K * J).cwiseAbs().maxCoeff());
    m = std::max(m, (K * I + I * K).cwiseAbs().maxCoeff());
    m = std::max(m, (K + I * J).cwiseAbs().maxCoeff());
    return m;
}

void three_structure_flows(Recorder& rec, const AcceptanceOptions& opt) {
    rec.less("quaternionic identities", quaternion_residual(), 1e-14);
    const int res = opt.fast ? 24 : 48;
    const SasakianSphere S(3, 1.0);
    for (ImmersionFamily fam : {ImmersionFamily::Prop53X1, ImmersionFamily::Prop53X2}) {
        ImmersionSpec spec;
        spec.family = fam;
        spec.n = 3;
        spec.resolution = {res, res, res};
        const ImmersionGrid g = make_immersion(spec);
        double on = 0;
        for (const Vec& p : g.points) on = std::max(on, std::abs(p.norm() - 1.0));
        const std::string name = to_string(fam);
        rec.less(name + ": on sphere", on, 1e-12);
        ImmersionEvalOptions eo;
        eo.seed = opt.seed;
        const ImmersionFields f = immersion_fields(S, g, eo);
        rec.less(name + ": |tau2| on the evaluation subsample", f.bitension_sup, 1e-4);
        rec.greater(name + ": |tau|_inf", f.tension_inf, 0.1);
        const FlowGeometry geo = flow_geometry(S, g, f.tension.nodes);
        rec.less(name + ": anti-invariance", geo.anti_invariance, 1e-6);
    }
}

void variational_checks(Recorder& rec, const AcceptanceOptions& opt) {
    const int trials = 20;
    struct Case {
        std::string name;
        CurveSpec spec;
        int samples;
    };
    const std::vector<Case> critical = {
        {"circle", CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 128},
        {"helix", CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}, 256},
    };
    Rng rng(opt.seed + 10);
    for (const Case& c : critical) {
        const SasakianSphere S(c.spec.n, 1.0);
        const SampledCurve curve = make_curve(c.spec, c.samples);
        double dmax = 0, res = 0;
        for (int k = 0; k < trials; ++k) {
            const VariationField V = random_variation(S, curve, 4, rng);
            const VariationCheck r = variation_formula_check(S, curve, V);
            dmax = std::max(dmax, std::abs(r.fd));
            res = std::max(res, r.residual);
        }
        rec.less(c.name + ": max |dE2(V)|", dmax, 1e-4);
        rec.less(c.name + ": first-variation formula residual", res, 1e-4);
    }
    const CurveSpec control = detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 1.01);
    const SasakianSphere S(2, 1.0);
    const SampledCurve curve = make_curve(control, 128);
    double dmax = 0;
    for (int k = 0; k < trials; ++k) dmax = std::max(dmax, std::abs(first_variation(S, curve, random_variation(S, curve, 4, rng))));
    rec.greater("detuned circle: max |dE2(V)|", dmax, 1e-2);
    DescentOptions dopt;
    dopt.steps = 500;
    const DescentResult d = descend(S, curve, dopt);
    const double first = d.trajectory.front().bitension_sup;
    double best = first;
    for (const DescentStep& s : d.trajectory) best = std::min(best, s.bitension_sup);
    rec.greater("descent: |tau2|_sup reduction factor", first / std::max(best, 1e-300), 10.0);
    bool monotone = true;
    for (std::size_t k = 1; k < d.trajectory.size(); ++k) monotone = monotone && d.trajectory[k].E2 <= d.trajectory[k - 1].E2;
    rec.holds("descent: E2 non-increasing", monotone);
}

// Existence clauses and the predicate output each one fixes.
struct Clause {
    std::string name;
    double c;
    CaseId which;
    FeasibilityParams params;
    bool expected;
};

std::vector<Clause> feasibility_clauses() {
    const double a3 = 4.0 / 3.0 - 3.0;
    return {
        {"Case I at c = 1", 1.0, CaseId::I, {}, true},
        {"Case I at c = 5 (a = 1/2)", 5.0, CaseId::I, {}, false},
        {"Case I at c = -1 (a = 2)", -1.0, CaseId::I, {}, false},
        {"Case II circle at c = -5/3 (a = 3)", a3, CaseId::II, {std::nullopt, std::nullopt, false}, true},
        {"Case II helix at c = -5/3, n = 3", a3, CaseId::II, {3, std::nullopt, true}, true},
        {"Case II helix at c = -5/3, n = 2", a3, CaseId::II, {2, std::nullopt, true}, false},
        {"Case II at c = -3", -3.0, CaseId::II, {std::nullopt, std::nullopt, false}, false},
        {"Case II at c = -4", -4.0, CaseId::II, {std::nullopt, std::nullopt, false}, false},
        {"Case II at c = 1", 1.0, CaseId::II, {std::nullopt, std::nullopt, false}, false},
        {"Case II at c = 5", 5.0, CaseId::II, {std::nullopt, std::nullopt, false}, true},
        {"Case III at c = 5", 5.0, CaseId::III, {}, true},
        {"Case III at c = 1", 1.0, CaseId::III, {}, false},
        {"Case III at c = -1", -1.0, CaseId::III, {}, false},
        {"Case IV at c = 5, alpha0 = 3pi/4, n = 3", 5.0, CaseId::IV, {3, 3 * kPi / 4, std::nullopt}, true},
        {"Case IV at c = 5, alpha0 = pi/4", 5.0, CaseId::IV, {3, kPi / 4, std::nullopt}, false},
        {"Case IV at c = 0, alpha0 = pi/4", 0.0, CaseId::IV, {3, kPi / 4, std::nullopt}, true},
        {"Case IV at c = 0, alpha0 = 3pi/4", 0.0, CaseId::IV, {3, 3 * kPi / 4, std::nullopt}, false},
        {"Case IV at c = -2, alpha0 = pi/6", -2.0, CaseId::IV, {3, kPi / 6, std::nullopt}, false},
        {"Case IV at c = -2.9, alpha0 = pi/4", -2.9, CaseId::IV, {3, kPi / 4, std::nullopt}, false},
        {"Case IV at c = 1", 1.0, CaseId::IV, {3, kPi / 4, std::nullopt}, false},
        {"Case IV at c = -3", -3.0, CaseId::IV, {3, kPi / 4, std::nullopt}, false},
        {"Case IV at alpha0 = pi/2", 5.0, CaseId::IV, {3, kPi / 2, std::nullopt}, false},
        {"Case IV at c = 5, alpha0 = 3pi/4, n = 2", 5.0, CaseId::IV, {2, 3 * kPi / 4, std::nullopt}, true},
        {"Case IV at n = 1", 5.0, CaseId::IV, {1, 3 * kPi / 4, std::nullopt}, false},
    };
}

void feasibility_tables(Recorder& rec, const AcceptanceOptions&) {
    for (const Clause& cl : feasibility_clauses()) {
        const Feasibility f = feasibility(cl.c, cl.which, cl.params);
        rec.holds(fmt::format("{} -> {}", cl.name, cl.expected ? "feasible" : "infeasible"), f.feasible == cl.expected);
    }
}

// ---------------------------------------------------------------------------------------

CriterionResult timed(int id, const std::string& title, const std::function<void(Recorder&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Recorder rec(r);
        body(rec);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r.error.empty() && !r.checks.empty() &&
             std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.ok; });
    return r;
}

// A small circle of geodesic curvature kappa in S^3: its bitension is kappa(1 - kappa^2) E2.
void bitension_sign(Recorder& rec) {
    const double kappa = 2.0;
    const double rho = std::atan(1.0 / kappa);
    const double period = 2 * kPi * std::sin(rho);
    const int N = 128;
    std::vector<double> t(N);
    std::vector<Vec> pts(N);
    for (int k = 0; k < N; ++k) {
        t[k] = period * k / N;
        const double th = t[k] / std::sin(rho);
        Vec z(4);
        z << std::cos(rho), std::sin(rho) * std::cos(th), std::sin(rho) * std::sin(th), 0.0;
        pts[k] = z;
    }
    const SasakianSphere S(1, 1.0);
    const SampledCurve c = SampledCurve::from_points(t, pts, true, period);
    const std::vector<Vec> tau = map_tension(S, c);
    const std::vector<Vec> tau2 = map_bitension(S, c);
    std::vector<Vec> expected(N);
    for (int k = 0; k < N; ++k) expected[k] = kappa * (1 - kappa * kappa) * tau[k] / S.norm(pts[k], tau[k]);
    rec.less("small circle bitension = kappa(1 - kappa^2) E2", sup_distance(S, pts, tau2, expected), 1e-6);
}

}  // namespace

std::string criterion_title(int id) {
    switch (id) {
        case 1: return "structure axioms";
        case 2: return "connection validation";
        case 3: return "curvature tensor of the space form";
        case 4: return "biharmonic Legendre curves at c = 1";
        case 5: return "biharmonic Legendre curves at c = -1";
        case 6: return "biharmonic Legendre helix at c = 5";
        case 7: return "negative controls";
        case 8: return "Reeb-flow equivariance";
        case 9: return "three-structure flow immersions in S^7";
        case 10: return "bienergy first variation and descent";
        case 11: return "feasibility tables";
        default: return "unknown";
    }
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    using Body = void (*)(Recorder&, const AcceptanceOptions&);
    static const Body bodies[] = {structure_axioms,   connection_checks,    curvature_checks,    theorem_c1,
                                  theorem_c_minus1,   theorem_c5,           negative_controls,   equivariance,
                                  three_structure_flows, variational_checks, feasibility_tables};
    if (id < 1 || id > kCriterionCount) {
        CriterionResult r;
        r.id = id;
        r.title = "unknown";
        r.error = fmt::format("no criterion {}", id);
        return r;
    }
    return timed(id, criterion_title(id), [&](Recorder& rec) { bodies[id - 1](rec, opt); });
}

std::vector<CriterionResult> run_calibrations(const AcceptanceOptions& opt) {
    std::vector<CriterionResult> out;
    out.push_back(timed(0, "round-sphere curvature check (c=1)", [&](Recorder& rec) {
        Rng rng(opt.seed + 100);
        const SasakianSphere S(1, 1.0);
        double rel = 0;
        for (int k = 0; k < 5; ++k) {
            const Vec z = random_sphere_point(S.dim(), rng);
            const Vec X = random_tangent(z, rng), Y = random_tangent(z, rng), Z = random_tangent(z, rng);
            const Vec f = curvature_formula(S, z, X, Y, Z);
            rel = std::max(rel, (f - curvature_fd(S, z, X, Y, Z)).norm() / std::max(f.norm(), 1e-12));
        }
        rec.less("curvature formula vs finite differences", rel, 1e-3);
    }));
    out.push_back(timed(0, "bitension sign calibration", [&](Recorder& rec) { bitension_sign(rec); }));
    out.push_back(timed(0, "structure identities", [&](Recorder& rec) {
        Rng rng(opt.seed + 101);
        const SasakianSphere S(2, 2.0);
        double m = 0;
        for (int k = 0; k < 10; ++k) {
            const Vec z = random_sphere_point(S.dim(), rng);
            const Vec X = random_tangent(z, rng);
            m = std::max(m, (S.phi(z, S.phi(z, X)) + X - S.eta(z, X) * S.xi(z)).norm());
            m = std::max(m, std::abs(S.eta(z, S.xi(z)) - 1.0));
            m = std::max(m, S.phi(z, S.xi(z)).norm());
        }
        rec.less("phi^2 = -Id + eta xi, eta(xi) = 1, phi xi = 0", m, 1e-12);
    }));
    return out;
}

std::string format_line(const CriterionResult& r, bool verbose) {
    std::string head = r.id > 0 ? fmt::format("[{:>2}] {}", r.id, r.title) : fmt::format("[cal] {}", r.title);
    std::string line = fmt::format("{}  {}  ({:.1f}s)", r.pass ? "PASS" : "FAIL", head, r.seconds);
    if (!r.error.empty()) line += "\n      error: " + r.error;
    for (const Check& c : r.checks) {
        if (c.ok && !verbose) continue;
        line += fmt::format("\n      {} {}: {:.3e} (required {} {:.1e})", c.ok ? "ok  " : "FAIL", c.name, c.value,
                            c.relation, c.threshold);
    }
    return line;
}

std::vector<int> parse_criteria(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    auto num = [](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size() || v < 1 || v > kCriterionCount)
            throw InvalidInput(fmt::format("criterion '{}' is not in 1-{}", t, kCriterionCount));
        return v;
    };
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dash = tok.find('-');
        if (dash == std::string::npos) {
            out.push_back(num(tok));
            continue;
        }
        const int lo = num(tok.substr(0, dash)), hi = num(tok.substr(dash + 1));
        if (hi < lo) throw InvalidInput(fmt::format("empty criterion range '{}'", tok));
        for (int k = lo; k <= hi; ++k) out.push_back(k);
    }
    if (out.empty()) throw InvalidInput("no criteria selected");
    return out;
}

int run_selftest(const SelftestOptions& opt, std::ostream& out) {
    const bool previous = curvature_sign_flipped_for_testing();
    set_curvature_sign_flip_for_testing(opt.inject_curvature_sign_flip);
    AcceptanceOptions ao;
    ao.fast = opt.fast;
    ao.seed = opt.seed;
    bool ok = true;
    int failed = 0, total = 0;
    for (const CriterionResult& r : run_calibrations(ao)) {
        out << format_line(r) << "\n";
        ok = ok && r.pass;
        failed += r.pass ? 0 : 1;
        ++total;
    }
    std::vector<int> ids = opt.criteria;
    if (ids.empty())
        for (int k = 1; k <= kCriterionCount; ++k) ids.push_back(k);
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, ao);
        out << format_line(r) << "\n";
        out.flush();
        ok = ok && r.pass;
        failed += r.pass ? 0 : 1;
        ++total;
    }
    set_curvature_sign_flip_for_testing(previous);
    out << fmt::format("selftest: {} of {} passed\n", total - failed, total);
    return ok ? 0 : 1;
}

}  // namespace sasaki::app
