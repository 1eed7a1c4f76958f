#include "sasaki/app/commands.hpp"

#include "sasaki/app/acceptance.hpp"
#include "sasaki/app/report.hpp"
#include "sasaki/app/worker_pool.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/generators.hpp"
#include "sasaki/interchange.hpp"
#include "sasaki/variational.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <iostream>
#include <sstream>

namespace sasaki::app {

namespace {

std::string csv_number(double x) { return std::isfinite(x) ? fmt::format("{:.17g}", x) : ""; }
std::string csv_number(const std::optional<double>& x) { return x ? csv_number(*x) : ""; }

// Options shared by every subcommand.
struct Common {
    std::string config_file;
    std::vector<std::string> overrides;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config_file, "key=value configuration file");
        sub->add_option("--set", overrides, "override one configuration value, KEY=VALUE")->take_all();
    }
    Config load() const {
        Config cfg;
        if (!config_file.empty()) cfg.load_file(config_file);
        for (const std::string& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidInput(fmt::format("--set expects KEY=VALUE, got '{}'", kv));
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        return cfg;
    }
};

// Family flags shared by generate, verify, classify and optimize.
struct FamilyFlags {
    std::string family;
    std::optional<int> n;
    double a = 1.0;
    std::optional<double> kappa1;
    std::optional<int> samples;
    std::vector<int> resolution;
    double detune = 1.0;
    double twist = 0.0;

    void attach(CLI::App* sub, bool required) {
        auto* f = sub->add_option("--family", family, "explicit family (curve or immersion)");
        if (required) f->required();
        sub->add_option("--n", n, "sphere dimension parameter (S^{2n+1})");
        sub->add_option("--a", a, "deformation parameter a > 0");
        sub->add_option("--kappa1", kappa1, "first curvature (helix families)");
        sub->add_option("--samples", samples, "samples per curve domain");
        sub->add_option("--resolution", resolution, "grid resolution per immersion parameter")->delimiter(',');
        sub->add_option("--detune", detune, "factor applied to the leading frequency");
        sub->add_option("--twist", twist, "helix basis rotation angle");
    }

    bool is_curve() const { return family == "great_circle" || family == "great-circle" || is_curve_family(family); }

    int default_n() const {
        if (family == "great_circle" || family == "great-circle") return 1;
        if (is_curve_family(family)) {
            switch (parse_curve_family(family)) {
                case CurveFamily::Thm39Helix:
                case CurveFamily::Thm310Helix: return 3;
                default: return 2;
            }
        }
        const ImmersionFamily f = parse_immersion_family(family);
        return f == ImmersionFamily::Prop53X1 || f == ImmersionFamily::Prop53X2 ? 3 : 2;
    }

    CurveSpec curve_spec() const {
        CurveSpec s;
        s.family = parse_curve_family(family);
        s.n = n.value_or(default_n());
        s.a = a;
        const bool helix = s.family == CurveFamily::Thm39Helix || s.family == CurveFamily::Thm310Helix;
        if (helix && !kappa1) throw InvalidInput(fmt::format("{} requires --kappa1", to_string(s.family)));
        s.kappa1 = kappa1.value_or(0.0);
        s.detune = detune;
        s.twist = twist;
        return s;
    }

    ImmersionSpec immersion_spec() const {
        ImmersionSpec s;
        s.family = parse_immersion_family(family);
        s.n = n.value_or(default_n());
        s.a = a;
        s.kappa1 = kappa1.value_or(0.6);
        s.resolution = resolution;
        return s;
    }

    SampledCurve make(const Config& cfg) const {
        const int N = samples.value_or(cfg.integer("samples"));
        if (family == "great_circle" || family == "great-circle") return great_circle(SasakianSphere(n.value_or(1), a), N);
        return make_curve(curve_spec(), N);
    }

    ImmersionGrid make_grid(const Config& cfg) const {
        ImmersionSpec s = immersion_spec();
        if (s.resolution.empty()) {
            const bool three = s.family == ImmersionFamily::Prop53X1 || s.family == ImmersionFamily::Prop53X2 ||
                               s.family == ImmersionFamily::Prop42Surface;
            s.resolution.assign(three ? 3 : 2, cfg.integer(s.family == ImmersionFamily::Prop42Surface ? "resolution" : (three ? "resolution_3d" : "resolution")));
        }
        return make_immersion(s);
    }

    InputDescriptor descriptor() const {
        InputDescriptor d;
        d.source = "family";
        d.family = family;
        d.params["n"] = n.value_or(default_n());
        d.params["a"] = a;
        if (kappa1) d.params["kappa1"] = *kappa1;
        if (detune != 1.0) d.params["detune"] = detune;
        if (twist != 0.0) d.params["twist"] = twist;
        return d;
    }
};

void emit_json(const Json& j, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") out << dump_json(j);
    else write_text_file(path, dump_json(j));
}

void echo_family(const SampledCurve& c, std::ostream& out) {
    out << "family: " << c.family << "\n";
    for (const auto& [k, v] : c.family_params) out << fmt::format("{} = {:.17g}\n", k, v);
    out << fmt::format("periodic = {}\n", c.periodic ? "true" : "false");
    if (c.periodic) out << fmt::format("period = {:.17g}\n", c.period);
    else out << fmt::format("domain = [{:.17g}, {:.17g}]\n", c.params.front(), c.params.back());
    out << fmt::format("samples = {}\n", c.size());
}

// ---------------------------------------------------------------------------------------

int cmd_generate(const FamilyFlags& ff, const Config& cfg, const std::string& outpath, std::ostream& out) {
    if (ff.is_curve()) {
        const SampledCurve c = ff.make(cfg);
        const int n = static_cast<int>(c.family_params.at("n"));
        echo_family(c, out);
        if (!outpath.empty()) {
            const CurveDocument doc{n, c.family_params.at("a"), 1, c};
            write_text_file(outpath, dump_json(to_json(doc)));
            out << "wrote " << outpath << "\n";
        }
        return 0;
    }
    const ImmersionGrid g = ff.make_grid(cfg);
    out << "family: " << g.family << "\n";
    for (const auto& [k, v] : g.family_params) out << fmt::format("{} = {:.17g}\n", k, v);
    const double a = g.family_params.at("a");
    out << fmt::format("c = {:.17g}\ndim = {}\nnodes = {}\n", 4.0 / a - 3.0, g.dim, g.node_count());
    if (!outpath.empty()) {
        const ImmersionDocument doc{static_cast<int>(g.family_params.at("n")), a, 1, g};
        write_text_file(outpath, dump_json(to_json(doc)));
        out << "wrote " << outpath << "\n";
    }
    return 0;
}

BiharmonicReport verify_document(const std::string& path, const Config& cfg) {
    const Json j = parse_json_file(path);
    InputDescriptor d;
    d.source = "file";
    d.file = path;
    if (is_immersion_document(j)) {
        ImmersionDocument doc = immersion_from_json(j);
        reattach_analytic(doc.grid, doc.n, doc.a);
        d.family = doc.grid.family;
        d.params = doc.grid.family_params;
        return verify_immersion(SasakianSphere(doc.n, doc.a, doc.structure_index), doc.grid, d, cfg);
    }
    CurveDocument doc = curve_from_json(j);
    reattach_analytic(doc.curve, doc.n, doc.a);
    d.family = doc.curve.family;
    d.params = doc.curve.family_params;
    std::optional<std::string> expect;
    if (is_curve_family(doc.curve.family) && doc.curve.family_params.count("detune") &&
        doc.curve.family_params.at("detune") == 1.0)
        expect = expected_case(parse_curve_family(doc.curve.family));
    return verify_curve(SasakianSphere(doc.n, doc.a, doc.structure_index), doc.curve, d, cfg, expect);
}

BiharmonicReport verify_family(const FamilyFlags& ff, const Config& cfg) {
    if (ff.is_curve()) {
        const SampledCurve c = ff.make(cfg);
        std::optional<std::string> expect;
        if (is_curve_family(ff.family) && ff.detune == 1.0) expect = expected_case(parse_curve_family(ff.family));
        const int n = static_cast<int>(c.family_params.at("n"));
        return verify_curve(SasakianSphere(n, ff.a), c, ff.descriptor(), cfg, expect);
    }
    const ImmersionGrid g = ff.make_grid(cfg);
    return verify_immersion(SasakianSphere(static_cast<int>(g.family_params.at("n")), ff.a), g, ff.descriptor(), cfg);
}

int cmd_verify(const FamilyFlags& ff, const std::string& in, const Config& cfg, const std::string& outpath, std::ostream& out) {
    if (in.empty() && ff.family.empty()) throw InvalidInput("verify needs --in FILE or --family");
    const BiharmonicReport r = in.empty() ? verify_family(ff, cfg) : verify_document(in, cfg);
    emit_json(to_json(r), outpath, out);
    if (!outpath.empty() && outpath != "-")
        out << fmt::format("{}: {} (bitension sup {:.3e}, tension inf {:.3e}) -> exit {}\n", r.object, r.label,
                           r.bitension_sup, r.tension_inf, r.exit_code());
    return r.exit_code();
}

std::vector<CaseId> parse_cases(const std::string& s) {
    if (s.empty() || s == "all") return {CaseId::I, CaseId::II, CaseId::III, CaseId::IV};
    std::vector<CaseId> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_case(tok));
    return out;
}

int cmd_sweep(const SweepRequest& req, const Config& cfg, const std::string& outpath, std::ostream& out) {
    const std::vector<SweepRow> rows = run_sweep(req, cfg);
    const std::string csv = sweep_csv(rows);
    if (outpath.empty() || outpath == "-") out << csv;
    else write_text_file(outpath, csv);
    for (const SweepRow& r : rows)
        if (r.verdict.rfind("error", 0) == 0 || (req.verify && r.feasibility.feasible && r.verdict != "proper-biharmonic" &&
                                                 r.verdict != "no explicit family"))
            return 1;
    return 0;
}

int cmd_classify_curve(const FamilyFlags& ff, const std::string& in, const Config& cfg, std::ostream& out) {
    const BiharmonicReport r = in.empty() ? verify_family(ff, cfg) : verify_document(in, cfg);
    if (r.object != "curve") throw InvalidInput("classify works on curves");
    const ClassificationVerdict& v = r.verdict;
    out << "input,case,label,kappa1,kappa2,kappa3,f,alpha0,bitension_sup,tension_inf,conditions_hold\n";
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", in.empty() ? ff.family : in, v.case_name, r.label,
                       csv_number(v.measured.kappa1), csv_number(v.measured.kappa2), csv_number(v.measured.kappa3),
                       csv_number(v.measured.f), csv_number(v.measured.alpha0), csv_number(r.bitension_sup),
                       csv_number(r.tension_inf), v.conditions_hold ? "true" : "false");
    return r.exit_code();
}

int cmd_optimize(const FamilyFlags& ff, const std::string& in, const Config& cfg, const DescentOptions& dopt,
                 const std::string& outpath, const std::string& curve_out, std::ostream& out) {
    SampledCurve init;
    int n = 1;
    double a = 1.0;
    if (!in.empty()) {
        CurveDocument doc = curve_from_json(parse_json_file(in));
        init = doc.curve;
        n = doc.n;
        a = doc.a;
    } else {
        if (ff.family.empty()) throw InvalidInput("optimize needs --in FILE or --family");
        init = ff.make(cfg);
        n = static_cast<int>(init.family_params.at("n"));
        a = ff.a;
    }
    const SasakianSphere S(n, a);
    const DescentResult r = descend(S, init, dopt);
    const std::string csv = trajectory_csv(r);
    if (outpath.empty() || outpath == "-") out << csv;
    else write_text_file(outpath, csv);
    if (!curve_out.empty()) write_text_file(curve_out, dump_json(to_json(CurveDocument{n, a, 1, r.final_curve})));
    const DescentStep& first = r.trajectory.front();
    const DescentStep& last = r.trajectory.back();
    std::ostream& note = (outpath.empty() || outpath == "-") ? std::cerr : out;
    note << fmt::format("descent: {} accepted steps, E2 {:.6e} -> {:.6e}, bitension sup {:.3e} -> {:.3e}{}\n",
                        r.trajectory.size() - 1, first.E2, last.E2, first.bitension_sup, last.bitension_sup,
                        r.message.empty() ? "" : " (" + r.message + ")");
    return r.line_search_failed ? 1 : 0;
}

}  // namespace

// ---------------------------------------------------------------------------------------

std::vector<double> parse_range(const std::string& spec, const std::string& what) {
    std::vector<double> out;
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw InvalidInput(fmt::format("{}: '{}' is not a number", what, s));
        return x;
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3) throw InvalidInput(fmt::format("{}: range must be lo:hi:count", what));
        const double lo = num(parts[0]), hi = num(parts[1]);
        const double cnt = num(parts[2]);
        if (cnt < 1 || cnt != std::floor(cnt) || hi < lo) throw InvalidInput(fmt::format("{}: empty range '{}'", what, spec));
        const int k = static_cast<int>(cnt);
        for (int i = 0; i < k; ++i) out.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
        return out;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(num(tok));
    if (out.empty()) throw InvalidInput(fmt::format("{}: empty range", what));
    return out;
}

std::vector<SweepRow> run_sweep(const SweepRequest& req, const Config& cfg) {
    if (req.cases.empty()) throw InvalidInput("sweep needs at least one case");
    std::vector<double> cs = req.c_values;
    if (cs.empty()) {
        if (req.a_values.empty()) throw InvalidInput("sweep needs an a or c range");
        for (double a : req.a_values) {
            if (!(a > 0)) throw InvalidInput("a must be positive");
            cs.push_back(4.0 / a - 3.0);
        }
    }
    std::vector<SweepRow> rows;
    for (CaseId which : req.cases) {
        for (std::size_t ic = 0; ic < cs.size(); ++ic) {
            const double c = cs[ic];
            const double a = req.c_values.empty() ? req.a_values[ic] : (c > -3.0 ? 4.0 / (c + 3.0) : std::nan(""));
            auto base = [&](const std::string& shape) {
                SweepRow r;
                r.which = which;
                r.shape = shape;
                r.n = req.n.value_or(0);
                r.a = a;
                r.c = c;
                return r;
            };
            auto finish = [&](SweepRow r, FeasibilityParams p) {
                p.n = req.n;
                r.feasibility = feasibility(c, which, p);
                if (r.kappa1 && which != CaseId::III) {
                    const double k2sq = r.target - *r.kappa1 * *r.kappa1;
                    if (r.shape == "helix") {
                        if (k2sq > 0) r.kappa2 = std::sqrt(k2sq);
                        else if (r.feasibility.feasible) {
                            r.feasibility.feasible = false;
                            r.feasibility.reasons = {"kappa1^2 >= kappa1^2 + kappa2^2 target"};
                        }
                    }
                }
                rows.push_back(r);
            };
            switch (which) {
                case CaseId::I:
                case CaseId::II: {
                    const double target = which == CaseId::I ? 1.0 : (c + 3.0) / 4.0;
                    SweepRow circle = base("circle");
                    circle.target = target;
                    if (target > 0) circle.kappa1 = std::sqrt(target);
                    finish(circle, FeasibilityParams{std::nullopt, std::nullopt, false});
                    std::vector<std::optional<double>> ks;
                    for (double k : req.kappa1_values) ks.push_back(k);
                    if (ks.empty()) ks.push_back(std::nullopt);
                    for (const auto& k : ks) {
                        SweepRow helix = base("helix");
                        helix.target = target;
                        helix.kappa1 = k;
                        finish(helix, FeasibilityParams{std::nullopt, std::nullopt, true});
                    }
                    break;
                }
                case CaseId::III: {
                    SweepRow r = base("helix");
                    r.target = c - 1.0;
                    if (c > 1.0) {
                        r.kappa1 = std::sqrt(c - 1.0);
                        r.kappa2 = 1.0;
                    }
                    finish(r, FeasibilityParams{});
                    break;
                }
                case CaseId::IV: {
                    if (req.alpha0_values.empty()) throw InvalidInput("Case IV sweeps need --alpha0");
                    for (double al : req.alpha0_values) {
                        SweepRow r = base("-");
                        r.alpha0 = al;
                        r.target = (c + 3.0) / 4.0 + 3.0 * (c - 1.0) / 4.0 * std::cos(al) * std::cos(al);
                        finish(r, FeasibilityParams{std::nullopt, al, std::nullopt});
                    }
                    break;
                }
            }
        }
    }
    if (!req.verify) return rows;
    WorkerPool pool(req.threads);
    std::mutex mu;
    for (SweepRow& r : rows) {
        if (!r.feasibility.feasible) continue;
        pool.submit([&r, &cfg, &mu] {
            try {
                if (r.which == CaseId::IV) {
                    r.verdict = "no explicit family";
                    return;
                }
                CurveSpec s;
                s.a = r.a;
                const int n = r.n;
                if (r.which == CaseId::I) {
                    s.family = r.shape == "circle" ? CurveFamily::Thm39Circle : CurveFamily::Thm39Helix;
                    s.n = std::max(n, r.shape == "circle" ? 2 : 3);
                    s.kappa1 = r.kappa1.value_or(0.6);
                } else if (r.which == CaseId::II) {
                    s.family = r.shape == "circle" ? CurveFamily::Thm310Circle : CurveFamily::Thm310Helix;
                    s.n = std::max(n, r.shape == "circle" ? 2 : 3);
                    s.kappa1 = r.kappa1.value_or(std::sqrt(r.target / 2.0));
                } else {
                    s.family = CurveFamily::Thm311;
                    s.n = std::max(n, 1);
                }
                const SampledCurve curve = make_curve(s, cfg.integer("samples"));
                InputDescriptor d;
                d.source = "family";
                d.family = to_string(s.family);
                const BiharmonicReport rep = verify_curve(SasakianSphere(s.n, s.a), curve, d, cfg, expected_case(s.family));
                std::lock_guard<std::mutex> lk(mu);
                r.verdict = rep.pass ? rep.label : rep.label + " (failed)";
                r.bitension_sup = rep.bitension_sup;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(mu);
                r.verdict = std::string("error: ") + e.what();
            }
        });
    }
    pool.wait();
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "case,shape,n,a,c,alpha0,kappa1,kappa2,feasible,reason,target,verdict,bitension_sup\n";
    for (const SweepRow& r : rows) {
        std::string reason;
        if (!r.feasibility.feasible)
            for (const std::string& s : r.feasibility.reasons) reason += (reason.empty() ? "" : "; ") + s;
        out += fmt::format("{},{},{},{},{},{},{},{},{},\"{}\",{},{},{}\n", to_string(r.which), r.shape,
                           r.n > 0 ? std::to_string(r.n) : "", csv_number(r.a), csv_number(r.c), csv_number(r.alpha0),
                           csv_number(r.kappa1), csv_number(r.kappa2), r.feasibility.feasible ? "true" : "false", reason,
                           csv_number(r.target), r.verdict, csv_number(r.bitension_sup));
    }
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical verification of biharmonic Legendre curves and flow-generated submanifolds in Sasakian space forms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sasaki 1.0");

    Common common;
    FamilyFlags ff;
    std::string in, outpath, curve_out, case_s, a_s, c_s, k_s, alpha_s, criteria_s, shape = "circle";
    std::optional<double> alpha0, c_value;
    std::optional<int> n_opt;
    bool verify_rows = false, fast = false, flip = false;
    int threads = 0;
    DescentOptions dopt;
    double detune_opt = 1.0;

    auto* gen = app.add_subcommand("generate", "write a curve or immersion interchange file");
    common.attach(gen);
    ff.attach(gen, true);
    gen->add_option("--out", outpath, "output JSON file");

    auto* ver = app.add_subcommand("verify", "residual suite and verdict for a curve or immersion");
    common.attach(ver);
    ff.attach(ver, false);
    ver->add_option("--in", in, "interchange file");
    ver->add_option("--out", outpath, "report file (default: standard output)");

    auto* cls = app.add_subcommand("classify", "existence predicate at one point, or the verdict of a curve");
    common.attach(cls);
    ff.attach(cls, false);
    cls->add_option("--in", in, "curve interchange file");
    cls->add_option("--case", case_s, "I, II, III or IV");
    cls->add_option("--c", c_value, "phi-sectional curvature (instead of --a)");
    cls->add_option("--alpha0", alpha0, "angle for Case IV");
    cls->add_option("--shape", shape, "circle or helix (Cases I and II)");

    auto* swp = app.add_subcommand("sweep", "existence table over parameter ranges");
    common.attach(swp);
    swp->add_option("--case", case_s, "comma-separated cases or 'all'");
    swp->add_option("--a", a_s, "a values: lo:hi:count or comma list");
    swp->add_option("--c", c_s, "c values: lo:hi:count or comma list");
    swp->add_option("--kappa1", k_s, "kappa1 values for helix rows");
    swp->add_option("--alpha0", alpha_s, "alpha0 values for Case IV rows");
    swp->add_option("--n", n_opt, "dimension parameter");
    swp->add_flag("--verify", verify_rows, "construct and verify an explicit curve for each feasible row");
    swp->add_option("--threads", threads, "worker threads (0: hardware)");
    swp->add_option("--out", outpath, "CSV file (default: standard output)");

    auto* opt = app.add_subcommand("optimize", "bienergy descent from a periodic curve");
    common.attach(opt);
    ff.attach(opt, false);
    opt->add_option("--in", in, "curve interchange file");
    opt->add_option("--steps", dopt.steps, "maximum descent steps");
    opt->add_option("--rate", dopt.rate, "initial step size");
    opt->add_option("--modes", dopt.modes, "Fourier modes per coordinate");
    opt->add_option("--out", outpath, "trajectory CSV (default: standard output)");
    opt->add_option("--curve-out", curve_out, "final curve interchange file");
    (void)detune_opt;

    auto* st = app.add_subcommand("selftest", "calibrations and the acceptance suite");
    st->add_flag("--fast", fast, "reduced resolutions");
    st->add_option("--criteria", criteria_s, "subset of criteria, e.g. 1-8,10");
    st->add_flag("--inject-curvature-sign-flip", flip, "negate the curvature tensor (calibration negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(ff, common.load(), outpath, out);
        if (ver->parsed()) return cmd_verify(ff, in, common.load(), outpath, out);
        if (cls->parsed()) {
            const Config cfg = common.load();
            if (!in.empty() || (!ff.family.empty() && case_s.empty())) return cmd_classify_curve(ff, in, cfg, out);
            if (case_s.empty()) throw InvalidInput("classify needs --case, --in or --family");
            SweepRequest req;
            req.cases = {parse_case(case_s)};
            if (c_value) req.c_values = {*c_value};
            else req.a_values = {ff.a};
            if (alpha0) req.alpha0_values = {*alpha0};
            if (ff.kappa1) req.kappa1_values = {*ff.kappa1};
            req.n = ff.n;
            std::vector<SweepRow> rows = run_sweep(req, cfg);
            if (req.cases[0] == CaseId::I || req.cases[0] == CaseId::II) {
                std::vector<SweepRow> keep;
                for (const SweepRow& r : rows)
                    if (r.shape == shape) keep.push_back(r);
                if (keep.empty()) throw InvalidInput("--shape must be circle or helix");
                rows = keep;
            }
            out << sweep_csv(rows);
            return 0;
        }
        if (swp->parsed()) {
            SweepRequest req;
            req.cases = parse_cases(case_s);
            if (!c_s.empty()) req.c_values = parse_range(c_s, "--c");
            else if (!a_s.empty()) req.a_values = parse_range(a_s, "--a");
            else throw InvalidInput("sweep needs --a or --c");
            if (!k_s.empty()) req.kappa1_values = parse_range(k_s, "--kappa1");
            if (!alpha_s.empty()) req.alpha0_values = parse_range(alpha_s, "--alpha0");
            req.n = n_opt;
            req.verify = verify_rows;
            req.threads = threads;
            return cmd_sweep(req, common.load(), outpath, out);
        }
        if (opt->parsed()) return cmd_optimize(ff, in, common.load(), dopt, outpath, curve_out, out);
        if (st->parsed()) {
            SelftestOptions so;
            so.fast = fast;
            so.inject_curvature_sign_flip = flip;
            if (!criteria_s.empty()) so.criteria = parse_criteria(criteria_s);
            return run_selftest(so, out);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("sasaki");
    for (const std::string& s : args) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sasaki::app
