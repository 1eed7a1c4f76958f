#include "sasaki/biharmonic.hpp"

#include "sasaki/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace sasaki {

namespace {
const double kPi = 3.14159265358979323846;

double kappa_at(const SampleAnalysis& A, int i, int order) {
    // κ_i, zero beyond the osculating order
    return i < order && i - 1 < static_cast<int>(A.kappa.size()) ? A.kappa[i - 1] : 0.0;
}

double spread(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}
}  // namespace

std::vector<Vec> tension(const SasakianSphere& S, const SampledCurve& curve, const CurveEvalOptions& opt) {
    const Connection C(S);
    std::vector<Vec> out;
    for (const auto& A : analyze_curve(C, curve, opt).data) out.push_back(A.X1);
    return out;
}

BitensionBreakdown bitension(const Connection& C, const CurveAnalysis& an, const SampledCurve& curve,
                             const BiharmonicOptions& opt) {
    const SasakianSphere& S = C.sphere();
    const double c = S.c();
    BitensionBreakdown b;
    b.samples = an.samples;
    b.tension_inf = 1e300;
    double l2 = 0.0;
    for (const SampleAnalysis& A : an.data) {
        const int r = A.order;
        b.params.push_back(A.s);
        b.tension.push_back(A.X1);
        const Vec direct = A.X3 - curvature_formula(S, A.point, A.T, A.X1, A.T);
        const double k1 = kappa_at(A, 1, r), k2 = kappa_at(A, 2, r), k3 = kappa_at(A, 3, r);
        const double f = r >= 2 ? S.g(A.point, A.E[1], A.phiT) : 0.0;
        const double k2p = r >= 3 ? A.k2p : 0.0;
        std::array<double, 5> cf = {-3.0 * k1 * A.k1p,
                                    A.k1pp - k1 * k1 * k1 - k1 * k2 * k2 + (c + 3.0) * k1 / 4.0,
                                    2.0 * A.k1p * k2 + k1 * k2p,
                                    k1 * k2 * k3,
                                    3.0 * (c - 1.0) * k1 / 4.0 * f};
        Vec fr = cf[0] * A.E[0] + cf[4] * A.phiT;
        for (int i = 1; i < 4; ++i)
            if (i < r) fr += cf[i] * A.E[i];
        // terms whose frame vector is absent carry a vanishing coefficient
        b.direct.push_back(direct);
        b.frenet.push_back(fr);
        b.components.push_back(cf);
        b.f.push_back(f);
        // the expansion re-summed term by term must reproduce the stored field
        Vec resum = Vec::Zero(fr.size());
        for (int i = 0; i < 4 && i < r; ++i) resum += cf[i] * A.E[i];
        resum += cf[4] * A.phiT;
        b.resum_residual = std::max(b.resum_residual, S.norm(A.point, resum - fr));
        const Vec curv = curvature_formula(S, A.point, A.T, A.X1, A.T);
        Vec curv_frenet = -(3.0 * (c - 1.0) * k1 / 4.0 * f) * A.phiT;
        if (r >= 2) curv_frenet -= (c + 3.0) * k1 / 4.0 * A.E[1];
        b.curvature_term_residual = std::max(b.curvature_term_residual, S.norm(A.point, curv - curv_frenet));
        b.tangential_residual = std::max(b.tangential_residual, std::abs(S.g(A.point, direct, A.T)));
        const double nd = S.norm(A.point, direct);
        b.sup = std::max(b.sup, nd);
        l2 += nd * nd;
        b.frenet_sup = std::max(b.frenet_sup, S.norm(A.point, fr));
        b.path_disagreement = std::max(b.path_disagreement, S.norm(A.point, direct - fr));
        const double nt = S.norm(A.point, A.X1);
        b.tension_sup = std::max(b.tension_sup, nt);
        b.tension_inf = std::min(b.tension_inf, nt);
    }
    // L2 over the sampled parameter length
    const double h = curve.size() > 1 ? curve.spacing() : 0.0;
    b.l2 = std::sqrt(l2 * h);
    b.paths_agree = b.path_disagreement < opt.path_tol;
    return b;
}

BitensionBreakdown bitension(const SasakianSphere& S, const SampledCurve& curve, const BiharmonicOptions& opt,
                             const CurveEvalOptions& eval) {
    const Connection C(S);
    return bitension(C, analyze_curve(C, curve, eval), curve, opt);
}

ClassificationVerdict classify(const SasakianSphere& S, const CurveAnalysis& an, const BitensionBreakdown& b,
                               const BiharmonicOptions& opt) {
    if (an.samples != b.samples) throw InvalidInput("apparatus and bitension come from different curves");
    ClassificationVerdict v;
    const double c = S.c();
    const FrenetApparatus& F = an.apparatus;
    auto cond = [&](const std::string& name, double residual, double tol) {
        v.conditions.push_back(Condition{name, residual, residual < tol});
        if (!(residual < tol)) v.conditions_hold = false;
    };
    if (!b.paths_agree)
        v.notes.push_back(fmt::format("bitension paths disagree by {:.3e}: finite differences under-resolved", b.path_disagreement));
    v.biharmonic = b.sup < opt.bitension_tol;
    const bool harmonic = b.tension_sup < opt.tension_floor;
    v.proper = v.biharmonic && b.tension_inf > opt.tension_floor;

    std::vector<double> k1, k2, k3, f;
    for (const SampleAnalysis& A : an.data) {
        k1.push_back(kappa_at(A, 1, A.order));
        k2.push_back(kappa_at(A, 2, A.order));
        k3.push_back(kappa_at(A, 3, A.order));
    }
    f = b.f;
    Measured& m = v.measured;
    m.kappa1 = mean(k1);
    m.kappa2 = mean(k2);
    m.kappa3 = mean(k3);
    m.f = mean(f);
    m.f_spread = spread(f);

    if (harmonic) {
        v.case_name = "geodesic";
        v.notes.push_back("harmonic: biharmonic but not proper");
        return v;
    }
    if (F.indeterminate) {
        v.case_name = "indeterminate";
        v.notes.push_back("osculating order is not constant along the curve");
        return v;
    }
    if (!v.biharmonic) {
        v.case_name = "non-biharmonic";
        return v;
    }
    if (!v.proper) {
        v.case_name = "indeterminate";
        v.notes.push_back("tension vanishes somewhere but not everywhere");
        return v;
    }
    const bool f_const = m.f_spread < opt.constant_tol;
    cond("kappa1 constant", spread(k1), opt.constant_tol);
    cond("kappa2 constant", spread(k2), opt.constant_tol);

    // α0 and the Case IV first integral
    if (F.order >= 2) {
        std::vector<double> al, om;
        for (std::size_t k = 0; k < an.data.size(); ++k) {
            const SampleAnalysis& A = an.data[k];
            const double e4 = A.order >= 4 ? S.g(A.point, A.phiT, A.E[3]) : 0.0;
            al.push_back(std::atan2(e4, f[k]));
            om.push_back(k2[k] * k2[k] + 3.0 * (c - 1.0) / 4.0 * f[k] * f[k]);
        }
        // circular mean
        double cs = 0, sn = 0;
        for (double x : al) cs += std::cos(x), sn += std::sin(x);
        double a0 = std::atan2(sn, cs);
        if (a0 < 0) a0 += 2 * kPi;
        double var = 0;
        for (double x : al) {
            const double d = std::remainder(x - a0, 2 * kPi);
            var += d * d;
        }
        if (F.order >= 4) {
            m.alpha0 = a0;
            m.alpha0_std = std::sqrt(var / al.size());
        }
        const double om_mean = mean(om);
        double ov = 0;
        for (double x : om) ov += (x - om_mean) * (x - om_mean);
        if (F.order >= 3) {
            m.omega0 = om_mean;
            m.omega0_var = ov / om.size();
        }
    }

    double sum_max = 0, k2k3_max = 0;
    if (std::abs(c - 1.0) < 1e-12) {
        v.case_name = "I";
        for (std::size_t k = 0; k < k1.size(); ++k) {
            sum_max = std::max(sum_max, std::abs(k1[k] * k1[k] + k2[k] * k2[k] - 1.0));
            k2k3_max = std::max(k2k3_max, std::abs(k2[k] * k3[k]));
        }
        cond("kappa1^2 + kappa2^2 = 1", sum_max, opt.condition_tol);
        cond("kappa2 kappa3 = 0", k2k3_max, opt.condition_tol);
        return v;
    }
    if (!f_const) {
        v.case_name = "indeterminate";
        v.conditions_hold = false;
        v.notes.push_back(fmt::format("g(E2, phi T) not constant (spread {:.3e})", m.f_spread));
        return v;
    }
    const double target_II = (c + 3.0) / 4.0;
    if (std::abs(m.f) < opt.case_margin) {
        v.case_name = "II";
        for (std::size_t k = 0; k < k1.size(); ++k) {
            sum_max = std::max(sum_max, std::abs(k1[k] * k1[k] + k2[k] * k2[k] - target_II));
            k2k3_max = std::max(k2k3_max, std::abs(k2[k] * k3[k]));
        }
        cond("kappa1^2 + kappa2^2 = (c+3)/4", sum_max, opt.condition_tol);
        cond("kappa2 kappa3 = 0", k2k3_max, opt.condition_tol);
        cond("f = 0", std::abs(m.f) + m.f_spread, opt.condition_tol);
        return v;
    }
    if (std::abs(std::abs(m.f) - 1.0) < opt.case_margin) {
        v.case_name = "III";
        double r1 = 0, r2 = 0;
        for (std::size_t k = 0; k < k1.size(); ++k) {
            r1 = std::max(r1, std::abs(k1[k] * k1[k] - (c - 1.0)));
            r2 = std::max(r2, std::abs(k2[k] - 1.0));
        }
        cond("f = +-1", std::abs(std::abs(m.f) - 1.0) + m.f_spread, opt.condition_tol);
        cond("kappa1^2 = c - 1", r1, opt.condition_tol);
        cond("kappa2 = 1", r2, opt.condition_tol);
        return v;
    }
    v.case_name = "IV";
    if (!m.alpha0) {
        v.case_name = "indeterminate";
        v.conditions_hold = false;
        v.notes.push_back("f is not 0 or +-1 but E4 is not resolved");
        return v;
    }
    const double a0 = *m.alpha0;
    cond("f = cos alpha0", std::abs(m.f - std::cos(a0)) + m.f_spread, opt.condition_tol);
    const double cs2 = std::cos(a0) * std::cos(a0);
    for (std::size_t k = 0; k < k1.size(); ++k) {
        sum_max = std::max(sum_max, std::abs(k1[k] * k1[k] + k2[k] * k2[k] - target_II - 3.0 * (c - 1.0) / 4.0 * cs2));
        k2k3_max = std::max(k2k3_max, std::abs(k2[k] * k3[k] + 3.0 * (c - 1.0) / 8.0 * std::sin(2 * a0)));
    }
    cond("kappa1^2 + kappa2^2 = (c+3)/4 + 3(c-1)/4 cos^2 alpha0", sum_max, opt.condition_tol);
    cond("kappa2 kappa3 = -3(c-1)/8 sin 2alpha0", k2k3_max, opt.condition_tol);
    cond("c + 3 + 3(c-1) cos^2 alpha0 > 0", std::max(0.0, -(c + 3.0 + 3.0 * (c - 1.0) * cs2)), 1e-300);
    cond("3(c-1) sin 2alpha0 < 0", std::max(0.0, 3.0 * (c - 1.0) * std::sin(2 * a0)), 1e-300);
    if (m.omega0_var) cond("omega0 constant", *m.omega0_var, 1e-8);
    return v;
}

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV: return "IV";
    }
    return "?";
}

CaseId parse_case(const std::string& s) {
    std::string k;
    for (char ch : s) k += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (k == "I" || k == "1") return CaseId::I;
    if (k == "II" || k == "2") return CaseId::II;
    if (k == "III" || k == "3") return CaseId::III;
    if (k == "IV" || k == "4") return CaseId::IV;
    throw InvalidInput(fmt::format("unknown case '{}'", s));
}

Feasibility feasibility(double c, CaseId which, const FeasibilityParams& p) {
    Feasibility out;
    out.feasible = true;
    auto need = [&](bool ok, const std::string& violated, const std::string& satisfied) {
        if (!ok) {
            if (out.feasible) out.reasons.clear();
            out.feasible = false;
            out.reasons.push_back(violated);
        } else if (out.feasible) {
            out.reasons.push_back(satisfied);
        }
    };
    const bool round = std::abs(c - 1.0) < 1e-12;
    switch (which) {
        case CaseId::I:
            need(round, "c != 1", "c = 1");
            if (p.n) need(*p.n >= 2, "n < 2", "n >= 2");
            break;
        case CaseId::II:
            need(!round, "c = 1", "c != 1");
            need(c > -3.0, "c <= -3", "c > -3");
            if (p.n) {
                const int nmin = p.helix.value_or(false) ? 3 : 2;
                need(*p.n >= nmin, fmt::format("n < {}", nmin), fmt::format("n >= {}", nmin));
            }
            break;
        case CaseId::III:
            need(!round, "c = 1", "c != 1");
            need(c > 1.0, "c <= 1", "c > 1");
            break;
        case CaseId::IV: {
            need(!round, "c = 1", "c != 1");
            need(c > -3.0, "c <= -3", "c > -3");
            if (p.n) need(*p.n >= 2, "n < 2", "n >= 2");
            if (!p.alpha0) {
                need(false, "alpha0 required", "");
                break;
            }
            const double a = *p.alpha0;
            const double eps = 1e-12;
            const bool in_range = a > eps && a < 2 * kPi - eps && std::abs(a - kPi / 2) > eps && std::abs(a - kPi) > eps &&
                                  std::abs(a - 3 * kPi / 2) > eps;
            need(in_range, "alpha0 not in (0,2pi) minus {pi/2, pi, 3pi/2}", "alpha0 admissible");
            const double cs2 = std::cos(a) * std::cos(a);
            need(c + 3.0 + 3.0 * (c - 1.0) * cs2 > 0, "c + 3 + 3(c-1)cos^2(alpha0) <= 0", "c + 3 + 3(c-1)cos^2(alpha0) > 0");
            need(3.0 * (c - 1.0) * std::sin(2 * a) < 0, "3(c-1)sin(2 alpha0) >= 0", "3(c-1)sin(2 alpha0) < 0");
            break;
        }
    }
    return out;
}

}  // namespace sasaki
