#include "sasaki/variational.hpp"

#include "sasaki/biharmonic.hpp"
#include "sasaki/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <sstream>

namespace sasaki {

namespace {
const double kPi = 3.14159265358979323846;

void require_periodic(const SampledCurve& c) {
    if (!c.periodic || !(c.period > 0)) throw InvalidInput("bienergy needs a periodic curve");
    if (c.size() < 8) throw InvalidInput("periodic curve needs at least 8 samples");
}

void require_round(const SasakianSphere& S) {
    if (S.a() != 1.0) throw InvalidInput("variational checks are restricted to the round sphere (a = 1)");
}

// Trigonometric-interpolation derivative matrix on N equispaced samples of one period.
Mat spectral_matrix(int N, double period) {
    Mat D = Mat::Zero(N, N);
    const double scale = 2 * kPi / period;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            const double x = (i - j) * kPi / N;
            const double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * sgn * (N % 2 == 0 ? 1.0 / std::tan(x) : 1.0 / std::sin(x)) * scale;
        }
    return D;
}

Mat stack(const std::vector<Vec>& v) {
    Mat M(v.size(), v[0].size());
    for (std::size_t i = 0; i < v.size(); ++i) M.row(i) = v[i].transpose();
    return M;
}

Vec tangential(const Vec& z, const Vec& v) { return v - v.dot(z) * z; }

struct MapFields {
    std::vector<Vec> vel, tau, tau2;
};

MapFields map_fields(const SasakianSphere& S, const std::vector<Vec>& pts, double period, bool with_bitension) {
    const Connection C(S);
    const int N = static_cast<int>(pts.size());
    const Mat D = spectral_matrix(N, period);
    const Mat X = stack(pts);
    const Mat X1 = D * X, X2 = D * X1;
    MapFields f;
    std::vector<Connection::PointData> pd(N);
    for (int j = 0; j < N; ++j) {
        pd[j] = C.prepare(pts[j]);
        const Vec v = X1.row(j).transpose();
        f.vel.push_back(tangential(pts[j], v));
        f.tau.push_back(tangential(pts[j], X2.row(j).transpose()) + C.difference(pd[j], f.vel[j], f.vel[j]));
    }
    if (!with_bitension) return f;
    const Mat T1 = D * stack(f.tau);
    std::vector<Vec> ntau(N);
    for (int j = 0; j < N; ++j)
        ntau[j] = tangential(pts[j], T1.row(j).transpose()) + C.difference(pd[j], f.vel[j], f.tau[j]);
    const Mat T2 = D * stack(ntau);
    for (int j = 0; j < N; ++j) {
        const Vec nn = tangential(pts[j], T2.row(j).transpose()) + C.difference(pd[j], f.vel[j], ntau[j]);
        f.tau2.push_back(nn - curvature_formula(S, pts[j], f.vel[j], f.tau[j], f.vel[j]));
    }
    return f;
}

double energy_of(const SasakianSphere& S, const std::vector<Vec>& pts, double period, std::vector<double>* norms = nullptr) {
    const MapFields f = map_fields(S, pts, period, false);
    const double h = period / pts.size();
    double e = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double t = S.norm(pts[j], f.tau[j]);
        if (norms) norms->push_back(t);
        e += t * t;
    }
    return 0.5 * e * h;
}

std::vector<Vec> exp_samples(const std::vector<Vec>& pts, const std::vector<Vec>& V, double eps) {
    std::vector<Vec> out(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double nv = V[j].norm();
        out[j] = nv == 0.0 ? pts[j] : Vec(std::cos(eps * nv) * pts[j] + std::sin(eps * nv) / nv * V[j]);
    }
    return out;
}

double rms(const SasakianSphere& S, const SampledCurve& c, const std::vector<Vec>& V) {
    double s = 0;
    for (int j = 0; j < c.size(); ++j) s += S.g(c.points[j], V[j], V[j]);
    return std::sqrt(s / c.size());
}
}  // namespace

BienergyValue bienergy(const SasakianSphere& S, const SampledCurve& curve) {
    require_periodic(curve);
    BienergyValue out;
    out.samples = curve.size();
    out.E2 = energy_of(S, curve.points, curve.period, &out.tension_norms);
    double other = out.E2;
    if (curve.analytic) {
        const SampledCurve fine = SampledCurve::from_map(curve.analytic, curve.params.front(), curve.period, 2 * curve.size(), true);
        other = energy_of(S, fine.points, curve.period);
    } else if (curve.size() % 2 == 0 && curve.size() >= 16) {
        std::vector<Vec> half;
        for (int j = 0; j < curve.size(); j += 2) half.push_back(curve.points[j]);
        other = energy_of(S, half, curve.period);
    }
    const double scale = std::max(std::abs(out.E2), 1e-300);
    out.refinement_rel = std::abs(out.E2) < 1e-300 && std::abs(other) < 1e-300 ? 0.0 : std::abs(other - out.E2) / scale;
    return out;
}

std::vector<Vec> map_tension(const SasakianSphere& S, const SampledCurve& curve) {
    require_periodic(curve);
    return map_fields(S, curve.points, curve.period, false).tau;
}

std::vector<Vec> map_bitension(const SasakianSphere& S, const SampledCurve& curve) {
    require_periodic(curve);
    return map_fields(S, curve.points, curve.period, true).tau2;
}

VariationField random_variation(const SasakianSphere& S, const SampledCurve& curve, int modes, std::mt19937_64& rng) {
    require_periodic(curve);
    std::normal_distribution<double> N01(0.0, 1.0);
    const int d = curve.ambient_dim();
    std::vector<Vec> A(modes + 1, Vec(d)), B(modes + 1, Vec(d));
    for (int k = 0; k <= modes; ++k)
        for (int m = 0; m < d; ++m) {
            A[k][m] = N01(rng);
            B[k][m] = N01(rng);
        }
    std::vector<Vec> vals;
    const double w = 2 * kPi / curve.period;
    for (int j = 0; j < curve.size(); ++j) {
        const double t = curve.params[j];
        Vec v = A[0];
        for (int k = 1; k <= modes; ++k) v += std::cos(k * w * t) * A[k] + std::sin(k * w * t) * B[k];
        vals.push_back(v);
    }
    VariationField V = normalized_variation(S, curve, vals);
    V.modes = modes;
    return V;
}

VariationField normalized_variation(const SasakianSphere& S, const SampledCurve& curve, const std::vector<Vec>& values) {
    if (static_cast<int>(values.size()) != curve.size()) throw InvalidInput("variation field size does not match the curve");
    VariationField V;
    for (int j = 0; j < curve.size(); ++j) V.values.push_back(tangential(curve.points[j], values[j]));
    const double r = rms(S, curve, V.values);
    if (r > 0)
        for (Vec& v : V.values) v /= r;
    return V;
}

double first_variation(const SasakianSphere& S, const SampledCurve& curve, const VariationField& V, const VariationOptions& opt) {
    require_round(S);
    require_periodic(curve);
    if (static_cast<int>(V.values.size()) != curve.size()) throw InvalidInput("variation field size does not match the curve");
    auto E = [&](double eps) { return energy_of(S, exp_samples(curve.points, V.values, eps), curve.period); };
    auto central = [&](double eps) { return (E(eps) - E(-eps)) / (2 * eps); };
    const double d1 = central(opt.epsilon);
    if (!opt.richardson) return d1;
    const double d2 = central(2 * opt.epsilon);
    return (4 * d1 - d2) / 3;
}

VariationCheck variation_formula_check(const SasakianSphere& S, const SampledCurve& curve, const VariationField& V,
                                       const VariationOptions& opt) {
    VariationCheck r;
    r.fd = first_variation(S, curve, V, opt);
    std::vector<Vec> tau2;
    if (curve.unit_speed) {
        const BitensionBreakdown b = bitension(S, curve);
        if (static_cast<int>(b.samples.size()) == curve.size()) {
            tau2 = b.direct;
            r.field_route = "curve bitension (direct path)";
        }
    }
    if (tau2.empty()) {
        tau2 = map_bitension(S, curve);
        r.field_route = "map bitension (spectral)";
    }
    const double h = curve.period / curve.size();
    for (int j = 0; j < curve.size(); ++j) r.formula += S.g(curve.points[j], tau2[j], V.values[j]) * h;
    r.residual = std::abs(r.fd - r.formula);
    return r;
}

FourierCurve FourierCurve::fit(const SampledCurve& curve, int modes) {
    require_periodic(curve);
    if (2 * modes + 1 > curve.size()) throw InvalidInput("too many Fourier modes for the sample count");
    FourierCurve F;
    F.period = curve.period;
    const int d = curve.ambient_dim(), N = curve.size();
    F.a.assign(modes + 1, Vec::Zero(d));
    F.b.assign(modes + 1, Vec::Zero(d));
    const double w = 2 * kPi / curve.period;
    for (int j = 0; j < N; ++j) {
        const double t = curve.params[j] - curve.params[0];
        F.a[0] += curve.points[j] / N;
        for (int k = 1; k <= modes; ++k) {
            F.a[k] += 2.0 / N * std::cos(k * w * t) * curve.points[j];
            F.b[k] += 2.0 / N * std::sin(k * w * t) * curve.points[j];
        }
    }
    return F;
}

SampledCurve FourierCurve::sample(int samples) const {
    SampledCurve c;
    c.periodic = true;
    c.period = period;
    const double w = 2 * kPi / period;
    for (int j = 0; j < samples; ++j) {
        const double t = period * j / samples;
        Vec v = a[0];
        for (int k = 1; k <= modes(); ++k) v += std::cos(k * w * t) * a[k] + std::sin(k * w * t) * b[k];
        const double n = v.norm();
        if (!(n > 1e-12)) throw NumericalFailure("Fourier curve passes through the origin");
        c.params.push_back(t);
        c.points.push_back(v / n);
    }
    return c;
}

std::vector<double> FourierCurve::pack() const {
    std::vector<double> x;
    for (const Vec& v : a) x.insert(x.end(), v.data(), v.data() + v.size());
    for (std::size_t k = 1; k < b.size(); ++k) x.insert(x.end(), b[k].data(), b[k].data() + b[k].size());
    return x;
}

void FourierCurve::unpack(const std::vector<double>& x) {
    std::size_t p = 0;
    for (Vec& v : a)
        for (int m = 0; m < v.size(); ++m) v[m] = x[p++];
    for (std::size_t k = 1; k < b.size(); ++k)
        for (int m = 0; m < b[k].size(); ++m) b[k][m] = x[p++];
}

double fourier_bienergy(const SasakianSphere& S, const FourierCurve& F, int samples) {
    return energy_of(S, F.sample(samples).points, F.period);
}

std::vector<double> coefficient_gradient(const SasakianSphere& S, const FourierCurve& F, int samples) {
    require_round(S);
    const SampledCurve c = F.sample(samples);
    const std::vector<Vec> tau2 = map_fields(S, c.points, c.period, true).tau2;
    const double w = 2 * kPi / F.period, h = F.period / samples;
    const int K = F.modes(), d = static_cast<int>(F.a[0].size());
    std::vector<Vec> ga(K + 1, Vec::Zero(d)), gb(K + 1, Vec::Zero(d));
    for (int j = 0; j < samples; ++j) {
        const double t = c.params[j];
        Vec raw = F.a[0];
        for (int k = 1; k <= K; ++k) raw += std::cos(k * w * t) * F.a[k] + std::sin(k * w * t) * F.b[k];
        // δγ = tan(δc) / |c|, and τ₂ is tangent
        const Vec q = tau2[j] * (h / raw.norm());
        ga[0] += q;
        for (int k = 1; k <= K; ++k) {
            ga[k] += std::cos(k * w * t) * q;
            gb[k] += std::sin(k * w * t) * q;
        }
    }
    FourierCurve G = F;
    G.a = ga;
    G.b = gb;
    return G.pack();
}

DescentResult descend(const SasakianSphere& S, const SampledCurve& init, const DescentOptions& opt) {
    require_round(S);
    require_periodic(init);
    const int N = opt.samples > 0 ? opt.samples : init.size();
    FourierCurve F = FourierCurve::fit(init, opt.modes);
    const int d = init.ambient_dim();
    std::vector<double> x = F.pack();
    // (1 + k²)^-2 per coefficient, same packing as FourierCurve::pack
    std::vector<double> pre;
    for (int k = 0; k <= opt.modes; ++k) pre.insert(pre.end(), d, 1.0 / std::pow(1.0 + k * k, 2));
    for (int k = 1; k <= opt.modes; ++k) pre.insert(pre.end(), d, 1.0 / std::pow(1.0 + k * k, 2));

    DescentResult res;
    auto record = [&](int step, double E, double s) {
        const SampledCurve c = F.sample(N);
        const MapFields f = map_fields(S, c.points, c.period, true);
        DescentStep st{step, E, 0, 0, s};
        for (int j = 0; j < N; ++j) {
            st.tension_sup = std::max(st.tension_sup, f.tau[j].norm());
            st.bitension_sup = std::max(st.bitension_sup, f.tau2[j].norm());
        }
        res.trajectory.push_back(st);
    };
    double E = fourier_bienergy(S, F, N);
    record(0, E, 0.0);
    double s = opt.rate;
    for (int step = 1; step <= opt.steps; ++step) {
        const std::vector<double> g = coefficient_gradient(S, F, N);
        std::vector<double> dir(g.size());
        double slope = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            dir[i] = -pre[i] * g[i];
            slope += g[i] * dir[i];
        }
        if (!(slope < 0)) {
            res.message = "stationary: gradient vanishes";
            break;
        }
        bool accepted = false;
        double Enew = E;
        FourierCurve trial = F;
        for (int bt = 0; bt < opt.max_backtracks; ++bt) {
            std::vector<double> xt(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + s * dir[i];
            trial.unpack(xt);
            try {
                Enew = fourier_bienergy(S, trial, N);
            } catch (const NumericalFailure&) {
                Enew = INFINITY;
            }
            if (Enew <= E + opt.armijo * s * slope && Enew < E) {
                x = xt;
                accepted = true;
                break;
            }
            s *= opt.shrink;
        }
        if (!accepted) {
            if (E - Enew == 0.0 || std::abs(slope) * s < 1e-300) res.message = "stationary: no decrease at machine precision";
            else res.message = "line search failed";
            res.line_search_failed = res.message == "line search failed";
            break;
        }
        F = trial;
        E = Enew;
        record(step, E, s);
        s *= opt.grow;
    }
    res.final_curve = F.sample(N);
    return res;
}

std::string trajectory_csv(const DescentResult& r) {
    std::ostringstream os;
    os << "step,E2,tension_sup,bitension_sup,step_size\n";
    for (const DescentStep& s : r.trajectory)
        os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.step, s.E2, s.tension_sup, s.bitension_sup, s.step_size);
    return os.str();
}

}  // namespace sasaki
