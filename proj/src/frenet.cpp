#include "sasaki/frenet.hpp"

#include "sasaki/errors.hpp"
#include "sasaki/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace sasaki {

double SampledCurve::spacing() const {
    if (params.size() < 2) throw InvalidInput("curve needs at least two samples");
    return (params.back() - params.front()) / static_cast<double>(params.size() - 1);
}

SampledCurve SampledCurve::from_map(std::shared_ptr<const TrigMap> map, double t0, double length, int samples,
                                    bool periodic) {
    if (!map || map->param_dim() != 1) throw InvalidInput("curve map must have one parameter");
    if (samples < 8) throw InvalidInput("a curve needs at least 8 samples");
    if (!(length > 0)) throw InvalidInput("curve domain length must be positive");
    SampledCurve c;
    c.periodic = periodic;
    c.period = periodic ? length : 0.0;
    const double h = periodic ? length / samples : length / (samples - 1);
    for (int k = 0; k < samples; ++k) {
        const double s = t0 + k * h;
        Vec p(1);
        p[0] = s;
        c.params.push_back(s);
        c.points.push_back(map->value(p));
    }
    c.analytic = std::move(map);
    return c;
}

SampledCurve SampledCurve::from_points(std::vector<double> params, std::vector<Vec> points, bool periodic, double period) {
    if (params.size() != points.size()) throw InvalidInput("params and points differ in length");
    if (params.size() < 16) throw InvalidInput("a sampled curve needs at least 16 samples");
    const int dim = static_cast<int>(points[0].size());
    for (const Vec& p : points) {
        if (p.size() != dim) throw InvalidInput("points have inconsistent dimension");
        SpherePoint::make(p);
    }
    const double h = (params.back() - params.front()) / static_cast<double>(params.size() - 1);
    for (std::size_t k = 1; k < params.size(); ++k) {
        const double d = params[k] - params[k - 1];
        if (!(d > 0)) throw InvalidInput("parameter grid is not strictly increasing");
        if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw InvalidInput("parameter grid is not uniform; resample it first");
    }
    if (periodic) {
        const double expect = h * static_cast<double>(params.size());
        if (std::abs(period - expect) > 1e-9 * std::max(1.0, period))
            throw InvalidInput(fmt::format("period {} does not match the grid (expected {})", period, expect));
    }
    SampledCurve c;
    c.params = std::move(params);
    c.points = std::move(points);
    c.periodic = periodic;
    c.period = periodic ? period : 0.0;
    return c;
}

namespace {

int wrap_index(int i, int m) {
    int r = i % m;
    return r < 0 ? r + m : r;
}

int grid_node(const SampledCurve& c, double t) {
    const double h = c.spacing();
    double u = (t - c.params.front()) / h;
    if (c.periodic) {
        const double m = static_cast<double>(c.size());
        u = std::fmod(u, m);
        if (u < 0) u += m;
    }
    const long k = std::lround(u);
    if (std::abs(u - static_cast<double>(k)) > 1e-7) throw InvalidInput("t is not a grid node of a sampled curve");
    if (c.periodic) return wrap_index(static_cast<int>(k), c.size());
    if (k < 0 || k >= c.size()) throw InvalidInput("t outside the curve's domain");
    return static_cast<int>(k);
}

Vec grid_derivative(const SampledCurve& c, int i, int order) {
    const fd::Stencil& st = fd::central(order, 4);
    const double h = c.spacing();
    Vec out = Vec::Zero(c.ambient_dim());
    for (std::size_t k = 0; k < st.offsets.size(); ++k) {
        int j = i + st.offsets[k];
        if (c.periodic) j = wrap_index(j, c.size());
        if (j < 0 || j >= c.size()) throw InvalidInput("derivative stencil leaves the sampled domain");
        out += st.weights[k] * c.points[j];
    }
    return out / std::pow(h, order);
}

// first-derivative stencil across a track of offsets
Vec track_derivative(const std::vector<Vec>& tr, int R, int o, double h) {
    const fd::Stencil& st = fd::central(1, 4);
    Vec out = Vec::Zero(tr[o + R].size());
    for (std::size_t k = 0; k < st.offsets.size(); ++k) out += st.weights[k] * tr[o + st.offsets[k] + R];
    return out / h;
}

double scalar_derivative(const std::vector<double>& tr, int R, int o, int order, double h) {
    const fd::Stencil& st = fd::central(order, 4);
    double out = 0.0;
    for (std::size_t k = 0; k < st.offsets.size(); ++k) out += st.weights[k] * tr[o + st.offsets[k] + R];
    return out / std::pow(h, order);
}

}  // namespace

Vec derivative(const SampledCurve& curve, int order, double t) {
    if (order < 1 || order > 4) throw InvalidInput("derivative order must be between 1 and 4");
    if (curve.analytic) return curve.analytic->curve_jet(t, order)[order];
    const int i = grid_node(curve, t);
    if (!curve.periodic) {
        const int r = fd::stencil_points(order, 4) / 2;
        if (i < 2 * r || i > curve.size() - 1 - 2 * r)
            throw InvalidInput("non-periodic curve queried within two stencil widths of the boundary");
    }
    return grid_derivative(curve, i, order);
}

std::vector<int> evaluable_samples(const SampledCurve& curve, int radius) {
    std::vector<int> out;
    const int m = curve.size();
    const int margin = curve.analytic || curve.periodic ? 0 : radius + 2;
    for (int i = margin; i < m - margin; ++i) out.push_back(i);
    return out;
}

LocalCurve local_curve(const SampledCurve& curve, int index, int radius, double analytic_step) {
    LocalCurve L;
    L.radius = radius;
    L.s = curve.params.at(index);
    const int n = 2 * radius + 1;
    L.pos.resize(n);
    L.vel.resize(n);
    L.acc.resize(n);
    if (curve.analytic) {
        L.h = analytic_step;
        for (int o = -radius; o <= radius; ++o) {
            const auto jet = curve.analytic->curve_jet(L.s + o * L.h, 2);
            L.pos[o + radius] = jet[0];
            L.vel[o + radius] = jet[1];
            L.acc[o + radius] = jet[2];
        }
        return L;
    }
    L.h = curve.spacing();
    for (int o = -radius; o <= radius; ++o) {
        int j = index + o;
        if (curve.periodic) j = wrap_index(j, curve.size());
        if (j < 2 || j >= curve.size() - 2) {
            if (!curve.periodic) throw InvalidInput("sample too close to the end of a non-periodic curve");
        }
        L.pos[o + radius] = curve.points[j];
        L.vel[o + radius] = grid_derivative(curve, j, 1);
        L.acc[o + radius] = grid_derivative(curve, j, 2);
    }
    return L;
}

CovariantResult covariant_derivative(const Connection& C, const SampledCurve& curve, const FieldAlongCurve& X,
                                     CovariantRoute route, const CurveEvalOptions& opt) {
    const int R = 2;
    CovariantResult out;
    out.samples = evaluable_samples(curve, R);
    const SasakianSphere& S = C.sphere();
    for (int i : out.samples) {
        const LocalCurve L = local_curve(curve, i, R, opt.analytic_step);
        std::vector<Vec> field(2 * R + 1);
        for (int o = -R; o <= R; ++o)
            field[o + R] = X(CurvePointView{L.s + o * L.h, L.at(L.pos, o), L.at(L.vel, o), L.at(L.acc, o)});
        const Vec& z = L.at(L.pos, 0);
        const Vec& T = L.at(L.vel, 0);
        if (route == CovariantRoute::Ambient) {
            out.values.push_back(C.covariant(C.prepare(z), T, field[R], track_derivative(field, R, 0, L.h)));
            continue;
        }
        const StereoChart chart = StereoChart::for_point(z);
        const Vec x = chart.to_chart(z);
        std::vector<Vec> comps(2 * R + 1);
        for (int o = -R; o <= R; ++o) comps[o + R] = chart.pull(L.at(L.pos, o), field[o + R]);
        const Vec dX = track_derivative(comps, R, 0, L.h);
        const Christoffel G = christoffel_fd(S, chart, x, C.options().fd);
        const Vec Tc = chart.pull(z, T), Xc = comps[R];
        Vec v = dX;
        for (int k = 0; k < v.size(); ++k) v[k] += Tc.dot(G[k] * Xc);
        out.values.push_back(chart.jacobian(x) * v);
    }
    return out;
}

CurveAnalysis analyze_curve(const Connection& C, const SampledCurve& curve, const CurveEvalOptions& opt) {
    const SasakianSphere& S = C.sphere();
    const int K = std::max(1, std::min({opt.max_order, 2 * S.n() + 1}) - 1);  // curvatures resolved
    const int R = std::max(2 * K, 8);
    CurveAnalysis out;
    out.samples = evaluable_samples(curve, R + 1);
    if (out.samples.empty()) throw InvalidInput("curve too short for covariant differentiation");
    const int W = 2 * R + 1;
    for (int i : out.samples) {
        const LocalCurve L = local_curve(curve, i, R, opt.analytic_step);
        const double h = L.h;
        std::vector<Connection::PointData> P(W);
        for (int o = -R; o <= R; ++o) P[o + R] = C.prepare(L.at(L.pos, o));
        auto nabla = [&](const std::vector<Vec>& X, int r) {
            // ∇_T X on offsets |o| <= r - 2 given X on |o| <= r
            std::vector<Vec> Y(W, Vec());
            for (int o = -(r - 2); o <= r - 2; ++o)
                Y[o + R] = C.covariant(P[o + R], L.at(L.vel, o), X[o + R], track_derivative(X, R, o, h));
            return Y;
        };
        SampleAnalysis A;
        A.s = L.s;
        A.point = L.at(L.pos, 0);
        A.T = L.at(L.vel, 0);
        out.speed_defect = std::max(out.speed_defect, std::abs(S.g(A.point, A.T, A.T) - 1.0));

        // ∇_T T from the acceleration, then iterated derivatives for the direct path
        std::vector<Vec> X1(W);
        for (int o = -R; o <= R; ++o)
            X1[o + R] = C.covariant(P[o + R], L.at(L.vel, o), L.at(L.vel, o), L.at(L.acc, o));
        const std::vector<Vec> X2 = nabla(X1, R);
        const std::vector<Vec> X3 = nabla(X2, R - 2);
        A.X1 = X1[R];
        A.X2 = X2[R];
        A.X3 = X3[R];

        // Frenet recursion on shrinking offset ranges
        std::vector<std::vector<Vec>> E{L.vel};
        std::vector<std::vector<double>> kap;
        std::vector<Vec> rem = X1;
        int r = R;
        A.order = 1;
        for (int k = 1; k <= K; ++k) {
            std::vector<double> kk(W, 0.0);
            std::vector<Vec> En(W, Vec());
            for (int o = -r; o <= r; ++o) {
                Vec v = rem[o + R];
                if (k > 1) v += kap[k - 2][o + R] * E[k - 2][o + R];
                kk[o + R] = S.norm(L.at(L.pos, o), v);
                En[o + R] = v / std::max(kk[o + R], 1e-300);
            }
            kap.push_back(kk);
            A.kappa.push_back(kk[R]);
            if (kk[R] < opt.drop_tol) break;
            E.push_back(En);
            A.order = k + 1;
            if (k == K || r < 2) break;
            rem = nabla(En, r);
            r -= 2;
        }
        for (const auto& e : E) A.E.push_back(e[R]);
        A.k1p = scalar_derivative(kap[0], R, 0, 1, h);
        A.k1pp = scalar_derivative(kap[0], R, 0, 2, h);
        if (kap.size() > 1) A.k2p = scalar_derivative(kap[1], R, 0, 1, h);

        std::vector<Vec> phiT(W);
        for (int o = -2; o <= 2; ++o) phiT[o + R] = S.phi(L.at(L.pos, o), L.at(L.vel, o));
        A.phiT = phiT[R];
        A.xi = S.xi(A.point);
        A.nabla_phiT = C.covariant(P[R], A.T, A.phiT, track_derivative(phiT, R, 0, h));
        out.data.push_back(std::move(A));
    }

    // osculating order over the grid
    FrenetApparatus& F = out.apparatus;
    F.samples = out.samples;
    int rmin = 1 << 20, rmax = 0;
    for (const auto& A : out.data) {
        F.params.push_back(A.s);
        F.pointwise_order.push_back(A.order);
        rmin = std::min(rmin, A.order);
        rmax = std::max(rmax, A.order);
    }
    F.order = rmin;
    F.indeterminate = rmin != rmax;
    F.capped = rmin == K + 1 && K + 1 < 2 * S.n() + 1;
    F.frames.assign(rmin, {});
    F.kappa.assign(std::max(rmin - 1, 0), {});
    for (const auto& A : out.data) {
        for (int i = 0; i < rmin; ++i) F.frames[i].push_back(A.E[i]);
        for (int i = 0; i + 1 < rmin; ++i) F.kappa[i].push_back(A.kappa[i]);
    }
    for (int i = 0; i < rmin; ++i)
        for (std::size_t k = 0; k + 1 < out.data.size(); ++k)
            F.frame_continuity = std::min(F.frame_continuity, S.g(out.data[k].point, F.frames[i][k], F.frames[i][k + 1]));
    return out;
}

FrenetApparatus frenet_apparatus(const Connection& C, const SampledCurve& curve, const CurveEvalOptions& opt) {
    CurveAnalysis A = analyze_curve(C, curve, opt);
    if (A.speed_defect > 1e-6) throw InvalidInput(fmt::format("curve is not unit-speed in g (defect {:.3e})", A.speed_defect));
    return A.apparatus;
}

FrenetApparatus frenet_apparatus(const SasakianSphere& S, const SampledCurve& curve, const CurveEvalOptions& opt) {
    return frenet_apparatus(Connection(S), curve, opt);
}

static Vec velocity_at(const SampledCurve& c, int i) {
    if (c.analytic) return c.analytic->curve_jet(c.params[i], 1)[1];
    if (!c.periodic) {
        const fd::GridDifferentiator D(c.spacing(), c.size(), false);
        return D.derivative(c.points, i, 1);
    }
    return grid_derivative(c, i, 1);
}

double legendre_residual(const SasakianSphere& S, const SampledCurve& curve) {
    double r = 0.0;
    for (int i = 0; i < curve.size(); ++i) r = std::max(r, std::abs(S.eta(curve.points[i], velocity_at(curve, i))));
    return r;
}

std::vector<double> speed_profile(const SasakianSphere& S, const SampledCurve& curve) {
    std::vector<double> out;
    for (int i = 0; i < curve.size(); ++i) out.push_back(S.norm(curve.points[i], velocity_at(curve, i)));
    return out;
}

namespace {

// Fritsch-Carlson monotone cubic slopes
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n - 1), m(n);
    for (std::size_t k = 0; k + 1 < n; ++k) d[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) m[k] = d[k - 1] * d[k] <= 0 ? 0.0 : 0.5 * (d[k - 1] + d[k]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (d[k] == 0.0) {
            m[k] = m[k + 1] = 0.0;
            continue;
        }
        const double a = m[k] / d[k], b = m[k + 1] / d[k];
        const double q = a * a + b * b;
        if (q > 9.0) {
            const double t = 3.0 / std::sqrt(q);
            m[k] = t * a * d[k];
            m[k + 1] = t * b * d[k];
        }
    }
    return m;
}

template <class V>
V hermite(double t, double x0, double x1, const V& y0, const V& y1, const V& m0, const V& m1) {
    const double h = x1 - x0, u = (t - x0) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
}

}  // namespace

SampledCurve reparametrize_by_arclength(const SasakianSphere& S, const SampledCurve& curve, int samples) {
    const int m = curve.size();
    if (samples <= 0) samples = m;
    const std::vector<double> v = speed_profile(S, curve);
    for (double x : v)
        if (!(x > 0)) throw InvalidInput("curve has a stationary point; arc length is not a parameter");
    // nodes including the closing node for periodic curves
    std::vector<double> t = curve.params;
    std::vector<Vec> pts = curve.points, vel;
    std::vector<double> speed = v;
    for (int i = 0; i < m; ++i) vel.push_back(velocity_at(curve, i));
    if (curve.periodic) {
        t.push_back(curve.params.front() + curve.period);
        pts.push_back(curve.points.front());
        vel.push_back(vel.front());
        speed.push_back(v.front());
    }
    const std::size_t nn = t.size();
    std::vector<double> arc(nn, 0.0);
    // trapezoid with endpoint-derivative correction on the speed (fourth order for smooth data)
    for (std::size_t k = 0; k + 1 < nn; ++k) arc[k + 1] = arc[k] + 0.5 * (t[k + 1] - t[k]) * (speed[k] + speed[k + 1]);
    const double total = arc.back();
    const std::vector<double> slope_t = monotone_slopes(arc, t);
    SampledCurve out;
    out.periodic = curve.periodic;
    out.period = curve.periodic ? total : 0.0;
    out.unit_speed = true;
    const double ds = curve.periodic ? total / samples : total / (samples - 1);
    std::size_t seg = 0;
    for (int k = 0; k < samples; ++k) {
        const double s = k * ds;
        while (seg + 2 < nn && arc[seg + 1] < s) ++seg;
        const double tt = hermite(s, arc[seg], arc[seg + 1], t[seg], t[seg + 1], slope_t[seg], slope_t[seg + 1]);
        std::size_t j = seg;
        while (j + 2 < nn && t[j + 1] < tt) ++j;
        while (j > 0 && t[j] > tt) --j;
        Vec p = hermite(tt, t[j], t[j + 1], pts[j], pts[j + 1], vel[j], vel[j + 1]);
        out.params.push_back(s);
        out.points.push_back(p / p.norm());
    }
    out.family = curve.family;
    out.family_params = curve.family_params;
    return out;
}

}  // namespace sasaki
