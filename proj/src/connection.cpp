#include "sasaki/connection.hpp"

#include "sasaki/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace sasaki {

Connection::Connection(SasakianSphere S, ConnectionOptions opt) : S_(std::move(S)), opt_(opt) {}

std::string Connection::route() const {
    if (corr_) return "user-correction";
    if (S_.a() == 1.0 && !opt_.force_chart) return "closed-form";
    return opt_.fd.richardson ? "chart-fd-richardson" : "chart-fd";
}

Connection Connection::with_richardson() const {
    Connection c = *this;
    c.opt_.fd.richardson = true;
    return c;
}

Connection::PointData Connection::prepare(const Vec& z) const {
    PointData p;
    p.z = z;
    p.trivial = corr_ || (S_.a() == 1.0 && !opt_.force_chart);
    if (p.trivial) return p;
    p.chart = StereoChart::for_point(z);
    p.x = p.chart.to_chart(z);
    p.jac = p.chart.jacobian(p.x);
    p.delta = christoffel_fd(S_, p.chart, p.x, opt_.fd);
    const Christoffel round = christoffel_round(p.x);
    for (std::size_t k = 0; k < p.delta.size(); ++k) p.delta[k] -= round[k];
    return p;
}

Vec Connection::difference(const PointData& p, const Vec& X, const Vec& Y) const {
    if (corr_) return (*corr_)(p.z, X, Y);
    if (p.trivial) return Vec::Zero(X.size());
    const Vec x = p.chart.pull(p.z, X), y = p.chart.pull(p.z, Y);
    Vec out(x.size());
    for (int k = 0; k < x.size(); ++k) out[k] = x.dot(p.delta[k] * y);
    return p.jac * out;
}

Vec Connection::difference(const Vec& z, const Vec& X, const Vec& Y) const { return difference(prepare(z), X, Y); }

Vec Connection::covariant(const PointData& p, const Vec& X, const Vec& Y, const Vec& DXY) const {
    return project_tangent(p.z, DXY) + difference(p, X, Y);
}

Vec Connection::directional(const Vec& z, const Vec& X, const VectorField& W) const {
    const double len = X.norm();
    if (len == 0.0) return Vec::Zero(z.size());
    const Vec u = X / len;
    const double h = opt_.ambient_step;
    auto at = [&](double e) { return W(std::cos(e) * z + std::sin(e) * u); };
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) * (len / (12.0 * h));
}

double Connection::directional(const Vec& z, const Vec& X, const std::function<double(const Vec&)>& f) const {
    const double len = X.norm();
    if (len == 0.0) return 0.0;
    const Vec u = X / len;
    const double h = opt_.ambient_step;
    auto at = [&](double e) { return f(std::cos(e) * z + std::sin(e) * u); };
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) * (len / (12.0 * h));
}

Vec Connection::covariant(const Vec& z, const Vec& X, const VectorField& W) const {
    return covariant(prepare(z), X, W(z), directional(z, X, W));
}

DifferenceTensor tanno_difference(const SasakianSphere& S) {
    return [S](const Vec& z, const Vec& X, const Vec& Y) -> Vec {
        return -(S.a() - 1.0) * (S.eta0(z, X) * S.phi(z, Y) + S.eta0(z, Y) * S.phi(z, X));
    };
}

std::string to_string(Extension e) { return e == Extension::AmbientProjected ? "ambient-projected" : "chart-constant"; }

VectorField extend(const Vec& z, const Vec& X, Extension kind) {
    if (kind == Extension::AmbientProjected) {
        return [X](const Vec& w) -> Vec { return project_tangent(w, X); };
    }
    const StereoChart chart = StereoChart::for_point(z);
    const Vec comps = chart.pull(z, X);
    return [chart, comps](const Vec& w) -> Vec {
        const Vec wn = w / w.norm();
        return chart.jacobian(chart.to_chart(wn)) * comps;
    };
}

namespace {

std::function<Vec(const Vec&, const Vec&)> phi_of(const SasakianSphere& S, const ValidationOptions& opt) {
    if (opt.phi_override) return opt.phi_override;
    const double s = opt.phi_scale;
    return [S, s](const Vec& w, const Vec& V) -> Vec { return s * S.phi(w, V); };
}

Vec bracket(const Connection& C, const Vec& z, const VectorField& U, const VectorField& W) {
    return C.directional(z, U(z), W) - C.directional(z, W(z), U);
}

template <class F>
Residual with_refinement(const Connection& C, double tol, F&& eval) {
    Residual r{eval(C), false};
    if (r.value > tol && !C.options().fd.richardson && C.route().rfind("chart-fd", 0) == 0) {
        const double v = eval(C.with_richardson());
        if (v < r.value) r = Residual{v, true};
    }
    return r;
}

}  // namespace

Residual check_sasakian_identity(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                                 const ValidationOptions& opt, double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const SasakianSphere& S = Cc.sphere();
        const auto phi = phi_of(S, opt);
        const VectorField Yt = extend(z, Y, opt.extension);
        const VectorField phiY = [&](const Vec& w) { return phi(w, Yt(w)); };
        const Vec lhs = Cc.covariant(z, X, phiY) - phi(z, Cc.covariant(z, X, Yt));
        const Vec rhs = S.g(z, X, Y) * S.xi(z) - S.eta(z, Y) * X;
        return S.norm(z, lhs - rhs);
    });
}

double d_eta(const Connection& C, const Vec& z, const Vec& X, const Vec& Y, Extension kind) {
    const SasakianSphere& S = C.sphere();
    const VectorField Xt = extend(z, X, kind), Yt = extend(z, Y, kind);
    const double xy = C.directional(z, X, [&](const Vec& w) { return S.eta(w, Yt(w)); });
    const double yx = C.directional(z, Y, [&](const Vec& w) { return S.eta(w, Xt(w)); });
    return 0.5 * (xy - yx - S.eta(z, bracket(C, z, Xt, Yt)));
}

Residual check_contact_form(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                            const ValidationOptions& opt, double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const SasakianSphere& S = Cc.sphere();
        return std::abs(S.g(z, X, phi_of(S, opt)(z, Y)) - d_eta(Cc, z, X, Y, opt.extension));
    });
}

Residual check_normality(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                         const ValidationOptions& opt, double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const SasakianSphere& S = Cc.sphere();
        const auto phi = phi_of(S, opt);
        const VectorField Xt = extend(z, X, opt.extension), Yt = extend(z, Y, opt.extension);
        const VectorField pX = [&](const Vec& w) { return phi(w, Xt(w)); };
        const VectorField pY = [&](const Vec& w) { return phi(w, Yt(w)); };
        const Vec N = phi(z, phi(z, bracket(Cc, z, Xt, Yt))) + bracket(Cc, z, pX, pY) - phi(z, bracket(Cc, z, pX, Yt)) -
                      phi(z, bracket(Cc, z, Xt, pY));
        const Vec total = N + 2.0 * d_eta(Cc, z, X, Y, opt.extension) * S.xi(z);
        return S.norm(z, total);
    });
}

Residual check_torsion(const Connection& C, const Vec& z, const Vec& X, const Vec& Y, const ValidationOptions& opt,
                       double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const VectorField Xt = extend(z, X, opt.extension), Yt = extend(z, Y, opt.extension);
        const Vec T = Cc.covariant(z, X, Yt) - Cc.covariant(z, Y, Xt) - bracket(Cc, z, Xt, Yt);
        return Cc.sphere().norm(z, T);
    });
}

Residual check_compatibility(const Connection& C, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z,
                             const ValidationOptions& opt, double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const SasakianSphere& S = Cc.sphere();
        const VectorField Yt = extend(z, Y, opt.extension), Zt = extend(z, Z, opt.extension);
        const double lhs = Cc.directional(z, X, [&](const Vec& w) { return S.g(w, Yt(w), Zt(w)); });
        return std::abs(lhs - S.g(z, Cc.covariant(z, X, Yt), Z) - S.g(z, Y, Cc.covariant(z, X, Zt)));
    });
}

Residual check_reeb_derivative(const Connection& C, const Vec& z, const Vec& X, double tol) {
    return with_refinement(C, tol, [&](const Connection& Cc) {
        const SasakianSphere& S = Cc.sphere();
        const Vec r = Cc.covariant(z, X, [&](const Vec& w) { return S.xi(w); }) + S.phi(z, X);
        return S.norm(z, r);
    });
}

Connection::CorrectionReport Connection::install_correction(DifferenceTensor corr, unsigned long long seed, int points) {
    if (!corr) throw InvalidInput("empty correction tensor");
    Connection trial = *this;
    trial.corr_ = std::make_shared<const DifferenceTensor>(corr);
    Connection chart = *this;
    chart.corr_.reset();
    chart.opt_.force_chart = true;
    Rng rng(seed);
    CorrectionReport rep;
    for (int k = 0; k < points; ++k) {
        const Vec z = random_sphere_point(S_.dim(), rng);
        const Vec X = random_tangent(z, rng), Y = random_tangent(z, rng), Z = random_tangent(z, rng);
        rep.torsion = std::max(rep.torsion, check_torsion(trial, z, X, Y).value);
        rep.compatibility = std::max(rep.compatibility, check_compatibility(trial, z, X, Y, Z).value);
        rep.sasakian = std::max(rep.sasakian, check_sasakian_identity(trial, z, X, Y).value);
        rep.chart_agreement = std::max(rep.chart_agreement,
                                       S_.norm(z, trial.difference(z, X, Y) - chart.difference(z, X, Y)));
    }
    if (rep.torsion > 1e-5) throw InvalidInput(fmt::format("correction rejected: torsion residual {:.3e}", rep.torsion));
    if (rep.compatibility > 1e-5)
        throw InvalidInput(fmt::format("correction rejected: metric compatibility residual {:.3e}", rep.compatibility));
    if (rep.sasakian > 1e-4)
        throw InvalidInput(fmt::format("correction rejected: Sasakian identity residual {:.3e}", rep.sasakian));
    corr_ = trial.corr_;
    return rep;
}

}  // namespace sasaki
