#include "sasaki/generators.hpp"

#include "sasaki/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace sasaki {

namespace {

const double kPi = 3.14159265358979323846;

std::string normalize(std::string s) {
    std::replace(s.begin(), s.end(), '-', '_');
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Fundamental period of a set of frequencies when their ratios are rational with small
// denominators; 0 otherwise.
double common_period(const std::vector<double>& freqs) {
    if (freqs.empty()) return 0.0;
    const double wmin = *std::min_element(freqs.begin(), freqs.end());
    long L = 1;
    for (double w : freqs) {
        const double r = w / wmin;
        bool found = false;
        for (long q = 1; q <= 64 && !found; ++q) {
            const double p = std::round(r * q);
            if (std::abs(r * q - p) < 1e-10 * q) {
                L = std::lcm(L, q / std::gcd(static_cast<long>(p), q));
                found = true;
            }
        }
        if (!found || L > 64) return 0.0;
    }
    return 2.0 * kPi * L / wmin;
}

Vec cplx_I(const Vec& v) { return ComplexStructure::make(StructureTag::I, static_cast<int>(v.size())).apply(v); }

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidInput(msg);
}

Vec omega1(double w) {
    Vec o(1);
    o[0] = w;
    return o;
}

}  // namespace

std::string to_string(CurveFamily f) {
    switch (f) {
        case CurveFamily::Thm39Circle: return "thm39_circle";
        case CurveFamily::Thm39Helix: return "thm39_helix";
        case CurveFamily::Thm310Circle: return "thm310_circle";
        case CurveFamily::Thm310Helix: return "thm310_helix";
        case CurveFamily::Thm311: return "thm311";
    }
    return "?";
}

std::string to_string(ImmersionFamily f) {
    switch (f) {
        case ImmersionFamily::Prop42Surface: return "prop42_surface";
        case ImmersionFamily::Prop44Surface: return "prop44_surface";
        case ImmersionFamily::Prop53X1: return "prop53_x1";
        case ImmersionFamily::Prop53X2: return "prop53_x2";
    }
    return "?";
}

bool is_curve_family(const std::string& s) {
    const std::string k = normalize(s);
    return k.rfind("thm", 0) == 0;
}

CurveFamily parse_curve_family(const std::string& s) {
    const std::string k = normalize(s);
    for (CurveFamily f : {CurveFamily::Thm39Circle, CurveFamily::Thm39Helix, CurveFamily::Thm310Circle,
                          CurveFamily::Thm310Helix, CurveFamily::Thm311})
        if (to_string(f) == k) return f;
    throw InvalidInput(fmt::format("unknown curve family '{}'", s));
}

ImmersionFamily parse_immersion_family(const std::string& s) {
    const std::string k = normalize(s);
    for (ImmersionFamily f : {ImmersionFamily::Prop42Surface, ImmersionFamily::Prop44Surface, ImmersionFamily::Prop53X1,
                              ImmersionFamily::Prop53X2})
        if (to_string(f) == k || to_string(f).substr(0, k.size()) == k) return f;
    throw InvalidInput(fmt::format("unknown immersion family '{}'", s));
}

FamilyData family_data(const CurveSpec& spec) {
    FamilyData d;
    require(spec.n >= 1, "n must be a positive integer");
    require(spec.a > 0 && std::isfinite(spec.a), "deformation a must be positive");
    require(spec.detune > 0, "detuning factor must be positive");
    const double a = spec.a, k1 = spec.kappa1, dt = spec.detune;
    d.c = 4.0 / a - 3.0;
    switch (spec.family) {
        case CurveFamily::Thm39Circle:
        case CurveFamily::Thm310Circle: {
            const bool round = spec.family == CurveFamily::Thm39Circle;
            if (round) require(a == 1.0, "thm39 families live on the round sphere (a = 1)");
            else require(a != 1.0, "thm310 families require a != 1");
            require(spec.n >= 2, "n too small: circle families require n >= 2");
            d.A = std::sqrt(2.0 / a);
            d.kappa1 = 1.0 / std::sqrt(a);
            d.frequencies = {d.A * dt};
            d.basis_size = 3;
            break;
        }
        case CurveFamily::Thm39Helix:
        case CurveFamily::Thm310Helix: {
            const bool round = spec.family == CurveFamily::Thm39Helix;
            if (round) {
                require(a == 1.0, "thm39 families live on the round sphere (a = 1)");
                require(spec.n >= 2, "n too small: thm39 helices require n >= 2");
                require(k1 > 0 && k1 < 1, "kappa1 must lie in (0, 1)");
                d.A = std::sqrt(1 + k1);
                d.B = std::sqrt(1 - k1);
            } else {
                require(a != 1.0, "thm310 families require a != 1");
                require(spec.n >= 3, "n too small: thm310 helices require n >= 3");
                require(k1 > 0, "kappa1 must be positive");
                require(k1 * std::sqrt(a) < 1, fmt::format("κ₁√a ≥ 1 (kappa1*sqrt(a) = {:.6g}): B would be imaginary", k1 * std::sqrt(a)));
                d.A = std::sqrt((1 + k1 * std::sqrt(a)) / a);
                d.B = std::sqrt((1 - k1 * std::sqrt(a)) / a);
            }
            d.kappa1 = k1;
            d.kappa2 = std::sqrt(std::max(1.0 / a - k1 * k1, 0.0));
            d.frequencies = {d.A * dt, d.B};
            d.basis_size = 4;
            break;
        }
        case CurveFamily::Thm311: {
            require(a > 0 && a < 1, "thm311 requires a in (0, 1)");
            const double r = std::sqrt((a - 1) * (a - 2));
            d.A = std::sqrt((3 - 2 * a - 2 * r) / a);
            d.B = std::sqrt((3 - 2 * a + 2 * r) / a);
            d.kappa1 = std::sqrt(d.c - 1);
            d.kappa2 = 1.0;
            const double Ad = d.A * dt;
            const double lam = 1.0 / std::sqrt(a * Ad * d.B);
            d.frequencies = {lam * Ad, lam * d.B};
            d.basis_size = 2;
            break;
        }
    }
    const double T = common_period(d.frequencies);
    d.periodic = T > 0;
    d.domain = d.periodic ? T : 2.0 * kPi / *std::min_element(d.frequencies.begin(), d.frequencies.end());
    return d;
}

std::vector<Vec> default_basis(CurveFamily family, int n, std::optional<double> kappa1, double twist) {
    const int N = 2 * n + 2;
    auto e = [&](int i) { return basis_vector(N, i); };
    switch (family) {
        case CurveFamily::Thm39Circle:
        case CurveFamily::Thm310Circle:
            if (n < 2) throw InvalidInput("n too small: circle families require n >= 2");
            return {e(0), e(1), e(2)};
        case CurveFamily::Thm311:
            return {e(0), e(1)};
        case CurveFamily::Thm310Helix:
        case CurveFamily::Thm39Helix: {
            if (family == CurveFamily::Thm310Helix && n < 3)
                throw InvalidInput("n too small: thm310 helices require n >= 3");
            if (n < 2) throw InvalidInput("n too small: helices require n >= 2");
            if (n >= 3) {
                if (twist == 0.0) return {e(0), e(1), e(2), e(3)};
                if (!kappa1) throw InvalidInput("a twisted helix basis needs kappa1");
                const double A = std::sqrt(1 + *kappa1), B = std::sqrt(1 - *kappa1);
                const double sp = -(A / B) * std::sin(twist);
                if (std::abs(sp) > 1) throw InvalidInput("twist angle too large for this kappa1");
                const double cp = std::sqrt(1 - sp * sp);
                return {e(0), std::cos(twist) * e(1) + std::sin(twist) * cplx_I(e(0)), e(2), cp * e(3) + sp * cplx_I(e(2))};
            }
            if (family == CurveFamily::Thm310Helix) throw InvalidInput("n too small");
            if (!kappa1) throw InvalidInput("the n = 2 helix basis depends on kappa1");
            const double A = std::sqrt(1 + *kappa1), B = std::sqrt(1 - *kappa1);
            const double s = -B / A, c = std::sqrt(1 - s * s);
            return {e(0), c * e(1) + s * cplx_I(e(0)), e(2), cplx_I(e(2))};
        }
    }
    throw InvalidInput("unknown family");
}

void check_basis(const CurveSpec& spec, const std::vector<Vec>& basis, double tol) {
    const FamilyData d = family_data(spec);
    const int N = 2 * spec.n + 2;
    if (static_cast<int>(basis.size()) != d.basis_size)
        throw InvalidInput(fmt::format("{} needs {} basis vectors, got {}", to_string(spec.family), d.basis_size, basis.size()));
    for (const Vec& v : basis)
        if (v.size() != N) throw InvalidInput("basis vector has the wrong dimension");
    // slot labels as they appear in the formulas
    std::vector<int> label = {1, 2, 3, 4};
    if (spec.family == CurveFamily::Thm311) label = {1, 3};
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            const double v = basis[i].dot(basis[j]) - (i == j ? 1.0 : 0.0);
            if (std::abs(v) > tol)
                throw InvalidInput(fmt::format("basis not orthonormal: <e{},e{}> = {:.3e}", label[i], label[j], v + (i == j)));
        }
    auto Iij = [&](int i, int j) { return basis[i].dot(cplx_I(basis[j])); };
    auto fail = [&](int i, int j, double v) {
        throw InvalidInput(fmt::format("constraint violated: <e{},Ie{}> = {:.3e}", label[i], label[j], v));
    };
    switch (spec.family) {
        case CurveFamily::Thm39Circle:
        case CurveFamily::Thm310Circle:
        case CurveFamily::Thm310Helix:
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j)
                    if (std::abs(Iij(i, j)) > tol) fail(i, j, Iij(i, j));
            break;
        case CurveFamily::Thm39Helix: {
            for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}})
                if (std::abs(Iij(i, j)) > tol) fail(i, j, Iij(i, j));
            const double w = d.A * Iij(0, 1) + d.B * Iij(2, 3);
            if (std::abs(w) > tol) throw InvalidInput(fmt::format("constraint violated: A<e1,Ie2> + B<e3,Ie4> = {:.3e}", w));
            break;
        }
        case CurveFamily::Thm311:
            if (std::abs(Iij(1, 0)) > tol) fail(1, 0, Iij(1, 0));
            break;
    }
}

std::shared_ptr<TrigMap> curve_map(const CurveSpec& spec) {
    const FamilyData d = family_data(spec);
    const std::vector<Vec> basis = spec.basis.empty() ? default_basis(spec.family, spec.n, spec.kappa1, spec.twist) : spec.basis;
    check_basis(spec, basis, 1e-12);
    const int N = 2 * spec.n + 2;
    auto map = std::make_shared<TrigMap>(1, N);
    const double a = spec.a;
    switch (spec.family) {
        case CurveFamily::Thm39Circle:
        case CurveFamily::Thm310Circle: {
            const double w = d.frequencies[0];
            const double al = 1.0 / (w * std::sqrt(a)), be = std::sqrt(1 - al * al);
            map->add(omega1(w), al * basis[0], al * basis[1]);
            map->add(omega1(0.0), be * basis[2], Vec::Zero(N));
            break;
        }
        case CurveFamily::Thm39Helix:
        case CurveFamily::Thm310Helix: {
            const double Ad = d.frequencies[0], B = d.B;
            const double al2 = (1.0 / a - B * B) / (Ad * Ad - B * B);
            if (!(al2 > 0 && al2 < 1)) throw InvalidInput("detuned helix has no unit-speed amplitudes");
            const double al = std::sqrt(al2), be = std::sqrt(1 - al2);
            map->add(omega1(Ad), al * basis[0], al * basis[1]);
            map->add(omega1(B), be * basis[2], be * basis[3]);
            break;
        }
        case CurveFamily::Thm311: {
            const double wA = d.frequencies[0], wB = d.frequencies[1];
            const double Ad = d.A * spec.detune;
            const double p = std::sqrt(d.B / (Ad + d.B)), q = std::sqrt(Ad / (Ad + d.B));
            map->add(omega1(wA), p * basis[0], -p * cplx_I(basis[0]));
            map->add(omega1(wB), q * basis[1], q * cplx_I(basis[1]));
            break;
        }
    }
    return map;
}

SampledCurve make_curve(const CurveSpec& spec, int samples) {
    const FamilyData d = family_data(spec);
    SampledCurve c = SampledCurve::from_map(curve_map(spec), 0.0, d.domain, samples, d.periodic);
    c.unit_speed = true;
    c.family = to_string(spec.family);
    c.family_params = {{"n", spec.n}, {"a", spec.a}, {"A", d.A}, {"B", d.B}, {"c", d.c}, {"detune", spec.detune}};
    if (spec.family == CurveFamily::Thm39Helix || spec.family == CurveFamily::Thm310Helix) {
        c.family_params["kappa1"] = spec.kappa1;
        c.family_params["kappa2"] = d.kappa2;
        if (spec.twist != 0.0) c.family_params["twist"] = spec.twist;
    } else {
        c.family_params["kappa1"] = d.kappa1;
        if (spec.family == CurveFamily::Thm311) c.family_params["kappa2"] = d.kappa2;
    }
    return c;
}

CurveSpec detuned(const CurveSpec& spec, double factor) {
    CurveSpec s = spec;
    s.detune = spec.detune * factor;
    return s;
}

// ---------------------------------------------------------------------------------------

namespace {

// coeff * Π_k cos(ω_k·p + φ_k), expanded into single cosines
void add_cos_product(TrigMap& m, const Vec& coeff, const std::vector<std::pair<Vec, double>>& factors) {
    std::vector<std::pair<Vec, double>> acc = {{Vec::Zero(m.param_dim()), 0.0}};
    for (const auto& [w, ph] : factors) {
        std::vector<std::pair<Vec, double>> next;
        for (const auto& [w0, p0] : acc) {
            next.push_back({w0 + w, p0 + ph});
            next.push_back({w0 - w, p0 - ph});
        }
        acc = std::move(next);
    }
    const double scale = std::pow(0.5, static_cast<double>(factors.size()));
    for (const auto& [w, ph] : acc) m.add_cos(w, ph, scale * coeff);
}

Vec w2(double u, double v) {
    Vec o(2);
    o << u, v;
    return o;
}

}  // namespace

std::shared_ptr<TrigMap> integral_surface_map() {
    const int N = 6;
    auto e = [&](int i) { return basis_vector(N, i); };
    auto m = std::make_shared<TrigMap>(2, N);
    const double r = 1.0 / std::sqrt(2.0), s2 = std::sqrt(2.0);
    const double hp = kPi / 2;
    // z1 = e^{iu}/√2
    m->add_cos(w2(1, 0), 0.0, r * e(0));
    m->add_cos(w2(1, 0), -hp, r * e(3));
    // z2 = i e^{-iu} sin(√2 v)/√2: real sin u sin √2v, imaginary cos u sin √2v
    add_cos_product(*m, r * e(1), {{w2(1, 0), -hp}, {w2(0, s2), -hp}});
    add_cos_product(*m, r * e(4), {{w2(1, 0), 0.0}, {w2(0, s2), -hp}});
    // z3 = i e^{-iu} cos(√2 v)/√2
    add_cos_product(*m, r * e(2), {{w2(1, 0), -hp}, {w2(0, s2), 0.0}});
    add_cos_product(*m, r * e(5), {{w2(1, 0), 0.0}, {w2(0, s2), 0.0}});
    return m;
}

ImmersionGrid integral_surface_grid(int resolution) {
    ImmersionGrid g = ImmersionGrid::from_map(
        integral_surface_map(),
        {ImmersionGrid::periodic_axis(2 * kPi, resolution), ImmersionGrid::periodic_axis(2 * kPi / std::sqrt(2.0), resolution)});
    g.family = "integral_surface";
    return g;
}

void check_two_structure_basis(const std::vector<Vec>& e, double A, double B, bool helix, double tol) {
    const int N = static_cast<int>(e.at(0).size());
    if (N != 8) throw InvalidInput("three-parameter families require n = 3");
    const ComplexStructure I = ComplexStructure::make(StructureTag::I, 8), J = ComplexStructure::make(StructureTag::J, 8);
    const std::size_t m = e.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double v = e[i].dot(e[j]) - (i == j ? 1.0 : 0.0);
            if (std::abs(v) > tol) throw InvalidInput(fmt::format("basis not orthonormal: <e{},e{}>", i + 1, j + 1));
        }
    for (const auto* S : {&I, &J}) {
        const char* nm = S == &I ? "I" : "J";
        auto p = [&](int i, int j) { return e[i].dot(S->apply(e[j])); };
        if (!helix) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (std::abs(p(i, j)) > tol)
                        throw InvalidInput(fmt::format("constraint violated: <e{},{}e{}> = {:.3e}", i + 1, nm, j + 1, p(i, j)));
            continue;
        }
        for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}})
            if (std::abs(p(i, j)) > tol)
                throw InvalidInput(fmt::format("constraint violated: <e{},{}e{}> = {:.3e}", i + 1, nm, j + 1, p(i, j)));
        const double w = A * p(0, 1) + B * p(2, 3);
        if (std::abs(w) > tol)
            throw InvalidInput(fmt::format("constraint violated: A<e1,{0}e2> + B<e3,{0}e4> = {1:.3e}", nm, w));
    }
}

std::shared_ptr<TrigMap> immersion_map(const ImmersionSpec& spec, std::vector<GridAxis>* axes) {
    auto res = [&](std::size_t k, int dflt) {
        return k < spec.resolution.size() && spec.resolution[k] > 0 ? spec.resolution[k] : dflt;
    };
    std::vector<GridAxis> ax;
    std::shared_ptr<TrigMap> out;
    switch (spec.family) {
        case ImmersionFamily::Prop42Surface: {
            if (spec.n != 2) throw InvalidInput("prop42_surface requires n = 2");
            if (spec.a != 1.0) throw InvalidInput("prop42_surface lives on the round sphere (a = 1)");
            const Mat I = ComplexStructure::make(StructureTag::I, 6).matrix();
            out = std::make_shared<TrigMap>(integral_surface_map()->prepend_rotation(I, 1.0));
            ax = {ImmersionGrid::periodic_axis(2 * kPi, res(0, 64)), ImmersionGrid::periodic_axis(2 * kPi, res(1, 64)),
                  ImmersionGrid::periodic_axis(2 * kPi / std::sqrt(2.0), res(2, 64))};
            break;
        }
        case ImmersionFamily::Prop44Surface: {
            CurveSpec cs{CurveFamily::Thm311, spec.n, spec.a, 0.0, spec.basis};
            const FamilyData d = family_data(cs);
            const Mat I = ComplexStructure::make(StructureTag::I, 2 * spec.n + 2).matrix();
            out = std::make_shared<TrigMap>(curve_map(cs)->prepend_rotation(I, 1.0 / spec.a));
            ax = {ImmersionGrid::periodic_axis(2 * kPi * spec.a, res(0, 64)),
                  d.periodic ? ImmersionGrid::periodic_axis(d.domain, res(1, 64)) : ImmersionGrid::open_axis(0.0, d.domain, res(1, 64))};
            break;
        }
        case ImmersionFamily::Prop53X1:
        case ImmersionFamily::Prop53X2: {
            if (spec.n != 3) throw InvalidInput("prop53 family requires n = 3 (three complex structures exist only on S^7)");
            if (spec.a != 1.0) throw InvalidInput("prop53 families live on the round sphere (a = 1)");
            const bool helix = spec.family == ImmersionFamily::Prop53X2;
            CurveSpec cs{helix ? CurveFamily::Thm39Helix : CurveFamily::Thm39Circle, 3, 1.0, helix ? spec.kappa1 : 0.0};
            const FamilyData d = family_data(cs);
            cs.basis = spec.basis.empty() ? default_basis(cs.family, 3, cs.kappa1) : spec.basis;
            check_two_structure_basis(cs.basis, d.A, d.B, helix);
            const Mat I = ComplexStructure::make(StructureTag::I, 8).matrix();
            const Mat J = ComplexStructure::make(StructureTag::J, 8).matrix();
            // cos u cos t γ - cos u sin t Iγ - sin u cos t Jγ - sin u sin t Kγ, parameters (u, t, s)
            const TrigMap g = curve_map(cs)->prepend_rotation(J, 1.0).prepend_rotation(I, 1.0);
            out = std::make_shared<TrigMap>(g.permute({1, 0, 2}));
            ax = {ImmersionGrid::periodic_axis(2 * kPi, res(0, 48)), ImmersionGrid::periodic_axis(2 * kPi, res(1, 48)),
                  d.periodic ? ImmersionGrid::periodic_axis(d.domain, res(2, 48)) : ImmersionGrid::open_axis(0.0, d.domain, res(2, 48))};
            break;
        }
    }
    if (axes) *axes = ax;
    return out;
}

ImmersionGrid make_immersion(const ImmersionSpec& spec) {
    std::vector<GridAxis> ax;
    auto map = immersion_map(spec, &ax);
    ImmersionGrid g = ImmersionGrid::from_map(map, ax);
    g.family = to_string(spec.family);
    g.family_params = {{"n", spec.n}, {"a", spec.a}};
    if (spec.family == ImmersionFamily::Prop53X2) {
        g.family_params["kappa1"] = spec.kappa1;
        g.family_params["A"] = std::sqrt(1 + spec.kappa1);
        g.family_params["B"] = std::sqrt(1 - spec.kappa1);
    }
    if (spec.family == ImmersionFamily::Prop44Surface) {
        const FamilyData d = family_data(CurveSpec{CurveFamily::Thm311, spec.n, spec.a});
        g.family_params["A"] = d.A;
        g.family_params["B"] = d.B;
    }
    return g;
}

}  // namespace sasaki
