#include "sasaki/flows.hpp"

#include "sasaki/errors.hpp"
#include "sasaki/finite_difference.hpp"
#include "sasaki/parallel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>
#include <random>

namespace sasaki {

namespace {
const double kPi = 3.14159265358979323846;

Vec tangential(const Vec& z, const Vec& v) { return v - v.dot(z) * z; }

// Stencil along one axis at index i, wrapped for periodic axes and shifted near open ends.
struct AxisStencil {
    std::vector<int> index;
    std::vector<double> weight;
};

AxisStencil axis_stencil(const GridAxis& ax, int i, int order, int accuracy) {
    fd::Stencil st = ax.periodic ? fd::central(order, accuracy) : fd::shifted(order, accuracy, -i, ax.count - 1 - i);
    AxisStencil out;
    const double scale = std::pow(ax.step, order);
    for (std::size_t k = 0; k < st.offsets.size(); ++k) {
        int j = i + st.offsets[k];
        if (ax.periodic) j = ((j % ax.count) + ax.count) % ax.count;
        out.index.push_back(j);
        out.weight.push_back(st.weights[k] / scale);
    }
    return out;
}

int shift_node(const ImmersionGrid& g, std::vector<int> idx, int axis, int to) {
    idx[axis] = to;
    return g.flat_index(idx);
}

// Derivative along `axis` of a node-indexed field, at one node.
template <class Getter>
Vec axis_derivative(const ImmersionGrid& g, int node, int axis, int order, int accuracy, Getter&& get) {
    const std::vector<int> idx = g.multi_index(node);
    const AxisStencil st = axis_stencil(g.axes[axis], idx[axis], order, accuracy);
    Vec out;
    for (std::size_t k = 0; k < st.index.size(); ++k) {
        const Vec v = get(shift_node(g, idx, axis, st.index[k]));
        if (k == 0) out = Vec::Zero(v.size());
        out += st.weight[k] * v;
    }
    return out;
}

std::vector<std::vector<int>> jet_indices(int m) {
    std::vector<std::vector<int>> mi;
    for (int i = 0; i < m; ++i) {
        std::vector<int> e(m, 0);
        e[i] = 1;
        mi.push_back(e);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            std::vector<int> e(m, 0);
            e[i] += 1;
            e[j] += 1;
            mi.push_back(e);
        }
    return mi;
}

NodeJet analytic_jet(const TrigMap& F, const Vec& p) {
    const int m = F.param_dim();
    static thread_local std::map<int, std::vector<std::vector<int>>> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, jet_indices(m)).first;
    std::vector<std::vector<int>> mi = it->second;
    mi.insert(mi.begin(), std::vector<int>(m, 0));
    const std::vector<Vec> d = F.derivatives(p, mi);
    NodeJet J;
    J.point = d[0];
    J.d1.assign(d.begin() + 1, d.begin() + 1 + m);
    J.d2.assign(m, std::vector<Vec>(m));
    int k = 1 + m;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            J.d2[i][j] = d[k];
            J.d2[j][i] = d[k];
            ++k;
        }
    return J;
}

// Geometry of the immersion at one point: induced metric, its inverse, and the tension.
struct PointGeometry {
    Vec z;
    std::vector<Vec> d1;
    Mat G, Ginv;
    std::vector<std::vector<double>> gamma;  // gamma[k][i*m + j] = Γ^k_ij
    Vec tau;
    Connection::PointData pd;
};

PointGeometry geometry(const Connection& C, const NodeJet& J, double max_condition) {
    const SasakianSphere& S = C.sphere();
    const int m = static_cast<int>(J.d1.size());
    PointGeometry P;
    P.z = J.point;
    P.d1 = J.d1;
    P.pd = C.prepare(P.z);
    P.G.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) P.G(i, j) = S.g(P.z, J.d1[i], J.d1[j]);
    Eigen::SelfAdjointEigenSolver<Mat> es(P.G);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0) || hi / lo > max_condition)
        throw NumericalFailure(fmt::format("induced metric ill-conditioned (eigenvalues {:.3e}, {:.3e})", lo, hi));
    P.Ginv = P.G.inverse();
    std::vector<std::vector<Vec>> H(m, std::vector<Vec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            H[i][j] = tangential(P.z, J.d2[i][j]) + C.difference(P.pd, J.d1[i], J.d1[j]);
            H[j][i] = H[i][j];
        }
    P.gamma.assign(m, std::vector<double>(m * m, 0.0));
    Mat low(m * m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) low(i * m + j, l) = S.g(P.z, H[i][j], J.d1[l]);
    for (int k = 0; k < m; ++k)
        for (int ij = 0; ij < m * m; ++ij) {
            double s = 0;
            for (int l = 0; l < m; ++l) s += P.Ginv(k, l) * low(ij, l);
            P.gamma[k][ij] = s;
        }
    P.tau = Vec::Zero(P.z.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec hij = H[i][j];
            for (int k = 0; k < m; ++k) hij -= P.gamma[k][i * m + j] * J.d1[k];
            P.tau += P.Ginv(i, j) * hij;
        }
    return P;
}

struct NodeResult {
    Vec tau, tau2, nabla0_tau;
};

// Assembles τ₂ = trace ∇²τ - trace R(dF, τ)dF at a point from ∇_j τ and its derivatives.
Vec assemble_bitension(const Connection& C, const PointGeometry& P, const std::vector<Vec>& V,
                       const std::vector<std::vector<Vec>>& dV) {
    const SasakianSphere& S = C.sphere();
    const int m = static_cast<int>(P.d1.size());
    Vec out = Vec::Zero(P.z.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec hess = tangential(P.z, dV[i][j]) + C.difference(P.pd, P.d1[i], V[j]);
            for (int k = 0; k < m; ++k) hess -= P.gamma[k][i * m + j] * V[k];
            out += P.Ginv(i, j) * (hess - curvature_formula(S, P.z, P.d1[i], P.tau, P.d1[j]));
        }
    return out;
}

Vec covariant_of_tau(const Connection& C, const PointGeometry& P, int j, const Vec& dtau) {
    return tangential(P.z, dtau) + C.difference(P.pd, P.d1[j], P.tau);
}

// Local-stencil evaluation at one node of an analytic grid with step h.
NodeResult analytic_node(const Connection& C, const TrigMap& F, const Vec& p0, double h, double max_condition) {
    const int m = F.param_dim();
    const fd::Stencil& st = fd::central(1, 4);
    std::map<std::vector<int>, PointGeometry> memo;
    auto geo = [&](const std::vector<int>& o) -> const PointGeometry& {
        auto it = memo.find(o);
        if (it != memo.end()) return it->second;
        Vec p = p0;
        for (int d = 0; d < m; ++d) p[d] += h * o[d];
        return memo.emplace(o, geometry(C, analytic_jet(F, p), max_condition)).first->second;
    };
    auto dtau = [&](std::vector<int> o, int j) {
        Vec out;
        const int base = o[j];
        for (std::size_t k = 0; k < st.offsets.size(); ++k) {
            o[j] = base + st.offsets[k];
            const Vec& t = geo(o).tau;
            if (k == 0) out = Vec::Zero(t.size());
            out += st.weights[k] / h * t;
        }
        return out;
    };
    auto Vj = [&](const std::vector<int>& o, int j) { return covariant_of_tau(C, geo(o), j, dtau(o, j)); };
    const std::vector<int> zero(m, 0);
    std::vector<Vec> V(m);
    for (int j = 0; j < m; ++j) V[j] = Vj(zero, j);
    std::vector<std::vector<Vec>> dV(m, std::vector<Vec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec acc;
            std::vector<int> o = zero;
            for (std::size_t k = 0; k < st.offsets.size(); ++k) {
                o[i] = st.offsets[k];
                const Vec v = Vj(o, j);
                if (k == 0) acc = Vec::Zero(v.size());
                acc += st.weights[k] / h * v;
            }
            dV[i][j] = acc;
        }
    const PointGeometry& P = geo(zero);
    return NodeResult{P.tau, assemble_bitension(C, P, V, dV), V[0]};
}

// Jets at every node of a grid without analytic derivatives.
std::vector<NodeJet> grid_jets(const ImmersionGrid& g, int accuracy, int threads) {
    const int total = g.node_count();
    const int m = g.dim;
    std::vector<std::vector<Vec>> d1(m, std::vector<Vec>(total));
    auto pts = [&](int k) -> const Vec& { return g.points[k]; };
    parallel_for(total, [&](int k) {
        for (int i = 0; i < m; ++i) d1[i][k] = axis_derivative(g, k, i, 1, accuracy, pts);
    }, threads);
    std::vector<NodeJet> jets(total);
    parallel_for(total, [&](int k) {
        NodeJet& J = jets[k];
        J.point = g.points[k];
        J.d1.resize(m);
        J.d2.assign(m, std::vector<Vec>(m));
        for (int i = 0; i < m; ++i) J.d1[i] = d1[i][k];
        for (int i = 0; i < m; ++i) {
            J.d2[i][i] = axis_derivative(g, k, i, 2, accuracy, pts);
            for (int j = i + 1; j < m; ++j) {
                J.d2[i][j] = axis_derivative(g, k, i, 1, accuracy, [&](int q) -> const Vec& { return d1[j][q]; });
                J.d2[j][i] = J.d2[i][j];
            }
        }
    }, threads);
    return jets;
}

}  // namespace

Vec reeb_flow(const SasakianSphere& S, double t, const Vec& z) {
    const double th = t / S.a();
    return std::cos(th) * z - std::sin(th) * S.structure().apply(z);
}

Vec flow_differential(const SasakianSphere& S, double t, const Vec& v) { return reeb_flow(S, t, v); }

ImmersionGrid curve_as_grid(const SampledCurve& curve) {
    ImmersionGrid g;
    g.dim = 1;
    g.ambient_dim = curve.ambient_dim();
    g.points = curve.points;
    const double h = curve.spacing();
    g.axes = {GridAxis{curve.params.front(), h, curve.size(), curve.periodic}};
    g.analytic = curve.analytic;
    g.family = curve.family;
    g.family_params = curve.family_params;
    return g;
}

NodeJet node_jet(const ImmersionGrid& grid, int node, int accuracy) {
    if (grid.analytic) return analytic_jet(*grid.analytic, grid.params_at(grid.multi_index(node)));
    const int m = grid.dim;
    auto pts = [&](int k) -> const Vec& { return grid.points[k]; };
    NodeJet J;
    J.point = grid.points[node];
    J.d1.resize(m);
    J.d2.assign(m, std::vector<Vec>(m));
    for (int i = 0; i < m; ++i) {
        J.d1[i] = axis_derivative(grid, node, i, 1, accuracy, pts);
        J.d2[i][i] = axis_derivative(grid, node, i, 2, accuracy, pts);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            J.d2[i][j] = axis_derivative(grid, node, i, 1, accuracy,
                                         [&](int q) { return axis_derivative(grid, q, j, 1, accuracy, pts); });
            J.d2[j][i] = J.d2[i][j];
        }
    return J;
}

bool node_is_interior(const ImmersionGrid& grid, int node, int margin) {
    const std::vector<int> idx = grid.multi_index(node);
    for (int d = 0; d < grid.dim; ++d)
        if (!grid.axes[d].periodic && (idx[d] < margin || idx[d] >= grid.axes[d].count - margin)) return false;
    return true;
}

double integral_residual(const SasakianSphere& S, const ImmersionGrid& grid) {
    if (grid.dim == 0) return 0.0;
    std::vector<double> r(grid.node_count(), 0.0);
    parallel_for(grid.node_count(), [&](int k) {
        const NodeJet J = node_jet(grid, k);
        for (const Vec& v : J.d1) r[k] = std::max(r[k], std::abs(S.eta(J.point, v)));
    });
    return *std::max_element(r.begin(), r.end());
}

double min_gram_determinant(const SasakianSphere& S, const ImmersionGrid& grid) {
    if (grid.dim == 0) return 1.0;
    std::vector<double> r(grid.node_count(), 0.0);
    parallel_for(grid.node_count(), [&](int k) {
        const NodeJet J = node_jet(grid, k);
        Mat G(grid.dim, grid.dim);
        for (int i = 0; i < grid.dim; ++i)
            for (int j = 0; j < grid.dim; ++j) G(i, j) = S.g(J.point, J.d1[i], J.d1[j]);
        r[k] = G.determinant();
    });
    return *std::min_element(r.begin(), r.end());
}

ImmersionGrid compose_flow(const SasakianSphere& S, const ImmersionGrid& base, const ComposeOptions& opt) {
    if (base.ambient_dim != S.dim()) throw InvalidInput("base dimension does not match the sphere");
    for (const Vec& z : base.points)
        if (std::abs(z.squaredNorm() - 1.0) >= 1e-12) throw InvalidInput("base point off the sphere");
    if (base.dim > 0) {
        const double ir = integral_residual(S, base);
        if (!(ir < opt.integral_tol))
            throw InvalidInput(fmt::format("base is not an integral submanifold: sup |eta(dF)| = {:.3e}", ir));
        const double gd = min_gram_determinant(S, base);
        if (!(gd > opt.rank_tol)) throw InvalidInput(fmt::format("base is not of full rank: Gram determinant {:.3e}", gd));
    }
    ImmersionGrid out;
    out.dim = base.dim + 1;
    out.ambient_dim = base.ambient_dim;
    out.axes = {ImmersionGrid::periodic_axis(2 * kPi * S.a(), opt.t_count)};
    out.axes.insert(out.axes.end(), base.axes.begin(), base.axes.end());
    const int nb = base.dim > 0 ? base.node_count() : 1;
    out.points.resize(static_cast<std::size_t>(opt.t_count) * nb);
    for (int it = 0; it < opt.t_count; ++it) {
        const double t = out.axes[0].value(it);
        for (int k = 0; k < nb; ++k) out.points[static_cast<std::size_t>(it) * nb + k] = reeb_flow(S, t, base.points[k]);
    }
    if (base.analytic || base.dim == 0) {
        TrigMap src(base.dim, base.ambient_dim);
        if (base.dim > 0) {
            src = *base.analytic;
        } else {
            src.add(Vec::Zero(0), base.points[0], Vec::Zero(base.ambient_dim));
        }
        out.analytic = std::make_shared<TrigMap>(src.prepend_rotation(S.structure().matrix(), 1.0 / S.a()));
    }
    out.family = base.family.empty() ? "flow" : "flow(" + base.family + ")";
    out.family_params = base.family_params;
    out.family_params["flow_structure"] = S.structure_index();
    return out;
}

ImmersionGrid compose_flow(const SasakianSphere& S, const SampledCurve& base, const ComposeOptions& opt) {
    return compose_flow(S, curve_as_grid(base), opt);
}

ImmersionGrid compose_flow(const SasakianSphere& S, const Vec& point, const ComposeOptions& opt) {
    ImmersionGrid g;
    g.dim = 0;
    g.ambient_dim = static_cast<int>(point.size());
    g.points = {point};
    return compose_flow(S, g, opt);
}

std::vector<int> evaluation_nodes(const ImmersionGrid& grid, const ImmersionEvalOptions& opt) {
    if (!opt.nodes.empty()) return opt.nodes;
    const int total = grid.node_count();
    std::vector<int> all(total);
    std::iota(all.begin(), all.end(), 0);
    if (opt.all_nodes || grid.dim < 3) return all;
    std::vector<char> pick(total, 0);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < total; ++k)
        if (U(rng) < opt.subsample) pick[k] = 1;
    for (int k = 0; k < total; ++k)
        if (grid.multi_index(k)[0] == 0) pick[k] = 1;
    std::vector<int> out;
    for (int k = 0; k < total; ++k)
        if (pick[k]) out.push_back(k);
    return out;
}

ImmersionFields immersion_fields(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt) {
    if (grid.dim < 1) throw InvalidInput("immersion grid needs at least one parameter");
    if (static_cast<int>(grid.points.size()) != grid.node_count()) throw InvalidInput("grid point count mismatch");
    const Connection C(S);
    ImmersionFields out;
    const std::vector<int> nodes = evaluation_nodes(grid, opt);
    out.subsampled = static_cast<int>(nodes.size()) < grid.node_count();
    const int n = static_cast<int>(nodes.size());
    std::vector<NodeResult> res(n);
    if (grid.analytic) {
        out.mode = "analytic-stencil";
        std::vector<double> dis(n, 0.0);
        parallel_for(n, [&](int q) {
            const Vec p = grid.params_at(grid.multi_index(nodes[q]));
            res[q] = analytic_node(C, *grid.analytic, p, opt.step, opt.max_condition);
            if (opt.refine) {
                NodeResult fine = analytic_node(C, *grid.analytic, p, opt.step / 2, opt.max_condition);
                dis[q] = S.norm(grid.points[nodes[q]], fine.tau2 - res[q].tau2);
                res[q] = fine;
            }
        }, opt.threads);
        for (double d : dis) out.refinement_disagreement = std::max(out.refinement_disagreement, d);
    } else {
        out.mode = "grid";
        const std::vector<NodeJet> jets = grid_jets(grid, opt.grid_accuracy, opt.threads);
        const int total = grid.node_count();
        std::vector<PointGeometry> geo(total);
        parallel_for(total, [&](int k) { geo[k] = geometry(C, jets[k], opt.max_condition); }, opt.threads);
        const int m = grid.dim;
        std::vector<std::vector<Vec>> V(m, std::vector<Vec>(total));
        parallel_for(total, [&](int k) {
            for (int j = 0; j < m; ++j) {
                const Vec dt = axis_derivative(grid, k, j, 1, opt.grid_accuracy, [&](int q) -> const Vec& { return geo[q].tau; });
                V[j][k] = covariant_of_tau(C, geo[k], j, dt);
            }
        }, opt.threads);
        std::vector<double> dis(n, 0.0);
        parallel_for(n, [&](int q) {
            const int k = nodes[q];
            std::vector<Vec> Vk(m);
            std::vector<std::vector<Vec>> dV(m, std::vector<Vec>(m)), dVlo(m, std::vector<Vec>(m));
            for (int j = 0; j < m; ++j) Vk[j] = V[j][k];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    auto get = [&](int r) -> const Vec& { return V[j][r]; };
                    dV[i][j] = axis_derivative(grid, k, i, 1, opt.grid_accuracy, get);
                    if (opt.refine) dVlo[i][j] = axis_derivative(grid, k, i, 1, std::max(2, opt.grid_accuracy - 2), get);
                }
            res[q] = NodeResult{geo[k].tau, assemble_bitension(C, geo[k], Vk, dV), Vk[0]};
            if (opt.refine) {
                const Vec lo = assemble_bitension(C, geo[k], Vk, dVlo);
                dis[q] = S.norm(geo[k].z, lo - res[q].tau2);
            }
        }, opt.threads);
        for (double d : dis) out.refinement_disagreement = std::max(out.refinement_disagreement, d);
        out.notes.push_back("grid mode: refinement compares stencil accuracy orders, not step sizes");
    }
    out.tension.nodes = out.bitension.nodes = out.tension_flow_derivative.nodes = nodes;
    double sum = 0;
    std::vector<double> norms;
    out.tension_inf = 1e300;
    for (int q = 0; q < n; ++q) {
        const Vec& z = grid.points[nodes[q]];
        out.tension.values.push_back(res[q].tau);
        out.bitension.values.push_back(res[q].tau2);
        out.tension_flow_derivative.values.push_back(res[q].nabla0_tau);
        const double t = S.norm(z, res[q].tau);
        sum += t;
        norms.push_back(t);
        out.tension_sup = std::max(out.tension_sup, t);
        out.tension_inf = std::min(out.tension_inf, t);
        out.bitension_sup = std::max(out.bitension_sup, S.norm(z, res[q].tau2));
    }
    if (n > 0) {
        out.tension_mean = sum / n;
        double var = 0;
        for (double t : norms) var += (t - out.tension_mean) * (t - out.tension_mean);
        var /= n;
        out.tension_rel_std = out.tension_mean > 0 ? std::sqrt(var) / out.tension_mean : 0.0;
    }
    out.resolved = !opt.refine || out.refinement_disagreement < opt.refine_tol;
    if (!out.resolved)
        out.notes.push_back(fmt::format("resolution insufficient: refined evaluation differs by {:.3e}", out.refinement_disagreement));
    return out;
}

PullbackField immersion_tension(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt) {
    return immersion_fields(S, grid, opt).tension;
}

PullbackField immersion_bitension(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt) {
    ImmersionFields f = immersion_fields(S, grid, opt);
    if (!f.resolved) throw NumericalFailure(f.notes.back());
    return f.bitension;
}

EquivarianceReport check_equivariance(const SasakianSphere& S, const ImmersionGrid& base, const ImmersionGrid& composed,
                                      const ImmersionEvalOptions& opt) {
    if (composed.dim != base.dim + 1) throw InvalidInput("composed grid must have one more parameter than the base");
    const int nb = base.dim > 0 ? base.node_count() : 1;
    if (composed.node_count() != composed.axes[0].count * nb) throw InvalidInput("composed grid does not match the base");
    for (int d = 0; d < base.dim; ++d)
        if (composed.axes[d + 1].count != base.axes[d].count) throw InvalidInput("composed grid does not match the base");
    const ImmersionFields Fc = immersion_fields(S, composed, opt);
    std::vector<int> base_nodes;
    for (int k : Fc.bitension.nodes) base_nodes.push_back(k % nb);
    std::sort(base_nodes.begin(), base_nodes.end());
    base_nodes.erase(std::unique(base_nodes.begin(), base_nodes.end()), base_nodes.end());
    std::map<int, Vec> base_tau2;
    EquivarianceReport r;
    if (base.dim == 0) {
        // a point is harmonic
        base_tau2[0] = Vec::Zero(base.ambient_dim);
    } else {
        ImmersionEvalOptions bo = opt;
        bo.nodes = base_nodes;
        const ImmersionFields Fb = immersion_fields(S, base, bo);
        for (std::size_t q = 0; q < Fb.bitension.nodes.size(); ++q) base_tau2[Fb.bitension.nodes[q]] = Fb.bitension.values[q];
        r.base_bitension_sup = Fb.bitension_sup;
    }
    r.composed_bitension_sup = Fc.bitension_sup;
    r.composed = Fc;
    r.nodes = static_cast<int>(Fc.bitension.nodes.size());
    for (std::size_t q = 0; q < Fc.bitension.nodes.size(); ++q) {
        const int k = Fc.bitension.nodes[q];
        const double t = composed.axes[0].value(k / nb);
        const Vec pushed = flow_differential(S, t, base_tau2.at(k % nb));
        r.residual = std::max(r.residual, S.norm(composed.points[k], Fc.bitension.values[q] - pushed));
    }
    return r;
}

FlowGeometry flow_geometry(const SasakianSphere& S, const ImmersionGrid& composed, const std::vector<int>& nodes) {
    std::vector<int> sel = nodes;
    if (sel.empty()) {
        sel.resize(composed.node_count());
        std::iota(sel.begin(), sel.end(), 0);
    }
    const int m = composed.dim;
    std::vector<FlowGeometry> part(sel.size());
    parallel_for(static_cast<int>(sel.size()), [&](int q) {
        const NodeJet J = node_jet(composed, sel[q]);
        const Vec& z = J.point;
        FlowGeometry& fg = part[q];
        fg.reeb_tangent = S.norm(z, J.d1[0] - S.xi(z));
        fg.reeb_unit = std::abs(S.g(z, J.d1[0], J.d1[0]) - 1.0);
        for (int j = 1; j < m; ++j)
            fg.orthogonality = std::max(fg.orthogonality, std::abs(S.g(z, J.d1[0], J.d1[j])) / S.norm(z, J.d1[j]));
        const Vec xi = S.xi(z);
        for (int j = 0; j < m; ++j) {
            const Vec X = J.d1[j] - S.eta(z, J.d1[j]) * xi;
            const double nx = S.norm(z, X);
            if (nx < 1e-8 * S.norm(z, J.d1[j])) continue;
            const Vec pj = S.phi(z, X);
            for (int k = 0; k < m; ++k)
                fg.anti_invariance = std::max(fg.anti_invariance, std::abs(S.g(z, pj, J.d1[k])) / (nx * S.norm(z, J.d1[k])));
        }
    });
    FlowGeometry out;
    for (const FlowGeometry& p : part) {
        out.reeb_tangent = std::max(out.reeb_tangent, p.reeb_tangent);
        out.reeb_unit = std::max(out.reeb_unit, p.reeb_unit);
        out.orthogonality = std::max(out.orthogonality, p.orthogonality);
        out.anti_invariance = std::max(out.anti_invariance, p.anti_invariance);
    }
    return out;
}

double tension_rotation_residual(const SasakianSphere& S, const ImmersionFields& fields, const ImmersionGrid& composed) {
    double r = 0;
    for (std::size_t q = 0; q < fields.tension.nodes.size(); ++q) {
        const Vec& z = composed.points[fields.tension.nodes[q]];
        r = std::max(r, S.norm(z, fields.tension_flow_derivative.values[q] + S.phi(z, fields.tension.values[q])));
    }
    return r;
}

}  // namespace sasaki
