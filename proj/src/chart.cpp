#include "sasaki/chart.hpp"

#include "sasaki/errors.hpp"

#include <cmath>

namespace sasaki {

StereoChart StereoChart::for_point(const Vec& z) {
    StereoChart c;
    c.ambient_dim = static_cast<int>(z.size());
    c.sigma = z[z.size() - 1] > 0.7 ? -1 : 1;
    return c;
}

Vec StereoChart::to_chart(const Vec& z) const {
    const int m = dim();
    const double d = 1.0 - sigma * z[m];
    if (d < 1e-3) throw NumericalFailure("point too close to the chart pole");
    return z.head(m) / d;
}

Vec StereoChart::from_chart(const Vec& x) const {
    const int m = dim();
    const double r2 = x.squaredNorm();
    Vec z(ambient_dim);
    z.head(m) = 2.0 * x / (1.0 + r2);
    z[m] = sigma * (r2 - 1.0) / (r2 + 1.0);
    return z;
}

Mat StereoChart::jacobian(const Vec& x) const {
    const int m = dim();
    const double r2 = x.squaredNorm();
    const double q = 1.0 + r2;
    Mat J(ambient_dim, m);
    J.topRows(m) = 2.0 / q * Mat::Identity(m, m) - 4.0 / (q * q) * x * x.transpose();
    J.row(m) = 4.0 * sigma / (q * q) * x.transpose();
    return J;
}

Vec StereoChart::pull(const Vec& z, const Vec& V) const {
    const int m = dim();
    const double d = 1.0 - sigma * z[m];
    return V.head(m) / d + sigma * V[m] / (d * d) * z.head(m);
}

Mat chart_metric(const SasakianSphere& S, const StereoChart& chart, const Vec& x) {
    const Vec z = chart.from_chart(x);
    const Mat J = chart.jacobian(x);
    const Vec w = J.transpose() * S.structure().apply(z);
    const double a = S.a();
    return a * (J.transpose() * J) + a * (a - 1.0) * w * w.transpose();
}

static Christoffel christoffel_step(const SasakianSphere& S, const StereoChart& chart, const Vec& x, double h) {
    const int m = chart.dim();
    std::vector<Mat> dg(m);
    for (int l = 0; l < m; ++l) {
        Vec e = Vec::Zero(m);
        e[l] = h;
        dg[l] = (-chart_metric(S, chart, x + 2 * e) + 8.0 * chart_metric(S, chart, x + e) -
                 8.0 * chart_metric(S, chart, x - e) + chart_metric(S, chart, x - 2 * e)) /
                (12.0 * h);
    }
    const Mat ginv = chart_metric(S, chart, x).inverse();
    // first kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    Christoffel G(m, Mat::Zero(m, m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Vec first(m);
            for (int l = 0; l < m; ++l) first[l] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            const Vec second = ginv * first;
            for (int k = 0; k < m; ++k) {
                G[k](i, j) = second[k];
                G[k](j, i) = second[k];
            }
        }
    return G;
}

Christoffel christoffel_fd(const SasakianSphere& S, const StereoChart& chart, const Vec& x, const ChartFdOptions& opt) {
    Christoffel G = christoffel_step(S, chart, x, opt.step);
    if (!opt.richardson) return G;
    Christoffel H = christoffel_step(S, chart, x, opt.step / 2);
    for (std::size_t k = 0; k < G.size(); ++k) G[k] = (16.0 * H[k] - G[k]) / 15.0;
    return G;
}

Christoffel christoffel_round(const Vec& x) {
    const int m = static_cast<int>(x.size());
    const double q = 1.0 + x.squaredNorm();
    const Vec dl = -2.0 * x / q;  // gradient of log(2/(1+r^2))
    Christoffel G(m, Mat::Zero(m, m));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double v = 0.0;
                if (i == k) v += dl[j];
                if (j == k) v += dl[i];
                if (i == j) v -= dl[k];
                G[k](i, j) = v;
            }
    return G;
}

Vec riemann_fd_chart(const SasakianSphere& S, const StereoChart& chart, const Vec& x, const Vec& X, const Vec& Y,
                     const Vec& Z, const ChartFdOptions& opt) {
    const int m = chart.dim();
    const double h = opt.step;
    const Christoffel G0 = christoffel_fd(S, chart, x, opt);
    // dG[i][l](j,k) = d_i Gamma^l_jk
    std::vector<Christoffel> dG(m);
    for (int i = 0; i < m; ++i) {
        Vec e = Vec::Zero(m);
        e[i] = h;
        const Christoffel p2 = christoffel_fd(S, chart, x + 2 * e, opt), p1 = christoffel_fd(S, chart, x + e, opt);
        const Christoffel m1 = christoffel_fd(S, chart, x - e, opt), m2 = christoffel_fd(S, chart, x - 2 * e, opt);
        dG[i].resize(m);
        for (int l = 0; l < m; ++l) dG[i][l] = (-p2[l] + 8.0 * p1[l] - 8.0 * m1[l] + m2[l]) / (12.0 * h);
    }
    // R^l_{kij} = d_i G^l_jk - d_j G^l_ik + G^l_ip G^p_jk - G^l_jp G^p_ik
    Vec out = Vec::Zero(m);
    for (int l = 0; l < m; ++l) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const double xy = X[i] * Y[j];
                if (xy == 0.0) continue;
                for (int k = 0; k < m; ++k) {
                    double r = dG[i][l](j, k) - dG[j][l](i, k);
                    for (int p = 0; p < m; ++p) r += G0[l](i, p) * G0[p](j, k) - G0[l](j, p) * G0[p](i, k);
                    acc += r * xy * Z[k];
                }
            }
        out[l] = acc;
    }
    return out;
}

Vec curvature_fd(const SasakianSphere& S, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z,
                 const ChartFdOptions& opt) {
    const StereoChart chart = StereoChart::for_point(z);
    const Vec x = chart.to_chart(z);
    const Vec r = riemann_fd_chart(S, chart, x, chart.pull(z, X), chart.pull(z, Y), chart.pull(z, Z), opt);
    return chart.jacobian(x) * r;
}

TangentVector curvature_fd(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X,
                           const TangentVector& Y, const TangentVector& Z, const ChartFdOptions& opt) {
    return TangentVector{z, curvature_fd(S, z.z, X.vec, Y.vec, Z.vec, opt)};
}

}  // namespace sasaki
