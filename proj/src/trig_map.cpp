#include "sasaki/trig_map.hpp"

#include "sasaki/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sasaki {

TrigMap::TrigMap(int param_dim, int ambient_dim) : d_(param_dim), N_(ambient_dim) {}

void TrigMap::add(const Vec& omega_in, const Vec& A, const Vec& B_in) {
    if (omega_in.size() != d_ || A.size() != N_ || B_in.size() != N_) throw InvalidInput("trig term has wrong dimensions");
    Vec omega = omega_in;
    Vec B = B_in;
    // canonical sign: first nonzero frequency component positive
    int lead = -1;
    for (int i = 0; i < d_; ++i)
        if (omega[i] != 0.0) {
            lead = i;
            break;
        }
    if (lead < 0) {
        B.setZero();
    } else if (omega[lead] < 0) {
        omega = -omega;
        B = -B;
    }
    for (Term& t : terms_) {
        if ((t.omega - omega).cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + omega.cwiseAbs().maxCoeff())) {
            t.A += A;
            t.B += B;
            return;
        }
    }
    if (A.isZero(0.0) && B.isZero(0.0)) return;
    terms_.push_back(Term{omega, A, B});
}

void TrigMap::add_cos(const Vec& omega, double phase, const Vec& coeff) {
    // c cos(θ + φ) = c cos φ cos θ - c sin φ sin θ
    add(omega, std::cos(phase) * coeff, -std::sin(phase) * coeff);
}

std::vector<Vec> TrigMap::derivatives(const Vec& p, const std::vector<std::vector<int>>& mis) const {
    if (p.size() != d_) throw InvalidInput("parameter dimension mismatch");
    std::vector<Vec> out(mis.size(), Vec::Zero(N_));
    for (const Term& t : terms_) {
        const double th = t.omega.dot(p);
        const double c = std::cos(th), s = std::sin(th);
        for (std::size_t m = 0; m < mis.size(); ++m) {
            const auto& mi = mis[m];
            double w = 1.0;
            int order = 0;
            for (int k = 0; k < d_; ++k) {
                const int e = k < static_cast<int>(mi.size()) ? mi[k] : 0;
                for (int r = 0; r < e; ++r) w *= t.omega[k];
                order += e;
            }
            if (w == 0.0) continue;
            // d^m/dθ^m (A cos θ + B sin θ) cycles with period 4
            double ca, cb;
            switch (order % 4) {
                case 0: ca = c, cb = s; break;
                case 1: ca = -s, cb = c; break;
                case 2: ca = -c, cb = -s; break;
                default: ca = s, cb = -c; break;
            }
            out[m] += w * (ca * t.A + cb * t.B);
        }
    }
    return out;
}

Vec TrigMap::value(const Vec& p) const { return derivatives(p, {std::vector<int>(d_, 0)})[0]; }

Vec TrigMap::derivative(const Vec& p, const std::vector<int>& mi) const { return derivatives(p, {mi})[0]; }

std::vector<Vec> TrigMap::curve_jet(double s, int order) const {
    if (d_ != 1) throw InvalidInput("curve_jet needs a one-parameter map");
    std::vector<std::vector<int>> mis;
    for (int k = 0; k <= order; ++k) mis.push_back({k});
    Vec p(1);
    p[0] = s;
    return derivatives(p, mis);
}

TrigMap TrigMap::linear(const Mat& L) const {
    TrigMap out(d_, static_cast<int>(L.rows()));
    for (const Term& t : terms_) out.add(t.omega, L * t.A, L * t.B);
    return out;
}

TrigMap TrigMap::prepend_rotation(const Mat& Q, double rate) const {
    TrigMap out(d_ + 1, N_);
    for (const Term& t : terms_) {
        const Vec QA = Q * t.A, QB = Q * t.B;
        Vec wp(d_ + 1), wm(d_ + 1);
        wp[0] = rate;
        wm[0] = -rate;
        wp.tail(d_) = t.omega;
        wm.tail(d_) = t.omega;
        out.add(wp, 0.5 * (t.A + QB), 0.5 * (t.B - QA));
        out.add(wm, 0.5 * (t.A - QB), 0.5 * (t.B + QA));
    }
    return out;
}

TrigMap TrigMap::permute(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != d_) throw InvalidInput("permutation has wrong length");
    TrigMap out(d_, N_);
    for (const Term& t : terms_) {
        Vec w(d_);
        for (int k = 0; k < d_; ++k) w[k] = t.omega[order[k]];
        out.add(w, t.A, t.B);
    }
    return out;
}

TrigMap TrigMap::scale_parameters(const Vec& f) const {
    TrigMap out(d_, N_);
    for (const Term& t : terms_) out.add(t.omega.cwiseProduct(f), t.A, t.B);
    return out;
}

std::vector<double> TrigMap::frequencies(int direction) const {
    std::vector<double> out;
    for (const Term& t : terms_) {
        const double w = std::abs(t.omega[direction]);
        if (w == 0.0) continue;
        if (std::none_of(out.begin(), out.end(), [&](double v) { return std::abs(v - w) < 1e-12 * w; })) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sasaki
