#pragma once

#include "sasaki/ambient.hpp"

#include <vector>

namespace sasaki {

// F(p) = Σ_k A_k cos(ω_k·p) + B_k sin(ω_k·p), p ∈ R^d, values in R^N.
// Closed under the linear and flow operations used to build the explicit families;
// derivatives of every order are exact.
class TrigMap {
public:
    struct Term {
        Vec omega;
        Vec A;
        Vec B;
    };

    TrigMap() = default;
    TrigMap(int param_dim, int ambient_dim);

    int param_dim() const { return d_; }
    int ambient_dim() const { return N_; }
    const std::vector<Term>& terms() const { return terms_; }

    // Adds A cos(ω·p) + B sin(ω·p), merging with an existing term of the same frequency.
    void add(const Vec& omega, const Vec& A, const Vec& B);
    // Adds coeff * cos(ω·p + phase).
    void add_cos(const Vec& omega, double phase, const Vec& coeff);

    Vec value(const Vec& p) const;
    Vec derivative(const Vec& p, const std::vector<int>& multi_index) const;
    // Several derivatives at one point; trig factors are evaluated once.
    std::vector<Vec> derivatives(const Vec& p, const std::vector<std::vector<int>>& multi_indices) const;
    // For d = 1: value and derivatives of orders 1..order at s.
    std::vector<Vec> curve_jet(double s, int order) const;

    TrigMap linear(const Mat& L) const;  // p ↦ L F(p)
    // (t, p) ↦ cos(rate t) F(p) - sin(rate t) Q F(p), the new parameter placed first.
    TrigMap prepend_rotation(const Mat& Q, double rate) const;
    // New parameter order: output parameter k is input parameter order[k].
    TrigMap permute(const std::vector<int>& order) const;
    TrigMap scale_parameters(const Vec& factors) const;  // p ↦ F(factors ⊙ p)

    std::vector<double> frequencies(int direction) const;  // distinct |ω_direction| > 0

private:
    int d_ = 0;
    int N_ = 0;
    std::vector<Term> terms_;
};

}  // namespace sasaki
