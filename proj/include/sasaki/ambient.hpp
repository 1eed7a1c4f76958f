#pragma once

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <vector>

namespace sasaki {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

Vec basis_vector(int dim, int index);

enum class StructureTag { I, J, K };

// Signed permutation acting on R^dim: (S v)_i = sign_i * v_{source_i}.
class ComplexStructure {
public:
    static ComplexStructure make(StructureTag tag, int dim);
    // Structure index 1, 2, 3 maps to I, J, K.
    static ComplexStructure from_index(int index, int dim);

    StructureTag tag() const { return tag_; }
    int dim() const { return static_cast<int>(source_.size()); }

    Vec apply(const Vec& v) const;
    Mat matrix() const;
    ComplexStructure compose(const ComplexStructure& inner) const;  // this ∘ inner
    ComplexStructure negated() const;

    const std::vector<int>& source() const { return source_; }
    const std::vector<int>& sign() const { return sign_; }

private:
    StructureTag tag_ = StructureTag::I;
    std::vector<int> source_;
    std::vector<int> sign_;
};

Vec apply_structure(const ComplexStructure& cs, const Vec& v);

struct SpherePoint {
    Vec z;
    static SpherePoint make(Vec v, double tol = 1e-12);
};

struct TangentVector {
    SpherePoint base;
    Vec vec;
    static TangentVector make(const SpherePoint& base, Vec v, double tol = 1e-10);
};

TangentVector project_tangent(const SpherePoint& z, const Vec& v);
Vec project_tangent(const Vec& z, const Vec& v);

using InnerProduct = std::function<double(const Vec&, const Vec&)>;

struct GramSchmidtResult {
    std::vector<Vec> basis;
    int rank = 0;
    std::vector<int> kept;  // input indices that contributed a basis vector
};

// Modified Gram-Schmidt with one re-orthogonalization pass; inputs whose residual
// norm falls below tol are dropped.
GramSchmidtResult gram_schmidt(const std::vector<Vec>& vectors, double tol = 1e-8,
                               const InnerProduct& inner = {});

using Rng = std::mt19937_64;
Vec random_sphere_point(int dim, Rng& rng);
Vec random_tangent(const Vec& z, Rng& rng);  // Euclidean unit, tangent at z

}  // namespace sasaki
