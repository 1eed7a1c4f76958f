#include "sasaki/ambient.hpp"

#include "sasaki/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace sasaki {

Vec basis_vector(int dim, int index) {
    if (index < 0 || index >= dim) throw InvalidInput(fmt::format("basis index {} outside dimension {}", index, dim));
    Vec e = Vec::Zero(dim);
    e[index] = 1.0;
    return e;
}

ComplexStructure ComplexStructure::make(StructureTag tag, int dim) {
    if (dim < 2 || dim % 2 != 0) throw InvalidInput(fmt::format("ambient dimension {} is not even", dim));
    ComplexStructure cs;
    cs.tag_ = tag;
    cs.source_.resize(dim);
    cs.sign_.resize(dim);
    if (tag == StructureTag::I) {
        const int m = dim / 2;
        for (int i = 0; i < m; ++i) {
            cs.source_[i] = i + m;
            cs.sign_[i] = -1;
            cs.source_[i + m] = i;
            cs.sign_[i + m] = 1;
        }
        return cs;
    }
    if (dim != 8) throw InvalidInput("structures J and K exist only on S^7 (ambient dimension 8)");
    if (tag == StructureTag::J) {
        // 2x2 blocks: out0 = v3, out1 = -v2, out2 = v1, out3 = -v0
        const int src_block[4] = {3, 2, 1, 0};
        const int blk_sign[4] = {1, -1, 1, -1};
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 2; ++k) {
                cs.source_[2 * b + k] = 2 * src_block[b] + k;
                cs.sign_[2 * b + k] = blk_sign[b];
            }
        return cs;
    }
    ComplexStructure k = make(StructureTag::I, dim).compose(make(StructureTag::J, dim)).negated();
    k.tag_ = StructureTag::K;
    return k;
}

ComplexStructure ComplexStructure::from_index(int index, int dim) {
    switch (index) {
        case 1: return make(StructureTag::I, dim);
        case 2: return make(StructureTag::J, dim);
        case 3: return make(StructureTag::K, dim);
        default: throw InvalidInput(fmt::format("structure index {} not in {{1,2,3}}", index));
    }
}

Vec ComplexStructure::apply(const Vec& v) const {
    if (v.size() != dim()) throw InvalidInput(fmt::format("vector of length {} for structure on R^{}", v.size(), dim()));
    Vec out(v.size());
    for (int i = 0; i < dim(); ++i) out[i] = sign_[i] * v[source_[i]];
    return out;
}

Mat ComplexStructure::matrix() const {
    Mat m = Mat::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m(i, source_[i]) = sign_[i];
    return m;
}

ComplexStructure ComplexStructure::compose(const ComplexStructure& inner) const {
    if (inner.dim() != dim()) throw InvalidInput("composing structures of different dimension");
    ComplexStructure out = *this;
    for (int i = 0; i < dim(); ++i) {
        out.source_[i] = inner.source_[source_[i]];
        out.sign_[i] = sign_[i] * inner.sign_[source_[i]];
    }
    return out;
}

ComplexStructure ComplexStructure::negated() const {
    ComplexStructure out = *this;
    for (auto& s : out.sign_) s = -s;
    return out;
}

Vec apply_structure(const ComplexStructure& cs, const Vec& v) { return cs.apply(v); }

SpherePoint SpherePoint::make(Vec v, double tol) {
    const double r = v.squaredNorm();
    if (std::abs(r - 1.0) >= tol) throw InvalidInput(fmt::format("point is off the unit sphere (|z|^2 - 1 = {:.3e})", r - 1.0));
    return SpherePoint{std::move(v)};
}

TangentVector TangentVector::make(const SpherePoint& base, Vec v, double tol) {
    if (v.size() != base.z.size()) throw InvalidInput("tangent vector dimension does not match base point");
    const double d = v.dot(base.z);
    if (std::abs(d) >= tol) throw InvalidInput(fmt::format("vector is not tangent (<v,z> = {:.3e})", d));
    return TangentVector{base, std::move(v)};
}

Vec project_tangent(const Vec& z, const Vec& v) { return v - v.dot(z) * z; }

TangentVector project_tangent(const SpherePoint& z, const Vec& v) {
    if (v.size() != z.z.size()) throw InvalidInput("projection of a vector of mismatched dimension");
    return TangentVector{z, project_tangent(z.z, v)};
}

GramSchmidtResult gram_schmidt(const std::vector<Vec>& vectors, double tol, const InnerProduct& inner) {
    if (vectors.empty()) throw InvalidInput("gram_schmidt: empty input");
    if (!(tol > 0)) throw InvalidInput("gram_schmidt: tolerance must be positive");
    auto ip = [&](const Vec& a, const Vec& b) { return inner ? inner(a, b) : a.dot(b); };
    GramSchmidtResult out;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        Vec w = vectors[k];
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : out.basis) w -= ip(q, w) * q;
        const double nrm = std::sqrt(std::max(ip(w, w), 0.0));
        if (nrm < tol) continue;
        out.basis.push_back(w / nrm);
        out.kept.push_back(static_cast<int>(k));
    }
    out.rank = static_cast<int>(out.basis.size());
    return out;
}

Vec random_sphere_point(int dim, Rng& rng) {
    std::normal_distribution<double> nd;
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = nd(rng);
    return v / v.norm();
}

Vec random_tangent(const Vec& z, Rng& rng) {
    Vec v = project_tangent(z, random_sphere_point(static_cast<int>(z.size()), rng));
    return v / v.norm();
}

}  // namespace sasaki
