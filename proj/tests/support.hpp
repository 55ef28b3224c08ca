#pragma once

#include <random>

#include "einf/dg_module.hpp"

namespace einf::testing {

inline Fp random_scalar(std::mt19937& rng) { return Fp(static_cast<long long>(rng() % Fp::prime())); }

inline Mat random_mat(std::mt19937& rng, Index r, Index c) {
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = random_scalar(rng);
  return m;
}

/// Random complex built cell by cell: every generator of degree d gets a
/// random cycle of degree d-1 as its boundary. The first fixed[d]
/// generators only see earlier fixed generators, so they span a subcomplex.
inline ModulePtr random_complex(std::mt19937& rng, const std::vector<Index>& dims,
                                const std::vector<Index>& fixed = {}) {
  FreeDGModule::Data data;
  data.dims = dims;
  data.differential.resize(dims.size());
  for (size_t d = 1; d < dims.size(); ++d) {
    const Index lower = dims[d - 1];
    Mat z = d == 1 ? identity(lower) : kernel_basis(data.differential[d - 1]);
    Mat del = zeros(lower, dims[d]);
    const Index fixed_lower = fixed.empty() ? 0 : fixed[d - 1];
    const Index fixed_here = fixed.empty() ? 0 : fixed[d];
    Mat zf = z;
    if (!fixed.empty()) {
      // Cycles supported on the fixed part of degree d-1.
      Mat sub = d == 1 ? identity(fixed_lower)
                       : kernel_basis(data.differential[d - 1].topLeftCorner(data.differential[d - 1].rows(), fixed_lower));
      zf = zeros(lower, sub.cols());
      zf.topRows(fixed_lower) = sub;
    }
    for (Index c = 0; c < dims[d]; ++c) {
      const Mat& basis = c < fixed_here ? zf : z;
      if (basis.cols() == 0) continue;
      del.col(c) = basis * random_mat(rng, basis.cols(), 1);
    }
    data.differential[d] = std::move(del);
  }
  data.label = "R";
  return FreeDGModule::make(std::move(data));
}

/// Random map of degree k.
inline DGMorphism random_map(std::mt19937& rng, const ModulePtr& s, const ModulePtr& t, int k) {
  std::vector<Mat> b;
  for (int d = 0; d <= s->max_degree(); ++d) b.push_back(random_mat(rng, t->dim(d + k), s->dim(d)));
  return DGMorphism(s, t, k, std::move(b));
}

/// M ⊕ E with E contractible (pairs x_d ↦ y_{d-1}), conjugated by a random
/// change of basis, together with the inclusion of M (a quasi-isomorphism).
struct QuasiIsoPair {
  ModulePtr m;
  ModulePtr n;
  DGMorphism f;
};

inline QuasiIsoPair random_quasi_iso(std::mt19937& rng, const ModulePtr& m, Index extra) {
  const int top = m->max_degree();
  std::vector<Index> e_dims(static_cast<size_t>(top) + 1, 0);
  std::vector<Index> pairs(static_cast<size_t>(top) + 1, 0);  // pairs with top cell in degree d
  for (int d = 1; d <= top; ++d) {
    pairs[static_cast<size_t>(d)] = static_cast<Index>(rng() % (extra + 1));
    e_dims[static_cast<size_t>(d)] += pairs[static_cast<size_t>(d)];
    e_dims[static_cast<size_t>(d) - 1] += pairs[static_cast<size_t>(d)];
  }
  FreeDGModule::Data data;
  std::vector<Mat> change;
  for (int d = 0; d <= top; ++d) {
    const Index n = m->dim(d) + e_dims[static_cast<size_t>(d)];
    data.dims.push_back(n);
    Mat b;
    do {
      b = random_mat(rng, n, n);
    } while (rank(b) != n);
    change.push_back(b);
  }
  // Raw differential on M ⊕ E: lower cells of pairs come first in E.
  data.differential.resize(static_cast<size_t>(top) + 1);
  for (int d = 1; d <= top; ++d) {
    Mat raw = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
    raw.topLeftCorner(m->dim(d - 1), m->dim(d)) = m->differential(d);
    const Index lower_pairs = pairs[static_cast<size_t>(d)];
    const Index up_offset = m->dim(d) + (d + 1 <= top ? pairs[static_cast<size_t>(d) + 1] : 0);
    for (Index i = 0; i < lower_pairs; ++i) raw(m->dim(d - 1) + i, up_offset + i) = Fp(1);
    data.differential[static_cast<size_t>(d)] = raw;
  }
  std::vector<Mat> inv;
  for (auto& b : change) {
    Echelon e(b, {.transform = true});
    Mat x(b.rows(), b.cols());
    for (Index c = 0; c < b.cols(); ++c) x.col(c) = *e.solve(unit_vec(b.rows(), c));
    inv.push_back(x);
  }
  for (int d = 1; d <= top; ++d) {
    data.differential[static_cast<size_t>(d)] =
        change[static_cast<size_t>(d) - 1] * data.differential[static_cast<size_t>(d)] * inv[static_cast<size_t>(d)];
  }
  data.label = "N";
  ModulePtr n = FreeDGModule::make(std::move(data));
  std::vector<Mat> blocks;
  for (int d = 0; d <= top; ++d) {
    Mat inc = zeros(n->dim(d), m->dim(d));
    inc.topRows(m->dim(d)) = identity(m->dim(d));
    blocks.push_back(change[static_cast<size_t>(d)] * inc);
  }
  return {m, n, DGMorphism(m, n, 0, std::move(blocks))};
}

}  // namespace einf::testing
