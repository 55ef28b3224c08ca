#include "einf/lifting.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace einf {

namespace {

std::string lift_message(const char* what, int degree, const FreeDGModule& l, Index b) {
  std::ostringstream os;
  os << what << " at source degree " << degree << " on basis element " << l.basis_name(degree, b);
  return os.str();
}

/// Lazily built solvers for ∂x = y in each degree of a module.
class BoundarySolver {
 public:
  explicit BoundarySolver(const FreeDGModule& m) : m_(m), cache_(static_cast<size_t>(m.max_degree()) + 2) {}

  /// x in degree s with ∂x = y (y in degree s-1).
  std::optional<Vec> solve(int s, const Vec& y) {
    if (s <= 0) {
      if (!is_zero(y)) return std::nullopt;
      return zero_vec(m_.dim(s));
    }
    auto& e = cache_[static_cast<size_t>(s)];
    if (!e) e = std::make_unique<Echelon>(m_.differential(s), Echelon::Options{.transform = true, .reduced = true});
    return e->solve(y);
  }

 private:
  const FreeDGModule& m_;
  std::vector<std::unique_ptr<Echelon>> cache_;
};

/// Basis elements of degree d handled explicitly: all of them, or one per orbit.
std::vector<Index> representatives(const FreeDGModule& l, int d, const Symmetry* sym) {
  std::vector<Index> out;
  for (Index b = 0; b < l.dim(d); ++b) {
    if (sym == nullptr || sym->perm_of[static_cast<size_t>(d)][static_cast<size_t>(b)] == 0) out.push_back(b);
  }
  return out;
}

/// Writes x into column b of block and, under a symmetry, x·σ into column b·σ.
void set_orbit(Mat& block, const Symmetry* sym, const BasisAction* act, int d, int target_degree, Index b, const Vec& x) {
  block.col(b) = x;
  if (sym == nullptr) return;
  for (int g = 1; g < sym->group_order(); ++g) {
    block.col(sym->act(d, static_cast<int>(b), g)) = act->apply(g, target_degree, x);
  }
}

const Symmetry* domain_symmetry(const FreeDGModule& l, const Equivariance& eq) {
  if (eq.target == nullptr) return nullptr;
  const Symmetry* sym = l.symmetry();
  if (sym == nullptr) throw std::invalid_argument("equivariant lift needs a symmetric domain");
  if (sym->arity != eq.target->arity()) throw std::invalid_argument("equivariant lift: group mismatch");
  return sym;
}

}  // namespace

BasisPartition BasisPartition::none(const FreeDGModule& m) {
  BasisPartition p;
  for (int d = 0; d <= m.max_degree(); ++d) p.fixed.emplace_back(static_cast<size_t>(m.dim(d)), 0);
  return p;
}

BasisPartition BasisPartition::all(const FreeDGModule& m) {
  BasisPartition p;
  for (int d = 0; d <= m.max_degree(); ++d) p.fixed.emplace_back(static_cast<size_t>(m.dim(d)), 1);
  return p;
}

DGMorphism extend_null_homotopy(const DGMorphism& f, const BasisPartition& part, const DGMorphism& h,
                                const Equivariance& eq) {
  const FreeDGModule& l = *f.source();
  const FreeDGModule& n = *f.target();
  const int k = f.degree();
  if (h.degree() != k + 1) throw std::invalid_argument("extend_null_homotopy: homotopy must have degree k+1");
  const Symmetry* sym = domain_symmetry(l, eq);
  if (sym != nullptr) {
    for (int d = 0; d <= l.max_degree(); ++d) {
      for (Index b = 0; b < l.dim(d); ++b) {
        const int rep = sym->rep(d, sym->orbit_of[static_cast<size_t>(d)][static_cast<size_t>(b)]);
        if (part.is_fixed(d, b) != part.is_fixed(d, rep)) {
          throw std::invalid_argument("extend_null_homotopy: partition splits a Σ-orbit");
        }
      }
    }
  }
  DGMorphism out = h;
  BoundarySolver solver(n);
  const Fp sk = sign_power(k);
  for (int t = 0; t <= l.max_degree(); ++t) {
    const int s = t + k + 1;
    if (s > n.max_degree()) break;
    Mat& block = out.block(t);
    for (Index b : representatives(l, t, sym)) {
      if (part.is_fixed(t, b)) continue;
      Vec y = f.block(t).col(b);
      if (t >= 1) y -= mul(out.block(t - 1), Vec(l.differential(t).col(b))) * sk;
      auto x = solver.solve(s, y);
      if (!x) throw LiftError(lift_message("unsolvable extension system", t, l, b), t);
      set_orbit(block, sym, eq.target, t, s, b, *x);
    }
  }
  return out;
}

LiftResult equivariant_relative_lift(const DGMorphism& f, const DGMorphism& phi, const BasisPartition& part,
                                     const DGMorphism& alpha_fixed, const DGMorphism& h_fixed,
                                     const EquivariantLiftData& eq) {
  const ModulePtr& m = f.source();
  const ModulePtr& n = f.target();
  const ModulePtr& l = phi.source();
  const int lf = f.degree(), k = phi.degree();
  if (phi.target()->dims() != n->dims()) throw std::invalid_argument("relative_lift: φ must land in the target of f");
  if (alpha_fixed.degree() != k - lf || h_fixed.degree() != k + 1) {
    throw std::invalid_argument("relative_lift: α′ and h′ have the wrong degrees");
  }
  const MappingCone c = mapping_cone(f);
  const ModulePtr& cone = c.cone;
  const DGMorphism uphi = compose(c.inclusion, phi);

  DGMorphism start(l, cone, k + 1);
  for (int t = 0; t <= l->max_degree(); ++t) {
    const int s = t + k + 1;
    if (s > cone->max_degree()) continue;
    const Index mo = c.target_offset(s);
    Mat& b = start.block(t);
    for (Index col = 0; col < l->dim(t); ++col) {
      if (!part.is_fixed(t, col)) continue;
      b.col(col).head(mo) = alpha_fixed.block(t).col(col);
      b.col(col).tail(n->dim(s)) = h_fixed.block(t).col(col);
    }
  }

  std::unique_ptr<BasisAction> cone_action;
  Equivariance ceq;
  if (eq.target_action != nullptr) {
    if (eq.source_action == nullptr) throw std::invalid_argument("equivariant lift needs actions on both M and N");
    const int order = static_cast<int>(factorial(eq.target_action->arity()));
    std::vector<std::vector<std::vector<Index>>> im(static_cast<size_t>(order));
    std::vector<std::vector<std::vector<Fp>>> sg(static_cast<size_t>(order));
    for (int g = 0; g < order; ++g) {
      for (int s = 0; s <= cone->max_degree(); ++s) {
        std::vector<Index> row;
        std::vector<Fp> sr;
        const int ms = s - lf - 1;
        for (Index i = 0; i < m->dim(ms); ++i) {
          row.push_back(eq.source_action->image(g, ms, i));
          sr.push_back(eq.source_action->sign(g, ms, i));
        }
        const Index off = m->dim(ms);
        for (Index i = 0; i < n->dim(s); ++i) {
          row.push_back(off + eq.target_action->image(g, s, i));
          sr.push_back(eq.target_action->sign(g, s, i));
        }
        im[static_cast<size_t>(g)].push_back(std::move(row));
        sg[static_cast<size_t>(g)].push_back(std::move(sr));
      }
    }
    cone_action = std::make_unique<BasisAction>(eq.target_action->arity(), std::move(im), std::move(sg));
    ceq.target = cone_action.get();
  }

  const DGMorphism big = extend_null_homotopy(uphi, part, start, ceq);

  DGMorphism alpha(l, m, k - lf);
  DGMorphism h2(l, n, k + 1);
  for (int t = 0; t <= l->max_degree(); ++t) {
    const int s = t + k + 1;
    if (s > cone->max_degree()) {
      // Outside the cone window only the prescribed part is known.
      alpha.block(t) = alpha_fixed.block(t);
      h2.block(t) = h_fixed.block(t);
      for (Index col = 0; col < l->dim(t); ++col) {
        if (part.is_fixed(t, col)) continue;
        alpha.block(t).col(col).setConstant(Fp(0));
        h2.block(t).col(col).setConstant(Fp(0));
      }
      continue;
    }
    const Index mo = c.target_offset(s);
    alpha.block(t) = big.block(t).topRows(mo);
    h2.block(t) = big.block(t).bottomRows(n->dim(s));
  }
  LiftResult r;
  r.alpha = alpha;
  r.homotopy = Homotopy{h2, compose(f, alpha), phi};
  return r;
}

LiftResult relative_lift(const DGMorphism& f, const DGMorphism& phi, const BasisPartition& part,
                         const DGMorphism& alpha_fixed, const DGMorphism& h_fixed) {
  return equivariant_relative_lift(f, phi, part, alpha_fixed, h_fixed, {});
}

DGMorphism null_homotopy(const DGMorphism& f, const Equivariance& eq) {
  const FreeDGModule& l = *f.source();
  const FreeDGModule& n = *f.target();
  const int k = f.degree();
  const Symmetry* sym = domain_symmetry(l, eq);
  const int order = sym != nullptr ? sym->group_order() : 1;
  const Fp sk = sign_power(k);
  DGMorphism w(f.source(), f.target(), k + 1);
  BoundarySolver solver(n);

  for (int t = 0; t <= l.max_degree(); ++t) {
    const int s = t + k + 1;
    if (s > n.max_degree()) break;
    const std::vector<Index> reps = representatives(l, t, sym);
    Mat& block = w.block(t);
    for (Index b : reps) {
      Vec y = f.block(t).col(b);
      if (t >= 1) y -= mul(w.block(t - 1), Vec(l.differential(t).col(b))) * sk;
      auto x = solver.solve(s, y);
      if (!x) throw LiftError(lift_message("map is not null-homotopic", t, l, b), t);
      set_orbit(block, sym, eq.target, t, s, b, *x);
    }
    if (t + 1 > l.max_degree() || s + 1 > n.max_degree() || reps.empty()) continue;

    const HomologyClasses hc(n, s);
    const Index h = hc.dim();
    if (h == 0) continue;
    // Class action matrices of σ on H_s(N).
    std::vector<Mat> act(static_cast<size_t>(order));
    for (int g = 0; g < order; ++g) {
      Mat a = zeros(h, h);
      for (Index i = 0; i < h; ++i) {
        const Vec& z = hc.representatives()[static_cast<size_t>(i)];
        a.col(i) = hc.classify(g == 0 ? z : eq.target->apply(g, s, z));
      }
      act[static_cast<size_t>(g)] = std::move(a);
    }
    std::map<Index, Index> slot;
    for (size_t i = 0; i < reps.size(); ++i) slot[reps[i]] = static_cast<Index>(i);

    const std::vector<Index> up = representatives(l, t + 1, sym);
    Mat sys = zeros(static_cast<Index>(up.size()) * h, static_cast<Index>(reps.size()) * h);
    Vec rhs = zero_vec(sys.rows());
    const Mat& del = l.differential(t + 1);
    for (size_t e = 0; e < up.size(); ++e) {
      const Index bp = up[e];
      Vec r = f.block(t + 1).col(bp);
      r -= mul(block, Vec(del.col(bp))) * sk;
      rhs.segment(static_cast<Index>(e) * h, h) = hc.classify(r);
      for (Index c = 0; c < del.rows(); ++c) {
        const Fp coef = del(c, bp);
        if (coef.is_zero()) continue;
        Index rep = c;
        int g = 0;
        if (sym != nullptr) {
          const auto ts = static_cast<size_t>(t);
          rep = sym->rep(t, sym->orbit_of[ts][static_cast<size_t>(c)]);
          g = sym->perm_of[ts][static_cast<size_t>(c)];
        }
        sys.block(static_cast<Index>(e) * h, slot.at(rep) * h, h, h) += act[static_cast<size_t>(g)] * (coef * sk);
      }
    }
    auto zeta = solve_linear(sys, rhs);
    if (!zeta) throw LiftError("obstruction classes cannot be cleared at source degree " + std::to_string(t), t);
    for (size_t i = 0; i < reps.size(); ++i) {
      Vec x = block.col(reps[i]);
      for (Index j = 0; j < h; ++j) {
        const Fp z = (*zeta)(static_cast<Index>(i) * h + j);
        if (!z.is_zero()) x += hc.representatives()[static_cast<size_t>(j)] * z;
      }
      set_orbit(block, sym, eq.target, t, s, reps[i], x);
    }
  }
  return w;
}

}  // namespace einf
