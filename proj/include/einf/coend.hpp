#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "einf/dg_module.hpp"
#include "einf/operad.hpp"

namespace einf {

/// Copy of m restricted to degrees 0..D (D ≤ window of m).
ModulePtr truncate_module(const ModulePtr& m, int max_degree);

/// A^{⊗r} in total degrees ≤ D with its basis given by tuples of A basis
/// elements. A basis element of A is addressed globally as offset(d) + i.
class TensorPower {
 public:
  TensorPower(ModulePtr a, int r, int max_degree);

  const ModulePtr& base() const { return a_; }
  const ModulePtr& module() const { return m_; }
  int power() const { return r_; }
  int max_degree() const { return m_->max_degree(); }

  int global(int d, Index i) const { return static_cast<int>(offset_[static_cast<size_t>(d)] + i); }
  int degree_of(int g) const { return deg_[static_cast<size_t>(g)]; }
  Index local(int g) const { return g - offset_[static_cast<size_t>(deg_[static_cast<size_t>(g)])]; }

  const std::vector<int>& tuple(int d, Index k) const { return tuples_[static_cast<size_t>(d)][static_cast<size_t>(k)]; }
  /// Basis index of a tuple, or -1 when its degree is outside the window.
  Index index(const std::vector<int>& tuple) const;
  int tuple_degree(const std::vector<int>& tuple) const;

  /// (a_1⊗…⊗a_r)·σ = ±a_{σ(1)}⊗…⊗a_{σ(r)} with the Koszul sign.
  const BasisAction& action() const;

 private:
  ModulePtr a_;
  int r_;
  std::vector<Index> offset_;
  std::vector<int> deg_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::map<std::vector<int>, Index> index_;
  ModulePtr m_;
  mutable std::unique_ptr<BasisAction> action_;
};

/// Element of Coend(A)(n): a homogeneous map A → A^{⊗n}.
struct CoendElement {
  int arity = 1;
  DGMorphism map;
  int degree() const { return map.degree(); }
};

/// Shared tensor powers of one module, truncated at a common degree.
class CoendContext {
 public:
  CoendContext(ModulePtr a, int max_degree);

  const ModulePtr& base() const { return a_; }
  int max_degree() const { return d_; }
  const TensorPower& power(int r) const;

  CoendElement unit() const;
  CoendElement zero(int arity, int degree) const;
  /// ∂F = ∂∘F - (-1)^{|F|} F∘∂.
  CoendElement differential(const CoendElement& f) const;
  /// F·σ = (output permutation σ)∘F.
  CoendElement act(const CoendElement& f, const Permutation& sigma) const;
  /// γ(F; G_1..G_r) = (-1)^{|F| Σ|G_i|} (G_1⊗…⊗G_r)∘F.
  CoendElement gamma(const CoendElement& f, const std::vector<CoendElement>& g) const;
  /// Applies G_1⊗…⊗G_r with Koszul signs to a vector of A^{⊗r} in degree d.
  Vec apply_tensor(const std::vector<const CoendElement*>& g, int d, const Vec& v) const;

  /// Equality on the source degrees where both maps are complete.
  bool equal(const CoendElement& a, const CoendElement& b) const;

 private:
  ModulePtr a_;
  int d_;
  mutable std::map<int, std::unique_ptr<TensorPower>> powers_;
};

class AssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Images of generators (indexed by generator id); missing entries are not
/// assigned yet.
using Assignment = std::vector<std::optional<CoendElement>>;

/// The operad map out of the quasi-free operad determined by an assignment.
class MorphismEvaluator {
 public:
  MorphismEvaluator(const QuasiFreeOperad& p, const CoendContext& ctx, const Assignment& a);

  /// Throws AssignmentError naming the first generator whose image does
  /// not commute with the differential (or has the wrong arity/degree).
  void check_boundaries() const;
  CoendElement evaluate(const OperadElement& x) const;
  CoendElement evaluate(const TreeMonomial& t) const;

 private:
  const CoendElement& planar(const std::vector<int>& nodes, size_t& pos) const;

  const QuasiFreeOperad& p_;
  const CoendContext& ctx_;
  const Assignment& a_;
  mutable std::map<std::vector<int>, CoendElement> cache_;
};

/// One-shot form of MorphismEvaluator with the boundary check.
CoendElement evaluate_morphism(const QuasiFreeOperad& p, const CoendContext& ctx, const Assignment& a,
                               const OperadElement& x);

}  // namespace einf
