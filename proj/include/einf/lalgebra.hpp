#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "einf/coend.hpp"
#include "einf/dg_module.hpp"
#include "einf/lcat.hpp"
#include "einf/simplicial.hpp"

namespace einf {

/// A contravariant functor on L with values in chain complexes and a
/// product μ_{n,m}: A[n]⊗A[m] → A[n+m], evaluated lazily and cached.
class LAlgebra {
 public:
  explicit LAlgebra(int max_degree) : d_(max_degree) {}
  virtual ~LAlgebra() = default;
  LAlgebra(const LAlgebra&) = delete;
  LAlgebra& operator=(const LAlgebra&) = delete;

  virtual std::string flavor() const = 0;
  int max_degree() const { return d_; }

  virtual ModulePtr value(int n) const = 0;
  /// A(α): A[α.target()] → A[α.source()].
  virtual DGMorphism induced(const PartialMap& alpha) const = 0;
  /// Source is pair(n, m).
  virtual DGMorphism mu(int n, int m) const = 0;

  /// tensor(value(n), value(m)), shared by every caller.
  ModulePtr pair(int n, int m) const;
  /// Basis index of the unit of A[0] in degree 0.
  Index unit() const;
  /// μ(a⊗b) for a of degree p in A[n] and b of degree q in A[m].
  Vec multiply(int n, int m, int p, const Vec& a, int q, const Vec& b) const;

 private:
  int d_;
  mutable std::map<std::pair<int, int>, ModulePtr> pairs_;
};

using LAlgebraPtr = std::shared_ptr<const LAlgebra>;

/// T[n] = k for every n, μ = 1.
LAlgebraPtr make_trivial(int max_degree);

/// A strictly coassociative, cocommutative, counital DG coalgebra given on a
/// basis: delta[d][b] lists (left, right, coefficient) with global indices
/// as in TensorPower.
struct CoalgebraFixture {
  ModulePtr module;  // augmented (counit) and coaugmented (unit)
  struct Term {
    int left;
    int right;
    Fp coefficient;
  };
  std::vector<std::vector<std::vector<Term>>> delta;
};

/// k[x]/x² with |x| = 1, ∂ = 0, Δx = x⊗1 + 1⊗x.
CoalgebraFixture exterior_fixture(int max_degree);

/// value(n) = C^{⊗n}, μ the identity, structure maps from iterated Δ and ε.
/// Throws std::invalid_argument when the fixture is not a strict
/// cocommutative coalgebra.
LAlgebraPtr make_degenerate(const CoalgebraFixture& c);

/// value(n) = C_*(Xⁿ) normalized, μ the Eilenberg–Mac Lane shuffle map.
LAlgebraPtr make_canonical(std::shared_ptr<const SimplicialSet> x, int max_degree);
/// Product chains behind a canonical L-algebra, or nullptr for other flavors.
const ProductChains* canonical_chains(const LAlgebra& a, int n);

/// (A⊗B)[n] = A[n]⊗B[n] with μ = (μ_A⊗μ_B)(1⊗T⊗1).
LAlgebraPtr tensor_L(LAlgebraPtr a, LAlgebraPtr b);

/// Negative control: one column of μ_{1,1} zeroed (characteristic 2) or
/// negated (odd characteristic).
LAlgebraPtr sabotage_mu(LAlgebraPtr a);

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::string detail;  // first failure, empty on success
  int checked = 0;
};

struct AxiomReport {
  std::string flavor;
  int through_arity = 0;
  int through_degree = 0;
  std::vector<AxiomResult> results;
  bool pass = true;
  const AxiomResult* find(const std::string& axiom) const;
};

/// Unit, commutativity, associativity and coherence on A[n], n ≤ arity, in
/// degrees ≤ through_degree; naturality of μ for every generator of L; a
/// functoriality spot check on composable generator pairs. Needs
/// through_degree < max_degree for coherence.
AxiomReport check_axioms(const LAlgebra& a, int through_arity, int through_degree);

/// Map of L-algebras given componentwise.
struct LMorphism {
  LAlgebraPtr source;
  LAlgebraPtr target;
  std::function<DGMorphism(int)> component;
};

LMorphism identity_morphism(LAlgebraPtr a);
/// The augmentation A → T onto the trivial L-algebra.
LMorphism collapse_to_trivial(LAlgebraPtr a, LAlgebraPtr trivial);

/// Checks that f commutes with μ and with induced maps of generators.
AxiomReport check_morphism(const LMorphism& f, int through_arity, int through_degree);

struct QuasiIsoResult {
  bool at_k = false;
  bool propagated = true;  // checked at 2k when requested
};

QuasiIsoResult is_quasi_iso_morphism(const LMorphism& f, int k, int through_degree, bool propagate = false);

}  // namespace einf
