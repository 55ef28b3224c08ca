#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "einf/coend.hpp"
#include "einf/lalgebra.hpp"
#include "einf/lifting.hpp"
#include "einf/operad.hpp"

namespace einf {

/// K(j)⊗A restricted to a Σ_j-stable set of K orbits, in total degrees ≤ T.
/// Orbit-major: basis index = cell * j! + rank(σ), cell = (p, rep, c).
class OperadTensor {
 public:
  struct Cell {
    int p = 0;    // operad degree
    int rep = 0;  // orbit representative of K(j)_p
    Index c = 0;  // basis element of A_{t-p}
  };
  struct Entry {
    int p = 0;
    Index k = 0;  // basis index in K(j)_p
    Index c = 0;
  };

  OperadTensor(const OperadComponent& k, ModulePtr a, int max_degree, const std::function<bool(int, int)>& keep);

  const ModulePtr& module() const { return module_; }
  const std::vector<Cell>& cells(int t) const { return cells_[static_cast<size_t>(t)]; }
  Entry decode(int t, Index b) const;
  /// Basis index of x⊗c in degree t, -1 when the orbit of x was left out.
  Index index(int t, int p, Index k, Index c) const;

 private:
  int order_;
  ModulePtr a_;
  std::vector<std::vector<Cell>> cells_;
  std::map<std::tuple<int, int, int, Index>, Index> cell_index_;
  ModulePtr module_;
};

/// Data of one arity j: L = K(j)⊗A[1], M = A[1]^{⊗j}, N = A[j].
struct ArityStage {
  int arity = 0;
  std::unique_ptr<OperadComponent> component;
  std::unique_ptr<OperadTensor> l;
  std::unique_ptr<OperadTensor> decomposable;
  std::unique_ptr<TensorPower> m;
  BasisAction n_action;
  DGMorphism mu;       // M → N, iterated product
  DGMorphism psi;      // L → N, x⊗c ↦ ε(x) A(s)(c)
  DGMorphism phi;      // L → M
  DGMorphism witness;  // L → N, μφ - ψ = ∂w + w∂
};

class CoalgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K-coalgebra structure on A[1] for an L-algebra A, built arity by arity
/// with homotopy witnesses. Structure maps are exact on total degrees ≤ T;
/// A must have window T+1.
class CoalgebraStructure {
 public:
  CoalgebraStructure(QuasiFreeOperad k, LAlgebraPtr a, int through_degree);
  CoalgebraStructure(const CoalgebraStructure&) = delete;
  CoalgebraStructure& operator=(const CoalgebraStructure&) = delete;

  /// Equivariant lift on K(2)⊗A[1] with nothing prescribed.
  void build_phi2();
  /// Adds the generators of arity n+1, keeping every earlier assignment.
  void extend_phi(int n);
  /// build_phi2 followed by extend_phi up to the operad's arity window.
  static std::unique_ptr<CoalgebraStructure> build(const QuasiFreeOperad& k, LAlgebraPtr a, int through_degree);

  const QuasiFreeOperad& operad() const { return k_; }
  const LAlgebraPtr& algebra() const { return a_; }
  int through_degree() const { return t_; }
  int built_arity() const { return built_; }
  const CoendContext& context() const { return ctx_; }
  const Assignment& assignment() const { return assign_; }
  const ArityStage& stage(int j) const { return *stages_.at(j); }

  /// φ(x⊗c) in A[1]^{⊗n} (window T).
  Vec evaluate_phi(const OperadElement& x, int q, const Vec& c) const;
  CoendElement evaluate_phi(const OperadElement& x) const;

  /// Installs stored data (used when loading); prepares stage j without lifting.
  void install(int j, const std::vector<std::pair<int, CoendElement>>& phis, const DGMorphism& witness);
  /// L, M, N, μ, ψ for arity j (no lifting).
  ArityStage& prepare(int j);
  /// φ on all of L from the current assignment.
  DGMorphism assemble_phi(const ArityStage& s) const;

 private:
  void lift_arity(int j);
  DGMorphism phi_on(const ArityStage& s, const OperadTensor& l) const;
  DGMorphism psi_on(const ArityStage& s, const OperadTensor& l) const;
  /// Between A[1]^{⊗j} in the context window and in the lift window.
  Vec to_m(const ArityStage& s, int t, const Vec& v) const;
  Vec from_m(const ArityStage& s, int t, const Vec& v) const;

  QuasiFreeOperad k_;
  LAlgebraPtr a_;
  int t_;
  CoendContext ctx_;
  Assignment assign_;
  int built_ = 1;
  std::map<int, std::unique_ptr<ArityStage>> stages_;
};

struct ArityCheck {
  int arity = 0;
  int generators = 0;
  Index basis = 0;                // dimension of L checked
  bool boundaries = false;        // D(φ_g) = φ(∂g)
  Index chain_residual = 0;       // nonzero entries of ∂φ - φ∂
  Index witness_residual = 0;     // of μφ - ψ - (∂w + w∂)
  Index equivariance_residual = 0;
  bool pass = false;
  std::string detail;
};

struct StructureReport {
  int through_arity = 0;
  int through_degree = 0;
  std::vector<ArityCheck> arities;
  bool pass = true;
};

/// Rebuilds φ from the generator assignment alone and checks every stored
/// witness equation, the chain-map property and Σ-equivariance exactly.
StructureReport verify_structure(const CoalgebraStructure& s);

/// Cochains on A[1] are vectors over a basis of A[1]_d.
/// (u ∪_i v)(c) = (u⊗v)(φ(e_i⊗c)) with the Koszul sign of u⊗v.
Vec cup_i(const CoalgebraStructure& s, int i, int p, const Vec& u, int q, const Vec& v);

/// δu = u∘∂ on A[1]_{p+1}.
Vec coboundary(const FreeDGModule& a, int p, const Vec& u);

/// Needs p + q + 1 ≤ T. δ(u∪₁v) - u∪₀v + (-1)^{pq} v∪₀u + (-1)^q δu∪₁v + u∪₁δv on A[1]_{p+q};
/// zero exactly when φ(e₁) bounds φ(e₀) - φ(e₀)·τ on these cochains.
Vec cup1_coboundary_defect(const CoalgebraStructure& s, int p, const Vec& u, int q, const Vec& v);

/// H^n(A[1]) with class coordinates; degrees through T.
class Cohomology {
 public:
  Cohomology(ModulePtr a, int n);
  Index dim() const { return classes_->dim(); }
  const std::vector<Vec>& representatives() const { return classes_->representatives(); }
  bool is_cocycle(const Vec& u) const;
  Vec classify(const Vec& cocycle) const;

 private:
  ModulePtr a_;
  int n_;
  ModulePtr dual_;  // cochains with degrees reversed
  std::unique_ptr<HomologyClasses> classes_;
};

/// Sq^k[u] = [u ∪_{n-k} u]; characteristic 2, 0 ≤ k ≤ n, u a cocycle of degree n.
Vec steenrod_square(const CoalgebraStructure& s, int k, int n, const Vec& u);

struct FunctorialityEntry {
  int arity = 0;
  int degree = 0;
  Index classes = 0;
  bool pass = false;
};

struct FunctorialityReport {
  std::vector<FunctorialityEntry> entries;
  bool pass = true;
};

/// On homology of K(j)⊗A[1]: f^{⊗j}∘φ^A = φ^B∘(1⊗f), for j ≤ built arity
/// and degrees < T.
FunctorialityReport functoriality_check(const CoalgebraStructure& a, const CoalgebraStructure& b, const LMorphism& f);

}  // namespace einf
