#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "einf/dg_module.hpp"

namespace einf {

/// Raised when a linear system that the theory says is solvable is not,
/// which points at a window edge or inconsistent input.
class LiftError : public std::runtime_error {
 public:
  LiftError(const std::string& what, int degree) : std::runtime_error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Explicit split L = L′ ⊕ P of a basis: fixed[d][b] marks L′.
struct BasisPartition {
  std::vector<std::vector<char>> fixed;

  static BasisPartition none(const FreeDGModule& m);
  static BasisPartition all(const FreeDGModule& m);
  bool is_fixed(int d, Index b) const { return fixed[static_cast<size_t>(d)][static_cast<size_t>(b)] != 0; }
};

/// Equivariance data: the domain carries a Symmetry record and the target
/// an action of the same group.
struct Equivariance {
  const BasisAction* target = nullptr;
};

/// Null-homotopy H of f: L → N (degree k) with f = ∂H + (-1)^k H∂, equal to h
/// on L′. Generators of P are handled in increasing degree, solving one
/// linear system each; N must be acyclic in the degrees reached. With
/// equivariance only orbit representatives of P are solved and the rest
/// follows by the action.
DGMorphism extend_null_homotopy(const DGMorphism& f, const BasisPartition& part, const DGMorphism& h,
                                const Equivariance& eq = {});

struct LiftResult {
  DGMorphism alpha;  // L → M, degree k - l
  Homotopy homotopy; // from f∘α to φ: φ - fα = ∂H + (-1)^k H∂
};

/// Relative lift of φ: L → N along a quasi-isomorphism f: M → N, extending
/// (α′, h′) given on L′ (their blocks on P are ignored).
LiftResult relative_lift(const DGMorphism& f, const DGMorphism& phi, const BasisPartition& part,
                         const DGMorphism& alpha_fixed, const DGMorphism& h_fixed);

struct EquivariantLiftData {
  const BasisAction* source_action = nullptr;  // on M
  const BasisAction* target_action = nullptr;  // on N
};

LiftResult equivariant_relative_lift(const DGMorphism& f, const DGMorphism& phi, const BasisPartition& part,
                                     const DGMorphism& alpha_fixed, const DGMorphism& h_fixed,
                                     const EquivariantLiftData& eq);

/// Null-homotopy of a null-homotopic map f: L → N of degree k into a target
/// that need not be acyclic. Degree by degree a particular solution is
/// chosen and then corrected by cycles of N so that the obstruction classes
/// one degree up vanish. Throws LiftError if f is not null-homotopic within
/// the window.
DGMorphism null_homotopy(const DGMorphism& f, const Equivariance& eq = {});

}  // namespace einf
