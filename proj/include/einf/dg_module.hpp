#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "einf/matrix.hpp"
#include "einf/permutation.hpp"

namespace einf {

/// Dense product that skips zero entries of b; columns of a are combined
/// with the characteristic-2 XOR path where possible.
Mat mul(const Mat& a, const Mat& b);
Vec mul(const Mat& a, const Vec& v);

/// Free Σ_n structure on a graded basis: every basis element is rep·σ for
/// exactly one orbit representative rep and one σ.
struct Symmetry {
  int arity = 1;
  std::vector<int> orbits;                 // per degree
  std::vector<std::vector<int>> orbit_of;  // [degree][basis]
  std::vector<std::vector<int>> perm_of;   // [degree][basis], lexicographic rank
  std::vector<std::vector<int>> element;   // [degree][orbit * n! + perm] -> basis

  int group_order() const { return static_cast<int>(factorial(arity)); }
  /// Index of (basis element b)·σ in degree d.
  int act(int d, int b, int sigma) const;
  int rep(int d, int orbit) const { return element[static_cast<size_t>(d)][static_cast<size_t>(orbit) * group_order()]; }
  /// Layout in which basis index = orbit * n! + perm.
  static Symmetry orbit_major(int arity, const std::vector<int>& orbits_per_degree);
  /// Trivial group acting on the given dimensions.
  static Symmetry trivial(const std::vector<Index>& dims);
};

class FreeDGModule;
using ModulePtr = std::shared_ptr<const FreeDGModule>;

/// Bookkeeping for M⊗N: degree-d basis lists, for p = 0..d, the pairs
/// (i in M_p, j in N_{d-p}) in row-major order.
struct TensorLayout {
  ModulePtr left;
  ModulePtr right;
  std::vector<std::vector<Index>> offset;  // [d][p]

  Index index(int d, int p, Index i, Index j) const;
  struct Entry {
    int p;
    Index i;
    Index j;
  };
  Entry decode(int d, Index k) const;
};

/// Finite-type chain complex in degrees 0..D with a chosen basis.
///
/// Construction validates ∂∂ = 0, ε∂ = 0 and, when a symmetry record is
/// present, freeness and equivariance of ∂ and ε; it throws
/// std::invalid_argument on failure.
class FreeDGModule {
 public:
  struct Data {
    std::vector<Index> dims;
    /// differential[d] is dims[d-1] x dims[d]; entry 0 is ignored.
    std::vector<Mat> differential;
    std::optional<Mat> augmentation;  // 1 x dims[0]
    std::optional<Index> coaugmentation;
    std::optional<Symmetry> symmetry;
    std::vector<std::vector<std::string>> names;
    std::shared_ptr<const TensorLayout> tensor;
    std::string label;
  };

  explicit FreeDGModule(Data data, bool validate = true);

  static ModulePtr make(Data data) { return std::make_shared<const FreeDGModule>(std::move(data)); }
  /// The ground field concentrated in degree 0, window D.
  static ModulePtr ground(int max_degree);

  int max_degree() const { return static_cast<int>(d_.dims.size()) - 1; }
  Index dim(int d) const {
    return d < 0 || d > max_degree() ? 0 : d_.dims[static_cast<size_t>(d)];
  }
  const std::vector<Index>& dims() const { return d_.dims; }
  /// dims(d-1) x dims(d); an empty matrix outside 1..D.
  const Mat& differential(int d) const;
  bool augmented() const { return d_.augmentation.has_value(); }
  const Mat& augmentation() const;
  const std::optional<Index>& coaugmentation() const { return d_.coaugmentation; }
  const Symmetry* symmetry() const { return d_.symmetry ? &*d_.symmetry : nullptr; }
  const TensorLayout* tensor_layout() const { return d_.tensor.get(); }
  std::string basis_name(int d, Index i) const;
  const std::string& label() const { return d_.label; }

  /// Checks ∂∂ = 0 and ε∂ = 0; returns a description of the first failure.
  std::optional<std::string> check() const;

 private:
  Data d_;
  Mat empty_;
};

/// A right Σ_n action on a graded basis by signed permutations.
class BasisAction {
 public:
  BasisAction() = default;
  BasisAction(int arity, std::vector<std::vector<std::vector<Index>>> images,
              std::vector<std::vector<std::vector<Fp>>> signs);
  static BasisAction from_symmetry(const FreeDGModule& m);
  /// Reads off a signed permutation from per-σ matrices; throws if a matrix
  /// is not of that shape.
  static BasisAction from_matrices(int arity, const std::vector<std::vector<Mat>>& mats);

  int arity() const { return arity_; }
  int max_degree() const;
  Vec apply(int sigma, int d, const Vec& v) const;
  Index image(int sigma, int d, Index b) const { return images_[static_cast<size_t>(sigma)][static_cast<size_t>(d)][static_cast<size_t>(b)]; }
  Fp sign(int sigma, int d, Index b) const { return signs_[static_cast<size_t>(sigma)][static_cast<size_t>(d)][static_cast<size_t>(b)]; }

 private:
  int arity_ = 1;
  std::vector<std::vector<std::vector<Index>>> images_;  // [sigma][d][b]
  std::vector<std::vector<std::vector<Fp>>> signs_;
};

/// Homogeneous linear map of degree k given by per-source-degree blocks.
class DGMorphism {
 public:
  DGMorphism() = default;
  /// Zero map.
  DGMorphism(ModulePtr source, ModulePtr target, int degree);
  DGMorphism(ModulePtr source, ModulePtr target, int degree, std::vector<Mat> blocks);
  static DGMorphism identity(const ModulePtr& m);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return tgt_; }
  int degree() const { return k_; }
  /// dim target(d+k) x dim source(d).
  const Mat& block(int d) const { return blocks_.at(static_cast<size_t>(d)); }
  Mat& block(int d) { return blocks_.at(static_cast<size_t>(d)); }
  Vec apply(int d, const Vec& v) const;

  /// ∂f = (-1)^k f∂ wherever both sides lie in the windows. Returns the
  /// first failing source degree.
  std::optional<int> chain_map_failure() const;
  bool is_chain_map() const { return !chain_map_failure().has_value(); }

  DGMorphism& operator+=(const DGMorphism& o);
  DGMorphism& operator-=(const DGMorphism& o);
  DGMorphism operator-() const;
  DGMorphism scaled(Fp c) const;
  friend DGMorphism operator+(DGMorphism a, const DGMorphism& b) { return a += b; }
  friend DGMorphism operator-(DGMorphism a, const DGMorphism& b) { return a -= b; }
  bool operator==(const DGMorphism& o) const;
  bool is_zero() const;

 private:
  void check_same_shape(const DGMorphism& o) const;

  ModulePtr src_;
  ModulePtr tgt_;
  int k_ = 0;
  std::vector<Mat> blocks_;
};

/// g∘f. Throws std::invalid_argument when the middle dimensions disagree.
DGMorphism compose(const DGMorphism& g, const DGMorphism& f);

/// Degree k+1 map H with ∂H + (-1)^k H∂ = to - from, k = deg(from).
struct Homotopy {
  DGMorphism map;
  DGMorphism from;
  DGMorphism to;

  /// First source degree where the defining equation fails.
  std::optional<int> failure() const;
  bool holds() const { return !failure().has_value(); }
};

/// ∂H + (-1)^k H∂ for a map H of degree k+1.
DGMorphism homotopy_boundary(const DGMorphism& h, int k);

/// M⊗N in total degrees ≤ D (default: the smaller window), Koszul signs.
ModulePtr tensor(const ModulePtr& m, const ModulePtr& n, std::optional<int> max_degree = std::nullopt);
/// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y) between tensor modules built by tensor().
DGMorphism tensor(const DGMorphism& f, const DGMorphism& g, const ModulePtr& source, const ModulePtr& target);

struct HomologyResult {
  int degree = 0;
  Index dim = 0;
  std::vector<Vec> representatives;
  bool reliable = true;  // false when d+1 lies outside the window
};

HomologyResult homology(const FreeDGModule& m, int d);
/// Rank-only dimension count.
Index homology_dim(const FreeDGModule& m, int d);
/// Dimension of ker ε / im ∂ in degree 0, or of H_d for d > 0.
Index reduced_homology_dim(const FreeDGModule& m, int d);

/// Class coordinates for cycles of a fixed degree: boundaries span the
/// zero class, and chosen cycle representatives give a basis of the
/// quotient. With reduced=true in degree 0 the cycles are ker ε.
class HomologyClasses {
 public:
  HomologyClasses(const FreeDGModule& m, int d, bool reduced = false, bool modulo_boundaries = true);
  Index dim() const { return static_cast<Index>(reps_.size()); }
  const std::vector<Vec>& representatives() const { return reps_; }
  /// Coordinates of a cycle; throws std::invalid_argument on a non-cycle.
  Vec classify(const Vec& cycle) const;
  bool is_boundary(const Vec& cycle) const { return is_zero(classify(cycle)); }

 private:
  Subspace space_;
  std::vector<Vec> reps_;
};

/// True iff f induces isomorphisms H_d → H_{d+k} for d = 0..through.
bool is_quasi_iso(const DGMorphism& f, int through);

/// C(f) for f: M → N of degree l: C_s = M_{s-l-1} ⊕ N_s with
/// ∂(m; n) = (-(-1)^l ∂m; f m + ∂n).
struct MappingCone {
  DGMorphism f;
  ModulePtr cone;
  DGMorphism inclusion;   // N → C, x ↦ (0; x)
  DGMorphism projection;  // C → M, degree -(l+1), (m; n) ↦ m (not a chain map)

  /// Offset of the N block inside cone degree s.
  Index target_offset(int s) const;
};

MappingCone mapping_cone(const DGMorphism& f);

}  // namespace einf
