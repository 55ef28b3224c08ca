#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "einf/dg_module.hpp"
#include "einf/permutation.hpp"

namespace einf {

/// Planar rooted tree with generator-labelled nodes and labelled leaves.
///
/// nodes is the root-first depth-first (preorder) listing, each entry a
/// generator id or kLeaf; labels[j] is the label of the j-th leaf in planar
/// order. Orbit representatives have labels 0,1,…,n-1, and T·σ relabels
/// leaf ℓ as σ⁻¹(ℓ).
struct TreeMonomial {
  static constexpr int kLeaf = -1;
  std::vector<int> nodes;
  std::vector<int> labels;

  int arity() const { return static_cast<int>(labels.size()); }
  bool is_unit() const { return nodes.size() == 1 && nodes[0] == kLeaf; }
  static TreeMonomial unit() { return {{kLeaf}, {0}}; }

  friend auto operator<=>(const TreeMonomial&, const TreeMonomial&) = default;
  friend bool operator==(const TreeMonomial&, const TreeMonomial&) = default;
};

/// The leaf permutation σ with T = rep·σ.
Permutation leaf_permutation(const TreeMonomial& t);

/// Homogeneous linear combination of tree monomials.
class OperadElement {
 public:
  OperadElement() = default;
  OperadElement(int arity, int degree) : arity_(arity), degree_(degree) {}
  static OperadElement monomial(const TreeMonomial& t, int degree, Fp c = Fp(1));

  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const std::map<TreeMonomial, Fp>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Fp coefficient(const TreeMonomial& t) const;
  /// Throws std::invalid_argument on an arity mismatch.
  void add(const TreeMonomial& t, Fp c);

  OperadElement& operator+=(const OperadElement& o);
  OperadElement& operator-=(const OperadElement& o);
  OperadElement operator*(Fp c) const;
  friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
  friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_ && (a.terms_.empty() || a.degree_ == b.degree_);
  }

 private:
  void check(const OperadElement& o) const;

  int arity_ = 1;
  int degree_ = 0;
  std::map<TreeMonomial, Fp> terms_;
};

struct GeneratorDecl {
  int id = 0;
  std::string name;
  int arity = 2;
  int degree = 0;
  OperadElement boundary;
  Fp augmentation = Fp(0);  // ε of the corolla
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quasi-free operad: free on declared generators, with differential given
/// on generators by their boundaries. When `truncated`, compositions of
/// arity above max_arity are zero instead of an error.
class QuasiFreeOperad {
 public:
  QuasiFreeOperad(int max_arity, int max_degree) : max_arity_(max_arity), max_degree_(max_degree) {}

  /// Declares a generator. The boundary must have the given arity, degree
  /// one less and zero boundary; violations throw std::invalid_argument.
  const GeneratorDecl& add_generator(std::string name, int arity, int degree, const OperadElement& boundary,
                                     std::optional<Fp> augmentation = std::nullopt);
  /// Replaces a stored boundary without checks; only for negative-control tests.
  void overwrite_boundary(int id, const OperadElement& boundary);

  const std::vector<GeneratorDecl>& generators() const { return gens_; }
  const GeneratorDecl& generator(int id) const { return gens_.at(static_cast<size_t>(id)); }
  std::optional<int> find(std::string_view name) const;

  int max_arity() const { return max_arity_; }
  int max_degree() const { return max_degree_; }
  bool truncated() const { return truncated_; }
  void set_truncated(int n) {
    max_arity_ = n;
    truncated_ = true;
  }

  int degree_of(const TreeMonomial& t) const;
  Fp augmentation_of(const TreeMonomial& t) const;

 private:
  int max_arity_;
  int max_degree_;
  bool truncated_ = false;
  std::vector<GeneratorDecl> gens_;
};

OperadElement operad_unit();
/// Single-node tree on a generator, identity labels.
OperadElement corolla(const QuasiFreeOperad& p, int id);

/// Right action by leaf relabelling; (x·σ)·σ′ = x·(σσ′).
OperadElement sigma_action(const OperadElement& x, const Permutation& sigma);
TreeMonomial sigma_action(const TreeMonomial& t, const Permutation& sigma);

/// γ(f; g_1..g_r): g_i is grafted at the leaf labelled i, Koszul sign of
/// moving node degrees from the order (f, g_1, …, g_r) to preorder.
OperadElement gamma(const QuasiFreeOperad& p, const OperadElement& f, const std::vector<OperadElement>& g);

/// Leibniz extension of the generator boundaries.
OperadElement differential(const QuasiFreeOperad& p, const OperadElement& x);

/// Tree whose nodes carry a generator and a group element; leaves are bare.
struct RawTree {
  int generator = TreeMonomial::kLeaf;
  Permutation sigma;
  std::vector<RawTree> children;
};

/// Evaluates nested compositions of (generator·σ) corollas, then applies
/// the output permutation.
OperadElement normal_form(const QuasiFreeOperad& p, const RawTree& t, const Permutation& output);
/// Reads a monomial back as a raw tree with trivial node group elements.
std::pair<RawTree, Permutation> to_raw(const QuasiFreeOperad& p, const TreeMonomial& t);

/// Basis of one arity as a chain complex with free Σ action.
class OperadComponent {
 public:
  OperadComponent(const QuasiFreeOperad& p, int arity, int max_degree);

  int arity() const { return arity_; }
  int max_degree() const { return max_degree_; }
  const ModulePtr& module() const { return module_; }
  /// Orbit representatives (identity labels) in degree d.
  const std::vector<TreeMonomial>& representatives(int d) const { return reps_[static_cast<size_t>(d)]; }
  TreeMonomial monomial(int d, Index b) const;
  /// Basis index, or nothing when the tree is not in this component.
  std::optional<Index> index_of(const TreeMonomial& t, int degree) const;
  Vec to_vector(const OperadElement& x) const;
  OperadElement from_vector(int d, const Vec& v) const;

 private:
  int arity_;
  int max_degree_;
  int order_;
  std::vector<std::vector<TreeMonomial>> reps_;
  std::map<std::vector<int>, std::pair<int, int>> shape_index_;  // shape -> (degree, rep)
  ModulePtr module_;
};

/// Orbit representatives of arity a and degree d, in enumeration order.
std::vector<TreeMonomial> basis_representatives(const QuasiFreeOperad& p, int arity, int degree);
/// Full basis: representative r·σ at position r·a! + rank(σ).
std::vector<TreeMonomial> basis(const QuasiFreeOperad& p, int arity, int degree);

/// Components above arity n become empty and overflowing compositions zero.
QuasiFreeOperad truncate(const QuasiFreeOperad& p, int n);

/// Text form, e.g. "e1(e0(1,3),2) + 2*e0(2,1)"; leaves are one-based labels.
std::string to_string(const QuasiFreeOperad& p, const TreeMonomial& t);
std::string to_string(const QuasiFreeOperad& p, const OperadElement& x);
/// Inverse of to_string; throws std::invalid_argument with a position on errors.
OperadElement parse_element(const QuasiFreeOperad& p, std::string_view text, int arity, int degree);

}  // namespace einf
