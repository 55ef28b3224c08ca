#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "einf/dg_module.hpp"
#include "einf/lcat.hpp"

namespace einf {

/// A simplex written as η*(z): z nondegenerate of dimension `base_dim`, η a
/// monotone surjection [dim] → [base_dim] given by its vertex values.
struct Simplex {
  int base_dim = 0;
  int base = 0;
  std::vector<int> eta;

  int dim() const { return static_cast<int>(eta.size()) - 1; }
  bool degenerate() const { return dim() != base_dim; }
  /// Bit i set when vertices i and i+1 of η coincide.
  unsigned mask() const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

class SimplicialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite pointed simplicial set listed by nondegenerate simplices.
class SimplicialSet {
 public:
  struct Record {
    std::string id;
    std::vector<Simplex> faces;  // d_0 .. d_n
  };

  /// Checks face shapes and the simplicial identities d_i d_j = d_{j-1} d_i
  /// (i < j) and d_i s_j; throws SimplicialError naming the offending simplex.
  SimplicialSet(std::string name, int basepoint, std::vector<std::vector<Record>> simplices);
  /// JSON text in the documented format; errors carry the field path.
  static SimplicialSet from_json(const std::string& text);
  static SimplicialSet load(const std::string& path);
  std::string to_json() const;

  const std::string& name() const { return name_; }
  int basepoint() const { return basepoint_; }
  int dimension_cap() const { return static_cast<int>(simplices_.size()) - 1; }
  int count(int dim) const {
    return dim < 0 || dim > dimension_cap() ? 0 : static_cast<int>(simplices_[static_cast<size_t>(dim)].size());
  }
  const Record& record(int dim, int i) const { return simplices_.at(static_cast<size_t>(dim)).at(static_cast<size_t>(i)); }
  std::string simplex_name(const Simplex& s) const;

  Simplex nondegenerate(int dim, int i) const;
  Simplex face(const Simplex& s, int i) const;
  Simplex degeneracy(const Simplex& s, int j) const;
  /// The basepoint degenerated to dimension d.
  Simplex base_simplex(int d) const;
  /// All simplices of dimension d, degenerate ones included, in a fixed order.
  const std::vector<Simplex>& simplices(int d) const;
  int index_of(const Simplex& s) const;
  int euler_characteristic() const;

 private:
  std::string name_;
  int basepoint_;
  std::vector<std::vector<Record>> simplices_;
  mutable std::map<int, std::vector<Simplex>> all_;
  mutable std::map<Simplex, int> index_;
};

/// Pulls η back along a monotone map: (η∘θ).
std::vector<int> compose_maps(const std::vector<int>& eta, const std::vector<int>& theta);

/// Normalized chains on the n-fold product, with a per-degree tuple index.
class ProductChains {
 public:
  ProductChains(std::shared_ptr<const SimplicialSet> x, int n, int max_degree);

  const ModulePtr& module() const { return module_; }
  int power() const { return n_; }
  const SimplicialSet& space() const { return *x_; }
  /// Tuple of simplex ids (into simplices(d)) for basis element b of degree d.
  const std::vector<int>& tuple(int d, Index b) const { return tuples_[static_cast<size_t>(d)][static_cast<size_t>(b)]; }
  /// Basis index, or -1 for degenerate tuples.
  Index index(int d, const std::vector<int>& tuple) const;
  /// Index of a tuple of simplices, -1 when degenerate.
  Index index_of(const std::vector<Simplex>& tuple) const;

 private:
  std::shared_ptr<const SimplicialSet> x_;
  int n_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::vector<std::map<std::vector<int>, Index>> index_;
  ModulePtr module_;
};

ModulePtr normalized_chains(std::shared_ptr<const SimplicialSet> x, int n, int max_degree);

/// Eilenberg–Mac Lane shuffle map C(Xⁿ)⊗C(Xᵐ) → C(X^{n+m}); `source` must be
/// tensor(a.module(), b.module()).
DGMorphism em_shuffle(const ProductChains& a, const ProductChains& b, const ProductChains& ab, const ModulePtr& source);

/// (x_1..x_n) ↦ (x_{α(1)}, …, x_{α(m)}) for α: [m] → [n], with the
/// degenerate basepoint where α is undefined.
DGMorphism induced_map(const ProductChains& from, const ProductChains& to, const PartialMap& alpha);

/// Shuffles of p and q steps as vertex maps [p+q] → [p], [p+q] → [q] with
/// the sign of the shuffle permutation.
struct Shuffle {
  std::vector<int> left;
  std::vector<int> right;
  int parity = 0;
};
std::vector<Shuffle> shuffles(int p, int q);

}  // namespace einf
