#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "einf/field.hpp"

namespace einf {

/// A bijection of {0..n-1}. Text forms use the one-based images.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless images is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// Swap of adjacent positions i and i+1.
  static Permutation transposition(int n, int i);
  /// The k-th permutation of {0..n-1} in lexicographic order of images.
  static Permutation from_index(int n, int k);
  static Permutation from_one_based(const std::vector<int>& images);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }
  /// Lexicographic rank, inverse of from_index.
  int index() const;
  bool is_identity() const;
  bool is_odd() const;
  Permutation inverse() const;
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (a∘b)(i) = a(b(i)). Throws std::invalid_argument on size mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }
/// ±1 in the active field.
Fp sign(const Permutation& p);

long long factorial(int n);

/// Cached multiplication data for Σ_n, elements numbered by lexicographic rank.
struct SymmetricGroup {
  int n = 0;
  int order = 0;
  std::vector<Permutation> elements;
  std::vector<int> product;  // product[a * order + b] = index of a∘b
  std::vector<int> inverse;

  int mul(int a, int b) const { return product[static_cast<size_t>(a * order + b)]; }
};

/// Thread-compatible lazy cache; n ≤ 7.
const SymmetricGroup& symmetric_group(int n);

/// Element of the group ring k[Σ_n]; zero coefficients are never stored.
class GroupRingElement {
 public:
  explicit GroupRingElement(int n = 0) : n_(n) {}
  static GroupRingElement basis(const Permutation& p, Fp c = Fp(1));

  int arity() const { return n_; }
  const std::map<Permutation, Fp>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Fp coefficient(const Permutation& p) const;
  void add(const Permutation& p, Fp c);

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  GroupRingElement operator*(Fp c) const;
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  std::string to_string() const;

 private:
  void check(const GroupRingElement& o) const;

  int n_;
  std::map<Permutation, Fp> terms_;
};

/// Convolution product. Throws std::invalid_argument on arity mismatch.
GroupRingElement ring_multiply(const GroupRingElement& a, const GroupRingElement& b);
inline GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  return ring_multiply(a, b);
}

}  // namespace einf
