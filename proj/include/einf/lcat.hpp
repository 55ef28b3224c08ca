#pragma once

#include <compare>
#include <string>
#include <vector>

namespace einf {

/// Partial map [n] → [m] between finite ordinals. Points are stored
/// zero-based; text uses one-based labels.
class PartialMap {
 public:
  static constexpr int kUndefined = -1;

  PartialMap() = default;
  /// images[x] is the image of x, or kUndefined. Throws on out-of-range values.
  PartialMap(int target, std::vector<int> images);

  static PartialMap identity(int n);
  static PartialMap empty(int n, int m);
  /// Face d_i: [n] → [n+1], x ↦ x for x < i, x+1 for x ≥ i (1 ≤ i ≤ n+1).
  static PartialMap face(int i, int n);
  /// Degeneracy s_i: [n] → [n-1], x ↦ x for x ≤ i, x-1 for x > i
  /// (1 ≤ i ≤ n-1), plus s_1: [1] → [0] which is nowhere defined.
  static PartialMap degeneracy(int i, int n);
  /// Minimal retraction ζ_i: [n+1] → [n] of d_i.
  static PartialMap retraction(int i, int n);
  /// Block twist [n+m] → [m+n]: the first n points go after the last m.
  static PartialMap twist(int n, int m);
  /// Total map [n] → [1].
  static PartialMap collapse(int n);

  int source() const { return static_cast<int>(images_.size()); }
  int target() const { return target_; }
  int operator()(int x) const { return images_[static_cast<size_t>(x)]; }
  bool defined(int x) const { return images_[static_cast<size_t>(x)] != kUndefined; }
  const std::vector<int>& images() const { return images_; }
  bool is_total() const;
  bool is_bijection() const;

  /// Form "[3→2: 1↦1, 3↦2]".
  std::string to_string() const;

  friend auto operator<=>(const PartialMap&, const PartialMap&) = default;
  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  int target_ = 0;
  std::vector<int> images_;
};

/// g∘f. Throws std::invalid_argument when target(f) ≠ source(g).
PartialMap compose(const PartialMap& g, const PartialMap& f);
/// Block sum [n]+[n′] → [m]+[m′].
PartialMap sum(const PartialMap& f, const PartialMap& g);

/// The five arrows generating L under sum and composition.
enum class Basic { Face, Retraction, Identity, Degeneracy, Twist };

PartialMap basic_map(Basic b);
const char* basic_name(Basic b);

/// A word: layers applied first to last, each layer a block sum of basic arrows.
using Layer = std::vector<Basic>;
using Word = std::vector<Layer>;

/// Factorization as (injection part)∘(surjection part)∘(permutation)∘(restriction).
Word decompose(const PartialMap& f);
/// Evaluates a word; for an empty word the identity on `source`.
PartialMap evaluate(const Word& w, int source);
std::string to_string(const Word& w);

/// All generator maps d_i, s_i, ζ_i, adjacent twists and identities with
/// source and target at most `bound`.
std::vector<PartialMap> generators_up_to(int bound);

}  // namespace einf
