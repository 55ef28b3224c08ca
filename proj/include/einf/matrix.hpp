#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "einf/field.hpp"

namespace einf {

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using RowMat = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

inline Mat zeros(Index rows, Index cols) { return Mat::Constant(rows, cols, Fp(0)); }
inline Vec zero_vec(Index n) { return Vec::Constant(n, Fp(0)); }
inline Mat identity(Index n) {
  Mat m = zeros(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Fp(1);
  return m;
}
Vec unit_vec(Index n, Index i);

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

/// Exact equality, also false on shape mismatch.
bool equal(const Mat& a, const Mat& b);

/// dst[k] += c * src[k] for k < len, with an XOR path in characteristic 2.
void axpy(Fp* dst, const Fp* src, Fp c, Index len) noexcept;

/// Reduced row echelon form with deterministic leftmost pivoting: columns
/// are scanned left to right and the first nonzero row at or below the
/// current rank becomes the pivot row.
class Echelon {
 public:
  struct Options {
    bool transform = false;  // keep E with E * A = [R; 0], needed by solve()
    bool reduced = true;     // clear above pivots too; rank() alone does not need it
  };

  Echelon() = default;
  explicit Echelon(const Mat& a) : Echelon(a, Options{}) {}
  Echelon(const Mat& a, Options opts);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(pivots_.size()); }
  const std::vector<Index>& pivots() const { return pivots_; }
  /// rank x cols, pivot entries equal to one.
  const RowMat& reduced_rows() const { return r_; }

  /// Columns form a basis of the null space, one per free column in order.
  Mat kernel() const;
  /// Some x with A x = b, or nothing when b is outside the column space.
  std::optional<Vec> solve(const Vec& b) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  bool reduced_ = true;
  std::vector<Index> pivots_;
  RowMat r_;
  RowMat e_;  // rows x rows, empty unless requested
};

std::optional<Vec> solve_linear(const Mat& a, const Vec& b);
Index rank(const Mat& a);
Mat kernel_basis(const Mat& a);

/// A subspace of F_p^n held in reduced echelon form. Every stored row may
/// carry a tag vector; the tag of a member vector is the same linear
/// combination of row tags as the vector is of rows. This is how class
/// coordinates in a quotient are tracked.
class Subspace {
 public:
  explicit Subspace(Index ambient = 0, Index tag_dim = 0);
  /// Span of the columns of gens, with zero tags.
  static Subspace from_columns(const Mat& gens, Index tag_dim = 0);

  Index ambient() const { return n_; }
  Index dim() const { return static_cast<Index>(rows_.size()); }
  Index tag_dim() const { return t_; }
  void grow_tags(Index tag_dim);

  bool contains(const Vec& v) const;
  /// v minus its projection along the stored pivots.
  Vec reduce(const Vec& v) const;
  /// Adds v with the given tag; returns false (and changes nothing) when v is
  /// already in the span.
  bool insert(const Vec& v, const Vec& tag);
  bool insert(const Vec& v) { return insert(v, zero_vec(t_)); }
  /// Tag of v, or nothing when v is outside the span.
  std::optional<Vec> tag_of(const Vec& v) const;

 private:
  void reduce_in_place(std::vector<Fp>& v, std::vector<Fp>* acc) const;

  Index n_;
  Index t_;
  std::vector<std::vector<Fp>> rows_;
  std::vector<std::vector<Fp>> tags_;
  std::vector<Index> pivots_;
};

std::string to_string(const Mat& m);

}  // namespace einf
