#include "einf/matrix.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace einf {

namespace {

inline std::uint32_t* raw(Fp* p) { return reinterpret_cast<std::uint32_t*>(p); }
inline const std::uint32_t* raw(const Fp* p) { return reinterpret_cast<const std::uint32_t*>(p); }

void scale_row(Fp* row, Fp c, Index len) {
  if (c == Fp(1)) return;
  for (Index k = 0; k < len; ++k) row[k] *= c;
}

}  // namespace

Vec unit_vec(Index n, Index i) {
  Vec v = zero_vec(n);
  v(i) = Fp(1);
  return v;
}

bool equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

void axpy(Fp* dst, const Fp* src, Fp c, Index len) noexcept {
  if (c.is_zero()) return;
  std::uint32_t* d = raw(dst);
  const std::uint32_t* s = raw(src);
  const std::uint32_t p = Fp::prime();
  if (p == 2) {
    for (Index k = 0; k < len; ++k) d[k] ^= s[k];
    return;
  }
  const std::uint32_t cv = c.value();
  for (Index k = 0; k < len; ++k) d[k] = (d[k] + cv * s[k]) % p;
}

Echelon::Echelon(const Mat& a, Options opts) : rows_(a.rows()), cols_(a.cols()), reduced_(opts.reduced) {
  const Index m = rows_, n = cols_;
  const Index width = opts.transform ? n + m : n;
  RowMat w(m, width);
  w.leftCols(n) = a;
  if (opts.transform) {
    w.rightCols(m).setConstant(Fp(0));
    for (Index i = 0; i < m; ++i) w(i, n + i) = Fp(1);
  }
  Index rank = 0;
  for (Index col = 0; col < n && rank < m; ++col) {
    Index piv = -1;
    for (Index r = rank; r < m; ++r) {
      if (!w(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) w.row(piv).swap(w.row(rank));
    Fp* prow = w.row(rank).data();
    scale_row(prow + col, w(rank, col).inverse(), width - col);
    const Index start = opts.reduced ? 0 : rank + 1;
    for (Index i = start; i < m; ++i) {
      if (i == rank) continue;
      const Fp c = w(i, col);
      if (c.is_zero()) continue;
      axpy(w.row(i).data() + col, prow + col, -c, width - col);
    }
    pivots_.push_back(col);
    ++rank;
  }
  r_ = w.topLeftCorner(rank, n);
  if (opts.transform) e_ = w.rightCols(m);
}

Mat Echelon::kernel() const {
  if (!reduced_) throw std::logic_error("Echelon::kernel needs the reduced form");
  std::vector<char> is_pivot(static_cast<size_t>(cols_), 0);
  for (Index p : pivots_) is_pivot[static_cast<size_t>(p)] = 1;
  Mat k = zeros(cols_, cols_ - rank());
  Index out = 0;
  for (Index f = 0; f < cols_; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    k(f, out) = Fp(1);
    for (Index i = 0; i < rank(); ++i) k(pivots_[static_cast<size_t>(i)], out) = -r_(i, f);
    ++out;
  }
  return k;
}

std::optional<Vec> Echelon::solve(const Vec& b) const {
  if (b.size() != rows_) throw std::invalid_argument("Echelon::solve: right-hand side has wrong length");
  if (e_.rows() != rows_ || !reduced_) throw std::logic_error("Echelon::solve needs a reduced form with transform");
  Vec c = zero_vec(rows_);
  for (Index j = 0; j < rows_; ++j) {
    const Fp bj = b(j);
    if (bj.is_zero()) continue;
    for (Index i = 0; i < rows_; ++i) c(i) += e_(i, j) * bj;
  }
  for (Index i = rank(); i < rows_; ++i) {
    if (!c(i).is_zero()) return std::nullopt;
  }
  Vec x = zero_vec(cols_);
  for (Index i = 0; i < rank(); ++i) x(pivots_[static_cast<size_t>(i)]) = c(i);
  return x;
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
  return Echelon(a, {.transform = true, .reduced = true}).solve(b);
}

Index rank(const Mat& a) { return Echelon(a, {.transform = false, .reduced = false}).rank(); }

Mat kernel_basis(const Mat& a) { return Echelon(a).kernel(); }

Subspace::Subspace(Index ambient, Index tag_dim) : n_(ambient), t_(tag_dim) {}

Subspace Subspace::from_columns(const Mat& gens, Index tag_dim) {
  Subspace s(gens.rows(), tag_dim);
  const Echelon e(gens.transpose());
  const RowMat& r = e.reduced_rows();
  for (Index i = 0; i < e.rank(); ++i) {
    s.rows_.emplace_back(r.row(i).data(), r.row(i).data() + r.cols());
    s.tags_.emplace_back(static_cast<size_t>(tag_dim), Fp(0));
    s.pivots_.push_back(e.pivots()[static_cast<size_t>(i)]);
  }
  return s;
}

void Subspace::grow_tags(Index tag_dim) {
  if (tag_dim < t_) throw std::invalid_argument("Subspace::grow_tags cannot shrink");
  t_ = tag_dim;
  for (auto& t : tags_) t.resize(static_cast<size_t>(tag_dim), Fp(0));
}

void Subspace::reduce_in_place(std::vector<Fp>& v, std::vector<Fp>* acc) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Fp c = v[static_cast<size_t>(pivots_[i])];
    if (c.is_zero()) continue;
    axpy(v.data(), rows_[i].data(), -c, n_);
    if (acc != nullptr) axpy(acc->data(), tags_[i].data(), c, t_);
  }
}

Vec Subspace::reduce(const Vec& v) const {
  std::vector<Fp> w(v.data(), v.data() + v.size());
  reduce_in_place(w, nullptr);
  return Eigen::Map<Vec>(w.data(), n_);
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::insert(const Vec& v, const Vec& tag) {
  if (v.size() != n_ || tag.size() != t_) throw std::invalid_argument("Subspace::insert: size mismatch");
  std::vector<Fp> w(v.data(), v.data() + v.size());
  std::vector<Fp> acc(static_cast<size_t>(t_), Fp(0));
  reduce_in_place(w, &acc);
  Index piv = -1;
  for (Index k = 0; k < n_; ++k) {
    if (!w[static_cast<size_t>(k)].is_zero()) {
      piv = k;
      break;
    }
  }
  if (piv < 0) return false;
  std::vector<Fp> t(tag.data(), tag.data() + tag.size());
  axpy(t.data(), acc.data(), Fp(-1), t_);
  const Fp inv = w[static_cast<size_t>(piv)].inverse();
  for (auto& x : w) x *= inv;
  for (auto& x : t) x *= inv;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Fp c = rows_[i][static_cast<size_t>(piv)];
    if (c.is_zero()) continue;
    axpy(rows_[i].data(), w.data(), -c, n_);
    axpy(tags_[i].data(), t.data(), -c, t_);
  }
  rows_.push_back(std::move(w));
  tags_.push_back(std::move(t));
  pivots_.push_back(piv);
  return true;
}

std::optional<Vec> Subspace::tag_of(const Vec& v) const {
  std::vector<Fp> w(v.data(), v.data() + v.size());
  std::vector<Fp> acc(static_cast<size_t>(t_), Fp(0));
  reduce_in_place(w, &acc);
  for (const Fp& x : w) {
    if (!x.is_zero()) return std::nullopt;
  }
  return Eigen::Map<Vec>(acc.data(), t_);
}

std::string to_string(const Mat& m) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    os << '[';
    for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).value();
    os << "]\n";
  }
  return os.str();
}

}  // namespace einf
