#include "einf/permutation.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace einf {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<size_t>(v)]) {
      throw std::invalid_argument("not a permutation: " + to_string());
    }
    seen[static_cast<size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int i) {
  if (i < 0 || i + 1 >= n) throw std::out_of_range("transposition index out of range");
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::swap(im[static_cast<size_t>(i)], im[static_cast<size_t>(i + 1)]);
  return Permutation(std::move(im));
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation Permutation::from_index(int n, int k) {
  if (k < 0 || k >= factorial(n)) throw std::out_of_range("permutation index out of range");
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> im;
  im.reserve(static_cast<size_t>(n));
  for (int i = n; i >= 1; --i) {
    const long long f = factorial(i - 1);
    const auto q = static_cast<size_t>(k / f);
    k = static_cast<int>(k % f);
    im.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return Permutation(std::move(im));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> im(images);
  for (int& v : im) --v;
  return Permutation(std::move(im));
}

int Permutation::index() const {
  const int n = size();
  long long k = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += images_[static_cast<size_t>(j)] < images_[static_cast<size_t>(i)];
    k += smaller * factorial(n - 1 - i);
  }
  return static_cast<int>(k);
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (images_[static_cast<size_t>(i)] != i) return false;
  }
  return true;
}

bool Permutation::is_odd() const {
  int inversions = 0;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) inversions += images_[static_cast<size_t>(i)] > images_[static_cast<size_t>(j)];
  }
  return (inversions & 1) != 0;
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[static_cast<size_t>(images_[static_cast<size_t>(i)])] = i;
  return Permutation(std::move(im));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < images_.size(); ++i) os << (i ? " " : "") << images_[i] + 1;
  os << ']';
  return os.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: permutation sizes differ");
  std::vector<int> im(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) im[static_cast<size_t>(i)] = a(b(i));
  return Permutation(std::move(im));
}

Fp sign(const Permutation& p) { return p.is_odd() ? Fp(-1) : Fp(1); }

const SymmetricGroup& symmetric_group(int n) {
  static std::vector<std::unique_ptr<SymmetricGroup>> cache(8);
  if (n < 0 || n > 7) throw std::out_of_range("symmetric_group supports n ≤ 7");
  auto& slot = cache[static_cast<size_t>(n)];
  if (!slot) {
    auto g = std::make_unique<SymmetricGroup>();
    g->n = n;
    g->order = static_cast<int>(factorial(n));
    for (int k = 0; k < g->order; ++k) g->elements.push_back(Permutation::from_index(n, k));
    g->product.resize(static_cast<size_t>(g->order) * static_cast<size_t>(g->order));
    g->inverse.resize(static_cast<size_t>(g->order));
    for (int a = 0; a < g->order; ++a) {
      g->inverse[static_cast<size_t>(a)] = g->elements[static_cast<size_t>(a)].inverse().index();
      for (int b = 0; b < g->order; ++b) {
        g->product[static_cast<size_t>(a * g->order + b)] =
            compose(g->elements[static_cast<size_t>(a)], g->elements[static_cast<size_t>(b)]).index();
      }
    }
    slot = std::move(g);
  }
  return *slot;
}

GroupRingElement GroupRingElement::basis(const Permutation& p, Fp c) {
  GroupRingElement e(p.size());
  e.add(p, c);
  return e;
}

Fp GroupRingElement::coefficient(const Permutation& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Fp(0) : it->second;
}

void GroupRingElement::add(const Permutation& p, Fp c) {
  if (p.size() != n_) throw std::invalid_argument("group ring: arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void GroupRingElement::check(const GroupRingElement& o) const {
  if (o.n_ != n_) throw std::invalid_argument("group ring: arity mismatch");
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  check(o);
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  check(o);
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

GroupRingElement GroupRingElement::operator*(Fp c) const {
  GroupRingElement r(n_);
  for (const auto& [p, v] : terms_) r.add(p, v * c);
  return r;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    os << (first ? "" : " + ") << c.value() << "*" << p.to_string();
    first = false;
  }
  return os.str();
}

GroupRingElement ring_multiply(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("ring_multiply: arity mismatch");
  GroupRingElement r(a.arity());
  for (const auto& [p, x] : a.terms()) {
    for (const auto& [q, y] : b.terms()) r.add(compose(p, q), x * y);
  }
  return r;
}

}  // namespace einf
