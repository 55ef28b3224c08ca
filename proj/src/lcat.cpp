#include "einf/lcat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace einf {

PartialMap::PartialMap(int target, std::vector<int> images) : target_(target), images_(std::move(images)) {
  if (target_ < 0) throw std::invalid_argument("partial map: negative target size");
  for (int v : images_) {
    if (v != kUndefined && (v < 0 || v >= target_)) throw std::invalid_argument("partial map: image out of range");
  }
}

PartialMap PartialMap::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return PartialMap(n, std::move(im));
}

PartialMap PartialMap::empty(int n, int m) { return PartialMap(m, std::vector<int>(static_cast<size_t>(n), kUndefined)); }

PartialMap PartialMap::face(int i, int n) {
  if (n < 0 || i < 1 || i > n + 1) throw std::out_of_range("face d_i needs 1 ≤ i ≤ n+1");
  std::vector<int> im;
  for (int x = 1; x <= n; ++x) im.push_back((x < i ? x : x + 1) - 1);
  return PartialMap(n + 1, std::move(im));
}

PartialMap PartialMap::degeneracy(int i, int n) {
  if (n == 1 && i == 1) return empty(1, 0);
  if (n < 2 || i < 1 || i > n - 1) throw std::out_of_range("degeneracy s_i needs 1 ≤ i ≤ n-1 (or n = i = 1)");
  std::vector<int> im;
  for (int x = 1; x <= n; ++x) im.push_back((x <= i ? x : x - 1) - 1);
  return PartialMap(n - 1, std::move(im));
}

PartialMap PartialMap::retraction(int i, int n) {
  if (n < 0 || i < 1 || i > n + 1) throw std::out_of_range("retraction ζ_i needs 1 ≤ i ≤ n+1");
  std::vector<int> im;
  for (int y = 1; y <= n + 1; ++y) im.push_back(y == i ? kUndefined : (y < i ? y : y - 1) - 1);
  return PartialMap(n, std::move(im));
}

PartialMap PartialMap::twist(int n, int m) {
  std::vector<int> im;
  for (int x = 0; x < n; ++x) im.push_back(m + x);
  for (int x = 0; x < m; ++x) im.push_back(x);
  return PartialMap(n + m, std::move(im));
}

PartialMap PartialMap::collapse(int n) { return PartialMap(1, std::vector<int>(static_cast<size_t>(n), 0)); }

bool PartialMap::is_total() const {
  return std::none_of(images_.begin(), images_.end(), [](int v) { return v == kUndefined; });
}

bool PartialMap::is_bijection() const {
  if (source() != target_ || !is_total()) return false;
  std::vector<int> s = images_;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::string PartialMap::to_string() const {
  std::ostringstream os;
  os << '[' << source() << "→" << target_ << ':';
  bool first = true;
  for (int x = 0; x < source(); ++x) {
    if (!defined(x)) continue;
    os << (first ? " " : ", ") << x + 1 << "↦" << images_[static_cast<size_t>(x)] + 1;
    first = false;
  }
  os << ']';
  return os.str();
}

PartialMap compose(const PartialMap& g, const PartialMap& f) {
  if (f.target() != g.source()) throw std::invalid_argument("compose: " + g.to_string() + " ∘ " + f.to_string());
  std::vector<int> im;
  for (int x = 0; x < f.source(); ++x) im.push_back(f.defined(x) ? g(f(x)) : PartialMap::kUndefined);
  return PartialMap(g.target(), std::move(im));
}

PartialMap sum(const PartialMap& f, const PartialMap& g) {
  std::vector<int> im = f.images();
  for (int v : g.images()) im.push_back(v == PartialMap::kUndefined ? v : v + f.target());
  return PartialMap(f.target() + g.target(), std::move(im));
}

PartialMap basic_map(Basic b) {
  switch (b) {
    case Basic::Face: return PartialMap::face(1, 0);
    case Basic::Retraction: return PartialMap::retraction(1, 0);
    case Basic::Identity: return PartialMap::identity(1);
    case Basic::Degeneracy: return PartialMap::degeneracy(1, 2);
    case Basic::Twist: return PartialMap::twist(1, 1);
  }
  throw std::logic_error("unknown basic arrow");
}

const char* basic_name(Basic b) {
  switch (b) {
    case Basic::Face: return "d1";
    case Basic::Retraction: return "z1";
    case Basic::Identity: return "1";
    case Basic::Degeneracy: return "s1";
    case Basic::Twist: return "t";
  }
  return "?";
}

namespace {

Layer padded(int before, Basic b, int after) {
  Layer l(static_cast<size_t>(before), Basic::Identity);
  l.push_back(b);
  l.insert(l.end(), static_cast<size_t>(after), Basic::Identity);
  return l;
}

}  // namespace

Word decompose(const PartialMap& f) {
  Word w;
  // Restriction to the domain.
  std::vector<int> values;
  if (!f.is_total()) {
    Layer l;
    for (int x = 0; x < f.source(); ++x) {
      l.push_back(f.defined(x) ? Basic::Identity : Basic::Retraction);
      if (f.defined(x)) values.push_back(f(x));
    }
    w.push_back(std::move(l));
  } else {
    values = f.images();
  }
  // Bubble sort by image value; each swap is an adjacent twist.
  const int k = static_cast<int>(values.size());
  for (bool moved = true; moved;) {
    moved = false;
    for (int s = 0; s + 1 < k; ++s) {
      if (values[static_cast<size_t>(s)] > values[static_cast<size_t>(s) + 1]) {
        std::swap(values[static_cast<size_t>(s)], values[static_cast<size_t>(s) + 1]);
        w.push_back(padded(s, Basic::Twist, k - s - 2));
        moved = true;
      }
    }
  }
  // Merge equal neighbours.
  for (size_t s = 0; s + 1 < values.size();) {
    if (values[s] == values[s + 1]) {
      const int len = static_cast<int>(values.size());
      w.push_back(padded(static_cast<int>(s), Basic::Degeneracy, len - static_cast<int>(s) - 2));
      values.erase(values.begin() + static_cast<std::ptrdiff_t>(s) + 1);
    } else {
      ++s;
    }
  }
  // Insert missing targets in increasing order.
  for (int y = 0; y < f.target(); ++y) {
    const auto pos = static_cast<int>(std::lower_bound(values.begin(), values.end(), y) - values.begin());
    if (pos < static_cast<int>(values.size()) && values[static_cast<size_t>(pos)] == y) continue;
    const int len = static_cast<int>(values.size());
    w.push_back(padded(pos, Basic::Face, len - pos));
    values.insert(values.begin() + pos, y);
  }
  return w;
}

PartialMap evaluate(const Word& w, int source) {
  PartialMap acc = PartialMap::identity(source);
  for (const Layer& layer : w) {
    PartialMap l = PartialMap::identity(0);
    for (Basic b : layer) l = sum(l, basic_map(b));
    acc = compose(l, acc);
  }
  return acc;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "id";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    os << (i ? " ; " : "");
    for (size_t j = 0; j < w[i].size(); ++j) os << (j ? "+" : "") << basic_name(w[i][j]);
  }
  return os.str();
}

std::vector<PartialMap> generators_up_to(int bound) {
  std::vector<PartialMap> out;
  for (int n = 0; n <= bound; ++n) {
    out.push_back(PartialMap::identity(n));
    if (n + 1 <= bound) {
      for (int i = 1; i <= n + 1; ++i) out.push_back(PartialMap::face(i, n));
      for (int i = 1; i <= n + 1; ++i) out.push_back(PartialMap::retraction(i, n));
    }
    if (n == 1) out.push_back(PartialMap::degeneracy(1, 1));
    for (int i = 1; i + 1 <= n; ++i) out.push_back(PartialMap::degeneracy(i, n));
    for (int a = 1; a < n; ++a) out.push_back(PartialMap::twist(a, n - a));
  }
  return out;
}

}  // namespace einf
