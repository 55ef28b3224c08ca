#include "einf/operad.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace einf {

namespace {

/// A tree fragment under construction: preorder entries, planar leaf
/// labels, and for every entry the position of its node in the input
/// order used for Koszul signs (-1 for leaves).
struct Piece {
  std::vector<int> nodes;
  std::vector<int> labels;
  std::vector<int> ids;
};

/// End (exclusive) of the subtree starting at every position.
std::vector<int> subtree_ends(const QuasiFreeOperad& p, const std::vector<int>& nodes) {
  std::vector<int> end(nodes.size(), 0);
  std::function<int(int)> walk = [&](int pos) -> int {
    if (pos >= static_cast<int>(nodes.size())) throw std::invalid_argument("malformed tree: truncated preorder");
    int next = pos + 1;
    if (nodes[static_cast<size_t>(pos)] != TreeMonomial::kLeaf) {
      const int a = p.generator(nodes[static_cast<size_t>(pos)]).arity;
      for (int c = 0; c < a; ++c) next = walk(next);
    }
    end[static_cast<size_t>(pos)] = next;
    return next;
  };
  if (walk(0) != static_cast<int>(nodes.size())) throw std::invalid_argument("malformed tree: trailing entries");
  return end;
}

/// Replaces the leaf labelled ℓ of the skeleton by pieces[ℓ].
Piece graft(const Piece& skeleton, const std::vector<Piece>& pieces) {
  Piece out;
  int leaf = 0;
  for (size_t i = 0; i < skeleton.nodes.size(); ++i) {
    if (skeleton.nodes[i] != TreeMonomial::kLeaf) {
      out.nodes.push_back(skeleton.nodes[i]);
      out.ids.push_back(skeleton.ids[i]);
      continue;
    }
    const Piece& r = pieces[static_cast<size_t>(skeleton.labels[static_cast<size_t>(leaf++)])];
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.labels.insert(out.labels.end(), r.labels.begin(), r.labels.end());
    out.ids.insert(out.ids.end(), r.ids.begin(), r.ids.end());
  }
  return out;
}

/// Koszul sign of the reordering recorded by ids (input order) versus
/// their positions in the output.
Fp koszul(const std::vector<int>& ids, const std::vector<int>& degree_of_id) {
  int parity = 0;
  std::vector<int> seq;
  for (int id : ids) {
    if (id >= 0 && (degree_of_id[static_cast<size_t>(id)] & 1)) seq.push_back(id);
  }
  for (size_t i = 0; i < seq.size(); ++i) {
    for (size_t j = i + 1; j < seq.size(); ++j) parity ^= seq[i] > seq[j];
  }
  return parity ? Fp(-1) : Fp(1);
}

/// Piece for a monomial whose generator nodes get ids first_id, first_id+1, …
Piece as_piece(const TreeMonomial& t, int first_id, int label_offset, std::vector<int>& degrees,
               const QuasiFreeOperad& p) {
  Piece out;
  out.nodes = t.nodes;
  for (int l : t.labels) out.labels.push_back(l + label_offset);
  int id = first_id;
  for (int g : t.nodes) {
    if (g == TreeMonomial::kLeaf) {
      out.ids.push_back(-1);
    } else {
      out.ids.push_back(id++);
      if (static_cast<int>(degrees.size()) < id) degrees.resize(static_cast<size_t>(id), 0);
      degrees[static_cast<size_t>(id) - 1] = p.generator(g).degree;
    }
  }
  return out;
}

int generator_count(const TreeMonomial& t) {
  return static_cast<int>(std::count_if(t.nodes.begin(), t.nodes.end(), [](int g) { return g != TreeMonomial::kLeaf; }));
}

Fp gamma_monomial(const QuasiFreeOperad& p, const TreeMonomial& f, const std::vector<const TreeMonomial*>& g,
                  TreeMonomial& out) {
  std::vector<int> degrees;
  Piece skeleton = as_piece(f, 0, 0, degrees, p);
  int next_id = generator_count(f);
  int offset = 0;
  std::vector<Piece> pieces;
  for (const TreeMonomial* s : g) {
    pieces.push_back(as_piece(*s, next_id, offset, degrees, p));
    next_id += generator_count(*s);
    offset += s->arity();
  }
  Piece r = graft(skeleton, pieces);
  out.nodes = std::move(r.nodes);
  out.labels = std::move(r.labels);
  return koszul(r.ids, degrees);
}

}  // namespace

Permutation leaf_permutation(const TreeMonomial& t) { return Permutation(t.labels).inverse(); }

OperadElement OperadElement::monomial(const TreeMonomial& t, int degree, Fp c) {
  OperadElement e(t.arity(), degree);
  e.add(t, c);
  return e;
}

Fp OperadElement::coefficient(const TreeMonomial& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Fp(0) : it->second;
}

void OperadElement::add(const TreeMonomial& t, Fp c) {
  if (t.arity() != arity_) throw std::invalid_argument("OperadElement: arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void OperadElement::check(const OperadElement& o) const {
  if (o.arity_ != arity_) throw std::invalid_argument("OperadElement: arity mismatch");
  if (o.degree_ != degree_ && !o.terms_.empty() && !terms_.empty()) {
    throw std::invalid_argument("OperadElement: degree mismatch");
  }
}

OperadElement& OperadElement::operator+=(const OperadElement& o) {
  check(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& o) {
  check(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

OperadElement OperadElement::operator*(Fp c) const {
  OperadElement r(arity_, degree_);
  for (const auto& [t, v] : terms_) r.add(t, v * c);
  return r;
}

const GeneratorDecl& QuasiFreeOperad::add_generator(std::string name, int arity, int degree,
                                                    const OperadElement& boundary, std::optional<Fp> augmentation) {
  if (arity < 2) throw std::invalid_argument("generators need arity ≥ 2");
  if (degree < 0) throw std::invalid_argument("generators need non-negative degree");
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
      !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
    throw std::invalid_argument("invalid generator name '" + name + "'");
  }
  if (find(name)) throw std::invalid_argument("duplicate generator name '" + name + "'");
  if (!boundary.is_zero()) {
    if (boundary.arity() != arity || boundary.degree() != degree - 1) {
      throw std::invalid_argument("boundary of " + name + " has the wrong arity or degree");
    }
    for (const auto& [t, c] : boundary.terms()) {
      for (int g : t.nodes) {
        if (g != TreeMonomial::kLeaf && (g < 0 || g >= static_cast<int>(gens_.size()))) {
          throw std::invalid_argument("boundary of " + name + " uses an undeclared generator");
        }
      }
    }
    if (!differential(*this, boundary).is_zero()) throw std::invalid_argument("boundary of " + name + " is not a cycle");
  }
  GeneratorDecl g;
  g.id = static_cast<int>(gens_.size());
  g.name = std::move(name);
  g.arity = arity;
  g.degree = degree;
  g.boundary = boundary.is_zero() ? OperadElement(arity, degree - 1) : boundary;
  g.augmentation = augmentation.value_or(degree == 0 ? Fp(1) : Fp(0));
  gens_.push_back(std::move(g));
  return gens_.back();
}

void QuasiFreeOperad::overwrite_boundary(int id, const OperadElement& boundary) {
  gens_.at(static_cast<size_t>(id)).boundary = boundary;
}

std::optional<int> QuasiFreeOperad::find(std::string_view name) const {
  for (const auto& g : gens_) {
    if (g.name == name) return g.id;
  }
  return std::nullopt;
}

int QuasiFreeOperad::degree_of(const TreeMonomial& t) const {
  int d = 0;
  for (int g : t.nodes) {
    if (g != TreeMonomial::kLeaf) d += generator(g).degree;
  }
  return d;
}

Fp QuasiFreeOperad::augmentation_of(const TreeMonomial& t) const {
  Fp e(1);
  for (int g : t.nodes) {
    if (g != TreeMonomial::kLeaf) e *= generator(g).augmentation;
  }
  return e;
}

OperadElement operad_unit() { return OperadElement::monomial(TreeMonomial::unit(), 0); }

OperadElement corolla(const QuasiFreeOperad& p, int id) {
  const GeneratorDecl& g = p.generator(id);
  TreeMonomial t;
  t.nodes.push_back(id);
  t.nodes.insert(t.nodes.end(), static_cast<size_t>(g.arity), TreeMonomial::kLeaf);
  t.labels.resize(static_cast<size_t>(g.arity));
  std::iota(t.labels.begin(), t.labels.end(), 0);
  return OperadElement::monomial(t, g.degree);
}

TreeMonomial sigma_action(const TreeMonomial& t, const Permutation& sigma) {
  if (sigma.size() != t.arity()) throw std::invalid_argument("sigma_action: arity mismatch");
  const Permutation inv = sigma.inverse();
  TreeMonomial r = t;
  for (int& l : r.labels) l = inv(l);
  return r;
}

OperadElement sigma_action(const OperadElement& x, const Permutation& sigma) {
  OperadElement r(x.arity(), x.degree());
  for (const auto& [t, c] : x.terms()) r.add(sigma_action(t, sigma), c);
  return r;
}

OperadElement gamma(const QuasiFreeOperad& p, const OperadElement& f, const std::vector<OperadElement>& g) {
  if (static_cast<int>(g.size()) != f.arity()) throw std::invalid_argument("gamma: need one input per leaf of f");
  int arity = 0, degree = f.degree();
  for (const auto& x : g) {
    arity += x.arity();
    degree += x.degree();
  }
  auto describe = [&] {
    std::ostringstream os;
    os << "γ(" << to_string(p, f);
    for (const auto& x : g) os << "; " << to_string(p, x);
    os << ")";
    return os.str();
  };
  if (arity > p.max_arity()) {
    if (p.truncated()) return OperadElement(arity, degree);
    throw TruncationError("arity " + std::to_string(arity) + " overflows the window in " + describe());
  }
  if (degree > p.max_degree()) {
    throw TruncationError("degree " + std::to_string(degree) + " overflows the window in " + describe());
  }
  OperadElement out(arity, degree);
  if (f.is_zero() || std::any_of(g.begin(), g.end(), [](const OperadElement& x) { return x.is_zero(); })) return out;
  // Cartesian product over the terms of every input.
  std::vector<std::vector<std::pair<const TreeMonomial*, Fp>>> lists;
  for (const auto& x : g) {
    std::vector<std::pair<const TreeMonomial*, Fp>> l;
    for (const auto& [t, c] : x.terms()) l.emplace_back(&t, c);
    lists.push_back(std::move(l));
  }
  std::vector<size_t> pos(g.size(), 0);
  std::vector<const TreeMonomial*> chosen(g.size());
  for (const auto& [ft, fc] : f.terms()) {
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      Fp c = fc;
      for (size_t i = 0; i < g.size(); ++i) {
        chosen[i] = lists[i][pos[i]].first;
        c *= lists[i][pos[i]].second;
      }
      TreeMonomial t;
      c *= gamma_monomial(p, ft, chosen, t);
      out.add(t, c);
      size_t i = 0;
      while (i < g.size() && ++pos[i] == lists[i].size()) pos[i++] = 0;
      if (i == g.size()) break;
    }
  }
  return out;
}

namespace {

void differential_monomial(const QuasiFreeOperad& p, const TreeMonomial& t, Fp coef, OperadElement& out) {
  const std::vector<int> end = subtree_ends(p, t.nodes);
  const int n = static_cast<int>(t.nodes.size());
  // Leaf ordinal before each position.
  std::vector<int> leaves_before(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) leaves_before[static_cast<size_t>(i) + 1] = leaves_before[static_cast<size_t>(i)] + (t.nodes[static_cast<size_t>(i)] == TreeMonomial::kLeaf);
  int prefix_degree = 0;
  for (int q = 0; q < n; ++q) {
    const int g = t.nodes[static_cast<size_t>(q)];
    if (g == TreeMonomial::kLeaf) continue;
    const GeneratorDecl& decl = p.generator(g);
    if (!decl.boundary.is_zero()) {
      const Fp outer = coef * sign_power(prefix_degree);
      // Children of q in planar order, as pieces keeping their labels.
      std::vector<std::pair<int, int>> child;
      for (int c = q + 1; c < end[static_cast<size_t>(q)]; c = end[static_cast<size_t>(c)]) child.emplace_back(c, end[static_cast<size_t>(c)]);
      for (const auto& [s, sc] : decl.boundary.terms()) {
        std::vector<int> degrees;
        int id = 0;
        auto take = [&](int from, int to, Piece& piece) {
          for (int i = from; i < to; ++i) {
            const int node = t.nodes[static_cast<size_t>(i)];
            piece.nodes.push_back(node);
            if (node == TreeMonomial::kLeaf) {
              piece.ids.push_back(-1);
              piece.labels.push_back(t.labels[static_cast<size_t>(leaves_before[static_cast<size_t>(i)])]);
            } else {
              piece.ids.push_back(id++);
              degrees.push_back(p.generator(node).degree);
            }
          }
        };
        Piece prefix;
        take(0, q, prefix);
        Piece inner = as_piece(s, id, 0, degrees, p);
        id += generator_count(s);
        std::vector<Piece> kids(child.size());
        for (size_t c = 0; c < child.size(); ++c) take(child[c].first, child[c].second, kids[c]);
        Piece suffix;
        take(end[static_cast<size_t>(q)], n, suffix);
        Piece middle = graft(inner, kids);
        Piece all = prefix;
        all.nodes.insert(all.nodes.end(), middle.nodes.begin(), middle.nodes.end());
        all.labels.insert(all.labels.end(), middle.labels.begin(), middle.labels.end());
        all.ids.insert(all.ids.end(), middle.ids.begin(), middle.ids.end());
        all.nodes.insert(all.nodes.end(), suffix.nodes.begin(), suffix.nodes.end());
        all.labels.insert(all.labels.end(), suffix.labels.begin(), suffix.labels.end());
        all.ids.insert(all.ids.end(), suffix.ids.begin(), suffix.ids.end());
        TreeMonomial r{std::move(all.nodes), std::move(all.labels)};
        out.add(r, outer * sc * koszul(all.ids, degrees));
      }
    }
    prefix_degree += decl.degree;
  }
}

}  // namespace

OperadElement differential(const QuasiFreeOperad& p, const OperadElement& x) {
  OperadElement out(x.arity(), x.degree() - 1);
  for (const auto& [t, c] : x.terms()) differential_monomial(p, t, c, out);
  return out;
}

OperadElement normal_form(const QuasiFreeOperad& p, const RawTree& t, const Permutation& output) {
  std::function<OperadElement(const RawTree&)> rec = [&](const RawTree& node) -> OperadElement {
    if (node.generator == TreeMonomial::kLeaf) return operad_unit();
    const GeneratorDecl& g = p.generator(node.generator);
    if (static_cast<int>(node.children.size()) != g.arity) throw std::invalid_argument("normal_form: wrong child count");
    std::vector<OperadElement> kids;
    for (const auto& c : node.children) kids.push_back(rec(c));
    OperadElement top = corolla(p, node.generator);
    if (node.sigma.size() == g.arity) top = sigma_action(top, node.sigma);
    return gamma(p, top, kids);
  };
  OperadElement r = rec(t);
  if (output.size() == r.arity()) r = sigma_action(r, output);
  return r;
}

std::pair<RawTree, Permutation> to_raw(const QuasiFreeOperad& p, const TreeMonomial& t) {
  size_t pos = 0;
  std::function<RawTree()> rec = [&]() -> RawTree {
    RawTree r;
    r.generator = t.nodes.at(pos++);
    if (r.generator != TreeMonomial::kLeaf) {
      const int a = p.generator(r.generator).arity;
      r.sigma = Permutation::identity(a);
      for (int c = 0; c < a; ++c) r.children.push_back(rec());
    }
    return r;
  };
  RawTree r = rec();
  return {r, leaf_permutation(t)};
}

namespace {

using Shape = std::vector<int>;

class ShapeEnumerator {
 public:
  explicit ShapeEnumerator(const QuasiFreeOperad& p) : p_(p) {}

  const std::vector<Shape>& shapes(int a, int d) {
    auto key = std::make_pair(a, d);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Shape> out;
    if (a == 1 && d == 0) out.push_back({TreeMonomial::kLeaf});
    for (const GeneratorDecl& g : p_.generators()) {
      if (g.arity > a || g.degree > d || g.arity > p_.max_arity()) continue;
      std::vector<Shape> partial{{g.id}};
      children(g.arity, a, d - g.degree, partial, out);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Appends all ways of filling `slots` children with total arity a and degree d.
  void children(int slots, int a, int d, const std::vector<Shape>& prefixes, std::vector<Shape>& out) {
    if (slots == 0) {
      if (a == 0 && d == 0) out.insert(out.end(), prefixes.begin(), prefixes.end());
      return;
    }
    for (int ca = 1; ca <= a - (slots - 1); ++ca) {
      for (int cd = 0; cd <= d; ++cd) {
        const std::vector<Shape> sub = shapes(ca, cd);
        if (sub.empty()) continue;
        std::vector<Shape> next;
        for (const Shape& pre : prefixes) {
          for (const Shape& s : sub) {
            Shape x = pre;
            x.insert(x.end(), s.begin(), s.end());
            next.push_back(std::move(x));
          }
        }
        children(slots - 1, a - ca, d - cd, next, out);
      }
    }
  }

  const QuasiFreeOperad& p_;
  std::map<std::pair<int, int>, std::vector<Shape>> memo_;
};

TreeMonomial with_identity_labels(Shape s) {
  TreeMonomial t;
  t.nodes = std::move(s);
  const auto leaves = std::count(t.nodes.begin(), t.nodes.end(), TreeMonomial::kLeaf);
  t.labels.resize(static_cast<size_t>(leaves));
  std::iota(t.labels.begin(), t.labels.end(), 0);
  return t;
}

}  // namespace

std::vector<TreeMonomial> basis_representatives(const QuasiFreeOperad& p, int arity, int degree) {
  if (arity < 1 || arity > p.max_arity()) return {};
  ShapeEnumerator e(p);
  std::vector<TreeMonomial> out;
  for (const Shape& s : e.shapes(arity, degree)) out.push_back(with_identity_labels(s));
  return out;
}

std::vector<TreeMonomial> basis(const QuasiFreeOperad& p, int arity, int degree) {
  std::vector<TreeMonomial> out;
  const SymmetricGroup& g = symmetric_group(arity);
  for (const TreeMonomial& r : basis_representatives(p, arity, degree)) {
    for (const Permutation& s : g.elements) out.push_back(sigma_action(r, s));
  }
  return out;
}

OperadComponent::OperadComponent(const QuasiFreeOperad& p, int arity, int max_degree)
    : arity_(arity), max_degree_(max_degree), order_(static_cast<int>(factorial(arity))) {
  ShapeEnumerator e(p);
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<TreeMonomial> reps;
    if (arity >= 1 && arity <= p.max_arity()) {
      for (const Shape& s : e.shapes(arity, d)) {
        shape_index_[s] = {d, static_cast<int>(reps.size())};
        reps.push_back(with_identity_labels(s));
      }
    }
    reps_.push_back(std::move(reps));
  }
  const SymmetricGroup& grp = symmetric_group(arity);
  FreeDGModule::Data data;
  std::vector<int> orbits;
  for (int d = 0; d <= max_degree; ++d) {
    orbits.push_back(static_cast<int>(reps_[static_cast<size_t>(d)].size()));
    data.dims.push_back(static_cast<Index>(orbits.back()) * order_);
  }
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    Mat del = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
    const auto& reps = reps_[static_cast<size_t>(d)];
    for (size_t r = 0; r < reps.size(); ++r) {
      const OperadElement bd = differential(p, OperadElement::monomial(reps[r], d));
      for (const auto& [t, c] : bd.terms()) {
        auto it = shape_index_.find(t.nodes);
        if (it == shape_index_.end() || it->second.first != d - 1) {
          throw std::logic_error("boundary leaves the component: " + to_string(p, t));
        }
        const int rep = it->second.second;
        const int perm = leaf_permutation(t).index();
        for (int s = 0; s < order_; ++s) {
          del(static_cast<Index>(rep) * order_ + grp.mul(perm, s), static_cast<Index>(r) * order_ + s) += c;
        }
      }
    }
    data.differential[static_cast<size_t>(d)] = std::move(del);
  }
  Mat eps = zeros(1, data.dims[0]);
  for (size_t r = 0; r < reps_[0].size(); ++r) {
    const Fp v = p.augmentation_of(reps_[0][r]);
    for (int s = 0; s < order_; ++s) eps(0, static_cast<Index>(r) * order_ + s) = v;
  }
  data.augmentation = std::move(eps);
  if (arity == 1 && !reps_[0].empty()) data.coaugmentation = 0;
  data.symmetry = Symmetry::orbit_major(arity, orbits);
  data.names.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    for (const auto& r : reps_[static_cast<size_t>(d)]) {
      for (int s = 0; s < order_; ++s) data.names[static_cast<size_t>(d)].push_back(to_string(p, sigma_action(r, grp.elements[static_cast<size_t>(s)])));
    }
  }
  data.label = "K(" + std::to_string(arity) + ")";
  module_ = std::make_shared<const FreeDGModule>(std::move(data));
}

TreeMonomial OperadComponent::monomial(int d, Index b) const {
  const TreeMonomial& r = reps_.at(static_cast<size_t>(d)).at(static_cast<size_t>(b / order_));
  return sigma_action(r, symmetric_group(arity_).elements[static_cast<size_t>(b % order_)]);
}

std::optional<Index> OperadComponent::index_of(const TreeMonomial& t, int degree) const {
  auto it = shape_index_.find(t.nodes);
  if (it == shape_index_.end() || it->second.first != degree) return std::nullopt;
  return static_cast<Index>(it->second.second) * order_ + leaf_permutation(t).index();
}

Vec OperadComponent::to_vector(const OperadElement& x) const {
  Vec v = zero_vec(module_->dim(x.degree()));
  for (const auto& [t, c] : x.terms()) {
    auto i = index_of(t, x.degree());
    if (!i) throw std::invalid_argument("to_vector: tree outside the component");
    v(*i) += c;
  }
  return v;
}

OperadElement OperadComponent::from_vector(int d, const Vec& v) const {
  OperadElement x(arity_, d);
  for (Index b = 0; b < v.size(); ++b) {
    if (!v(b).is_zero()) x.add(monomial(d, b), v(b));
  }
  return x;
}

QuasiFreeOperad truncate(const QuasiFreeOperad& p, int n) {
  if (n < 1) throw std::invalid_argument("truncate: n must be positive");
  QuasiFreeOperad r = p;
  r.set_truncated(std::min(n, p.max_arity()));
  return r;
}

std::string to_string(const QuasiFreeOperad& p, const TreeMonomial& t) {
  std::ostringstream os;
  size_t pos = 0, leaf = 0;
  std::function<void()> rec = [&] {
    const int g = t.nodes.at(pos++);
    if (g == TreeMonomial::kLeaf) {
      os << t.labels.at(leaf++) + 1;
      return;
    }
    const GeneratorDecl& decl = p.generator(g);
    os << decl.name << '(';
    for (int c = 0; c < decl.arity; ++c) {
      if (c) os << ',';
      rec();
    }
    os << ')';
  };
  rec();
  return os.str();
}

std::string to_string(const QuasiFreeOperad& p, const OperadElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    if (c != Fp(1)) os << c.value() << '*';
    os << to_string(p, t);
  }
  return os.str();
}

namespace {

class ElementParser {
 public:
  ElementParser(const QuasiFreeOperad& p, std::string_view s) : p_(p), s_(s) {}

  OperadElement parse(int arity, int degree) {
    OperadElement out(arity, degree);
    skip();
    if (peek() == '0' && (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      skip();
      if (pos_ != s_.size()) fail("unexpected text after 0");
      return out;
    }
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    while (true) {
      skip();
      long long coef = 1;
      const size_t save = pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const long long v = number();
        skip();
        if (peek() == '*') {
          ++pos_;
          coef = v;
        } else {
          pos_ = save;
        }
      }
      TreeMonomial t;
      tree(t);
      if (t.arity() != arity) fail("term has arity " + std::to_string(t.arity()));
      std::vector<int> sorted = t.labels;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
        if (sorted[static_cast<size_t>(i)] != i) fail("leaf labels are not a bijection");
      }
      if (p_.degree_of(t) != degree) fail("term has degree " + std::to_string(p_.degree_of(t)));
      out.add(t, negative ? -Fp(coef) : Fp(coef));
      skip();
      if (pos_ == s_.size()) break;
      if (peek() == '+') {
        negative = false;
      } else if (peek() == '-') {
        negative = true;
      } else {
        fail("expected '+' or '-'");
      }
      ++pos_;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("operad element parse error at position " + std::to_string(pos_) + ": " + why);
  }
  long long number() {
    long long v = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s_[pos_++] - '0');
    return v;
  }
  void tree(TreeMonomial& t) {
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const long long v = number();
      if (v < 1) fail("leaf labels start at 1");
      t.nodes.push_back(TreeMonomial::kLeaf);
      t.labels.push_back(static_cast<int>(v - 1));
      return;
    }
    const size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    if (start == pos_) fail("expected a generator name or leaf label");
    const auto id = p_.find(s_.substr(start, pos_ - start));
    if (!id) fail("unknown generator '" + std::string(s_.substr(start, pos_ - start)) + "'");
    t.nodes.push_back(*id);
    skip();
    if (peek() != '(') fail("expected '('");
    ++pos_;
    const int a = p_.generator(*id).arity;
    for (int c = 0; c < a; ++c) {
      if (c) {
        skip();
        if (peek() != ',') fail("expected ','");
        ++pos_;
      }
      tree(t);
    }
    skip();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
  }

  const QuasiFreeOperad& p_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

OperadElement parse_element(const QuasiFreeOperad& p, std::string_view text, int arity, int degree) {
  return ElementParser(p, text).parse(arity, degree);
}

}  // namespace einf
