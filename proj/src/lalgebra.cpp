#include "einf/lalgebra.hpp"

#include <sstream>

namespace einf {

ModulePtr LAlgebra::pair(int n, int m) const {
  auto& slot = pairs_[{n, m}];
  if (!slot) slot = tensor(value(n), value(m), d_);
  return slot;
}

Index LAlgebra::unit() const {
  const auto& eta = value(0)->coaugmentation();
  if (!eta) throw std::logic_error(flavor() + ": A[0] has no unit");
  return *eta;
}

Vec LAlgebra::multiply(int n, int m, int p, const Vec& a, int q, const Vec& b) const {
  const ModulePtr src = pair(n, m);
  const DGMorphism f = mu(n, m);
  const int d = p + q;
  Vec out = zero_vec(value(n + m)->dim(d));
  if (d > d_) return out;
  const TensorLayout* lay = src->tensor_layout();
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < b.size(); ++j) {
      if (b(j).is_zero()) continue;
      out += f.block(d).col(lay->index(d, p, i, j)) * (a(i) * b(j));
    }
  }
  return out;
}

namespace {

class Trivial final : public LAlgebra {
 public:
  explicit Trivial(int d) : LAlgebra(d), k_(FreeDGModule::ground(d)) {}
  std::string flavor() const override { return "trivial"; }
  ModulePtr value(int) const override { return k_; }
  DGMorphism induced(const PartialMap&) const override { return DGMorphism::identity(k_); }
  DGMorphism mu(int n, int m) const override {
    DGMorphism f(pair(n, m), k_, 0);
    f.block(0)(0, 0) = Fp(1);
    return f;
  }

 private:
  ModulePtr k_;
};

class Canonical final : public LAlgebra {
 public:
  Canonical(std::shared_ptr<const SimplicialSet> x, int d) : LAlgebra(d), x_(std::move(x)) {}
  std::string flavor() const override { return "canonical(" + x_->name() + ")"; }
  const ProductChains& chains(int n) const {
    auto& slot = chains_[n];
    if (!slot) slot = std::make_unique<ProductChains>(x_, n, max_degree());
    return *slot;
  }
  ModulePtr value(int n) const override { return chains(n).module(); }
  DGMorphism induced(const PartialMap& alpha) const override {
    auto it = induced_.find(alpha);
    if (it == induced_.end()) {
      it = induced_.emplace(alpha, induced_map(chains(alpha.target()), chains(alpha.source()), alpha)).first;
    }
    return it->second;
  }
  DGMorphism mu(int n, int m) const override {
    auto it = mu_.find({n, m});
    if (it == mu_.end()) it = mu_.emplace(std::make_pair(n, m), em_shuffle(chains(n), chains(m), chains(n + m), pair(n, m))).first;
    return it->second;
  }

 private:
  std::shared_ptr<const SimplicialSet> x_;
  mutable std::map<int, std::unique_ptr<ProductChains>> chains_;
  mutable std::map<PartialMap, DGMorphism> induced_;
  mutable std::map<std::pair<int, int>, DGMorphism> mu_;
};

using Expansion = std::vector<std::pair<std::vector<int>, Fp>>;

class Degenerate final : public LAlgebra {
 public:
  explicit Degenerate(CoalgebraFixture c) : LAlgebra(c.module->max_degree()), c_(std::move(c)), base_(c_.module, 1, max_degree()) {
    validate();
  }
  std::string flavor() const override { return "degenerate"; }
  const TensorPower& power(int n) const {
    auto& slot = powers_[n];
    if (!slot) slot = std::make_unique<TensorPower>(c_.module, n, max_degree());
    return *slot;
  }
  ModulePtr value(int n) const override { return power(n).module(); }

  DGMorphism induced(const PartialMap& alpha) const override {
    auto it = induced_.find(alpha);
    if (it != induced_.end()) return it->second;
    const TensorPower& from = power(alpha.target());
    const TensorPower& to = power(alpha.source());
    const int unit = base_.global(0, *c_.module->coaugmentation());
    std::vector<std::vector<int>> fibre(static_cast<size_t>(alpha.target()));
    for (int j = 0; j < alpha.source(); ++j) {
      if (alpha.defined(j)) fibre[static_cast<size_t>(alpha(j))].push_back(j);
    }
    std::vector<Mat> blocks;
    for (int d = 0; d <= max_degree(); ++d) {
      Mat blk = zeros(to.module()->dim(d), from.module()->dim(d));
      for (Index b = 0; b < from.module()->dim(d); ++b) {
        const auto& t = from.tuple(d, b);
        std::vector<Expansion> parts;
        bool empty = false;
        for (size_t i = 0; i < t.size() && !empty; ++i) {
          parts.push_back(iterate(t[i], static_cast<int>(fibre[i].size())));
          empty = parts.back().empty();
        }
        if (empty) continue;
        std::vector<size_t> pos(parts.size(), 0);
        while (true) {
          std::vector<int> out(static_cast<size_t>(alpha.source()), unit);
          std::vector<std::pair<int, int>> order;  // (target slot, degree) in source order
          Fp c(1);
          for (size_t i = 0; i < parts.size(); ++i) {
            const auto& [comp, coef] = parts[i][pos[i]];
            c *= coef;
            for (size_t r = 0; r < comp.size(); ++r) {
              out[static_cast<size_t>(fibre[i][r])] = comp[r];
              order.emplace_back(fibre[i][r], base_.degree_of(comp[r]));
            }
          }
          int parity = 0;
          for (size_t x = 0; x < order.size(); ++x)
            for (size_t y = x + 1; y < order.size(); ++y)
              if (order[x].first > order[y].first) parity ^= (order[x].second & order[y].second & 1);
          const Index r = to.index(out);
          if (r >= 0) blk(r, b) += c * sign_power(parity);
          size_t i = 0;
          while (i < parts.size() && ++pos[i] == parts[i].size()) pos[i++] = 0;
          if (i == parts.size()) break;
        }
      }
      blocks.push_back(std::move(blk));
    }
    return induced_.emplace(alpha, DGMorphism(from.module(), to.module(), 0, std::move(blocks))).first->second;
  }

  DGMorphism mu(int n, int m) const override {
    const ModulePtr src = pair(n, m);
    const TensorLayout* lay = src->tensor_layout();
    const TensorPower& a = power(n);
    const TensorPower& b = power(m);
    const TensorPower& ab = power(n + m);
    std::vector<Mat> blocks;
    for (int d = 0; d <= max_degree(); ++d) {
      Mat blk = zeros(ab.module()->dim(d), src->dim(d));
      for (Index k = 0; k < src->dim(d); ++k) {
        const auto e = lay->decode(d, k);
        std::vector<int> t = a.tuple(e.p, e.i);
        const auto& u = b.tuple(d - e.p, e.j);
        t.insert(t.end(), u.begin(), u.end());
        blk(ab.index(t), k) = Fp(1);
      }
      blocks.push_back(std::move(blk));
    }
    return DGMorphism(src, ab.module(), 0, std::move(blocks));
  }

 private:
  /// Δ^{(k)}(g) with Δ^{(0)} = ε.
  Expansion iterate(int g, int k) const {
    const int deg = base_.degree_of(g);
    const Index loc = base_.local(g);
    if (k == 0) {
      if (deg != 0) return {};
      const Fp e = c_.module->augmentation()(0, loc);
      return e.is_zero() ? Expansion{} : Expansion{{{}, e}};
    }
    if (k == 1) return {{{g}, Fp(1)}};
    Expansion out;
    for (const auto& term : c_.delta[static_cast<size_t>(deg)][static_cast<size_t>(loc)]) {
      for (auto [v, c] : iterate(term.left, k - 1)) {
        v.push_back(term.right);
        out.emplace_back(std::move(v), c * term.coefficient);
      }
    }
    return out;
  }

  void validate() const {
    const FreeDGModule& m = *c_.module;
    if (!m.augmented() || !m.coaugmentation()) throw std::invalid_argument("coalgebra fixture needs a counit and a unit");
    const TensorPower& two = power(2);
    const TensorPower& three = power(3);
    auto delta_vec = [&](int d, Index b) {
      Vec v = zero_vec(two.module()->dim(d));
      for (const auto& t : c_.delta[static_cast<size_t>(d)][static_cast<size_t>(b)]) {
        const Index r = two.index({t.left, t.right});
        if (r < 0 || two.tuple_degree({t.left, t.right}) != d) throw std::invalid_argument("coalgebra fixture: Δ is not of degree 0");
        v(r) += t.coefficient;
      }
      return v;
    };
    for (int d = 0; d <= max_degree(); ++d) {
      if (c_.delta.size() <= static_cast<size_t>(d) || static_cast<Index>(c_.delta[static_cast<size_t>(d)].size()) != m.dim(d)) {
        throw std::invalid_argument("coalgebra fixture: Δ missing in degree " + std::to_string(d));
      }
      for (Index b = 0; b < m.dim(d); ++b) {
        const int g = base_.global(d, b);
        const Vec dv = delta_vec(d, b);
        // counit on both sides
        Vec left = zero_vec(m.dim(d)), right = zero_vec(m.dim(d));
        for (const auto& t : c_.delta[static_cast<size_t>(d)][static_cast<size_t>(b)]) {
          if (base_.degree_of(t.left) == 0) left(base_.local(t.right)) += m.augmentation()(0, base_.local(t.left)) * t.coefficient;
          if (base_.degree_of(t.right) == 0) right(base_.local(t.left)) += m.augmentation()(0, base_.local(t.right)) * t.coefficient;
        }
        if (!equal(left, unit_vec(m.dim(d), b)) || !equal(right, unit_vec(m.dim(d), b))) {
          throw std::invalid_argument("coalgebra fixture: counit fails on " + m.basis_name(d, b));
        }
        // cocommutativity
        const Index tw = static_cast<Index>(symmetric_group(2).elements.size()) - 1;
        if (!equal(two.action().apply(static_cast<int>(tw), d, dv), dv)) {
          throw std::invalid_argument("coalgebra fixture: Δ is not cocommutative on " + m.basis_name(d, b));
        }
        // coassociativity
        Vec l3 = zero_vec(three.module()->dim(d)), r3 = zero_vec(three.module()->dim(d));
        for (const auto& [v, c] : iterate(g, 3)) l3(three.index(v)) += c;
        for (const auto& t : c_.delta[static_cast<size_t>(d)][static_cast<size_t>(b)]) {
          for (const auto& [v, c] : iterate(t.right, 2)) {
            r3(three.index({t.left, v[0], v[1]})) += c * t.coefficient;
          }
        }
        if (!equal(l3, r3)) throw std::invalid_argument("coalgebra fixture: Δ is not coassociative on " + m.basis_name(d, b));
        // chain map
        if (d >= 1) {
          Vec lhs = mul(two.module()->differential(d), dv);
          Vec rhs = zero_vec(two.module()->dim(d - 1));
          const Mat& del = m.differential(d);
          for (Index r = 0; r < del.rows(); ++r) {
            if (!del(r, b).is_zero()) rhs += delta_vec(d - 1, r) * del(r, b);
          }
          if (!equal(lhs, rhs)) throw std::invalid_argument("coalgebra fixture: Δ is not a chain map on " + m.basis_name(d, b));
        }
      }
    }
    const Index u = *m.coaugmentation();
    const int ug = base_.global(0, u);
    const auto& du = c_.delta[0][static_cast<size_t>(u)];
    if (du.size() != 1 || du[0].left != ug || du[0].right != ug || du[0].coefficient != Fp(1) ||
        m.augmentation()(0, u) != Fp(1)) {
      throw std::invalid_argument("coalgebra fixture: the unit must be group-like");
    }
  }

  CoalgebraFixture c_;
  TensorPower base_;
  mutable std::map<int, std::unique_ptr<TensorPower>> powers_;
  mutable std::map<PartialMap, DGMorphism> induced_;
};

class Tensor final : public LAlgebra {
 public:
  Tensor(LAlgebraPtr a, LAlgebraPtr b) : LAlgebra(std::min(a->max_degree(), b->max_degree())), a_(std::move(a)), b_(std::move(b)) {}
  std::string flavor() const override { return "tensor(" + a_->flavor() + ", " + b_->flavor() + ")"; }
  ModulePtr value(int n) const override {
    auto& slot = values_[n];
    if (!slot) slot = tensor(a_->value(n), b_->value(n), max_degree());
    return slot;
  }
  DGMorphism induced(const PartialMap& alpha) const override {
    return tensor(a_->induced(alpha), b_->induced(alpha), value(alpha.target()), value(alpha.source()));
  }
  DGMorphism mu(int n, int m) const override {
    auto it = mu_.find({n, m});
    if (it != mu_.end()) return it->second;
    const ModulePtr src = pair(n, m);
    const ModulePtr tgt = value(n + m);
    const TensorLayout* outer = src->tensor_layout();
    const TensorLayout* pn = value(n)->tensor_layout();
    const TensorLayout* pm = value(m)->tensor_layout();
    const TensorLayout* pt = tgt->tensor_layout();
    const DGMorphism ma = a_->mu(n, m), mb = b_->mu(n, m);
    const TensorLayout* la = a_->pair(n, m)->tensor_layout();
    const TensorLayout* lb = b_->pair(n, m)->tensor_layout();
    std::vector<Mat> blocks;
    for (int d = 0; d <= max_degree(); ++d) {
      Mat blk = zeros(tgt->dim(d), src->dim(d));
      for (Index k = 0; k < src->dim(d); ++k) {
        const auto e = outer->decode(d, k);
        const auto x = pn->decode(e.p, e.i);  // a ⊗ b
        const auto y = pm->decode(d - e.p, e.j);  // a' ⊗ b'
        const int pa = x.p, pb = e.p - x.p, qa = y.p, qb = d - e.p - y.p;
        const Fp s = sign_power(static_cast<long long>(pb) * qa);
        const auto ca = ma.block(pa + qa).col(la->index(pa + qa, pa, x.i, y.i));
        const auto cb = mb.block(pb + qb).col(lb->index(pb + qb, pb, x.j, y.j));
        for (Index r = 0; r < ca.size(); ++r) {
          if (ca(r).is_zero()) continue;
          for (Index c = 0; c < cb.size(); ++c) {
            if (cb(c).is_zero()) continue;
            blk(pt->index(d, pa + qa, r, c), k) += s * ca(r) * cb(c);
          }
        }
      }
      blocks.push_back(std::move(blk));
    }
    return mu_.emplace(std::make_pair(n, m), DGMorphism(src, tgt, 0, std::move(blocks))).first->second;
  }

 private:
  LAlgebraPtr a_, b_;
  mutable std::map<int, ModulePtr> values_;
  mutable std::map<std::pair<int, int>, DGMorphism> mu_;
};

class Sabotaged final : public LAlgebra {
 public:
  explicit Sabotaged(LAlgebraPtr a) : LAlgebra(a->max_degree()), a_(std::move(a)) {}
  std::string flavor() const override { return "sabotaged(" + a_->flavor() + ")"; }
  ModulePtr value(int n) const override { return a_->value(n); }
  DGMorphism induced(const PartialMap& alpha) const override { return a_->induced(alpha); }
  DGMorphism mu(int n, int m) const override {
    DGMorphism f = a_->mu(n, m);
    if (n != 1 || m != 1) return f;
    for (int d : {1, 0, 2}) {
      if (d > max_degree()) continue;
      Mat& blk = f.block(d);
      for (Index c = 0; c < blk.cols(); ++c) {
        if (is_zero(blk.col(c))) continue;
        if (Fp::prime() == 2) blk.col(c).setConstant(Fp(0));
        else blk.col(c) = -blk.col(c);
        return f;
      }
    }
    return f;
  }

 private:
  LAlgebraPtr a_;
};

}  // namespace

LAlgebraPtr make_trivial(int max_degree) { return std::make_shared<Trivial>(max_degree); }

CoalgebraFixture exterior_fixture(int max_degree) {
  FreeDGModule::Data data;
  data.dims.assign(static_cast<size_t>(max_degree) + 1, 0);
  data.dims[0] = 1;
  if (max_degree >= 1) data.dims[1] = 1;
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) data.differential[static_cast<size_t>(d)] = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
  data.augmentation = identity(1);
  data.coaugmentation = 0;
  data.names.assign(static_cast<size_t>(max_degree) + 1, {});
  data.names[0] = {"1"};
  if (max_degree >= 1) data.names[1] = {"x"};
  data.label = "E";
  CoalgebraFixture c;
  c.module = FreeDGModule::make(std::move(data));
  c.delta.assign(static_cast<size_t>(max_degree) + 1, {});
  c.delta[0] = {{{0, 0, Fp(1)}}};
  if (max_degree >= 1) c.delta[1] = {{{1, 0, Fp(1)}, {0, 1, Fp(1)}}};
  return c;
}

LAlgebraPtr make_degenerate(const CoalgebraFixture& c) { return std::make_shared<Degenerate>(c); }

LAlgebraPtr make_canonical(std::shared_ptr<const SimplicialSet> x, int max_degree) {
  return std::make_shared<Canonical>(std::move(x), max_degree);
}

const ProductChains* canonical_chains(const LAlgebra& a, int n) {
  const auto* c = dynamic_cast<const Canonical*>(&a);
  return c == nullptr ? nullptr : &c->chains(n);
}

LAlgebraPtr tensor_L(LAlgebraPtr a, LAlgebraPtr b) { return std::make_shared<Tensor>(std::move(a), std::move(b)); }

LAlgebraPtr sabotage_mu(LAlgebraPtr a) { return std::make_shared<Sabotaged>(std::move(a)); }

const AxiomResult* AxiomReport::find(const std::string& axiom) const {
  for (const auto& r : results) {
    if (r.axiom == axiom) return &r;
  }
  return nullptr;
}

namespace {

/// First column (source degree ≤ through) where two maps differ.
std::optional<std::pair<int, Index>> first_difference(const DGMorphism& f, const DGMorphism& g, int through) {
  for (int d = 0; d <= std::min(through, f.source()->max_degree()); ++d) {
    const Mat& a = f.block(d);
    const Mat& b = g.block(d);
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::make_pair(d, Index(-1));
    for (Index c = 0; c < a.cols(); ++c) {
      if (!equal(a.col(c), b.col(c))) return std::make_pair(d, c);
    }
  }
  return std::nullopt;
}

/// The symmetry T(a⊗b) = (-1)^{|a||b|} b⊗a between two tensor modules.
DGMorphism twist_map(const ModulePtr& src, const ModulePtr& tgt) {
  const TensorLayout* ls = src->tensor_layout();
  const TensorLayout* lt = tgt->tensor_layout();
  std::vector<Mat> blocks;
  for (int d = 0; d <= src->max_degree(); ++d) {
    Mat blk = zeros(tgt->dim(d), src->dim(d));
    for (Index k = 0; k < src->dim(d); ++k) {
      const auto e = ls->decode(d, k);
      blk(lt->index(d, d - e.p, e.j, e.i), k) = sign_power(static_cast<long long>(e.p) * (d - e.p));
    }
    blocks.push_back(std::move(blk));
  }
  return DGMorphism(src, tgt, 0, std::move(blocks));
}

std::string pair_name(const LAlgebra& a, int n, int m, int d, Index c) {
  if (c < 0) return "shape mismatch in degree " + std::to_string(d);
  const ModulePtr src = a.pair(n, m);
  const auto e = src->tensor_layout()->decode(d, c);
  std::ostringstream os;
  os << "μ_{" << n << "," << m << "} on " << a.value(n)->basis_name(e.p, e.i) << " ⊗ "
     << a.value(m)->basis_name(d - e.p, e.j) << " (degree " << d << ")";
  return os.str();
}

AxiomResult fresh(std::string axiom) {
  AxiomResult r;
  r.axiom = std::move(axiom);
  return r;
}

void record(AxiomResult& r, bool ok, const std::string& detail) {
  ++r.checked;
  if (!ok && r.pass) {
    r.pass = false;
    r.detail = detail;
  }
}

}  // namespace

AxiomReport check_axioms(const LAlgebra& a, int through_arity, int through_degree) {
  if (through_degree + 1 > a.max_degree()) throw std::invalid_argument("check_axioms: no headroom above the checked degree");
  AxiomReport rep;
  rep.flavor = a.flavor();
  rep.through_arity = through_arity;
  rep.through_degree = through_degree;
  const int n_max = through_arity, t = through_degree;

  AxiomResult unit = fresh("unit");
  const Vec one = unit_vec(a.value(0)->dim(0), a.unit());
  for (int n = 0; n <= n_max; ++n) {
    for (int p = 0; p <= t; ++p) {
      for (Index b = 0; b < a.value(n)->dim(p); ++b) {
        const Vec x = unit_vec(a.value(n)->dim(p), b);
        const bool ok = equal(a.multiply(0, n, 0, one, p, x), x) && equal(a.multiply(n, 0, p, x, 0, one), x);
        record(unit, ok, "unit fails on " + a.value(n)->basis_name(p, b) + " in A[" + std::to_string(n) + "]");
      }
    }
  }

  AxiomResult comm = fresh("commutativity");
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; n + m <= n_max; ++m) {
      const DGMorphism lhs = compose(a.induced(PartialMap::twist(m, n)), a.mu(n, m));
      const DGMorphism rhs = compose(a.mu(m, n), twist_map(a.pair(n, m), a.pair(m, n)));
      const auto diff = first_difference(lhs, rhs, t);
      record(comm, !diff, diff ? pair_name(a, n, m, diff->first, diff->second) : "");
    }
  }

  AxiomResult assoc = fresh("associativity");
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; n + m <= n_max; ++m) {
      for (int k = 1; n + m + k <= n_max; ++k) {
        for (int p = 0; p <= t; ++p) {
          for (int q = 0; p + q <= t; ++q) {
            for (int r = 0; p + q + r <= t; ++r) {
              for (Index i = 0; i < a.value(n)->dim(p); ++i) {
                const Vec x = unit_vec(a.value(n)->dim(p), i);
                for (Index j = 0; j < a.value(m)->dim(q); ++j) {
                  const Vec y = unit_vec(a.value(m)->dim(q), j);
                  const Vec xy = a.multiply(n, m, p, x, q, y);
                  for (Index l = 0; l < a.value(k)->dim(r); ++l) {
                    const Vec z = unit_vec(a.value(k)->dim(r), l);
                    const Vec lhs = a.multiply(n + m, k, p + q, xy, r, z);
                    const Vec rhs = a.multiply(n, m + k, p, x, q + r, a.multiply(m, k, q, y, r, z));
                    std::ostringstream os;
                    os << "(" << a.value(n)->basis_name(p, i) << " ⊗ " << a.value(m)->basis_name(q, j) << ") ⊗ "
                       << a.value(k)->basis_name(r, l);
                    record(assoc, equal(lhs, rhs), os.str());
                  }
                }
              }
            }
          }
        }
      }
    }
  }

  AxiomResult coh = fresh("coherence");
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; n + m <= n_max; ++m) {
      record(coh, is_quasi_iso(a.mu(n, m), t), "μ_{" + std::to_string(n) + "," + std::to_string(m) + "} is not a quasi-isomorphism");
    }
  }

  AxiomResult nat = fresh("naturality");
  for (const PartialMap& g : generators_up_to(n_max)) {
    const int src = g.target(), dst = g.source();  // A(g): A[src] → A[dst]
    for (int m = 0; std::max(src, dst) + m <= n_max; ++m) {
      const DGMorphism id = DGMorphism::identity(a.value(m));
      const DGMorphism left =
          compose(a.mu(dst, m), tensor(a.induced(g), id, a.pair(src, m), a.pair(dst, m)));
      const DGMorphism right = compose(a.induced(sum(g, PartialMap::identity(m))), a.mu(src, m));
      auto diff = first_difference(left, right, t);
      record(nat, !diff, "μ∘(A(" + g.to_string() + ")⊗1) on A[" + std::to_string(src) + "]⊗A[" + std::to_string(m) + "]");
      const DGMorphism left2 =
          compose(a.mu(m, dst), tensor(id, a.induced(g), a.pair(m, src), a.pair(m, dst)));
      const DGMorphism right2 = compose(a.induced(sum(PartialMap::identity(m), g)), a.mu(m, src));
      diff = first_difference(left2, right2, t);
      record(nat, !diff, "μ∘(1⊗A(" + g.to_string() + ")) on A[" + std::to_string(m) + "]⊗A[" + std::to_string(src) + "]");
    }
  }

  AxiomResult fun = fresh("functoriality");
  const auto gens = generators_up_to(n_max);
  for (const PartialMap& f : gens) {
    if (f.source() == f.target() && f.is_bijection() && f == PartialMap::identity(f.source())) {
      record(fun, !first_difference(a.induced(f), DGMorphism::identity(a.value(f.source())), t), "A(id) ≠ id");
    }
    for (const PartialMap& g : gens) {
      if (g.source() != f.target()) continue;
      const auto diff = first_difference(a.induced(compose(g, f)), compose(a.induced(f), a.induced(g)), t);
      record(fun, !diff, "A(" + g.to_string() + "∘" + f.to_string() + ") ≠ A(f)∘A(g)");
    }
  }

  rep.results = {unit, comm, assoc, coh, nat, fun};
  for (const auto& r : rep.results) rep.pass = rep.pass && r.pass;
  return rep;
}

LMorphism identity_morphism(LAlgebraPtr a) {
  LAlgebraPtr s = a;
  return {a, a, [s](int n) { return DGMorphism::identity(s->value(n)); }};
}

LMorphism collapse_to_trivial(LAlgebraPtr a, LAlgebraPtr trivial) {
  LAlgebraPtr s = a, t = trivial;
  return {a, trivial, [s, t](int n) {
            DGMorphism f(s->value(n), t->value(n), 0);
            f.block(0) = s->value(n)->augmentation();
            return f;
          }};
}

AxiomReport check_morphism(const LMorphism& f, int through_arity, int through_degree) {
  AxiomReport rep;
  rep.flavor = f.source->flavor() + " → " + f.target->flavor();
  rep.through_arity = through_arity;
  rep.through_degree = through_degree;
  const int t = through_degree;
  AxiomResult chain = fresh("chain-map"), prod = fresh("product"), nat = fresh("naturality");
  for (int n = 0; n <= through_arity; ++n) {
    record(chain, f.component(n).is_chain_map(), "component " + std::to_string(n) + " is not a chain map");
  }
  for (int n = 0; n <= through_arity; ++n) {
    for (int m = 0; n + m <= through_arity; ++m) {
      const DGMorphism lhs = compose(f.component(n + m), f.source->mu(n, m));
      const DGMorphism rhs = compose(f.target->mu(n, m), tensor(f.component(n), f.component(m), f.source->pair(n, m),
                                                                f.target->pair(n, m)));
      record(prod, !first_difference(lhs, rhs, t), "f does not preserve μ_{" + std::to_string(n) + "," + std::to_string(m) + "}");
    }
  }
  for (const PartialMap& g : generators_up_to(through_arity)) {
    const DGMorphism lhs = compose(f.component(g.source()), f.source->induced(g));
    const DGMorphism rhs = compose(f.target->induced(g), f.component(g.target()));
    record(nat, !first_difference(lhs, rhs, t), "f is not natural for " + g.to_string());
  }
  rep.results = {chain, prod, nat};
  for (const auto& r : rep.results) rep.pass = rep.pass && r.pass;
  return rep;
}

QuasiIsoResult is_quasi_iso_morphism(const LMorphism& f, int k, int through_degree, bool propagate) {
  QuasiIsoResult r;
  r.at_k = is_quasi_iso(f.component(k), through_degree);
  if (propagate) r.propagated = is_quasi_iso(f.component(2 * k), through_degree);
  return r;
}

}  // namespace einf
