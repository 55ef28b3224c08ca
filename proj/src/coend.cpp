#include "einf/coend.hpp"

#include <sstream>

namespace einf {

ModulePtr truncate_module(const ModulePtr& m, int max_degree) {
  if (max_degree > m->max_degree()) throw std::invalid_argument("truncate_module: window too large");
  if (max_degree == m->max_degree()) return m;
  FreeDGModule::Data d;
  for (int i = 0; i <= max_degree; ++i) {
    d.dims.push_back(m->dim(i));
    d.differential.push_back(i == 0 ? Mat() : m->differential(i));
    std::vector<std::string> names;
    for (Index b = 0; b < m->dim(i); ++b) names.push_back(m->basis_name(i, b));
    d.names.push_back(std::move(names));
  }
  if (m->augmented()) d.augmentation = m->augmentation();
  d.coaugmentation = m->coaugmentation();
  if (const Symmetry* s = m->symmetry()) {
    Symmetry t = *s;
    t.orbits.resize(static_cast<size_t>(max_degree) + 1);
    t.orbit_of.resize(static_cast<size_t>(max_degree) + 1);
    t.perm_of.resize(static_cast<size_t>(max_degree) + 1);
    t.element.resize(static_cast<size_t>(max_degree) + 1);
    d.symmetry = std::move(t);
  }
  d.label = m->label();
  return std::make_shared<const FreeDGModule>(std::move(d), false);
}

TensorPower::TensorPower(ModulePtr a, int r, int max_degree) : a_(std::move(a)), r_(r) {
  if (max_degree > a_->max_degree()) throw std::invalid_argument("TensorPower: window exceeds the base window");
  Index total = 0;
  for (int d = 0; d <= a_->max_degree(); ++d) {
    offset_.push_back(total);
    for (Index i = 0; i < a_->dim(d); ++i) deg_.push_back(d);
    total += a_->dim(d);
  }
  tuples_.resize(static_cast<size_t>(max_degree) + 1);
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int budget) {
    if (static_cast<int>(cur.size()) == r_) {
      const int d = max_degree - budget;
      index_[cur] = static_cast<Index>(tuples_[static_cast<size_t>(d)].size());
      tuples_[static_cast<size_t>(d)].push_back(cur);
      return;
    }
    for (int g = 0; g < static_cast<int>(deg_.size()); ++g) {
      if (deg_[static_cast<size_t>(g)] > budget) break;
      cur.push_back(g);
      rec(budget - deg_[static_cast<size_t>(g)]);
      cur.pop_back();
    }
  };
  rec(max_degree);

  FreeDGModule::Data data;
  for (int d = 0; d <= max_degree; ++d) data.dims.push_back(static_cast<Index>(tuples_[static_cast<size_t>(d)].size()));
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    Mat del = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
    for (Index k = 0; k < data.dims[static_cast<size_t>(d)]; ++k) {
      const auto& t = tuples_[static_cast<size_t>(d)][static_cast<size_t>(k)];
      int before = 0;
      for (int i = 0; i < r_; ++i) {
        const int g = t[static_cast<size_t>(i)];
        const int e = deg_[static_cast<size_t>(g)];
        if (e >= 1) {
          const Mat& da = a_->differential(e);
          const Index col = local(g);
          for (Index row = 0; row < da.rows(); ++row) {
            if (da(row, col).is_zero()) continue;
            std::vector<int> u = t;
            u[static_cast<size_t>(i)] = global(e - 1, row);
            del(index_.at(u), k) += sign_power(before) * da(row, col);
          }
        }
        before += e;
      }
    }
    data.differential[static_cast<size_t>(d)] = std::move(del);
  }
  if (a_->augmented()) {
    Mat eps = zeros(1, data.dims[0]);
    for (Index k = 0; k < data.dims[0]; ++k) {
      Fp v(1);
      for (int g : tuples_[0][static_cast<size_t>(k)]) v *= a_->augmentation()(0, local(g));
      eps(0, k) = v;
    }
    data.augmentation = std::move(eps);
  }
  if (a_->coaugmentation()) {
    data.coaugmentation = index_.at(std::vector<int>(static_cast<size_t>(r_), global(0, *a_->coaugmentation())));
  }
  data.names.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    for (const auto& t : tuples_[static_cast<size_t>(d)]) {
      std::string s;
      for (size_t i = 0; i < t.size(); ++i) s += (i ? "⊗" : "") + a_->basis_name(deg_[static_cast<size_t>(t[i])], local(t[i]));
      data.names[static_cast<size_t>(d)].push_back(t.empty() ? "1" : s);
    }
  }
  data.label = a_->label() + "^⊗" + std::to_string(r_);
  m_ = std::make_shared<const FreeDGModule>(std::move(data), false);
}

Index TensorPower::index(const std::vector<int>& tuple) const {
  auto it = index_.find(tuple);
  return it == index_.end() ? -1 : it->second;
}

int TensorPower::tuple_degree(const std::vector<int>& tuple) const {
  int d = 0;
  for (int g : tuple) d += deg_[static_cast<size_t>(g)];
  return d;
}

const BasisAction& TensorPower::action() const {
  if (!action_) {
    const SymmetricGroup& grp = symmetric_group(r_);
    std::vector<std::vector<std::vector<Index>>> im(static_cast<size_t>(grp.order));
    std::vector<std::vector<std::vector<Fp>>> sg(static_cast<size_t>(grp.order));
    for (int s = 0; s < grp.order; ++s) {
      const Permutation& sigma = grp.elements[static_cast<size_t>(s)];
      for (int d = 0; d <= max_degree(); ++d) {
        std::vector<Index> row;
        std::vector<Fp> sr;
        for (const auto& t : tuples_[static_cast<size_t>(d)]) {
          std::vector<int> u(t.size());
          for (int i = 0; i < r_; ++i) u[static_cast<size_t>(i)] = t[static_cast<size_t>(sigma(i))];
          int parity = 0;
          for (int i = 0; i < r_; ++i) {
            for (int j = i + 1; j < r_; ++j) {
              if (sigma(i) > sigma(j)) parity ^= (degree_of(u[static_cast<size_t>(i)]) & degree_of(u[static_cast<size_t>(j)]) & 1);
            }
          }
          row.push_back(index_.at(u));
          sr.push_back(parity ? Fp(-1) : Fp(1));
        }
        im[static_cast<size_t>(s)].push_back(std::move(row));
        sg[static_cast<size_t>(s)].push_back(std::move(sr));
      }
    }
    action_ = std::make_unique<BasisAction>(r_, std::move(im), std::move(sg));
  }
  return *action_;
}

CoendContext::CoendContext(ModulePtr a, int max_degree) : a_(std::move(a)), d_(max_degree) {
  if (max_degree > a_->max_degree()) throw std::invalid_argument("CoendContext: window exceeds the module window");
  if (max_degree < a_->max_degree()) a_ = truncate_module(a_, max_degree);
}

const TensorPower& CoendContext::power(int r) const {
  auto& slot = powers_[r];
  if (!slot) slot = std::make_unique<TensorPower>(a_, r, d_);
  return *slot;
}

CoendElement CoendContext::unit() const {
  const TensorPower& t = power(1);
  std::vector<Mat> b;
  for (int d = 0; d <= d_; ++d) b.push_back(identity(a_->dim(d)));
  return {1, DGMorphism(a_, t.module(), 0, std::move(b))};
}

CoendElement CoendContext::zero(int arity, int degree) const {
  return {arity, DGMorphism(a_, power(arity).module(), degree)};
}

CoendElement CoendContext::differential(const CoendElement& f) const {
  const int g = f.degree();
  const ModulePtr& tgt = power(f.arity).module();
  std::vector<Mat> b;
  for (int d = 0; d <= d_; ++d) {
    Mat m = zeros(tgt->dim(d + g - 1), a_->dim(d));
    if (d + g <= d_ && d + g >= 1) m += mul(tgt->differential(d + g), f.map.block(d));
    if (d >= 1) m -= mul(f.map.block(d - 1), a_->differential(d)) * sign_power(g);
    b.push_back(std::move(m));
  }
  return {f.arity, DGMorphism(a_, tgt, g - 1, std::move(b))};
}

CoendElement CoendContext::act(const CoendElement& f, const Permutation& sigma) const {
  if (sigma.is_identity()) return f;
  const BasisAction& act = power(f.arity).action();
  const int s = sigma.index();
  CoendElement r = f;
  for (int d = 0; d <= d_; ++d) {
    const int t = d + f.degree();
    if (t < 0 || t > d_) continue;
    Mat& blk = r.map.block(d);
    for (Index c = 0; c < blk.cols(); ++c) blk.col(c) = act.apply(s, t, Vec(f.map.block(d).col(c)));
  }
  return r;
}

Vec CoendContext::apply_tensor(const std::vector<const CoendElement*>& g, int d, const Vec& v) const {
  const int r = static_cast<int>(g.size());
  const TensorPower& src = power(r);
  int out_arity = 0, shift = 0;
  for (const auto* x : g) {
    out_arity += x->arity;
    shift += x->degree();
  }
  const TensorPower& dst = power(out_arity);
  Vec out = zero_vec(dst.module()->dim(d + shift));
  if (d + shift < 0 || d + shift > d_) return out;
  std::vector<std::vector<std::pair<std::vector<int>, Fp>>> parts(static_cast<size_t>(r));
  for (Index k = 0; k < v.size(); ++k) {
    if (v(k).is_zero()) continue;
    const auto& t = src.tuple(d, k);
    bool empty = false;
    int parity = 0, seen = 0;
    for (int i = 0; i < r && !empty; ++i) {
      const int gi = t[static_cast<size_t>(i)];
      const int e = src.degree_of(gi);
      const CoendElement& gmap = *g[static_cast<size_t>(i)];
      parity ^= (gmap.degree() & seen & 1);
      seen += e;
      auto& list = parts[static_cast<size_t>(i)];
      list.clear();
      const int te = e + gmap.degree();
      if (te < 0 || te > d_) {
        empty = true;
        break;
      }
      const TensorPower& tp = power(gmap.arity);
      const Mat& blk = gmap.map.block(e);
      for (Index row = 0; row < blk.rows(); ++row) {
        const Fp c = blk(row, src.local(gi));
        if (!c.is_zero()) list.emplace_back(tp.tuple(te, row), c);
      }
      if (list.empty()) empty = true;
    }
    if (empty) continue;
    const Fp base = (parity ? Fp(-1) : Fp(1)) * v(k);
    std::vector<size_t> pos(static_cast<size_t>(r), 0);
    while (true) {
      std::vector<int> cat;
      Fp c = base;
      for (int i = 0; i < r; ++i) {
        const auto& [tup, val] = parts[static_cast<size_t>(i)][pos[static_cast<size_t>(i)]];
        cat.insert(cat.end(), tup.begin(), tup.end());
        c *= val;
      }
      const Index idx = dst.index(cat);
      if (idx >= 0) out(idx) += c;
      int i = 0;
      while (i < r && ++pos[static_cast<size_t>(i)] == parts[static_cast<size_t>(i)].size()) pos[static_cast<size_t>(i++)] = 0;
      if (i == r) break;
    }
  }
  return out;
}

CoendElement CoendContext::gamma(const CoendElement& f, const std::vector<CoendElement>& g) const {
  if (static_cast<int>(g.size()) != f.arity) throw std::invalid_argument("Coend gamma: need one input per output of f");
  int arity = 0, gsum = 0;
  std::vector<const CoendElement*> ptrs;
  for (const auto& x : g) {
    arity += x.arity;
    gsum += x.degree();
    ptrs.push_back(&x);
  }
  const int deg = f.degree() + gsum;
  const Fp sign = sign_power(static_cast<long long>(f.degree()) * gsum);
  CoendElement r = zero(arity, deg);
  for (int d = 0; d <= d_; ++d) {
    const int mid = d + f.degree();
    if (mid < 0 || mid > d_ || d + deg > d_ || d + deg < 0) continue;
    Mat& blk = r.map.block(d);
    for (Index c = 0; c < a_->dim(d); ++c) {
      const Vec w = f.map.block(d).col(c);
      if (is_zero(w)) continue;
      blk.col(c) = apply_tensor(ptrs, mid, w) * sign;
    }
  }
  return r;
}

bool CoendContext::equal(const CoendElement& a, const CoendElement& b) const {
  if (a.arity != b.arity || a.degree() != b.degree()) return false;
  for (int d = 0; d <= d_; ++d) {
    if (d + a.degree() + 1 > d_) continue;
    if (!einf::equal(a.map.block(d), b.map.block(d))) return false;
  }
  return true;
}

MorphismEvaluator::MorphismEvaluator(const QuasiFreeOperad& p, const CoendContext& ctx, const Assignment& a)
    : p_(p), ctx_(ctx), a_(a) {}

const CoendElement& MorphismEvaluator::planar(const std::vector<int>& nodes, size_t& pos) const {
  const size_t start = pos;
  const int g = nodes.at(pos++);
  if (g == TreeMonomial::kLeaf) {
    std::vector<int> key{TreeMonomial::kLeaf};
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, ctx_.unit()).first;
    return it->second;
  }
  const GeneratorDecl& decl = p_.generator(g);
  if (static_cast<size_t>(g) >= a_.size() || !a_[static_cast<size_t>(g)]) {
    throw AssignmentError("generator " + decl.name + " has no assigned image");
  }
  std::vector<CoendElement> kids;
  for (int c = 0; c < decl.arity; ++c) kids.push_back(planar(nodes, pos));
  std::vector<int> key(nodes.begin() + static_cast<std::ptrdiff_t>(start), nodes.begin() + static_cast<std::ptrdiff_t>(pos));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(key, ctx_.gamma(*a_[static_cast<size_t>(g)], kids)).first->second;
}

CoendElement MorphismEvaluator::evaluate(const TreeMonomial& t) const {
  size_t pos = 0;
  const CoendElement& e = planar(t.nodes, pos);
  return ctx_.act(e, leaf_permutation(t));
}

CoendElement MorphismEvaluator::evaluate(const OperadElement& x) const {
  CoendElement r = ctx_.zero(x.arity(), x.degree());
  for (const auto& [t, c] : x.terms()) r.map += evaluate(t).map.scaled(c);
  return r;
}

void MorphismEvaluator::check_boundaries() const {
  for (const GeneratorDecl& g : p_.generators()) {
    if (static_cast<size_t>(g.id) >= a_.size() || !a_[static_cast<size_t>(g.id)]) continue;
    const CoendElement& img = *a_[static_cast<size_t>(g.id)];
    if (img.arity != g.arity || img.degree() != g.degree) {
      throw AssignmentError("image of generator " + g.name + " has the wrong arity or degree");
    }
    const CoendElement lhs = ctx_.differential(img);
    const CoendElement rhs = g.boundary.is_zero() ? ctx_.zero(g.arity, g.degree - 1) : evaluate(g.boundary);
    for (int d = 0; d <= ctx_.max_degree(); ++d) {
      if (d + g.degree > ctx_.max_degree()) continue;
      if (!einf::equal(lhs.map.block(d), rhs.map.block(d))) {
        std::ostringstream os;
        os << "image of generator " << g.name << " does not commute with the differential at source degree " << d;
        throw AssignmentError(os.str());
      }
    }
  }
}

CoendElement evaluate_morphism(const QuasiFreeOperad& p, const CoendContext& ctx, const Assignment& a,
                               const OperadElement& x) {
  MorphismEvaluator ev(p, ctx, a);
  ev.check_boundaries();
  return ev.evaluate(x);
}

}  // namespace einf
