#include "einf/coalgebra.hpp"

#include <sstream>

namespace einf {

namespace {

bool is_corolla(const TreeMonomial& t) {
  return t.nodes.size() == t.labels.size() + 1 && t.nodes[0] != TreeMonomial::kLeaf;
}

TreeMonomial corolla_tree(int id, int arity) {
  TreeMonomial t;
  t.nodes.push_back(id);
  for (int i = 0; i < arity; ++i) {
    t.nodes.push_back(TreeMonomial::kLeaf);
    t.labels.push_back(i);
  }
  return t;
}

Index nonzeros(const Mat& m) {
  Index n = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) n += m(i, j).is_zero() ? 0 : 1;
  return n;
}

const LAlgebraPtr& checked(const LAlgebraPtr& a, int through_degree) {
  if (!a) throw std::invalid_argument("coalgebra: no L-algebra");
  if (through_degree < 1) throw std::invalid_argument("coalgebra: degree window must be at least 1");
  if (a->max_degree() < through_degree + 1) {
    throw std::invalid_argument("coalgebra: the L-algebra window must exceed the structure window by one");
  }
  return a;
}

}  // namespace

OperadTensor::OperadTensor(const OperadComponent& k, ModulePtr a, int max_degree, const std::function<bool(int, int)>& keep)
    : order_(static_cast<int>(factorial(k.arity()))), a_(std::move(a)) {
  if (max_degree > k.max_degree() || max_degree > a_->max_degree()) {
    throw std::invalid_argument("OperadTensor: window exceeds a factor");
  }
  cells_.resize(static_cast<size_t>(max_degree) + 1);
  FreeDGModule::Data data;
  std::vector<int> orbits;
  for (int t = 0; t <= max_degree; ++t) {
    auto& cs = cells_[static_cast<size_t>(t)];
    for (int p = 0; p <= t; ++p) {
      const auto& reps = k.representatives(p);
      for (int r = 0; r < static_cast<int>(reps.size()); ++r) {
        if (!keep(p, r)) continue;
        for (Index c = 0; c < a_->dim(t - p); ++c) {
          cell_index_[{t, p, r, c}] = static_cast<Index>(cs.size());
          cs.push_back({p, r, c});
        }
      }
    }
    orbits.push_back(static_cast<int>(cs.size()));
    data.dims.push_back(static_cast<Index>(cs.size()) * order_);
  }
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int t = 1; t <= max_degree; ++t) {
    Mat del = zeros(data.dims[static_cast<size_t>(t) - 1], data.dims[static_cast<size_t>(t)]);
    for (Index b = 0; b < data.dims[static_cast<size_t>(t)]; ++b) {
      const Entry e = decode(t, b);
      if (e.p >= 1) {
        const Mat& dk = k.module()->differential(e.p);
        for (Index r = 0; r < dk.rows(); ++r) {
          if (dk(r, e.k).is_zero()) continue;
          const Index row = index(t - 1, e.p - 1, r, e.c);
          if (row < 0) throw std::logic_error("OperadTensor: kept orbits are not a subcomplex");
          del(row, b) += dk(r, e.k);
        }
      }
      if (t - e.p >= 1) {
        const Mat& da = a_->differential(t - e.p);
        const Fp s = sign_power(e.p);
        for (Index r = 0; r < da.rows(); ++r) {
          if (!da(r, e.c).is_zero()) del(index(t - 1, e.p, e.k, r), b) += s * da(r, e.c);
        }
      }
    }
    data.differential[static_cast<size_t>(t)] = std::move(del);
  }
  data.symmetry = Symmetry::orbit_major(k.arity(), orbits);
  data.names.resize(static_cast<size_t>(max_degree) + 1);
  for (int t = 0; t <= max_degree; ++t) {
    for (Index b = 0; b < data.dims[static_cast<size_t>(t)]; ++b) {
      const Entry e = decode(t, b);
      data.names[static_cast<size_t>(t)].push_back(k.module()->basis_name(e.p, e.k) + "⊗" + a_->basis_name(t - e.p, e.c));
    }
  }
  data.label = k.module()->label() + "⊗" + a_->label();
  module_ = FreeDGModule::make(std::move(data));
}

OperadTensor::Entry OperadTensor::decode(int t, Index b) const {
  const Cell& c = cells_[static_cast<size_t>(t)][static_cast<size_t>(b / order_)];
  return {c.p, static_cast<Index>(c.rep) * order_ + b % order_, c.c};
}

Index OperadTensor::index(int t, int p, Index k, Index c) const {
  auto it = cell_index_.find({t, p, static_cast<int>(k / order_), c});
  return it == cell_index_.end() ? -1 : it->second * order_ + k % order_;
}

CoalgebraStructure::CoalgebraStructure(QuasiFreeOperad k, LAlgebraPtr a, int through_degree)
    : k_(std::move(k)), a_(checked(a, through_degree)), t_(through_degree), ctx_(a_->value(1), through_degree) {
  if (through_degree > k_.max_degree()) throw std::invalid_argument("coalgebra: window exceeds the operad window");
  assign_.resize(k_.generators().size());
}

Vec CoalgebraStructure::to_m(const ArityStage& s, int t, const Vec& v) const {
  const TensorPower& pw = ctx_.power(s.arity);
  Vec out = zero_vec(s.m->module()->dim(t));
  for (Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) out(s.m->index(pw.tuple(t, i))) += v(i);
  }
  return out;
}

Vec CoalgebraStructure::from_m(const ArityStage& s, int t, const Vec& v) const {
  const TensorPower& pw = ctx_.power(s.arity);
  Vec out = zero_vec(pw.module()->dim(t));
  for (Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) out(pw.index(s.m->tuple(t, i))) += v(i);
  }
  return out;
}

ArityStage& CoalgebraStructure::prepare(int j) {
  auto& slot = stages_[j];
  if (slot) return *slot;
  if (j < 2 || j > k_.max_arity()) throw std::invalid_argument("coalgebra: arity outside the operad window");
  auto s = std::make_unique<ArityStage>();
  s->arity = j;
  s->component = std::make_unique<OperadComponent>(k_, j, t_);
  const OperadComponent& kc = *s->component;
  s->l = std::make_unique<OperadTensor>(kc, ctx_.base(), t_, [](int, int) { return true; });
  s->decomposable = std::make_unique<OperadTensor>(
      kc, ctx_.base(), t_, [&kc](int p, int r) { return !is_corolla(kc.representatives(p)[static_cast<size_t>(r)]); });
  s->m = std::make_unique<TensorPower>(a_->value(1), j, t_ + 1);

  const ModulePtr& n = a_->value(j);
  std::vector<std::vector<Mat>> mats;
  for (const Permutation& g : symmetric_group(j).elements) {
    const DGMorphism act = a_->induced(PartialMap(j, g.images()));
    std::vector<Mat> per;
    for (int d = 0; d <= n->max_degree(); ++d) per.push_back(act.block(d));
    mats.push_back(std::move(per));
  }
  s->n_action = BasisAction::from_matrices(j, mats);

  const ModulePtr& m = s->m->module();
  const ModulePtr& a1 = a_->value(1);
  std::vector<Mat> blocks;
  for (int d = 0; d <= m->max_degree(); ++d) {
    Mat blk = zeros(n->dim(d), m->dim(d));
    for (Index b = 0; b < m->dim(d); ++b) {
      const auto& t = s->m->tuple(d, b);
      int deg = s->m->degree_of(t[0]);
      Vec v = unit_vec(a1->dim(deg), s->m->local(t[0]));
      for (int k = 1; k < j; ++k) {
        const int e = s->m->degree_of(t[static_cast<size_t>(k)]);
        v = a_->multiply(k, 1, deg, v, e, unit_vec(a1->dim(e), s->m->local(t[static_cast<size_t>(k)])));
        deg += e;
      }
      blk.col(b) = v;
    }
    blocks.push_back(std::move(blk));
  }
  s->mu = DGMorphism(m, n, 0, std::move(blocks));

  // μ must intertwine the Koszul action on A[1]^{⊗j} with A(σ) on A[j].
  const BasisAction& ma = s->m->action();
  for (int g = 1; g < static_cast<int>(factorial(j)); ++g) {
    for (int d = 0; d <= m->max_degree(); ++d) {
      for (Index b = 0; b < m->dim(d); ++b) {
        const Vec lhs = s->mu.block(d).col(ma.image(g, d, b)) * ma.sign(g, d, b);
        if (!equal(lhs, s->n_action.apply(g, d, Vec(s->mu.block(d).col(b))))) {
          throw CoalgebraError("coalgebra: the iterated product is not Σ-equivariant at arity " + std::to_string(j) +
                               " on " + m->basis_name(d, b));
        }
      }
    }
  }
  s->psi = psi_on(*s, *s->l);
  slot = std::move(s);
  return *slot;
}

DGMorphism CoalgebraStructure::psi_on(const ArityStage& s, const OperadTensor& l) const {
  const DGMorphism diag = a_->induced(PartialMap::collapse(s.arity));
  const ModulePtr& src = l.module();
  const Mat& eps = s.component->module()->augmentation();
  std::vector<Mat> blocks;
  for (int t = 0; t <= src->max_degree(); ++t) {
    Mat blk = zeros(diag.target()->dim(t), src->dim(t));
    for (Index b = 0; b < src->dim(t); ++b) {
      const auto e = l.decode(t, b);
      if (e.p != 0 || eps(0, e.k).is_zero()) continue;
      blk.col(b) = diag.block(t).col(e.c) * eps(0, e.k);
    }
    blocks.push_back(std::move(blk));
  }
  return DGMorphism(src, diag.target(), 0, std::move(blocks));
}

DGMorphism CoalgebraStructure::phi_on(const ArityStage& s, const OperadTensor& l) const {
  MorphismEvaluator ev(k_, ctx_, assign_);
  const ModulePtr& src = l.module();
  const ModulePtr& m = s.m->module();
  std::map<std::pair<int, Index>, CoendElement> cache;
  std::vector<Mat> blocks;
  for (int t = 0; t <= src->max_degree(); ++t) {
    Mat blk = zeros(m->dim(t), src->dim(t));
    for (Index b = 0; b < src->dim(t); ++b) {
      const auto e = l.decode(t, b);
      auto it = cache.find({e.p, e.k});
      if (it == cache.end()) it = cache.emplace(std::make_pair(e.p, e.k), ev.evaluate(s.component->monomial(e.p, e.k))).first;
      blk.col(b) = to_m(s, t, Vec(it->second.map.block(t - e.p).col(e.c)));
    }
    blocks.push_back(std::move(blk));
  }
  return DGMorphism(src, m, 0, std::move(blocks));
}

DGMorphism CoalgebraStructure::assemble_phi(const ArityStage& s) const { return phi_on(s, *s.l); }

void CoalgebraStructure::lift_arity(int j) {
  ArityStage& s = prepare(j);
  const OperadTensor& l = *s.l;
  const OperadTensor& lp = *s.decomposable;
  const ModulePtr& n = a_->value(j);
  const std::string where = "coalgebra, arity " + std::to_string(j) + ": ";

  DGMorphism phip = phi_on(s, lp);
  DGMorphism hp(lp.module(), n, 1);
  try {
    hp = null_homotopy(psi_on(s, lp) - compose(s.mu, phip), Equivariance{&s.n_action});
  } catch (const LiftError& e) {
    throw CoalgebraError(where + "no witness on decomposables: " + e.what());
  }

  BasisPartition part = BasisPartition::none(*l.module());
  DGMorphism af(l.module(), s.m->module(), 0);
  DGMorphism hf(l.module(), n, 1);
  for (int t = 0; t <= t_; ++t) {
    for (Index bp = 0; bp < lp.module()->dim(t); ++bp) {
      const auto e = lp.decode(t, bp);
      const Index b = l.index(t, e.p, e.k, e.c);
      part.fixed[static_cast<size_t>(t)][static_cast<size_t>(b)] = 1;
      af.block(t).col(b) = phip.block(t).col(bp);
      hf.block(t).col(b) = hp.block(t).col(bp);
    }
  }
  LiftResult r;
  try {
    r = equivariant_relative_lift(s.mu, s.psi, part, af, hf, EquivariantLiftData{&s.m->action(), &s.n_action});
  } catch (const LiftError& e) {
    throw CoalgebraError(where + e.what());
  }
  s.phi = r.alpha;
  s.witness = -r.homotopy.map;

  const TensorPower& pw = ctx_.power(j);
  const ModulePtr& a1 = ctx_.base();
  for (const GeneratorDecl& g : k_.generators()) {
    if (g.arity != j) continue;
    std::optional<Index> kb;
    if (g.degree <= t_) kb = s.component->index_of(corolla_tree(g.id, j), g.degree);
    std::vector<Mat> blocks;
    for (int q = 0; q <= t_; ++q) {
      const int t = q + g.degree;
      Mat blk = zeros(pw.module()->dim(t), a1->dim(q));
      if (kb && t <= t_) {
        for (Index c = 0; c < a1->dim(q); ++c) blk.col(c) = from_m(s, t, Vec(s.phi.block(t).col(l.index(t, g.degree, *kb, c))));
      }
      blocks.push_back(std::move(blk));
    }
    assign_[static_cast<size_t>(g.id)] = CoendElement{j, DGMorphism(a1, pw.module(), g.degree, std::move(blocks))};
  }
  try {
    MorphismEvaluator(k_, ctx_, assign_).check_boundaries();
  } catch (const AssignmentError& e) {
    throw CoalgebraError(where + e.what());
  }
  built_ = std::max(built_, j);
}

void CoalgebraStructure::build_phi2() {
  if (built_ != 1) throw std::logic_error("build_phi2: already built");
  lift_arity(2);
}

void CoalgebraStructure::extend_phi(int n) {
  if (built_ != n) throw std::logic_error("extend_phi: structure is built through arity " + std::to_string(built_));
  lift_arity(n + 1);
}

std::unique_ptr<CoalgebraStructure> CoalgebraStructure::build(const QuasiFreeOperad& k, LAlgebraPtr a, int through_degree) {
  auto s = std::make_unique<CoalgebraStructure>(k, std::move(a), through_degree);
  s->build_phi2();
  for (int n = 2; n < k.max_arity(); ++n) s->extend_phi(n);
  return s;
}

void CoalgebraStructure::install(int j, const std::vector<std::pair<int, CoendElement>>& phis, const DGMorphism& witness) {
  ArityStage& s = prepare(j);
  for (const auto& [id, f] : phis) assign_.at(static_cast<size_t>(id)) = f;
  s.witness = witness;
  s.phi = assemble_phi(s);
  built_ = std::max(built_, j);
}

CoendElement CoalgebraStructure::evaluate_phi(const OperadElement& x) const {
  return MorphismEvaluator(k_, ctx_, assign_).evaluate(x);
}

Vec CoalgebraStructure::evaluate_phi(const OperadElement& x, int q, const Vec& c) const {
  return mul(evaluate_phi(x).map.block(q), c);
}

StructureReport verify_structure(const CoalgebraStructure& s) {
  StructureReport rep;
  rep.through_arity = s.built_arity();
  rep.through_degree = s.through_degree();
  std::string boundary_error;
  try {
    MorphismEvaluator(s.operad(), s.context(), s.assignment()).check_boundaries();
  } catch (const AssignmentError& e) {
    boundary_error = e.what();
  }
  const int top = s.through_degree();
  for (int j = 2; j <= s.built_arity(); ++j) {
    const ArityStage& st = s.stage(j);
    ArityCheck c;
    c.arity = j;
    for (const GeneratorDecl& g : s.operad().generators()) c.generators += g.arity == j && g.degree <= top ? 1 : 0;
    const FreeDGModule& l = *st.l->module();
    const FreeDGModule& m = *st.m->module();
    for (int t = 0; t <= top; ++t) c.basis += l.dim(t);
    c.boundaries = boundary_error.empty();
    if (!c.boundaries) c.detail = boundary_error;

    const DGMorphism phi = s.assemble_phi(st);
    for (int t = 1; t <= top; ++t) {
      const Mat r = mul(m.differential(t), phi.block(t)) - mul(phi.block(t - 1), l.differential(t));
      c.chain_residual += nonzeros(r);
    }
    const DGMorphism lhs = compose(st.mu, phi) - st.psi;
    const DGMorphism rhs = homotopy_boundary(st.witness, 0);
    for (int t = 0; t <= top; ++t) {
      const Index r = nonzeros(lhs.block(t) - rhs.block(t));
      if (r != 0 && c.witness_residual == 0 && c.detail.empty()) {
        c.detail = "witness equation fails at total degree " + std::to_string(t);
      }
      c.witness_residual += r;
    }
    const Symmetry* sym = l.symmetry();
    const BasisAction& ma = st.m->action();
    for (int t = 0; t <= top; ++t) {
      for (Index b = 0; b < l.dim(t); ++b) {
        if (sym->perm_of[static_cast<size_t>(t)][static_cast<size_t>(b)] != 0) continue;
        for (int g = 1; g < sym->group_order(); ++g) {
          const Index bg = sym->act(t, static_cast<int>(b), g);
          bool ok = equal(Vec(phi.block(t).col(bg)), ma.apply(g, t, Vec(phi.block(t).col(b))));
          if (t + 1 <= st.n_action.max_degree()) {
            ok = ok && equal(Vec(st.witness.block(t).col(bg)), st.n_action.apply(g, t + 1, Vec(st.witness.block(t).col(b))));
          }
          if (!ok) {
            if (c.equivariance_residual == 0 && c.detail.empty()) c.detail = "not equivariant on " + l.basis_name(t, bg);
            ++c.equivariance_residual;
          }
        }
      }
    }
    c.pass = c.boundaries && c.chain_residual == 0 && c.witness_residual == 0 && c.equivariance_residual == 0;
    rep.pass = rep.pass && c.pass;
    rep.arities.push_back(std::move(c));
  }
  return rep;
}

Vec cup_i(const CoalgebraStructure& s, int i, int p, const Vec& u, int q, const Vec& v) {
  const auto id = s.operad().find("e" + std::to_string(i));
  if (!id) throw std::invalid_argument("cup_i: the operad has no generator e" + std::to_string(i));
  const int d = p + q - i;
  if (d < 0 || p + q > s.through_degree()) throw std::invalid_argument("cup_i: degrees outside the structure window");
  const auto& f = s.assignment().at(static_cast<size_t>(*id));
  if (!f) throw std::invalid_argument("cup_i: e" + std::to_string(i) + " has no structure map");
  const TensorPower& pw = s.context().power(2);
  const ModulePtr& a1 = s.context().base();
  if (u.size() != a1->dim(p) || v.size() != a1->dim(q)) throw std::invalid_argument("cup_i: cochain size mismatch");
  const Mat& blk = f->map.block(d);
  const Fp sign = sign_power(static_cast<long long>(p) * q);
  Vec out = zero_vec(a1->dim(d));
  for (Index c = 0; c < blk.cols(); ++c) {
    for (Index r = 0; r < blk.rows(); ++r) {
      if (blk(r, c).is_zero()) continue;
      const auto& t = pw.tuple(p + q, r);
      if (pw.degree_of(t[0]) != p) continue;
      out(c) += blk(r, c) * sign * u(pw.local(t[0])) * v(pw.local(t[1]));
    }
  }
  return out;
}

Vec coboundary(const FreeDGModule& a, int p, const Vec& u) {
  return mul(Mat(a.differential(p + 1).transpose()), u);
}

Vec cup1_coboundary_defect(const CoalgebraStructure& s, int p, const Vec& u, int q, const Vec& v) {
  if (p < 0 || q < 0 || p + q < 1 || p + q + 1 > s.through_degree())
    throw std::invalid_argument("cup1_coboundary_defect: need 1 ≤ p + q < through degree");
  const FreeDGModule& a = *s.context().base();
  Vec out = coboundary(a, p + q - 1, cup_i(s, 1, p, u, q, v));
  out -= cup_i(s, 0, p, u, q, v);
  out += sign_power(static_cast<long long>(p) * q) * cup_i(s, 0, q, v, p, u);
  out += sign_power(q) * cup_i(s, 1, p + 1, coboundary(a, p, u), q, v);
  out += cup_i(s, 1, p, u, q + 1, coboundary(a, q, v));
  return out;
}

Cohomology::Cohomology(ModulePtr a, int n) : a_(std::move(a)), n_(n) {
  const int w = a_->max_degree();
  if (n < 0 || n >= w) throw std::invalid_argument("Cohomology: degree outside the window");
  FreeDGModule::Data data;
  for (int i = 0; i <= w; ++i) data.dims.push_back(a_->dim(w - i));
  data.differential.resize(static_cast<size_t>(w) + 1);
  for (int i = 1; i <= w; ++i) data.differential[static_cast<size_t>(i)] = a_->differential(w - i + 1).transpose();
  data.label = "dual " + a_->label();
  dual_ = FreeDGModule::make(std::move(data));
  classes_ = std::make_unique<HomologyClasses>(*dual_, w - n);
}

bool Cohomology::is_cocycle(const Vec& u) const {
  return u.size() == a_->dim(n_) && is_zero(mul(Mat(a_->differential(n_ + 1).transpose()), u));
}

Vec Cohomology::classify(const Vec& cocycle) const { return classes_->classify(cocycle); }

Vec steenrod_square(const CoalgebraStructure& s, int k, int n, const Vec& u) {
  if (Fp::prime() != 2) throw std::invalid_argument("steenrod_square: characteristic must be 2");
  if (k < 0 || k > n) throw std::invalid_argument("steenrod_square: need 0 ≤ k ≤ deg u");
  if (!Cohomology(s.algebra()->value(1), n).is_cocycle(u)) throw std::invalid_argument("steenrod_square: u is not a cocycle");
  return cup_i(s, n - k, n, u, n, u);
}

FunctorialityReport functoriality_check(const CoalgebraStructure& a, const CoalgebraStructure& b, const LMorphism& f) {
  FunctorialityReport rep;
  const int top = std::min(a.built_arity(), b.built_arity());
  const int tmax = std::min(a.through_degree(), b.through_degree());
  const DGMorphism f1 = f.component(1);
  for (int j = 2; j <= top; ++j) {
    const ArityStage& sa = a.stage(j);
    const ArityStage& sb = b.stage(j);
    for (int t = 0; t < tmax; ++t) {
      FunctorialityEntry e;
      e.arity = j;
      e.degree = t;
      const HomologyClasses hl(*sa.l->module(), t);
      const HomologyClasses hm(*sb.m->module(), t);
      e.classes = hl.dim();
      e.pass = true;
      for (const Vec& z : hl.representatives()) {
        // f^{⊗j} after φ^A
        const Vec pa = mul(sa.phi.block(t), z);
        Vec lhs = zero_vec(sb.m->module()->dim(t));
        for (Index i = 0; i < pa.size(); ++i) {
          if (pa(i).is_zero()) continue;
          std::vector<std::pair<std::vector<int>, Fp>> terms{{{}, pa(i)}};
          for (int g : sa.m->tuple(t, i)) {
            const int d = sa.m->degree_of(g);
            const Mat& fb = f1.block(d);
            std::vector<std::pair<std::vector<int>, Fp>> next;
            for (const auto& [tu, c] : terms) {
              for (Index r = 0; r < fb.rows(); ++r) {
                const Fp x = fb(r, sa.m->local(g));
                if (x.is_zero()) continue;
                auto u = tu;
                u.push_back(sb.m->global(d, r));
                next.emplace_back(std::move(u), c * x);
              }
            }
            terms = std::move(next);
          }
          for (const auto& [tu, c] : terms) lhs(sb.m->index(tu)) += c;
        }
        // φ^B after 1⊗f
        Vec y = zero_vec(sb.l->module()->dim(t));
        for (Index i = 0; i < z.size(); ++i) {
          if (z(i).is_zero()) continue;
          const auto en = sa.l->decode(t, i);
          const Mat& fb = f1.block(t - en.p);
          for (Index r = 0; r < fb.rows(); ++r) {
            if (!fb(r, en.c).is_zero()) y(sb.l->index(t, en.p, en.k, r)) += z(i) * fb(r, en.c);
          }
        }
        const Vec rhs = mul(sb.phi.block(t), y);
        if (!hm.is_boundary(lhs - rhs)) e.pass = false;
      }
      rep.pass = rep.pass && e.pass;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace einf
