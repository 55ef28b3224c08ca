#include "einf/dg_module.hpp"

#include <algorithm>
#include <sstream>

namespace einf {

namespace {

std::string where(const std::string& label, int d) {
  std::ostringstream os;
  os << (label.empty() ? "module" : label) << " degree " << d;
  return os.str();
}

}  // namespace

Mat mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimensions differ");
  Mat r = zeros(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index k = 0; k < b.rows(); ++k) {
      const Fp c = b(k, j);
      if (!c.is_zero()) axpy(r.col(j).data(), a.col(k).data(), c, a.rows());
    }
  }
  return r;
}

Vec mul(const Mat& a, const Vec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mul: inner dimensions differ");
  Vec r = zero_vec(a.rows());
  for (Index k = 0; k < v.size(); ++k) {
    if (!v(k).is_zero()) axpy(r.data(), a.col(k).data(), v(k), a.rows());
  }
  return r;
}

int Symmetry::act(int d, int b, int sigma) const {
  const auto& g = symmetric_group(arity);
  const auto ds = static_cast<size_t>(d), bs = static_cast<size_t>(b);
  return element[ds][static_cast<size_t>(orbit_of[ds][bs] * g.order + g.mul(perm_of[ds][bs], sigma))];
}

Symmetry Symmetry::orbit_major(int arity, const std::vector<int>& orbits_per_degree) {
  Symmetry s;
  s.arity = arity;
  s.orbits = orbits_per_degree;
  const int order = s.group_order();
  for (int o : orbits_per_degree) {
    std::vector<int> orb, perm, el;
    for (int r = 0; r < o; ++r) {
      for (int p = 0; p < order; ++p) {
        orb.push_back(r);
        perm.push_back(p);
        el.push_back(static_cast<int>(el.size()));
      }
    }
    s.orbit_of.push_back(std::move(orb));
    s.perm_of.push_back(std::move(perm));
    s.element.push_back(std::move(el));
  }
  return s;
}

Symmetry Symmetry::trivial(const std::vector<Index>& dims) {
  std::vector<int> o;
  for (Index d : dims) o.push_back(static_cast<int>(d));
  return orbit_major(1, o);
}

Index TensorLayout::index(int d, int p, Index i, Index j) const {
  return offset[static_cast<size_t>(d)][static_cast<size_t>(p)] + i * right->dim(d - p) + j;
}

TensorLayout::Entry TensorLayout::decode(int d, Index k) const {
  const auto& off = offset[static_cast<size_t>(d)];
  int p = d;
  while (p > 0 && off[static_cast<size_t>(p)] > k) --p;
  while (p < d && off[static_cast<size_t>(p) + 1] <= k) ++p;
  const Index local = k - off[static_cast<size_t>(p)];
  const Index nd = right->dim(d - p);
  return {p, local / nd, local % nd};
}

FreeDGModule::FreeDGModule(Data data, bool validate) : d_(std::move(data)) {
  if (d_.dims.empty()) throw std::invalid_argument("FreeDGModule needs at least degree 0");
  const int top = max_degree();
  d_.differential.resize(static_cast<size_t>(top) + 2);
  d_.differential[0] = zeros(0, dim(0));
  d_.differential[static_cast<size_t>(top) + 1] = zeros(dim(top), 0);
  for (int d = 1; d <= top; ++d) {
    Mat& m = d_.differential[static_cast<size_t>(d)];
    if (m.rows() == 0 && m.cols() == 0) m = zeros(dim(d - 1), dim(d));
    if (m.rows() != dim(d - 1) || m.cols() != dim(d)) {
      throw std::invalid_argument("differential has wrong shape at " + where(d_.label, d));
    }
  }
  if (d_.augmentation && (d_.augmentation->rows() != 1 || d_.augmentation->cols() != dim(0))) {
    throw std::invalid_argument("augmentation has wrong shape in " + where(d_.label, 0));
  }
  if (d_.coaugmentation && (*d_.coaugmentation < 0 || *d_.coaugmentation >= dim(0))) {
    throw std::invalid_argument("coaugmentation index out of range");
  }
  if (d_.symmetry) {
    const Symmetry& s = *d_.symmetry;
    const Index order = s.group_order();
    if (s.orbits.size() != d_.dims.size()) throw std::invalid_argument("symmetry record has wrong degree range");
    for (int d = 0; d <= top; ++d) {
      const auto ds = static_cast<size_t>(d);
      if (static_cast<Index>(s.orbits[ds]) * order != dim(d) || static_cast<Index>(s.element[ds].size()) != dim(d) ||
          static_cast<Index>(s.orbit_of[ds].size()) != dim(d) || static_cast<Index>(s.perm_of[ds].size()) != dim(d)) {
        throw std::invalid_argument("basis is not Σ-free on the representatives at " + where(d_.label, d));
      }
      for (Index b = 0; b < dim(d); ++b) {
        const auto bs = static_cast<size_t>(b);
        const auto slot = static_cast<size_t>(s.orbit_of[ds][bs] * order + s.perm_of[ds][bs]);
        if (slot >= s.element[ds].size() || s.element[ds][slot] != b) {
          throw std::invalid_argument("inconsistent symmetry record at " + where(d_.label, d));
        }
      }
    }
  }
  if (validate) {
    if (auto err = check()) throw std::invalid_argument(*err);
  }
}

ModulePtr FreeDGModule::ground(int max_degree) {
  Data d;
  d.dims.assign(static_cast<size_t>(max_degree) + 1, 0);
  d.dims[0] = 1;
  d.augmentation = identity(1);
  d.coaugmentation = 0;
  d.names = {{"1"}};
  d.label = "k";
  return make(std::move(d));
}

const Mat& FreeDGModule::differential(int d) const {
  if (d < 0 || d > max_degree() + 1) return empty_;
  return d_.differential[static_cast<size_t>(d)];
}

const Mat& FreeDGModule::augmentation() const {
  if (!d_.augmentation) throw std::logic_error("module " + d_.label + " has no augmentation");
  return *d_.augmentation;
}

std::string FreeDGModule::basis_name(int d, Index i) const {
  if (static_cast<size_t>(d) < d_.names.size() && static_cast<size_t>(i) < d_.names[static_cast<size_t>(d)].size()) {
    return d_.names[static_cast<size_t>(d)][static_cast<size_t>(i)];
  }
  std::ostringstream os;
  os << "b" << d << "_" << i;
  return os.str();
}

std::optional<std::string> FreeDGModule::check() const {
  for (int d = 2; d <= max_degree(); ++d) {
    if (!is_zero(mul(differential(d - 1), differential(d)))) return "∂∂ ≠ 0 at " + where(d_.label, d);
  }
  if (d_.augmentation && max_degree() >= 1 && !is_zero(mul(*d_.augmentation, differential(1)))) {
    return "ε∂ ≠ 0 in " + where(d_.label, 1);
  }
  if (d_.symmetry) {
    const Symmetry& s = *d_.symmetry;
    std::vector<int> gens;
    for (int i = 0; i + 1 < s.arity; ++i) gens.push_back(Permutation::transposition(s.arity, i).index());
    for (int sigma : gens) {
      for (int d = 0; d <= max_degree(); ++d) {
        for (Index b = 0; b < dim(d); ++b) {
          const int bs = s.act(d, static_cast<int>(b), sigma);
          if (d == 0) {
            if (d_.augmentation && (*d_.augmentation)(0, b) != (*d_.augmentation)(0, bs)) {
              return "ε is not Σ-equivariant in " + where(d_.label, 0);
            }
            continue;
          }
          const Mat& del = differential(d);
          Vec moved = zero_vec(dim(d - 1));
          for (Index r = 0; r < del.rows(); ++r) {
            if (!del(r, b).is_zero()) moved(s.act(d - 1, static_cast<int>(r), sigma)) += del(r, b);
          }
          if (!equal(moved, del.col(bs))) return "∂ is not Σ-equivariant at " + where(d_.label, d);
        }
      }
    }
  }
  return std::nullopt;
}

BasisAction::BasisAction(int arity, std::vector<std::vector<std::vector<Index>>> images,
                         std::vector<std::vector<std::vector<Fp>>> signs)
    : arity_(arity), images_(std::move(images)), signs_(std::move(signs)) {
  if (static_cast<long long>(images_.size()) != factorial(arity_) || signs_.size() != images_.size()) {
    throw std::invalid_argument("BasisAction: need one entry per group element");
  }
}

int BasisAction::max_degree() const { return images_.empty() ? -1 : static_cast<int>(images_[0].size()) - 1; }

BasisAction BasisAction::from_symmetry(const FreeDGModule& m) {
  const Symmetry* s = m.symmetry();
  if (s == nullptr) throw std::invalid_argument("module has no symmetry record");
  const int order = s->group_order();
  std::vector<std::vector<std::vector<Index>>> im(static_cast<size_t>(order));
  std::vector<std::vector<std::vector<Fp>>> sg(static_cast<size_t>(order));
  for (int g = 0; g < order; ++g) {
    for (int d = 0; d <= m.max_degree(); ++d) {
      std::vector<Index> row(static_cast<size_t>(m.dim(d)));
      for (Index b = 0; b < m.dim(d); ++b) row[static_cast<size_t>(b)] = s->act(d, static_cast<int>(b), g);
      im[static_cast<size_t>(g)].push_back(std::move(row));
      sg[static_cast<size_t>(g)].emplace_back(static_cast<size_t>(m.dim(d)), Fp(1));
    }
  }
  return BasisAction(s->arity, std::move(im), std::move(sg));
}

BasisAction BasisAction::from_matrices(int arity, const std::vector<std::vector<Mat>>& mats) {
  std::vector<std::vector<std::vector<Index>>> im(mats.size());
  std::vector<std::vector<std::vector<Fp>>> sg(mats.size());
  for (size_t g = 0; g < mats.size(); ++g) {
    for (const Mat& m : mats[g]) {
      if (m.rows() != m.cols()) throw std::invalid_argument("action matrix is not square");
      std::vector<Index> row(static_cast<size_t>(m.cols()), -1);
      std::vector<Fp> sgn(static_cast<size_t>(m.cols()), Fp(0));
      for (Index c = 0; c < m.cols(); ++c) {
        for (Index r = 0; r < m.rows(); ++r) {
          if (m(r, c).is_zero()) continue;
          if (row[static_cast<size_t>(c)] >= 0 || (m(r, c) != Fp(1) && m(r, c) != Fp(-1))) {
            throw std::invalid_argument("action matrix is not a signed permutation");
          }
          row[static_cast<size_t>(c)] = r;
          sgn[static_cast<size_t>(c)] = m(r, c);
        }
        if (row[static_cast<size_t>(c)] < 0) throw std::invalid_argument("action matrix is singular");
      }
      im[g].push_back(std::move(row));
      sg[g].push_back(std::move(sgn));
    }
  }
  return BasisAction(arity, std::move(im), std::move(sg));
}

Vec BasisAction::apply(int sigma, int d, const Vec& v) const {
  const auto& im = images_.at(static_cast<size_t>(sigma)).at(static_cast<size_t>(d));
  const auto& sg = signs_[static_cast<size_t>(sigma)][static_cast<size_t>(d)];
  Vec out = zero_vec(v.size());
  for (Index b = 0; b < v.size(); ++b) {
    if (!v(b).is_zero()) out(im[static_cast<size_t>(b)]) += sg[static_cast<size_t>(b)] * v(b);
  }
  return out;
}

DGMorphism::DGMorphism(ModulePtr source, ModulePtr target, int degree)
    : src_(std::move(source)), tgt_(std::move(target)), k_(degree) {
  for (int d = 0; d <= src_->max_degree(); ++d) blocks_.push_back(zeros(tgt_->dim(d + k_), src_->dim(d)));
}

DGMorphism::DGMorphism(ModulePtr source, ModulePtr target, int degree, std::vector<Mat> blocks)
    : src_(std::move(source)), tgt_(std::move(target)), k_(degree), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != src_->max_degree() + 1) {
    throw std::invalid_argument("DGMorphism: need one block per source degree");
  }
  for (int d = 0; d <= src_->max_degree(); ++d) {
    const Mat& b = blocks_[static_cast<size_t>(d)];
    if (b.rows() != tgt_->dim(d + k_) || b.cols() != src_->dim(d)) {
      std::ostringstream os;
      os << "DGMorphism: block " << d << " is " << b.rows() << "x" << b.cols() << ", expected "
         << tgt_->dim(d + k_) << "x" << src_->dim(d);
      throw std::invalid_argument(os.str());
    }
  }
}

DGMorphism DGMorphism::identity(const ModulePtr& m) {
  std::vector<Mat> b;
  for (int d = 0; d <= m->max_degree(); ++d) b.push_back(einf::identity(m->dim(d)));
  return DGMorphism(m, m, 0, std::move(b));
}

Vec DGMorphism::apply(int d, const Vec& v) const {
  if (d < 0 || d > src_->max_degree()) return zero_vec(0);
  return mul(block(d), v);
}

std::optional<int> DGMorphism::chain_map_failure() const {
  const Fp s = sign_power(k_);
  for (int d = 0; d <= src_->max_degree(); ++d) {
    const int t = d + k_;
    if (t > tgt_->max_degree() || t - 1 < 0) continue;
    const Mat lhs = mul(tgt_->differential(t), block(d));
    Mat rhs = d >= 1 ? mul(block(d - 1), src_->differential(d)) : zeros(tgt_->dim(t - 1), src_->dim(d));
    if (!equal(lhs, rhs * s)) return d;
  }
  return std::nullopt;
}

void DGMorphism::check_same_shape(const DGMorphism& o) const {
  if (o.k_ != k_ || o.src_->dims() != src_->dims() || o.tgt_->dims() != tgt_->dims()) {
    throw std::invalid_argument("DGMorphism: shape mismatch");
  }
}

DGMorphism& DGMorphism::operator+=(const DGMorphism& o) {
  check_same_shape(o);
  for (size_t d = 0; d < blocks_.size(); ++d) blocks_[d] += o.blocks_[d];
  return *this;
}

DGMorphism& DGMorphism::operator-=(const DGMorphism& o) {
  check_same_shape(o);
  for (size_t d = 0; d < blocks_.size(); ++d) blocks_[d] -= o.blocks_[d];
  return *this;
}

DGMorphism DGMorphism::operator-() const { return scaled(Fp(-1)); }

DGMorphism DGMorphism::scaled(Fp c) const {
  DGMorphism r = *this;
  for (auto& b : r.blocks_) b *= c;
  return r;
}

bool DGMorphism::operator==(const DGMorphism& o) const {
  if (o.k_ != k_ || o.blocks_.size() != blocks_.size()) return false;
  for (size_t d = 0; d < blocks_.size(); ++d) {
    if (!equal(blocks_[d], o.blocks_[d])) return false;
  }
  return true;
}

bool DGMorphism::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Mat& b) { return einf::is_zero(b); });
}

DGMorphism compose(const DGMorphism& g, const DGMorphism& f) {
  if (g.source()->dims() != f.target()->dims()) throw std::invalid_argument("compose: middle modules differ");
  std::vector<Mat> b;
  for (int d = 0; d <= f.source()->max_degree(); ++d) {
    const int mid = d + f.degree();
    if (mid < 0 || mid > g.source()->max_degree()) {
      b.push_back(zeros(g.target()->dim(mid + g.degree()), f.source()->dim(d)));
    } else {
      b.push_back(mul(g.block(mid), f.block(d)));
    }
  }
  return DGMorphism(f.source(), g.target(), f.degree() + g.degree(), std::move(b));
}

DGMorphism homotopy_boundary(const DGMorphism& h, int k) {
  const ModulePtr& src = h.source();
  const ModulePtr& tgt = h.target();
  const Fp s = sign_power(k);
  std::vector<Mat> b;
  for (int d = 0; d <= src->max_degree(); ++d) {
    const int t = d + k;
    Mat m = zeros(tgt->dim(t), src->dim(d));
    if (t + 1 <= tgt->max_degree() && t + 1 >= 1) m += mul(tgt->differential(t + 1), h.block(d));
    if (d >= 1) m += mul(h.block(d - 1), src->differential(d)) * s;
    b.push_back(std::move(m));
  }
  return DGMorphism(src, tgt, k, std::move(b));
}

std::optional<int> Homotopy::failure() const {
  const int k = from.degree();
  if (map.degree() != k + 1 || to.degree() != k) throw std::invalid_argument("Homotopy: degree mismatch");
  const DGMorphism lhs = homotopy_boundary(map, k);
  for (int d = 0; d <= map.source()->max_degree(); ++d) {
    if (d + k + 1 > map.target()->max_degree()) continue;
    if (!equal(lhs.block(d), to.block(d) - from.block(d))) return d;
  }
  return std::nullopt;
}

ModulePtr tensor(const ModulePtr& m, const ModulePtr& n, std::optional<int> max_degree) {
  const int window = std::min(m->max_degree(), n->max_degree());
  const int top = max_degree.value_or(window);
  if (top > window) throw std::invalid_argument("tensor: requested window exceeds factor windows");
  auto layout = std::make_shared<TensorLayout>();
  layout->left = m;
  layout->right = n;
  FreeDGModule::Data data;
  for (int d = 0; d <= top; ++d) {
    std::vector<Index> off;
    Index total = 0;
    for (int p = 0; p <= d; ++p) {
      off.push_back(total);
      total += m->dim(p) * n->dim(d - p);
    }
    layout->offset.push_back(std::move(off));
    data.dims.push_back(total);
  }
  data.differential.resize(static_cast<size_t>(top) + 1);
  for (int d = 1; d <= top; ++d) {
    Mat del = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
    for (int p = 0; p <= d; ++p) {
      const int q = d - p;
      const Mat& dm = m->differential(p);
      const Mat& dn = n->differential(q);
      const Fp sg = sign_power(p);
      for (Index i = 0; i < m->dim(p); ++i) {
        for (Index j = 0; j < n->dim(q); ++j) {
          const Index col = layout->index(d, p, i, j);
          if (p >= 1) {
            for (Index r = 0; r < dm.rows(); ++r) {
              if (!dm(r, i).is_zero()) del(layout->index(d - 1, p - 1, r, j), col) += dm(r, i);
            }
          }
          if (q >= 1) {
            for (Index r = 0; r < dn.rows(); ++r) {
              if (!dn(r, j).is_zero()) del(layout->index(d - 1, p, i, r), col) += sg * dn(r, j);
            }
          }
        }
      }
    }
    data.differential[static_cast<size_t>(d)] = std::move(del);
  }
  if (m->augmented() && n->augmented()) {
    Mat eps = zeros(1, data.dims[0]);
    for (Index i = 0; i < m->dim(0); ++i) {
      for (Index j = 0; j < n->dim(0); ++j) eps(0, layout->index(0, 0, i, j)) = m->augmentation()(0, i) * n->augmentation()(0, j);
    }
    data.augmentation = std::move(eps);
  }
  if (m->coaugmentation() && n->coaugmentation()) {
    data.coaugmentation = layout->index(0, 0, *m->coaugmentation(), *n->coaugmentation());
  }
  data.names.resize(static_cast<size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    for (Index k = 0; k < data.dims[static_cast<size_t>(d)]; ++k) {
      const auto e = layout->decode(d, k);
      data.names[static_cast<size_t>(d)].push_back(m->basis_name(e.p, e.i) + "⊗" + n->basis_name(d - e.p, e.j));
    }
  }
  if (const Symmetry* s = m->symmetry(); s != nullptr && n->symmetry() == nullptr) {
    // Σ acts through the left factor: orbit (rep r in degree p, y) is listed
    // in the order the pairs appear.
    Symmetry sym;
    sym.arity = s->arity;
    const int order = s->group_order();
    for (int d = 0; d <= top; ++d) {
      const Index dim = data.dims[static_cast<size_t>(d)];
      std::vector<int> orb(static_cast<size_t>(dim)), perm(static_cast<size_t>(dim)), el(static_cast<size_t>(dim));
      int orbits = 0;
      for (int p = 0; p <= d; ++p) {
        const Index nq = n->dim(d - p);
        for (int r = 0; r < s->orbits[static_cast<size_t>(p)]; ++r) {
          for (Index j = 0; j < nq; ++j) {
            for (int g = 0; g < order; ++g) {
              const int i = s->element[static_cast<size_t>(p)][static_cast<size_t>(r * order + g)];
              const Index k = layout->index(d, p, i, j);
              orb[static_cast<size_t>(k)] = orbits;
              perm[static_cast<size_t>(k)] = g;
              el[static_cast<size_t>(orbits * order + g)] = static_cast<int>(k);
            }
            ++orbits;
          }
        }
      }
      sym.orbits.push_back(orbits);
      sym.orbit_of.push_back(std::move(orb));
      sym.perm_of.push_back(std::move(perm));
      sym.element.push_back(std::move(el));
    }
    data.symmetry = std::move(sym);
  }
  data.tensor = layout;
  data.label = m->label() + "⊗" + n->label();
  return std::make_shared<const FreeDGModule>(std::move(data), false);
}

DGMorphism tensor(const DGMorphism& f, const DGMorphism& g, const ModulePtr& source, const ModulePtr& target) {
  const TensorLayout* sl = source->tensor_layout();
  const TensorLayout* tl = target->tensor_layout();
  if (sl == nullptr || tl == nullptr) throw std::invalid_argument("tensor of maps needs tensor modules");
  const int a = f.degree(), b = g.degree();
  std::vector<Mat> blocks;
  for (int d = 0; d <= source->max_degree(); ++d) {
    const int t = d + a + b;
    Mat m = zeros(target->dim(t), source->dim(d));
    if (t >= 0 && t <= target->max_degree()) {
      for (int p = 0; p <= d; ++p) {
        const int q = d - p;
        const int p2 = p + a, q2 = q + b;
        if (p2 < 0 || q2 < 0) continue;
        const Mat& fb = f.block(p);
        const Mat& gb = g.block(q);
        const Fp sg = sign_power(static_cast<long long>(b) * p);
        for (Index i = 0; i < sl->left->dim(p); ++i) {
          for (Index j = 0; j < sl->right->dim(q); ++j) {
            const Index col = sl->index(d, p, i, j);
            for (Index r = 0; r < fb.rows(); ++r) {
              const Fp x = fb(r, i);
              if (x.is_zero()) continue;
              for (Index s = 0; s < gb.rows(); ++s) {
                const Fp y = gb(s, j);
                if (!y.is_zero()) m(tl->index(t, p2, r, s), col) += sg * x * y;
              }
            }
          }
        }
      }
    }
    blocks.push_back(std::move(m));
  }
  return DGMorphism(source, target, a + b, std::move(blocks));
}

HomologyClasses::HomologyClasses(const FreeDGModule& m, int d, bool reduced, bool modulo_boundaries) {
  Mat cycles;
  if (d == 0) {
    cycles = reduced && m.augmented() ? kernel_basis(m.augmentation()) : identity(m.dim(0));
  } else {
    cycles = kernel_basis(m.differential(d));
  }
  space_ = modulo_boundaries && d + 1 <= m.max_degree() ? Subspace::from_columns(m.differential(d + 1))
                                                      : Subspace(m.dim(d));
  for (Index c = 0; c < cycles.cols(); ++c) {
    const Vec z = cycles.col(c);
    if (space_.contains(z)) continue;
    const Index h = dim();
    space_.grow_tags(h + 1);
    space_.insert(z, unit_vec(h + 1, h));
    reps_.push_back(z);
  }
}

Vec HomologyClasses::classify(const Vec& cycle) const {
  auto t = space_.tag_of(cycle);
  if (!t) throw std::invalid_argument("classify: vector is not a cycle");
  if (t->size() < dim()) {
    Vec r = zero_vec(dim());
    r.head(t->size()) = *t;
    return r;
  }
  return *t;
}

HomologyResult homology(const FreeDGModule& m, int d) {
  HomologyResult r;
  r.degree = d;
  if (d < 0 || d > m.max_degree()) {
    r.reliable = false;
    return r;
  }
  HomologyClasses h(m, d);
  r.dim = h.dim();
  r.representatives = h.representatives();
  r.reliable = d + 1 <= m.max_degree();
  return r;
}

Index homology_dim(const FreeDGModule& m, int d) {
  const Index z = m.dim(d) - (d >= 1 ? rank(m.differential(d)) : 0);
  const Index b = d + 1 <= m.max_degree() ? rank(m.differential(d + 1)) : 0;
  return z - b;
}

Index reduced_homology_dim(const FreeDGModule& m, int d) {
  if (d != 0 || !m.augmented()) return homology_dim(m, d);
  const Index z = m.dim(0) - rank(m.augmentation());
  const Index b = m.max_degree() >= 1 ? rank(m.differential(1)) : 0;
  return z - b;
}

bool is_quasi_iso(const DGMorphism& f, int through) {
  const FreeDGModule& s = *f.source();
  const FreeDGModule& t = *f.target();
  const int k = f.degree();
  if (through + 1 > s.max_degree() || through + k + 1 > t.max_degree()) {
    throw std::invalid_argument("is_quasi_iso: window has no headroom at the requested degree");
  }
  for (int d = 0; d <= through; ++d) {
    const HomologyClasses hs(s, d), ht(t, d + k);
    if (hs.dim() != ht.dim()) return false;
    if (hs.dim() == 0) continue;
    Mat m = zeros(ht.dim(), hs.dim());
    for (Index i = 0; i < hs.dim(); ++i) m.col(i) = ht.classify(f.apply(d, hs.representatives()[static_cast<size_t>(i)]));
    if (rank(m) != hs.dim()) return false;
  }
  return true;
}

Index MappingCone::target_offset(int s) const { return f.source()->dim(s - f.degree() - 1); }

MappingCone mapping_cone(const DGMorphism& f) {
  const ModulePtr& m = f.source();
  const ModulePtr& n = f.target();
  const int l = f.degree();
  const int top = std::min(n->max_degree(), m->max_degree() + l + 1);
  if (top < 0) throw std::invalid_argument("mapping_cone: empty window");
  FreeDGModule::Data data;
  for (int s = 0; s <= top; ++s) data.dims.push_back(m->dim(s - l - 1) + n->dim(s));
  data.differential.resize(static_cast<size_t>(top) + 1);
  const Fp neg = -sign_power(l);
  for (int s = 1; s <= top; ++s) {
    const int ms = s - l - 1;
    const Index m_hi = m->dim(ms), m_lo = m->dim(ms - 1);
    Mat del = zeros(m_lo + n->dim(s - 1), m_hi + n->dim(s));
    if (ms >= 1 && m_lo > 0) del.topLeftCorner(m_lo, m_hi) = m->differential(ms) * neg;
    if (ms >= 0 && ms <= m->max_degree()) del.bottomLeftCorner(n->dim(s - 1), m_hi) = f.block(ms);
    del.bottomRightCorner(n->dim(s - 1), n->dim(s)) = n->differential(s);
    data.differential[static_cast<size_t>(s)] = std::move(del);
  }
  data.names.resize(static_cast<size_t>(top) + 1);
  for (int s = 0; s <= top; ++s) {
    for (Index i = 0; i < m->dim(s - l - 1); ++i) data.names[static_cast<size_t>(s)].push_back("s" + m->basis_name(s - l - 1, i));
    for (Index i = 0; i < n->dim(s); ++i) data.names[static_cast<size_t>(s)].push_back(n->basis_name(s, i));
  }
  data.label = "C(" + m->label() + "→" + n->label() + ")";
  MappingCone c;
  c.f = f;
  c.cone = std::make_shared<const FreeDGModule>(std::move(data), false);
  std::vector<Mat> inc, proj;
  for (int s = 0; s <= n->max_degree(); ++s) {
    Mat b = zeros(c.cone->dim(s), n->dim(s));
    if (s <= top) b.bottomRows(n->dim(s)) = identity(n->dim(s));
    inc.push_back(std::move(b));
  }
  for (int s = 0; s <= top; ++s) {
    Mat b = zeros(m->dim(s - l - 1), c.cone->dim(s));
    b.leftCols(m->dim(s - l - 1)) = identity(m->dim(s - l - 1));
    proj.push_back(std::move(b));
  }
  c.inclusion = DGMorphism(n, c.cone, 0, std::move(inc));
  c.projection = DGMorphism(c.cone, m, -(l + 1), std::move(proj));
  return c;
}

}  // namespace einf
