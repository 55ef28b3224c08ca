#include "einf/kconstruct.hpp"

#include <sstream>

namespace einf {

ModulePtr minimal_resolution(int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("minimal_resolution needs D ≥ 1");
  FreeDGModule::Data data;
  data.dims.assign(static_cast<size_t>(max_degree) + 1, 2);
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    const Fp s = sign_power(d);
    Mat del = zeros(2, 2);
    del(0, 0) = 1;
    del(1, 0) = s;
    del(1, 1) = 1;
    del(0, 1) = s;
    data.differential[static_cast<size_t>(d)] = del;
  }
  data.augmentation = Mat::Constant(1, 2, Fp(1));
  data.symmetry = Symmetry::orbit_major(2, std::vector<int>(static_cast<size_t>(max_degree) + 1, 1));
  for (int d = 0; d <= max_degree; ++d) {
    const std::string e = "e" + std::to_string(d);
    data.names.push_back({e, e + "·τ"});
  }
  data.label = "W";
  return FreeDGModule::make(std::move(data));
}

QuasiFreeOperad resolution_operad(int max_arity, int max_degree) {
  QuasiFreeOperad p(max_arity, max_degree);
  const Permutation tau = Permutation::transposition(2, 0);
  for (int d = 0; d <= max_degree; ++d) {
    OperadElement bd(2, d - 1);
    if (d > 0) {
      const OperadElement prev = corolla(p, d - 1);
      bd = prev + sigma_action(prev, tau) * sign_power(d);
    }
    p.add_generator("e" + std::to_string(d), 2, d, bd, d == 0 ? std::optional<Fp>(Fp(1)) : std::nullopt);
  }
  return p;
}

const char* to_string(ExtensionMode m) { return m == ExtensionMode::Homology ? "homology" : "cycles"; }

ExtensionMode parse_extension_mode(const std::string& s) {
  if (s == "homology") return ExtensionMode::Homology;
  if (s == "cycles") return ExtensionMode::Cycles;
  throw std::invalid_argument("unknown extension mode '" + s + "' (expected homology or cycles)");
}

namespace {

bool orbit_major_layout(const Symmetry& s) {
  for (size_t d = 0; d < s.element.size(); ++d) {
    for (size_t k = 0; k < s.element[d].size(); ++k) {
      if (s.element[d][k] != static_cast<int>(k)) return false;
    }
  }
  return true;
}

class ExtensionBuilder {
 public:
  explicit ExtensionBuilder(const FreeDGModule& c)
      : c_(c), sym_(*c.symmetry()), order_(sym_.group_order()), added_(static_cast<size_t>(c.max_degree()) + 1) {}

  ModulePtr build() const {
    const int top = c_.max_degree();
    FreeDGModule::Data data;
    std::vector<int> orbits = sym_.orbits;
    for (int d = 0; d <= top; ++d) {
      orbits[static_cast<size_t>(d)] += static_cast<int>(added_[static_cast<size_t>(d)].size());
      data.dims.push_back(static_cast<Index>(orbits[static_cast<size_t>(d)]) * order_);
    }
    Symmetry sym = Symmetry::orbit_major(sym_.arity, orbits);
    const SymmetricGroup& grp = symmetric_group(sym_.arity);
    data.differential.resize(static_cast<size_t>(top) + 1);
    for (int d = 1; d <= top; ++d) {
      Mat del = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
      del.topLeftCorner(c_.dim(d - 1), c_.dim(d)) = c_.differential(d);
      const auto& gens = added_[static_cast<size_t>(d)];
      for (size_t j = 0; j < gens.size(); ++j) {
        const Index col0 = c_.dim(d) + static_cast<Index>(j) * order_;
        for (int s = 0; s < order_; ++s) {
          for (Index b = 0; b < gens[j].size(); ++b) {
            if (gens[j](b).is_zero()) continue;
            const int o = static_cast<int>(b / order_), q = static_cast<int>(b % order_);
            del(static_cast<Index>(o) * order_ + grp.mul(q, s), col0 + s) += gens[j](b);
          }
        }
      }
      data.differential[static_cast<size_t>(d)] = std::move(del);
    }
    Mat eps = zeros(1, data.dims[0]);
    eps.leftCols(c_.dim(0)) = c_.augmentation();
    data.augmentation = std::move(eps);
    data.names.resize(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
      for (Index b = 0; b < c_.dim(d); ++b) data.names[static_cast<size_t>(d)].push_back(c_.basis_name(d, b));
      for (size_t j = 0; j < added_[static_cast<size_t>(d)].size(); ++j) {
        for (int s = 0; s < order_; ++s) {
          data.names[static_cast<size_t>(d)].push_back("x" + std::to_string(d) + "_" + std::to_string(j) + "·" +
                                                       grp.elements[static_cast<size_t>(s)].to_string());
        }
      }
    }
    data.symmetry = std::move(sym);
    data.label = "X(" + c_.label() + ")";
    return std::make_shared<const FreeDGModule>(std::move(data), false);
  }

  void add(int degree, const Vec& boundary) { added_[static_cast<size_t>(degree)].push_back(boundary); }

 private:
  const FreeDGModule& c_;
  const Symmetry& sym_;
  int order_;
  std::vector<std::vector<Vec>> added_;
};

}  // namespace

Extension acyclic_extension(const FreeDGModule& c, ExtensionMode mode) {
  const Symmetry* sym = c.symmetry();
  if (sym == nullptr || !orbit_major_layout(*sym)) {
    throw std::invalid_argument("acyclic_extension needs a Σ-free module in orbit-major layout");
  }
  if (!c.augmented()) throw std::invalid_argument("acyclic_extension needs an augmented module");
  ExtensionBuilder builder(c);
  Extension out;
  for (int d = 0; d < c.max_degree(); ++d) {
    ModulePtr cur = builder.build();
    HomologyClasses classes(*cur, d, d == 0, mode == ExtensionMode::Homology);
    if (classes.dim() == 0) continue;
    const BasisAction act = BasisAction::from_symmetry(*cur);
    Subspace span(classes.dim());
    for (const Vec& r : classes.representatives()) {
      if (span.dim() == classes.dim()) break;
      if (span.contains(classes.classify(r))) continue;
      builder.add(d + 1, r);
      out.generators.push_back({d + 1, r});
      for (int s = 0; s < sym->group_order(); ++s) span.insert(classes.classify(act.apply(s, d, r)));
    }
  }
  out.module = builder.build();
  return out;
}

KTower build_K(int max_arity, int max_degree, ExtensionMode mode) {
  if (max_arity < 2) throw std::invalid_argument("build_K needs N ≥ 2");
  if (max_arity > 7) throw std::invalid_argument("build_K supports N ≤ 7");
  KTower t;
  t.max_arity = max_arity;
  t.max_degree = max_degree;
  t.mode = mode;
  t.stages.push_back(resolution_operad(max_arity, max_degree));
  std::vector<int> first;
  for (const auto& g : t.stages[0].generators()) first.push_back(g.id);
  t.added.push_back(std::move(first));
  for (int n = 2; n < max_arity; ++n) {
    QuasiFreeOperad next = t.stages.back();
    const int arity = n + 1;
    OperadComponent comp(next, arity, max_degree);
    Extension ext = acyclic_extension(*comp.module(), mode);
    const int order = static_cast<int>(factorial(arity));
    const SymmetricGroup& grp = symmetric_group(arity);
    std::vector<std::vector<int>> ids(static_cast<size_t>(max_degree) + 1);
    std::vector<int> introduced;
    for (const AddedGenerator& g : ext.generators) {
      const int lower = g.degree - 1;
      OperadElement bd(arity, lower);
      for (Index b = 0; b < g.boundary.size(); ++b) {
        const Fp c = g.boundary(b);
        if (c.is_zero()) continue;
        const Index base = comp.module()->dim(lower);
        if (b < base) {
          bd.add(comp.monomial(lower, b), c);
        } else {
          const int j = static_cast<int>((b - base) / order), s = static_cast<int>((b - base) % order);
          const int id = ids[static_cast<size_t>(lower)].at(static_cast<size_t>(j));
          bd += sigma_action(corolla(next, id), grp.elements[static_cast<size_t>(s)]) * c;
        }
      }
      auto& slot = ids[static_cast<size_t>(g.degree)];
      const std::string name =
          "g" + std::to_string(arity) + "_" + std::to_string(g.degree) + "_" + std::to_string(slot.size());
      const int id = next.add_generator(name, arity, g.degree, bd).id;
      slot.push_back(id);
      introduced.push_back(id);
    }
    t.stages.push_back(std::move(next));
    t.added.push_back(std::move(introduced));
  }
  return t;
}

void sabotage(KTower& tower, const std::string& generator) {
  bool found = false;
  for (auto& p : tower.stages) {
    if (auto id = p.find(generator)) {
      const GeneratorDecl& g = p.generator(*id);
      p.overwrite_boundary(*id, OperadElement(g.arity, g.degree - 1));
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no generator named '" + generator + "'");
}

ComponentReport verify_component(const QuasiFreeOperad& p, int arity, int through_degree) {
  if (through_degree + 1 > p.max_degree()) throw std::invalid_argument("verify_component: no headroom above the checked degree");
  ComponentReport r;
  r.arity = arity;
  std::optional<OperadComponent> built;
  try {
    built.emplace(p, arity, through_degree + 1);
  } catch (const std::invalid_argument& e) {
    r.detail = e.what();
    return r;
  }
  const OperadComponent& comp = *built;
  const FreeDGModule& m = *comp.module();
  const int order = static_cast<int>(factorial(arity));
  r.free = true;
  for (int d = 0; d <= through_degree + 1; ++d) {
    r.dims.push_back(m.dim(d));
    r.orbits.push_back(static_cast<int>(comp.representatives(d).size()));
    if (m.dim(d) != static_cast<Index>(r.orbits.back()) * order) r.free = false;
  }
  r.augmentation_onto = rank(m.augmentation()) == 1;
  r.pass = r.free && r.augmentation_onto;
  for (int d = 0; d <= through_degree; ++d) {
    const Index h = homology_dim(m, d);
    r.homology.push_back(h);
    const bool ok = d == 0 ? (h == 1 && reduced_homology_dim(m, 0) == 0) : h == 0;
    if (!ok && !r.failing_degree) r.failing_degree = d;
  }
  if (r.failing_degree) r.pass = false;
  return r;
}

EInfinityReport verify_E_infinity(const KTower& tower, int through_arity, int through_degree) {
  if (through_arity > tower.max_arity) throw std::invalid_argument("verify_E_infinity: arity outside the tower");
  EInfinityReport rep;
  rep.through_arity = through_arity;
  rep.through_degree = through_degree;
  for (int n = 2; n <= through_arity; ++n) {
    rep.components.push_back(verify_component(tower.stage(std::max(n, 2)), n, through_degree));
    rep.pass = rep.pass && rep.components.back().pass;
  }
  return rep;
}

}  // namespace einf
