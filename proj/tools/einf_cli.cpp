#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "einf/serialize.hpp"

using namespace einf;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2 };

struct RunConfig {
  unsigned prime = 2;
  int max_arity = 3;
  int max_degree = 3;
  std::string mode = "homology";
  std::string space;
  std::string out;
  unsigned seed = 0;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (!is_prime(c.prime)) throw InputError("--prime: " + std::to_string(c.prime) + " is not prime");
  if (c.max_arity < 2) throw InputError("--max-arity: must be at least 2");
  if (c.max_degree < 2) throw InputError("--max-degree: must be at least 2");
}

void emit(const RunConfig& c, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("--out: cannot write " + c.out);
  f << text;
}

json load_space(const std::string& path) {
  if (path.empty()) throw InputError("--space is required");
  const json j = parse_json_file(path);
  SimplicialSet::from_json(j.dump());  // validates, with the offending simplex in the message
  return j;
}

AlgebraSpec algebra_spec(const RunConfig& c, const std::string& kind, int window) {
  AlgebraSpec s;
  s.kind = kind.empty() ? (c.space.empty() ? "trivial" : "canonical") : kind;
  s.max_degree = window;
  if (s.kind == "canonical") s.space = load_space(c.space);
  return s;
}

int build_k(const RunConfig& c, const std::string& sabotaged) {
  KTower t = build_K(c.max_arity, c.max_degree, parse_extension_mode(c.mode));
  if (!sabotaged.empty()) sabotage(t, sabotaged);
  json j = tower_to_json(t);
  if (!sabotaged.empty()) j["sabotaged"] = sabotaged;
  emit(c, j);
  return kPass;
}

int verify_k(const RunConfig& c, const std::string& tower_file, const std::string& sabotaged, int through) {
  KTower t = tower_file.empty() ? build_K(c.max_arity, c.max_degree, parse_extension_mode(c.mode))
                                : tower_from_json(parse_json_file(tower_file));
  if (!sabotaged.empty()) sabotage(t, sabotaged);
  if (through < 0) through = t.max_degree - 1;
  if (through >= t.max_degree) {
    std::cerr << "warning: through-degree " << through << " needs degree " << through + 1 << " of the window; using "
              << t.max_degree - 1 << "\n";
    through = t.max_degree - 1;
  }
  const EInfinityReport r = verify_E_infinity(t, t.max_arity, through);
  emit(c, to_json(r));
  return r.pass ? kPass : kFail;
}

int lalg_check(const RunConfig& c, const std::string& kind, bool sabotaged) {
  LAlgebraPtr a = algebra_spec(c, kind, c.max_degree).make();
  if (sabotaged) a = sabotage_mu(a);
  const AxiomReport r = check_axioms(*a, c.max_arity, c.max_degree - 1);
  emit(c, to_json(r));
  for (const auto& x : r.results)
    if (!x.pass) std::cerr << x.axiom << ": " << x.detail << "\n";
  return r.pass ? kPass : kFail;
}

json randomized_cup1(const CoalgebraStructure& s, unsigned seed, int trials) {
  std::mt19937 rng(seed);
  const FreeDGModule& a = *s.context().base();
  const int top = s.through_degree();
  int checked = 0, failures = 0;
  for (int p = 0; p + 1 <= top; ++p) {
    for (int q = 0; p + q + 1 <= top; ++q) {
      if (p + q < 1 || a.dim(p) == 0 || a.dim(q) == 0) continue;
      for (int i = 0; i < trials; ++i) {
        Vec u(a.dim(p)), v(a.dim(q));
        for (Index k = 0; k < u.size(); ++k) u(k) = Fp(static_cast<long long>(rng() % Fp::prime()));
        for (Index k = 0; k < v.size(); ++k) v(k) = Fp(static_cast<long long>(rng() % Fp::prime()));
        ++checked;
        failures += is_zero(cup1_coboundary_defect(s, p, u, q, v)) ? 0 : 1;
      }
    }
  }
  return {{"seed", seed}, {"checked", checked}, {"failures", failures}};
}

int coalgebra_report(const RunConfig& c, const CoalgebraStructure& s) {
  const StructureReport r = verify_structure(s);
  json j = to_json(r);
  j["cup1_coboundary"] = randomized_cup1(s, c.seed, 5);
  const bool pass = r.pass && j["cup1_coboundary"]["failures"] == 0;
  j["pass"] = pass;
  std::cout << j.dump(2) << "\n";
  return pass ? kPass : kFail;
}

int coalgebra_build(RunConfig c, const std::string& kind) {
  const KTower t = build_K(c.max_arity, c.max_degree, parse_extension_mode(c.mode));
  const int through = c.max_degree - 1;
  const AlgebraSpec spec = algebra_spec(c, kind, through + 1);
  const auto s = CoalgebraStructure::build(t.top(), spec.make(), through);
  if (!c.out.empty()) emit(c, structure_to_json(*s, t, spec));
  return coalgebra_report(c, *s);
}

int coalgebra_verify(const RunConfig& c, const std::string& file) {
  if (file.empty()) throw InputError("--structure is required");
  const LoadedStructure l = structure_from_json(parse_json_file(file));
  return coalgebra_report(c, *l.structure);
}

std::string class_name(int n, Index dim, Index i) {
  if (dim == 1) return std::string(1, static_cast<char>('a' + n - 1));
  return "x" + std::to_string(n) + "_" + std::to_string(i + 1);
}

std::string coordinates(const Vec& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v(i).value());
  return s + "]";
}

int steenrod(const RunConfig& c, int k) {
  if (c.prime != 2) throw InputError("steenrod: Steenrod squares need --prime 2");
  if (k < 0) throw InputError("--k: must be non-negative");
  const AlgebraSpec spec = algebra_spec(c, "canonical", c.max_degree);
  const int through = c.max_degree - 1;
  const KTower t = build_K(2, c.max_degree, parse_extension_mode(c.mode));
  CoalgebraStructure s(t.top(), spec.make(), through);
  s.build_phi2();
  const ModulePtr a1 = s.algebra()->value(1);

  json ops = json::array();
  std::vector<std::string> lines;
  for (int n = std::max(k, 1); n <= through; ++n) {
    const Cohomology hn(a1, n);
    if (hn.dim() == 0) continue;
    if (2 * n > through) {
      std::cerr << "warning: Sq^" << k << " on H^" << n << " needs u⊗u in degree " << 2 * n << ", beyond the window "
                << through << "\n";
      continue;
    }
    const Cohomology target(a1, n + k);
    for (Index i = 0; i < hn.dim(); ++i) {
      const Vec& u = hn.representatives()[static_cast<size_t>(i)];
      const std::string name = class_name(n, hn.dim(), i);
      const Vec r = target.classify(steenrod_square(s, k, n, u));
      std::string rhs;
      if (is_zero(r)) {
        rhs = "0";
      } else if (k == 0 && r == hn.classify(u)) {
        rhs = name;
      } else if (k == n && r == target.classify(cup_i(s, 0, n, u, n, u))) {
        rhs = name + "^2, nonzero";
      } else {
        rhs = coordinates(r) + " in H^" + std::to_string(n + k);
      }
      const std::string line = "Sq^" + std::to_string(k) + "(" + name + ") = " + rhs;
      lines.push_back(line);
      ops.push_back({{"degree", n}, {"class", name}, {"image", coordinates(r)}, {"nonzero", !is_zero(r)}, {"statement", line}});
    }
  }
  json j = {{"schema_version", kSchemaVersion}, {"kind", "steenrod-report"}, {"prime", 2},
            {"space", spec.space->value("name", "")}, {"k", k}, {"through_degree", through}, {"operations", ops}};
  j["statements"] = lines;
  emit(c, j);
  return kPass;
}

int info(const RunConfig& c) {
  const json raw = load_space(c.space);
  const auto x = std::make_shared<const SimplicialSet>(SimplicialSet::from_json(raw.dump()));
  const int cap = x->dimension_cap();
  const ModulePtr ch = normalized_chains(x, 1, cap + 1);
  std::vector<int> counts;
  std::vector<Index> hom;
  for (int d = 0; d <= cap; ++d) {
    counts.push_back(x->count(d));
    hom.push_back(homology_dim(*ch, d));
  }
  emit(c, {{"schema_version", kSchemaVersion},
           {"kind", "space-info"},
           {"prime", c.prime},
           {"name", x->name()},
           {"dimension_cap", cap},
           {"nondegenerate", counts},
           {"euler_characteristic", x->euler_characteristic()},
           {"homology", hom}});
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"E-infinity coalgebra structures on L-algebras over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--prime", c.prime, "characteristic of the ground field")->capture_default_str();
  app.add_option("--max-arity", c.max_arity, "arity window N")->capture_default_str();
  app.add_option("--max-degree", c.max_degree, "degree window D")->capture_default_str();
  app.add_option("--extension-mode", c.mode, "homology or cycles")->capture_default_str();
  app.add_option("--space", c.space, "simplicial set (JSON)");
  app.add_option("--out", c.out, "write the report or structure here");
  app.add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();

  std::string sabotaged, tower_file, kind, structure_file;
  int through = -1, k = 1;
  bool sabotage_mu_flag = false;

  auto* bk = app.add_subcommand("build-k", "build the operad tower and dump it");
  bk->add_option("--sabotage", sabotaged, "zero the boundary of this generator");
  auto* vk = app.add_subcommand("verify-k", "check the E-infinity property of the tower");
  vk->add_option("--tower", tower_file, "tower dump from build-k");
  vk->add_option("--sabotage", sabotaged, "zero the boundary of this generator");
  vk->add_option("--through-degree", through, "highest degree checked (default D-1)");
  auto* la = app.add_subcommand("lalg", "L-algebra commands");
  la->require_subcommand(1);
  auto* lc = la->add_subcommand("check", "check the L-algebra axioms");
  lc->add_option("--algebra", kind, "trivial, degenerate or canonical");
  lc->add_flag("--sabotage-mu", sabotage_mu_flag, "corrupt one column of the product");
  auto* co = app.add_subcommand("coalgebra", "coalgebra structure commands");
  co->require_subcommand(1);
  auto* cb = co->add_subcommand("build", "construct and verify the structure maps");
  cb->add_option("--algebra", kind, "trivial, degenerate or canonical");
  auto* cv = co->add_subcommand("verify", "re-check a stored structure");
  cv->add_option("--structure", structure_file, "structure file from coalgebra build")->required();
  auto* sq = app.add_subcommand("steenrod", "Steenrod squares on cohomology (p = 2)");
  sq->add_option("--k", k, "which square")->capture_default_str();
  auto* in = app.add_subcommand("info", "cells, Euler characteristic and homology of a space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    validate(c);
    PrimeGuard guard(c.prime);
    if (*bk) return build_k(c, sabotaged);
    if (*vk) return verify_k(c, tower_file, sabotaged, through);
    if (*lc) return lalg_check(c, kind, sabotage_mu_flag);
    if (*cb) return coalgebra_build(c, kind);
    if (*cv) return coalgebra_verify(c, structure_file);
    if (*sq) return steenrod(c, k);
    if (*in) return info(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const SimplicialError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInput;
}
