#include "einf/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace einf {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) throw FormatError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw FormatError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

void check_header(const json& j, const std::string& kind) {
  if (int_field(j, "schema_version", kind) != kSchemaVersion)
    throw FormatError(kind + ": unsupported schema_version");
  if (string_field(j, "kind", kind) != kind) throw FormatError(kind + ": wrong kind '" + j.at("kind").get<std::string>() + "'");
  const int p = int_field(j, "prime", kind);
  if (p < 2 || !is_prime(static_cast<std::uint32_t>(p))) throw FormatError(kind + ".prime: not a prime");
  if (static_cast<std::uint32_t>(p) != Fp::prime())
    throw FormatError(kind + ".prime: file was written over F_" + std::to_string(p) + ", active prime is " +
                      std::to_string(Fp::prime()));
}

json header(const std::string& kind) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"prime", Fp::prime()}};
}

json morphism_to_json(const DGMorphism& f) {
  json blocks = json::array();
  const int top = f.source()->max_degree();
  for (int d = 0; d <= top; ++d) {
    const Mat& b = f.block(d);
    if (b.size() == 0 || is_zero(b)) continue;
    blocks.push_back({{"source_degree", d}, {"matrix", matrix_to_json(b)}});
  }
  return {{"degree", f.degree()}, {"blocks", blocks}};
}

void morphism_from_json(DGMorphism& f, const json& j, const std::string& where) {
  if (int_field(j, "degree", where) != f.degree()) throw FormatError(where + ".degree: does not match");
  const json& blocks = field(j, "blocks", where);
  if (!blocks.is_array()) throw FormatError(where + ".blocks: expected an array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string w = where + ".blocks[" + std::to_string(i) + "]";
    const int d = int_field(blocks[i], "source_degree", w);
    if (d < 0 || d > f.source()->max_degree()) throw FormatError(w + ".source_degree: out of range");
    Mat& b = f.block(d);
    b = matrix_from_json(field(blocks[i], "matrix", w), b.rows(), b.cols(), w + ".matrix");
  }
}

}  // namespace

json matrix_to_json(const Mat& m) {
  json entries = json::array();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) entries.push_back({r, c, m(r, c).symmetric()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Mat matrix_from_json(const json& j, Index rows, Index cols, const std::string& where) {
  if (field(j, "rows", where).get<Index>() != rows || field(j, "cols", where).get<Index>() != cols) {
    std::ostringstream os;
    os << where << ": shape " << j.at("rows") << "x" << j.at("cols") << ", expected " << rows << "x" << cols;
    throw FormatError(os.str());
  }
  Mat m = zeros(rows, cols);
  for (const json& e : field(j, "entries", where)) {
    if (!e.is_array() || e.size() != 3) throw FormatError(where + ".entries: expected [row, col, value]");
    const Index r = e[0].get<Index>(), c = e[1].get<Index>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw FormatError(where + ".entries: index out of range");
    m(r, c) = Fp(e[2].get<long long>());
  }
  return m;
}

json tower_to_json(const KTower& t) {
  json j = header("tower");
  j["max_arity"] = t.max_arity;
  j["max_degree"] = t.max_degree;
  j["mode"] = to_string(t.mode);
  const QuasiFreeOperad& top = t.top();
  json gens = json::array();
  for (size_t s = 0; s < t.added.size(); ++s) {
    for (int id : t.added[s]) {
      const GeneratorDecl& g = top.generator(id);
      gens.push_back({{"id", g.id},
                      {"name", g.name},
                      {"arity", g.arity},
                      {"degree", g.degree},
                      {"stage", static_cast<int>(s) + 2},
                      {"augmentation", g.augmentation.symmetric()},
                      {"boundary", to_string(top, g.boundary)}});
    }
  }
  j["generators"] = gens;
  j["dims"] = tower_dims(t);
  return j;
}

KTower tower_from_json(const json& j) {
  check_header(j, "tower");
  KTower t;
  t.max_arity = int_field(j, "max_arity", "tower");
  t.max_degree = int_field(j, "max_degree", "tower");
  if (t.max_arity < 2 || t.max_degree < 1) throw FormatError("tower: windows must satisfy max_arity ≥ 2, max_degree ≥ 1");
  try {
    t.mode = parse_extension_mode(string_field(j, "mode", "tower"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("tower.mode: ") + e.what());
  }
  const json& gens = field(j, "generators", "tower");
  if (!gens.is_array()) throw FormatError("tower.generators: expected an array");

  QuasiFreeOperad p(t.max_arity, t.max_degree);
  t.added.assign(static_cast<size_t>(t.max_arity - 1), {});
  int stage = 2;
  for (size_t i = 0; i < gens.size(); ++i) {
    const std::string w = "tower.generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    const int s = int_field(g, "stage", w);
    if (s < stage || s > t.max_arity) throw FormatError(w + ".stage: out of order");
    while (stage < s) {
      t.stages.push_back(p);
      ++stage;
    }
    const std::string name = string_field(g, "name", w);
    const int arity = int_field(g, "arity", w), degree = int_field(g, "degree", w);
    if (int_field(g, "id", w) != static_cast<int>(p.generators().size())) throw FormatError(w + ".id: ids must be consecutive");
    if (arity < 2 || arity > s || degree < 0 || degree > t.max_degree) throw FormatError(w + ": arity or degree out of range");
    OperadElement bd(arity, degree - 1);
    if (degree > 0) {
      try {
        bd = parse_element(p, string_field(g, "boundary", w), arity, degree - 1);
      } catch (const std::exception& e) {
        throw FormatError(w + ".boundary: " + e.what());
      }
    }
    const Fp aug(int_field(g, "augmentation", w));
    try {
      p.add_generator(name, arity, degree, bd, degree == 0 ? std::optional<Fp>(aug) : std::nullopt);
    } catch (const std::invalid_argument&) {
      // a zeroed boundary upstream leaves later boundaries non-closed; keep them verbatim
      const int id = p.add_generator(name, arity, degree, OperadElement(arity, degree - 1),
                                     degree == 0 ? std::optional<Fp>(aug) : std::nullopt)
                         .id;
      p.overwrite_boundary(id, bd);
    }
    t.added[static_cast<size_t>(s - 2)].push_back(p.generators().back().id);
  }
  while (stage <= t.max_arity) {
    t.stages.push_back(p);
    ++stage;
  }
  return t;
}

json tower_dims(const KTower& t) {
  json out = json::object();
  for (int n = 2; n <= t.max_arity; ++n) {
    try {
      const OperadComponent c(t.top(), n, t.max_degree);
      out[std::to_string(n)] = c.module()->dims();
    } catch (const std::exception&) {
      out[std::to_string(n)] = nullptr;  // not a complex, e.g. after sabotage
    }
  }
  return out;
}

json to_json(const ComponentReport& r) {
  json j = {{"arity", r.arity},           {"dims", r.dims},
            {"orbits", r.orbits},         {"homology", r.homology},
            {"augmentation_onto", r.augmentation_onto}, {"free", r.free},
            {"pass", r.pass},             {"detail", r.detail}};
  j["failing_degree"] = r.failing_degree ? json(*r.failing_degree) : json(nullptr);
  return j;
}

json to_json(const EInfinityReport& r) {
  json j = header("e-infinity-report");
  j["through_arity"] = r.through_arity;
  j["through_degree"] = r.through_degree;
  j["components"] = json::array();
  for (const auto& c : r.components) j["components"].push_back(to_json(c));
  j["pass"] = r.pass;
  return j;
}

json to_json(const AxiomReport& r) {
  json j = header("axiom-report");
  j["flavor"] = r.flavor;
  j["through_arity"] = r.through_arity;
  j["through_degree"] = r.through_degree;
  j["axioms"] = json::array();
  for (const auto& a : r.results)
    j["axioms"].push_back({{"axiom", a.axiom}, {"pass", a.pass}, {"checked", a.checked}, {"detail", a.detail}});
  j["pass"] = r.pass;
  return j;
}

json to_json(const StructureReport& r) {
  json j = header("structure-report");
  j["through_arity"] = r.through_arity;
  j["through_degree"] = r.through_degree;
  j["arities"] = json::array();
  for (const auto& a : r.arities)
    j["arities"].push_back({{"arity", a.arity},
                            {"generators", a.generators},
                            {"basis", a.basis},
                            {"boundaries", a.boundaries},
                            {"chain_residual", a.chain_residual},
                            {"witness_residual", a.witness_residual},
                            {"equivariance_residual", a.equivariance_residual},
                            {"pass", a.pass},
                            {"detail", a.detail}});
  j["pass"] = r.pass;
  return j;
}

json to_json(const FunctorialityReport& r) {
  json j = header("functoriality-report");
  j["entries"] = json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"arity", e.arity}, {"degree", e.degree}, {"classes", e.classes}, {"pass", e.pass}});
  j["pass"] = r.pass;
  return j;
}

LAlgebraPtr AlgebraSpec::make() const {
  if (kind == "trivial") return make_trivial(max_degree);
  if (kind == "degenerate") return make_degenerate(exterior_fixture(max_degree));
  if (kind == "canonical") {
    if (!space) throw FormatError("algebra: canonical algebra needs a space");
    try {
      return make_canonical(std::make_shared<const SimplicialSet>(SimplicialSet::from_json(space->dump())), max_degree);
    } catch (const SimplicialError& e) {
      throw FormatError(std::string("algebra.space: ") + e.what());
    }
  }
  throw FormatError("algebra.kind: unknown kind '" + kind + "'");
}

json AlgebraSpec::to_json() const {
  json j = {{"kind", kind}, {"max_degree", max_degree}};
  if (space) j["space"] = *space;
  return j;
}

AlgebraSpec AlgebraSpec::from_json(const json& j) {
  AlgebraSpec s;
  s.kind = string_field(j, "kind", "algebra");
  s.max_degree = int_field(j, "max_degree", "algebra");
  if (j.contains("space")) s.space = j.at("space");
  return s;
}

json structure_to_json(const CoalgebraStructure& s, const KTower& tower, const AlgebraSpec& spec) {
  json j = header("coalgebra-structure");
  j["tower"] = {{"max_arity", tower.max_arity}, {"max_degree", tower.max_degree}, {"mode", to_string(tower.mode)}};
  j["algebra"] = spec.to_json();
  j["through_degree"] = s.through_degree();
  j["built_arity"] = s.built_arity();
  json gens = json::array();
  for (const GeneratorDecl& g : s.operad().generators()) {
    const auto& f = s.assignment().at(static_cast<size_t>(g.id));
    if (!f || g.arity > s.built_arity()) continue;
    gens.push_back({{"id", g.id}, {"name", g.name}, {"arity", g.arity}, {"degree", g.degree}, {"phi", morphism_to_json(f->map)}});
  }
  j["generators"] = gens;
  json wit = json::array();
  for (int a = 2; a <= s.built_arity(); ++a) wit.push_back({{"arity", a}, {"witness", morphism_to_json(s.stage(a).witness)}});
  j["witnesses"] = wit;
  return j;
}

LoadedStructure structure_from_json(const json& j) {
  check_header(j, "coalgebra-structure");
  LoadedStructure out;
  const json& tw = field(j, "tower", "coalgebra-structure");
  ExtensionMode mode;
  try {
    mode = parse_extension_mode(string_field(tw, "mode", "tower"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("tower.mode: ") + e.what());
  }
  const int n = int_field(tw, "max_arity", "tower"), d = int_field(tw, "max_degree", "tower");
  if (n < 2 || d < 1) throw FormatError("tower: bad windows");
  out.tower = build_K(n, d, mode);
  out.spec = AlgebraSpec::from_json(field(j, "algebra", "coalgebra-structure"));
  const int t = int_field(j, "through_degree", "coalgebra-structure");
  if (out.spec.max_degree != t + 1) throw FormatError("algebra.max_degree: must be through_degree + 1");
  if (t < 0 || t > d) throw FormatError("through_degree: out of range");
  out.algebra = out.spec.make();
  out.structure = std::make_unique<CoalgebraStructure>(out.tower.top(), out.algebra, t);
  CoalgebraStructure& s = *out.structure;
  const int built = int_field(j, "built_arity", "coalgebra-structure");
  if (built < 2 || built > n) throw FormatError("built_arity: out of range");

  std::map<int, std::vector<std::pair<int, CoendElement>>> phis;
  const json& gens = field(j, "generators", "coalgebra-structure");
  for (size_t i = 0; i < gens.size(); ++i) {
    const std::string w = "generators[" + std::to_string(i) + "]";
    const auto id = s.operad().find(string_field(gens[i], "name", w));
    if (!id) throw FormatError(w + ".name: no such generator in the rebuilt tower");
    const GeneratorDecl& g = s.operad().generator(*id);
    if (g.arity != int_field(gens[i], "arity", w) || g.degree != int_field(gens[i], "degree", w))
      throw FormatError(w + ": arity or degree differs from the rebuilt tower");
    CoendElement f{g.arity, DGMorphism(s.context().base(), s.context().power(g.arity).module(), g.degree)};
    morphism_from_json(f.map, field(gens[i], "phi", w), w + ".phi");
    phis[g.arity].emplace_back(*id, std::move(f));
  }
  const json& wits = field(j, "witnesses", "coalgebra-structure");
  if (!wits.is_array() || static_cast<int>(wits.size()) != built - 1) throw FormatError("witnesses: one entry per arity expected");
  for (int a = 2; a <= built; ++a) {
    const std::string w = "witnesses[" + std::to_string(a - 2) + "]";
    if (int_field(wits[static_cast<size_t>(a - 2)], "arity", w) != a) throw FormatError(w + ".arity: out of order");
    ArityStage& st = s.prepare(a);
    DGMorphism h(st.psi.source(), st.psi.target(), 1);
    morphism_from_json(h, field(wits[static_cast<size_t>(a - 2)], "witness", w), w + ".witness");
    s.install(a, phis[a], h);
  }
  return out;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace einf
