#include "einf/simplicial.hpp"

#include <bit>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace einf {

using nlohmann::json;

unsigned Simplex::mask() const {
  unsigned m = 0;
  for (int k = 0; k + 1 < static_cast<int>(eta.size()); ++k) {
    if (eta[static_cast<size_t>(k)] == eta[static_cast<size_t>(k) + 1]) m |= 1u << k;
  }
  return m;
}

std::vector<int> compose_maps(const std::vector<int>& eta, const std::vector<int>& theta) {
  std::vector<int> out;
  out.reserve(theta.size());
  for (int t : theta) out.push_back(eta[static_cast<size_t>(t)]);
  return out;
}

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> v(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

std::vector<int> eta_from_mask(int d, unsigned mask) {
  std::vector<int> eta{0};
  for (int k = 0; k < d; ++k) eta.push_back(eta.back() + ((mask >> k) & 1u ? 0 : 1));
  return eta;
}

}  // namespace

SimplicialSet::SimplicialSet(std::string name, int basepoint, std::vector<std::vector<Record>> simplices)
    : name_(std::move(name)), basepoint_(basepoint), simplices_(std::move(simplices)) {
  if (simplices_.empty() || simplices_[0].empty()) throw SimplicialError(name_ + ": no vertices");
  if (basepoint_ < 0 || basepoint_ >= count(0)) throw SimplicialError(name_ + ": basepoint is not a vertex");
  if (dimension_cap() > 16) throw SimplicialError(name_ + ": dimension cap above 16");
  for (int n = 0; n <= dimension_cap(); ++n) {
    for (const Record& r : simplices_[static_cast<size_t>(n)]) {
      if (static_cast<int>(r.faces.size()) != (n == 0 ? 0 : n + 1)) {
        throw SimplicialError(name_ + ": simplex " + r.id + " of dimension " + std::to_string(n) + " needs " +
                              std::to_string(n == 0 ? 0 : n + 1) + " faces");
      }
      for (size_t i = 0; i < r.faces.size(); ++i) {
        const Simplex& f = r.faces[i];
        if (f.dim() != n - 1 || f.base_dim < 0 || f.base_dim > n - 1 || f.base < 0 || f.base >= count(f.base_dim)) {
          throw SimplicialError(name_ + ": face d" + std::to_string(i) + " of " + r.id + " has the wrong dimension");
        }
      }
    }
  }
  // d_i d_j = d_{j-1} d_i for i < j.
  for (int n = 2; n <= dimension_cap(); ++n) {
    for (int k = 0; k < count(n); ++k) {
      const Simplex x = nondegenerate(n, k);
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (face(face(x, j), i) != face(face(x, i), j - 1)) {
            throw SimplicialError(name_ + ": d" + std::to_string(i) + "d" + std::to_string(j) + " ≠ d" +
                                  std::to_string(j - 1) + "d" + std::to_string(i) + " on " + record(n, k).id);
          }
        }
      }
    }
  }
  // d_i s_j relations on every nondegenerate simplex.
  for (int n = 0; n <= dimension_cap(); ++n) {
    for (int k = 0; k < count(n); ++k) {
      const Simplex x = nondegenerate(n, k);
      for (int j = 0; j <= n; ++j) {
        const Simplex y = degeneracy(x, j);
        for (int i = 0; i <= n + 1; ++i) {
          Simplex expect;
          if (i < j) expect = degeneracy(face(x, i), j - 1);
          else if (i == j || i == j + 1) expect = x;
          else expect = degeneracy(face(x, i - 1), j);
          if (face(y, i) != expect) {
            throw SimplicialError(name_ + ": d" + std::to_string(i) + "s" + std::to_string(j) + " relation fails on " +
                                  record(n, k).id);
          }
        }
      }
    }
  }
}

Simplex SimplicialSet::nondegenerate(int dim, int i) const { return {dim, i, identity_map(dim)}; }

Simplex SimplicialSet::face(const Simplex& s, int i) const {
  const int m = s.dim();
  if (m < 1 || i < 0 || i > m) throw std::out_of_range("face index out of range");
  std::vector<int> c;
  for (int k = 0; k <= m; ++k) {
    if (k != i) c.push_back(s.eta[static_cast<size_t>(k)]);
  }
  int missing = -1;
  std::vector<char> hit(static_cast<size_t>(s.base_dim) + 1, 0);
  for (int v : c) hit[static_cast<size_t>(v)] = 1;
  for (int v = 0; v <= s.base_dim; ++v) {
    if (!hit[static_cast<size_t>(v)]) missing = v;
  }
  if (missing < 0) return {s.base_dim, s.base, std::move(c)};
  for (int& v : c) {
    if (v > missing) --v;
  }
  const Simplex& w = record(s.base_dim, s.base).faces[static_cast<size_t>(missing)];
  return {w.base_dim, w.base, compose_maps(w.eta, c)};
}

Simplex SimplicialSet::degeneracy(const Simplex& s, int j) const {
  const int m = s.dim();
  if (j < 0 || j > m) throw std::out_of_range("degeneracy index out of range");
  std::vector<int> sigma;
  for (int k = 0; k <= m + 1; ++k) sigma.push_back(k <= j ? k : k - 1);
  return {s.base_dim, s.base, compose_maps(s.eta, sigma)};
}

Simplex SimplicialSet::base_simplex(int d) const { return {0, basepoint_, std::vector<int>(static_cast<size_t>(d) + 1, 0)}; }

const std::vector<Simplex>& SimplicialSet::simplices(int d) const {
  auto it = all_.find(d);
  if (it != all_.end()) return it->second;
  std::vector<Simplex> out;
  for (int b = 0; b <= std::min(d, dimension_cap()); ++b) {
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << d); ++m) {
      if (std::popcount(m) == d - b) masks.push_back(m);
    }
    for (int z = 0; z < count(b); ++z) {
      for (unsigned m : masks) {
        Simplex s{b, z, eta_from_mask(d, m)};
        index_[s] = static_cast<int>(out.size());
        out.push_back(std::move(s));
      }
    }
  }
  return all_.emplace(d, std::move(out)).first->second;
}

int SimplicialSet::index_of(const Simplex& s) const {
  simplices(s.dim());
  return index_.at(s);
}

std::string SimplicialSet::simplex_name(const Simplex& s) const {
  std::string out;
  const unsigned m = s.mask();
  for (int k = s.dim() - 1; k >= 0; --k) {
    if ((m >> k) & 1u) out += "s" + std::to_string(k);
  }
  return out + (out.empty() ? "" : " ") + record(s.base_dim, s.base).id;
}

int SimplicialSet::euler_characteristic() const {
  int chi = 0;
  for (int n = 0; n <= dimension_cap(); ++n) chi += (n % 2 ? -1 : 1) * count(n);
  return chi;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SimplicialError("simplicial set: " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string id_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(where, "ids must be strings or integers");
}

}  // namespace

SimplicialSet SimplicialSet::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SimplicialError(std::string("simplicial set: ") + e.what());
  }
  const std::string name = field(doc, "name", "$").is_string() ? doc["name"].get<std::string>() : "";
  const json& simp = field(doc, "simplices", "$");
  if (!simp.is_array() || simp.empty()) fail("$.simplices", "expected a non-empty array of dimensions");
  if (doc.contains("dimension_cap")) {
    const json& cap = doc["dimension_cap"];
    if (!cap.is_number_integer() || cap.get<int>() != static_cast<int>(simp.size()) - 1) {
      fail("$.dimension_cap", "must equal the number of listed dimensions minus one");
    }
  }
  std::map<std::string, std::pair<int, int>> ids;
  std::vector<std::vector<Record>> records(simp.size());
  for (size_t n = 0; n < simp.size(); ++n) {
    const std::string where = "$.simplices[" + std::to_string(n) + "]";
    if (!simp[n].is_array()) fail(where, "expected an array");
    for (size_t k = 0; k < simp[n].size(); ++k) {
      const std::string w = where + "[" + std::to_string(k) + "]";
      const std::string id = id_string(field(simp[n][k], "id", w), w + ".id");
      if (!ids.emplace(id, std::make_pair(static_cast<int>(n), static_cast<int>(k))).second) fail(w + ".id", "duplicate id '" + id + "'");
      records[n].push_back({id, {}});
    }
  }
  // Faces are resolved after all ids are known.
  for (size_t n = 0; n < simp.size(); ++n) {
    for (size_t k = 0; k < simp[n].size(); ++k) {
      const std::string w = "$.simplices[" + std::to_string(n) + "][" + std::to_string(k) + "]";
      const json& faces = simp[n][k].contains("faces") ? simp[n][k]["faces"] : json::array();
      if (!faces.is_array()) fail(w + ".faces", "expected an array");
      for (size_t i = 0; i < faces.size(); ++i) {
        const std::string fw = w + ".faces[" + std::to_string(i) + "]";
        const std::string base = id_string(field(faces[i], "base", fw), fw + ".base");
        auto it = ids.find(base);
        if (it == ids.end()) fail(fw + ".base", "unknown simplex '" + base + "'");
        Simplex s{it->second.first, it->second.second, identity_map(it->second.first)};
        if (faces[i].contains("degeneracies")) {
          const json& degs = faces[i]["degeneracies"];
          if (!degs.is_array()) fail(fw + ".degeneracies", "expected an array");
          for (auto jt = degs.rbegin(); jt != degs.rend(); ++jt) {
            if (!jt->is_number_integer()) fail(fw + ".degeneracies", "indices must be integers");
            const int j = jt->get<int>();
            if (j < 0 || j > s.dim()) fail(fw + ".degeneracies", "index " + std::to_string(j) + " out of range");
            std::vector<int> sigma;
            for (int q = 0; q <= s.dim() + 1; ++q) sigma.push_back(q <= j ? q : q - 1);
            s.eta = compose_maps(s.eta, sigma);
          }
        }
        records[n][k].faces.push_back(std::move(s));
      }
    }
  }
  const std::string bp = id_string(field(doc, "basepoint", "$"), "$.basepoint");
  auto it = ids.find(bp);
  if (it == ids.end() || it->second.first != 0) fail("$.basepoint", "'" + bp + "' is not a vertex");
  return SimplicialSet(name, it->second.second, std::move(records));
}

SimplicialSet SimplicialSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimplicialError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string SimplicialSet::to_json() const {
  json doc;
  doc["name"] = name_;
  doc["basepoint"] = record(0, basepoint_).id;
  doc["dimension_cap"] = dimension_cap();
  json simp = json::array();
  for (int n = 0; n <= dimension_cap(); ++n) {
    json level = json::array();
    for (const Record& r : simplices_[static_cast<size_t>(n)]) {
      json faces = json::array();
      for (const Simplex& f : r.faces) {
        json degs = json::array();
        const unsigned m = f.mask();
        for (int k = f.dim() - 1; k >= 0; --k) {
          if ((m >> k) & 1u) degs.push_back(k);
        }
        faces.push_back({{"base", record(f.base_dim, f.base).id}, {"degeneracies", degs}});
      }
      level.push_back({{"id", r.id}, {"faces", faces}});
    }
    simp.push_back(level);
  }
  doc["simplices"] = simp;
  return doc.dump(2);
}

ProductChains::ProductChains(std::shared_ptr<const SimplicialSet> x, int n, int max_degree)
    : x_(std::move(x)), n_(n) {
  if (n < 0) throw std::invalid_argument("ProductChains: negative power");
  tuples_.resize(static_cast<size_t>(max_degree) + 1);
  index_.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    const auto& simp = x_->simplices(d);
    std::vector<int> cur;
    const unsigned all = d == 0 ? 0u : (1u << d) - 1;
    std::function<void(unsigned)> rec = [&](unsigned acc) {
      if (static_cast<int>(cur.size()) == n_) {
        if (acc == 0) {
          index_[static_cast<size_t>(d)][cur] = static_cast<Index>(tuples_[static_cast<size_t>(d)].size());
          tuples_[static_cast<size_t>(d)].push_back(cur);
        }
        return;
      }
      for (int s = 0; s < static_cast<int>(simp.size()); ++s) {
        cur.push_back(s);
        rec(acc & simp[static_cast<size_t>(s)].mask());
        cur.pop_back();
      }
    };
    rec(all);
  }
  FreeDGModule::Data data;
  for (int d = 0; d <= max_degree; ++d) data.dims.push_back(static_cast<Index>(tuples_[static_cast<size_t>(d)].size()));
  data.differential.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    Mat del = zeros(data.dims[static_cast<size_t>(d) - 1], data.dims[static_cast<size_t>(d)]);
    const auto& simp = x_->simplices(d);
    for (Index b = 0; b < data.dims[static_cast<size_t>(d)]; ++b) {
      const auto& t = tuples_[static_cast<size_t>(d)][static_cast<size_t>(b)];
      for (int i = 0; i <= d; ++i) {
        std::vector<Simplex> f;
        for (int s : t) f.push_back(x_->face(simp[static_cast<size_t>(s)], i));
        const Index r = index_of(f);
        if (r >= 0) del(r, b) += sign_power(i);
      }
    }
    data.differential[static_cast<size_t>(d)] = std::move(del);
  }
  data.augmentation = Mat::Constant(1, data.dims[0], Fp(1));
  data.coaugmentation = index_of(std::vector<Simplex>(static_cast<size_t>(n_), x_->base_simplex(0)));
  data.names.resize(static_cast<size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) {
    for (const auto& t : tuples_[static_cast<size_t>(d)]) {
      std::string s = "(";
      for (size_t i = 0; i < t.size(); ++i) {
        s += (i ? "," : "") + x_->simplex_name(x_->simplices(d)[static_cast<size_t>(t[i])]);
      }
      data.names[static_cast<size_t>(d)].push_back(s + ")");
    }
  }
  data.label = "C(" + x_->name() + "^" + std::to_string(n_) + ")";
  module_ = std::make_shared<const FreeDGModule>(std::move(data), false);
}

Index ProductChains::index(int d, const std::vector<int>& tuple) const {
  if (d < 0 || d >= static_cast<int>(index_.size())) return -1;
  auto it = index_[static_cast<size_t>(d)].find(tuple);
  return it == index_[static_cast<size_t>(d)].end() ? -1 : it->second;
}

Index ProductChains::index_of(const std::vector<Simplex>& tuple) const {
  const int d = tuple.empty() ? 0 : tuple[0].dim();
  if (tuple.empty()) return index(0, {});
  std::vector<int> ids;
  for (const Simplex& s : tuple) ids.push_back(x_->index_of(s));
  return index(d, ids);
}

ModulePtr normalized_chains(std::shared_ptr<const SimplicialSet> x, int n, int max_degree) {
  return ProductChains(std::move(x), n, max_degree).module();
}

std::vector<Shuffle> shuffles(int p, int q) {
  std::vector<Shuffle> out;
  const int n = p + q;
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) != p) continue;
    Shuffle s;
    s.left.push_back(0);
    s.right.push_back(0);
    int seen = 0;
    for (int k = 0; k < n; ++k) {
      const bool horizontal = (m >> k) & 1u;
      s.left.push_back(s.left.back() + (horizontal ? 1 : 0));
      s.right.push_back(s.right.back() + (horizontal ? 0 : 1));
      if (horizontal) {
        s.parity ^= (k - seen) & 1;
        ++seen;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

DGMorphism em_shuffle(const ProductChains& a, const ProductChains& b, const ProductChains& ab, const ModulePtr& source) {
  const TensorLayout* lay = source->tensor_layout();
  if (lay == nullptr) throw std::invalid_argument("em_shuffle: source is not a tensor product");
  if (ab.power() != a.power() + b.power()) throw std::invalid_argument("em_shuffle: powers do not add up");
  const SimplicialSet& x = a.space();
  const int top = std::min(source->max_degree(), ab.module()->max_degree());
  std::vector<Mat> blocks;
  std::map<std::pair<int, int>, std::vector<Shuffle>> cache;
  for (int d = 0; d <= source->max_degree(); ++d) {
    Mat blk = zeros(ab.module()->dim(d), source->dim(d));
    if (d <= top) {
      for (Index k = 0; k < source->dim(d); ++k) {
        const auto e = lay->decode(d, k);
        const int p = e.p, q = d - e.p;
        auto& sh = cache[{p, q}];
        if (sh.empty()) sh = shuffles(p, q);
        const auto& ta = a.tuple(p, e.i);
        const auto& tb = b.tuple(q, e.j);
        for (const Shuffle& s : sh) {
          std::vector<Simplex> out;
          for (int id : ta) {
            const Simplex& z = x.simplices(p)[static_cast<size_t>(id)];
            out.push_back({z.base_dim, z.base, compose_maps(z.eta, s.left)});
          }
          for (int id : tb) {
            const Simplex& z = x.simplices(q)[static_cast<size_t>(id)];
            out.push_back({z.base_dim, z.base, compose_maps(z.eta, s.right)});
          }
          if (out.empty()) {
            if (d == 0) blk(0, k) += Fp(1);
            continue;
          }
          const Index r = ab.index_of(out);
          if (r >= 0) blk(r, k) += sign_power(s.parity);
        }
      }
    }
    blocks.push_back(std::move(blk));
  }
  return DGMorphism(source, ab.module(), 0, std::move(blocks));
}

DGMorphism induced_map(const ProductChains& from, const ProductChains& to, const PartialMap& alpha) {
  if (alpha.source() != to.power() || alpha.target() != from.power()) {
    throw std::invalid_argument("induced_map: " + alpha.to_string() + " does not match the powers");
  }
  const SimplicialSet& x = from.space();
  std::vector<Mat> blocks;
  for (int d = 0; d <= from.module()->max_degree(); ++d) {
    Mat blk = zeros(to.module()->dim(d), from.module()->dim(d));
    if (d <= to.module()->max_degree()) {
      const auto& simp = x.simplices(d);
      const Simplex star = x.base_simplex(d);
      for (Index b = 0; b < from.module()->dim(d); ++b) {
        const auto& t = from.tuple(d, b);
        std::vector<Simplex> out;
        for (int j = 0; j < alpha.source(); ++j) {
          out.push_back(alpha.defined(j) ? simp[static_cast<size_t>(t[static_cast<size_t>(alpha(j))])] : star);
        }
        const Index r = to.index_of(out);
        if (out.empty() && d > 0) continue;
        if (r >= 0) blk(r, b) += Fp(1);
      }
    }
    blocks.push_back(std::move(blk));
  }
  return DGMorphism(from.module(), to.module(), 0, std::move(blocks));
}

}  // namespace einf
