#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "einf/coalgebra.hpp"
#include "einf/kconstruct.hpp"
#include "einf/lalgebra.hpp"

namespace einf {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Raised on malformed structured input; the message carries the field path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j, Index rows, Index cols, const std::string& where);

/// Generators with their boundaries in text form and the stage that introduced them.
json tower_to_json(const KTower& t);
KTower tower_from_json(const json& j);
/// dims of K(n) in degrees 0..D for every arity.
json tower_dims(const KTower& t);

json to_json(const ComponentReport& r);
json to_json(const EInfinityReport& r);
json to_json(const AxiomReport& r);
json to_json(const StructureReport& r);
json to_json(const FunctorialityReport& r);

/// Which L-algebra a structure lives on: "trivial", "degenerate" (the
/// exterior fixture) or "canonical" with an embedded simplicial set.
struct AlgebraSpec {
  std::string kind = "canonical";
  std::optional<json> space;
  int max_degree = 3;

  LAlgebraPtr make() const;
  json to_json() const;
  static AlgebraSpec from_json(const json& j);
};

json structure_to_json(const CoalgebraStructure& s, const KTower& tower, const AlgebraSpec& spec);

struct LoadedStructure {
  KTower tower;
  AlgebraSpec spec;
  LAlgebraPtr algebra;
  std::unique_ptr<CoalgebraStructure> structure;
};

/// Rebuilds the tower and the algebra and installs the stored maps and
/// witnesses without lifting anything.
LoadedStructure structure_from_json(const json& j);

json parse_json_file(const std::string& path);

}  // namespace einf
