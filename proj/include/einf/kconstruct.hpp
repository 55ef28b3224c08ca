#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einf/dg_module.hpp"
#include "einf/operad.hpp"

namespace einf {

/// The periodic free k[Σ₂]-resolution of k in degrees 0..D: one orbit
/// representative e_d per degree, ∂e_d = e_{d-1}(1 + (-1)^d τ), ε(e₀σ) = 1.
/// Basis of degree d is (e_d, e_d·τ).
ModulePtr minimal_resolution(int max_degree);

/// Free operad on the resolution: generators e0..eD of arity 2.
QuasiFreeOperad resolution_operad(int max_arity, int max_degree);

enum class ExtensionMode { Homology, Cycles };
const char* to_string(ExtensionMode m);
/// Throws std::invalid_argument on anything but "homology" or "cycles".
ExtensionMode parse_extension_mode(const std::string& s);

struct AddedGenerator {
  int degree = 0;
  /// Boundary in degree-1 of the extended module (orbit-major basis).
  Vec boundary;
};

struct Extension {
  ModulePtr module;  // C followed by the free generators
  std::vector<AddedGenerator> generators;  // in order of degree
};

/// Kills H₀ of ker ε and H_d (1 ≤ d < D) of a Σ_n-free augmented complex in
/// orbit-major layout by adjoining free Σ_n-orbits, degree by degree.
Extension acyclic_extension(const FreeDGModule& c, ExtensionMode mode);

/// K₂ ⊂ K₃ ⊂ … ⊂ K_N inside arity window N and degree window D.
struct KTower {
  int max_arity = 2;
  int max_degree = 1;
  ExtensionMode mode = ExtensionMode::Homology;
  std::vector<QuasiFreeOperad> stages;       // stages[m-2] = K_m
  std::vector<std::vector<int>> added;       // ids of generators introduced by K_m

  const QuasiFreeOperad& stage(int m) const { return stages.at(static_cast<size_t>(m - 2)); }
  const QuasiFreeOperad& top() const { return stages.back(); }
};

KTower build_K(int max_arity, int max_degree, ExtensionMode mode = ExtensionMode::Homology);

/// Replaces a generator's boundary by zero in every stage that has it.
void sabotage(KTower& tower, const std::string& generator);

struct ComponentReport {
  int arity = 0;
  std::vector<Index> dims;
  std::vector<int> orbits;
  std::vector<Index> homology;  // H_0 .. H_t
  bool augmentation_onto = false;
  bool free = false;
  bool pass = false;
  std::optional<int> failing_degree;
  std::string detail;  // set when K(n) is not even a complex
};

struct EInfinityReport {
  int through_arity = 0;
  int through_degree = 0;
  std::vector<ComponentReport> components;
  bool pass = true;
};

/// Each K(n), n ≤ through_arity, must have H₀ = k via ε, H_d = 0 for
/// 1 ≤ d ≤ through_degree, and a free Σ_n basis. Needs through_degree < D.
EInfinityReport verify_E_infinity(const KTower& tower, int through_arity, int through_degree);
ComponentReport verify_component(const QuasiFreeOperad& p, int arity, int through_degree);

}  // namespace einf
