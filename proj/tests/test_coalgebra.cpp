#include <gtest/gtest.h>

#include <random>

#include "einf/coalgebra.hpp"
#include "einf/kconstruct.hpp"
#include "einf/serialize.hpp"
#include "support.hpp"

using namespace einf;

namespace {

std::shared_ptr<const SimplicialSet> load(const std::string& name) {
  return std::make_shared<const SimplicialSet>(SimplicialSet::load(std::string(EINF_FIXTURES) + "/" + name));
}

std::string summary(const StructureReport& r) {
  std::string s;
  for (const auto& a : r.arities)
    s += "j=" + std::to_string(a.arity) + " chain=" + std::to_string(a.chain_residual) +
         " witness=" + std::to_string(a.witness_residual) + " eq=" + std::to_string(a.equivariance_residual) + " " +
         a.detail + "; ";
  return s;
}

// Front p-face and back q-face of an n-simplex, cup product of cochains on
// normalized chains of X.
Vec alexander_whitney(const ProductChains& c, int p, const Vec& u, int q, const Vec& v) {
  const SimplicialSet& x = c.space();
  const int n = p + q;
  Vec out = zero_vec(c.module()->dim(n));
  for (Index b = 0; b < out.size(); ++b) {
    const Simplex s = x.simplices(n)[static_cast<size_t>(c.tuple(n, b)[0])];
    Simplex front = s, back = s;
    for (int i = n; i > p; --i) front = x.face(front, i);
    for (int i = 0; i < p; ++i) back = x.face(back, 0);
    const Index f = c.index_of({front}), k = c.index_of({back});
    if (f < 0 || k < 0) continue;
    out(b) = u(f) * v(k);
  }
  return out;
}

}  // namespace

TEST(Coalgebra, WitnessesHoldExactly) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    const KTower t = build_K(3, 3);
    const std::vector<std::pair<std::string, LAlgebraPtr>> algebras = {
        {"trivial", make_trivial(3)},
        {"degenerate", make_degenerate(exterior_fixture(3))},
        {"S1", make_canonical(load("s1.json"), 3)},
        {"RP2", make_canonical(load("rp2.json"), 3)}};
    for (const auto& [name, a] : algebras) {
      const auto s = CoalgebraStructure::build(t.top(), a, 2);
      const StructureReport r = verify_structure(*s);
      EXPECT_TRUE(r.pass) << name << " p=" << p << " " << summary(r);
      ASSERT_EQ(r.arities.size(), 2u);
      for (const auto& c : r.arities) {
        EXPECT_EQ(c.witness_residual, 0);
        EXPECT_EQ(c.equivariance_residual, 0);
        EXPECT_GT(c.generators, 0);
      }
    }
  }
}

TEST(Coalgebra, UnitGoesToIdentity) {
  const KTower t = build_K(2, 3);
  CoalgebraStructure s(t.top(), make_canonical(load("s1.json"), 3), 2);
  s.build_phi2();
  const CoendElement u = s.evaluate_phi(operad_unit());
  EXPECT_TRUE(s.context().equal(u, s.context().unit()));
}

TEST(Coalgebra, ArityTwoAgreesAfterExtension) {
  const KTower t = build_K(3, 3);
  const auto a = make_canonical(load("rp2.json"), 3);
  CoalgebraStructure s2(t.top(), a, 2), s3(t.top(), a, 2);
  s2.build_phi2();
  s3.build_phi2();
  s3.extend_phi(2);
  for (const GeneratorDecl& g : t.top().generators()) {
    if (g.arity != 2) continue;
    EXPECT_EQ(s2.assignment()[static_cast<size_t>(g.id)]->map, s3.assignment()[static_cast<size_t>(g.id)]->map) << g.name;
  }
}

TEST(Coalgebra, CompositesAreEquivariant) {
  const KTower t = build_K(3, 3);
  const auto s = CoalgebraStructure::build(t.top(), make_canonical(load("s1.json"), 3), 2);
  const CoendContext& ctx = s->context();
  const OperadElement e0 = corolla(t.top(), *t.top().find("e0"));
  const OperadElement e1 = corolla(t.top(), *t.top().find("e1"));
  const OperadElement x = gamma(t.top(), e1, {e0, operad_unit()});
  for (const Permutation& sigma : symmetric_group(3).elements) {
    const CoendElement lhs = s->evaluate_phi(sigma_action(x, sigma));
    EXPECT_TRUE(ctx.equal(lhs, ctx.act(s->evaluate_phi(x), sigma)));
  }
  const CoendElement composite = ctx.gamma(s->evaluate_phi(e1), {s->evaluate_phi(e0), ctx.unit()});
  EXPECT_TRUE(ctx.equal(s->evaluate_phi(x), composite));
}

TEST(Steenrod, ProjectivePlane) {
  const KTower t = build_K(2, 3);
  CoalgebraStructure s(t.top(), make_canonical(load("rp2.json"), 3), 2);
  s.build_phi2();
  const ModulePtr a1 = s.algebra()->value(1);
  const Cohomology h1(a1, 1), h2(a1, 2);
  ASSERT_EQ(h1.dim(), 1);
  ASSERT_EQ(h2.dim(), 1);
  const Vec& a = h1.representatives()[0];
  EXPECT_EQ(h1.classify(steenrod_square(s, 0, 1, a)), h1.classify(a));
  const Vec sq1 = h2.classify(steenrod_square(s, 1, 1, a));
  EXPECT_FALSE(is_zero(sq1));
  EXPECT_EQ(sq1, h2.classify(cup_i(s, 0, 1, a, 1, a)));
  EXPECT_THROW(steenrod_square(s, 2, 1, a), std::invalid_argument);
}

TEST(Steenrod, CircleSquaresVanish) {
  const KTower t = build_K(2, 3);
  CoalgebraStructure s(t.top(), make_canonical(load("s1.json"), 3), 2);
  s.build_phi2();
  const Cohomology h1(s.algebra()->value(1), 1);
  ASSERT_EQ(h1.dim(), 1);
  EXPECT_TRUE(is_zero(steenrod_square(s, 1, 1, h1.representatives()[0])));
}

TEST(Steenrod, RequiresCharacteristicTwo) {
  PrimeGuard g(3);
  const KTower t = build_K(2, 3);
  CoalgebraStructure s(t.top(), make_canonical(load("rp2.json"), 3), 2);
  s.build_phi2();
  EXPECT_THROW(steenrod_square(s, 1, 1, unit_vec(1, 0)), std::invalid_argument);
}

TEST(Cup, AgreesWithAlexanderWhitneyOnCohomology) {
  for (const char* name : {"rp2.json", "rp2_6v.json"}) {
    const KTower t = build_K(2, 3);
    const auto alg = make_canonical(load(name), 3);
    CoalgebraStructure s(t.top(), alg, 2);
    s.build_phi2();
    const ProductChains& c = *canonical_chains(*alg, 1);
    const Cohomology h1(alg->value(1), 1), h2(alg->value(1), 2);
    for (const Vec& u : h1.representatives()) {
      for (const Vec& v : h1.representatives()) {
        const Vec aw = alexander_whitney(c, 1, u, 1, v);
        ASSERT_TRUE(h2.is_cocycle(aw));
        EXPECT_EQ(h2.classify(cup_i(s, 0, 1, u, 1, v)), h2.classify(aw)) << name;
      }
    }
  }
}

TEST(Cup, OneCoboundaryIdentity) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    std::mt19937 rng(11);
    const KTower t = build_K(2, 4);
    for (const char* name : {"rp2.json", "s1.json"}) {
      CoalgebraStructure s(t.top(), make_canonical(load(name), 4), 3);
      s.build_phi2();
      const FreeDGModule& a = *s.context().base();
      int checked = 0;
      for (int i = 0; i < 20; ++i) {
        for (auto [dp, dq] : {std::pair{1, 1}, std::pair{0, 2}, std::pair{2, 0}, std::pair{1, 0}}) {
          const Vec u = einf::testing::random_mat(rng, a.dim(dp), 1);
          const Vec v = einf::testing::random_mat(rng, a.dim(dq), 1);
          EXPECT_TRUE(is_zero(cup1_coboundary_defect(s, dp, u, dq, v))) << name << " p=" << p;
          ++checked;
        }
      }
      EXPECT_EQ(checked, 80);
    }
  }
}

TEST(Functoriality, CollapseAndIdentity) {
  const KTower t = build_K(3, 3);
  const auto s1 = make_canonical(load("s1.json"), 3);
  const auto triv = make_trivial(3);
  const auto a = CoalgebraStructure::build(t.top(), s1, 2);
  const auto b = CoalgebraStructure::build(t.top(), triv, 2);
  const FunctorialityReport r = functoriality_check(*a, *b, collapse_to_trivial(s1, triv));
  EXPECT_TRUE(r.pass);
  ASSERT_FALSE(r.entries.empty());
  Index classes = 0;
  for (const auto& e : r.entries) classes += e.classes;
  EXPECT_GT(classes, 0);
  EXPECT_TRUE(functoriality_check(*a, *a, identity_morphism(s1)).pass);
}

TEST(Serialize, StructureRoundTrip) {
  const KTower t = build_K(3, 3);
  AlgebraSpec spec;
  spec.kind = "canonical";
  spec.space = json::parse(load("rp2.json")->to_json());
  spec.max_degree = 3;
  const auto s = CoalgebraStructure::build(t.top(), spec.make(), 2);
  const json j = structure_to_json(*s, t, spec);
  const LoadedStructure l = structure_from_json(j);
  EXPECT_EQ(l.structure->built_arity(), 3);
  EXPECT_TRUE(verify_structure(*l.structure).pass);
  EXPECT_EQ(structure_to_json(*l.structure, l.tower, l.spec), j);
}

TEST(Serialize, TamperedWitnessIsCaught) {
  const KTower t = build_K(3, 3);
  AlgebraSpec spec;
  spec.space = json::parse(load("rp2.json")->to_json());
  const auto s = CoalgebraStructure::build(t.top(), spec.make(), 2);
  for (size_t w = 0; w < 2; ++w) {
    json j = structure_to_json(*s, t, spec);
    auto& blocks = j["witnesses"][w]["witness"]["blocks"];
    ASSERT_FALSE(blocks.empty()) << "arity " << w + 2;
    auto& entries = blocks[0]["matrix"]["entries"];
    entries.erase(entries.begin());
    const StructureReport r = verify_structure(*structure_from_json(j).structure);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.arities[w].witness_residual, 0);
    EXPECT_EQ(r.arities[1 - w].witness_residual, 0);
  }
}

TEST(Serialize, TamperedGeneratorIsCaught) {
  const KTower t = build_K(2, 3);
  AlgebraSpec spec;
  spec.space = json::parse(load("s1.json")->to_json());
  const auto s = CoalgebraStructure::build(t.top(), spec.make(), 2);
  json j = structure_to_json(*s, t, spec);
  for (auto& g : j["generators"]) {
    if (g["name"] == "e0") g["phi"]["blocks"] = json::array();
  }
  const StructureReport r = verify_structure(*structure_from_json(j).structure);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.arities[0].witness_residual, 0);
}

TEST(Serialize, RejectsMalformedStructure) {
  const KTower t = build_K(2, 3);
  AlgebraSpec spec;
  spec.kind = "trivial";
  const auto s = CoalgebraStructure::build(t.top(), spec.make(), 2);
  json j = structure_to_json(*s, t, spec);
  j["generators"][0]["phi"]["blocks"][0]["matrix"]["rows"] = 99;
  EXPECT_THROW(structure_from_json(j), FormatError);
  json k = structure_to_json(*s, t, spec);
  k["algebra"]["kind"] = "sphere";
  EXPECT_THROW(structure_from_json(k), FormatError);
}
