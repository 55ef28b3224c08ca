#include <gtest/gtest.h>

#include "einf/lalgebra.hpp"

using namespace einf;

namespace {

std::shared_ptr<const SimplicialSet> load(const std::string& name) {
  return std::make_shared<const SimplicialSet>(SimplicialSet::load(std::string(EINF_FIXTURES) + "/" + name));
}

std::string summary(const AxiomReport& r) {
  std::string s;
  for (const auto& a : r.results) s += a.axiom + (a.pass ? " ok; " : " FAIL: " + a.detail + "; ");
  return s;
}

}  // namespace

TEST(LAlgebra, TrivialSatisfiesAxioms) {
  const auto rep = check_axioms(*make_trivial(3), 3, 2);
  EXPECT_TRUE(rep.pass) << summary(rep);
}

TEST(LAlgebra, DegenerateExteriorSatisfiesAxioms) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    const auto a = make_degenerate(exterior_fixture(3));
    const auto rep = check_axioms(*a, 3, 2);
    EXPECT_TRUE(rep.pass) << "p=" << p << " " << summary(rep);
    EXPECT_GT(rep.find("naturality")->checked, 0);
  }
}

TEST(LAlgebra, DegenerateDiagonalIsCoproduct) {
  PrimeGuard g(3);
  const auto a = make_degenerate(exterior_fixture(2));
  const DGMorphism diag = a->induced(PartialMap::degeneracy(1, 2));
  // x ↦ x⊗1 + 1⊗x
  const Mat& blk = diag.block(1);
  ASSERT_EQ(blk.cols(), 1);
  int ones = 0;
  for (Index r = 0; r < blk.rows(); ++r) ones += blk(r, 0) == Fp(1) ? 1 : 0;
  EXPECT_EQ(ones, 2);
}

TEST(LAlgebra, RejectsBrokenCounit) {
  CoalgebraFixture c = exterior_fixture(2);
  c.delta[1] = {{{1, 0, Fp(1)}}};
  EXPECT_THROW(make_degenerate(c), std::invalid_argument);
}

TEST(LAlgebra, CanonicalSatisfiesAxioms) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    const auto rep = check_axioms(*make_canonical(load("s1.json"), 3), 3, 2);
    EXPECT_TRUE(rep.pass) << "p=" << p << " " << summary(rep);
  }
  const auto rep = check_axioms(*make_canonical(load("rp2.json"), 3), 3, 2);
  EXPECT_TRUE(rep.pass) << summary(rep);
}

TEST(LAlgebra, TensorOfLAlgebras) {
  PrimeGuard g(3);
  const auto t = tensor_L(make_canonical(load("s1.json"), 2), make_degenerate(exterior_fixture(2)));
  const auto rep = check_axioms(*t, 2, 1);
  EXPECT_TRUE(rep.pass) << summary(rep);
}

TEST(LAlgebra, SabotagedProductIsCaught) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    const auto rep = check_axioms(*sabotage_mu(make_canonical(load("s1.json"), 3)), 3, 2);
    EXPECT_FALSE(rep.pass) << "p=" << p;
    bool named = false;
    for (const auto& r : rep.results) named = named || r.detail.find("μ_{1,1}") != std::string::npos;
    EXPECT_TRUE(named) << summary(rep);
  }
}

TEST(LMorphism, CollapseOfAPoint) {
  const auto triv = make_trivial(3);
  const auto pt = make_canonical(load("point.json"), 3);
  const LMorphism f = collapse_to_trivial(pt, triv);
  EXPECT_TRUE(check_morphism(f, 3, 2).pass);
  const auto q = is_quasi_iso_morphism(f, 1, 2, true);
  EXPECT_TRUE(q.at_k);
  EXPECT_TRUE(q.propagated);

  const auto s1 = make_canonical(load("s1.json"), 3);
  const LMorphism g = collapse_to_trivial(s1, triv);
  EXPECT_TRUE(check_morphism(g, 3, 2).pass);
  EXPECT_FALSE(is_quasi_iso_morphism(g, 1, 2).at_k);
  EXPECT_TRUE(check_morphism(identity_morphism(s1), 3, 2).pass);
}
