#include <gtest/gtest.h>

#include "einf/lifting.hpp"
#include "support.hpp"

using namespace einf;
using namespace einf::testing;

namespace {

BasisPartition first_fixed(const FreeDGModule& l, const std::vector<Index>& fixed) {
  BasisPartition p = BasisPartition::none(l);
  for (int d = 0; d <= l.max_degree(); ++d)
    for (Index b = 0; b < fixed[static_cast<size_t>(d)]; ++b) p.fixed[static_cast<size_t>(d)][static_cast<size_t>(b)] = 1;
  return p;
}

bool agrees_on_fixed(const DGMorphism& a, const DGMorphism& b, const BasisPartition& p) {
  for (int d = 0; d <= a.source()->max_degree(); ++d)
    for (Index c = 0; c < a.source()->dim(d); ++c)
      if (p.is_fixed(d, c) && !equal(a.block(d).col(c), b.block(d).col(c))) return false;
  return true;
}

}  // namespace

TEST(RelativeLift, RandomInstances) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    std::mt19937 rng(100 + p);
    for (int t = 0; t < 15; ++t) {
      ModulePtr m = random_complex(rng, {2, 3, 3, 2, 1});
      auto q = random_quasi_iso(rng, m, 2);
      std::vector<Index> dims{3, 3, 2}, fixed{1, 2, 1};
      ModulePtr l = random_complex(rng, dims, fixed);
      const int k = static_cast<int>(rng() % 2);
      DGMorphism alpha = homotopy_boundary(random_map(rng, l, m, k + 1), k);
      DGMorphism h = random_map(rng, l, q.n, k + 1);
      DGMorphism phi = compose(q.f, alpha) + homotopy_boundary(h, k);
      BasisPartition part = first_fixed(*l, fixed);
      ASSERT_TRUE(alpha.is_chain_map());
      LiftResult r = relative_lift(q.f, phi, part, alpha, h);
      EXPECT_TRUE(r.alpha.is_chain_map());
      EXPECT_TRUE(r.homotopy.holds());
      EXPECT_TRUE(agrees_on_fixed(r.alpha, alpha, part));
      EXPECT_TRUE(agrees_on_fixed(r.homotopy.map, h, part));
    }
  }
}

TEST(RelativeLift, LiftsNonTrivialCycle) {
  PrimeGuard g(3);
  std::mt19937 rng(4);
  ModulePtr m = random_complex(rng, {2, 2, 2});
  auto q = random_quasi_iso(rng, m, 2);
  // φ = f itself from L = M: the lift must be homotopic to the identity.
  LiftResult r = relative_lift(q.f, q.f, BasisPartition::none(*m), DGMorphism(m, m, 0), DGMorphism(m, q.n, 1));
  EXPECT_TRUE(r.homotopy.holds());
  EXPECT_TRUE(is_quasi_iso(r.alpha, 1));
}

TEST(NullHomotopy, IntoAcyclicTarget) {
  PrimeGuard g(2);
  std::mt19937 rng(8);
  ModulePtr l = random_complex(rng, {2, 2, 1});
  ModulePtr k = FreeDGModule::ground(3);
  auto q = random_quasi_iso(rng, k, 3);
  MappingCone c = mapping_cone(q.f);
  DGMorphism f = homotopy_boundary(random_map(rng, l, c.cone, 1), 0);
  DGMorphism h = extend_null_homotopy(f, BasisPartition::none(*l), DGMorphism(l, c.cone, 1));
  EXPECT_TRUE(equal(homotopy_boundary(h, 0).block(0), f.block(0)));
  EXPECT_TRUE((Homotopy{h, DGMorphism(l, c.cone, 0), f}.holds()));
}

TEST(NullHomotopy, CorrectsThroughCycles) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    std::mt19937 rng(21 + p);
    for (int t = 0; t < 10; ++t) {
      ModulePtr l = random_complex(rng, {2, 3, 2});
      ModulePtr n = random_complex(rng, {3, 3, 3, 2});
      DGMorphism f = homotopy_boundary(random_map(rng, l, n, 1), 0);
      DGMorphism h = null_homotopy(f);
      EXPECT_TRUE((Homotopy{h, DGMorphism(l, n, 0), f}.holds()));
    }
  }
}

TEST(NullHomotopy, RejectsEssentialMap) {
  FreeDGModule::Data d;
  d.dims = {1, 1};
  d.differential = {Mat(), zeros(1, 1)};
  ModulePtr s = FreeDGModule::make(std::move(d));
  EXPECT_THROW(null_homotopy(DGMorphism::identity(s)), LiftError);
}
