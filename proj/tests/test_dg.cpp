#include <gtest/gtest.h>

#include "einf/dg_module.hpp"
#include "support.hpp"

using namespace einf;
using namespace einf::testing;

namespace {

// Circle-like complex: one 0-cell, one 1-cell with zero boundary.
ModulePtr circle() {
  FreeDGModule::Data d;
  d.dims = {1, 1, 0};
  d.differential = {Mat(), zeros(1, 1), zeros(1, 0)};
  d.augmentation = identity(1);
  d.coaugmentation = 0;
  return FreeDGModule::make(std::move(d));
}

}  // namespace

TEST(FreeDGModule, RejectsNonZeroSquare) {
  FreeDGModule::Data d;
  d.dims = {1, 1, 1};
  d.differential = {Mat(), identity(1), identity(1)};
  EXPECT_THROW(FreeDGModule::make(std::move(d)), std::invalid_argument);
}

TEST(FreeDGModule, RejectsAugmentationNotAChainMap) {
  FreeDGModule::Data d;
  d.dims = {1, 1};
  d.differential = {Mat(), identity(1)};
  d.augmentation = identity(1);
  EXPECT_THROW(FreeDGModule::make(std::move(d)), std::invalid_argument);
}

TEST(FreeDGModule, GroundHasOneClass) {
  ModulePtr k = FreeDGModule::ground(3);
  EXPECT_EQ(k->dim(0), 1);
  EXPECT_EQ(k->dim(2), 0);
  EXPECT_EQ(homology_dim(*k, 0), 1);
  EXPECT_EQ(reduced_homology_dim(*k, 0), 0);
}

TEST(Tensor, KoszulDifferentialSquaresToZero) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    std::mt19937 rng(11 * p);
    for (int t = 0; t < 10; ++t) {
      ModulePtr a = random_complex(rng, {2, 3, 2, 1});
      ModulePtr b = random_complex(rng, {1, 2, 2});
      ModulePtr ab = tensor(a, b);
      EXPECT_FALSE(ab->check().has_value());
      EXPECT_EQ(ab->dim(1), a->dim(0) * b->dim(1) + a->dim(1) * b->dim(0));
    }
  }
}

TEST(Tensor, KunnethForCircles) {
  PrimeGuard g(3);
  ModulePtr s = circle();
  ModulePtr t = tensor(s, s);
  EXPECT_EQ(homology_dim(*t, 0), 1);
  EXPECT_EQ(homology_dim(*t, 1), 2);
  EXPECT_EQ(homology_dim(*t, 2), 1);
}

TEST(Tensor, MapTensorIsChainMap) {
  PrimeGuard g(3);
  std::mt19937 rng(5);
  ModulePtr a = random_complex(rng, {2, 2, 1});
  auto q = random_quasi_iso(rng, a, 2);
  ModulePtr src = tensor(a, a);
  ModulePtr tgt = tensor(q.n, q.n);
  DGMorphism ff = tensor(q.f, q.f, src, tgt);
  EXPECT_TRUE(ff.is_chain_map());
  EXPECT_TRUE(is_quasi_iso(ff, 1));
}

TEST(Homology, QuasiIsoDetected) {
  for (unsigned p : {2u, 3u}) {
    PrimeGuard g(p);
    std::mt19937 rng(3 + p);
    for (int t = 0; t < 10; ++t) {
      ModulePtr m = random_complex(rng, {3, 3, 2, 2});
      auto q = random_quasi_iso(rng, m, 2);
      EXPECT_TRUE(q.f.is_chain_map());
      EXPECT_TRUE(is_quasi_iso(q.f, 2));
      MappingCone c = mapping_cone(q.f);
      EXPECT_FALSE(c.cone->check().has_value());
      for (int d = 0; d <= 2; ++d) EXPECT_EQ(homology_dim(*c.cone, d), 0) << d;
    }
  }
}

TEST(Homology, ZeroMapIsNotQuasiIso) {
  ModulePtr s = circle();
  DGMorphism z(s, s, 0);
  EXPECT_FALSE(is_quasi_iso(z, 0));
  EXPECT_TRUE(is_quasi_iso(DGMorphism::identity(s), 0));
}

TEST(Homology, ClassesSeparateCycles) {
  ModulePtr s = circle();
  HomologyClasses h(*s, 1);
  EXPECT_EQ(h.dim(), 1);
  EXPECT_FALSE(h.is_boundary(unit_vec(1, 0)));
  HomologyClasses r(*s, 0, true);
  EXPECT_EQ(r.dim(), 0);
}

TEST(Homotopy, BoundaryOfRandomMapIsHomotopy) {
  PrimeGuard g(3);
  std::mt19937 rng(9);
  ModulePtr a = random_complex(rng, {2, 3, 2});
  ModulePtr b = random_complex(rng, {2, 2, 3, 1});
  for (int k : {0, 1}) {
    DGMorphism h = random_map(rng, a, b, k + 1);
    DGMorphism f = homotopy_boundary(h, k);
    EXPECT_TRUE(f.is_chain_map());
    Homotopy ht{h, DGMorphism(a, b, k), f};
    EXPECT_TRUE(ht.holds());
    Homotopy bad{h, DGMorphism(a, b, k), DGMorphism(a, b, k)};
    if (!f.is_zero()) EXPECT_FALSE(bad.holds());
  }
}

TEST(Symmetry, OrbitMajorLayout) {
  Symmetry s = Symmetry::orbit_major(3, {1, 2});
  EXPECT_EQ(s.element[1].size(), 12u);
  EXPECT_EQ(s.rep(1, 1), 6);
  const SymmetricGroup& g = symmetric_group(3);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) EXPECT_EQ(s.act(0, s.act(0, 0, a), b), s.act(0, 0, g.mul(a, b)));
}
