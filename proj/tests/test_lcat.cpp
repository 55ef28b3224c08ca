#include <gtest/gtest.h>

#include <random>

#include "einf/lcat.hpp"

using namespace einf;

namespace {

PartialMap random_map(std::mt19937& rng, int n, int m) {
  std::vector<int> im;
  for (int x = 0; x < n; ++x) {
    const int v = static_cast<int>(rng() % (m + 1)) - 1;
    im.push_back(v);
  }
  return PartialMap(m, im);
}

}  // namespace

TEST(PartialMap, FaceAndRetraction) {
  PartialMap d = PartialMap::face(2, 2);
  EXPECT_EQ(d.to_string(), "[2→3: 1↦1, 2↦3]");
  EXPECT_EQ(compose(PartialMap::retraction(2, 2), d), PartialMap::identity(2));
  EXPECT_TRUE(PartialMap::twist(1, 2).is_bijection());
  EXPECT_EQ(PartialMap::degeneracy(1, 1), PartialMap::empty(1, 0));
  EXPECT_THROW(PartialMap::face(0, 2), std::out_of_range);
  EXPECT_THROW(compose(d, d), std::invalid_argument);
}

TEST(PartialMap, TwistIsInvolutiveUpToBlocks) {
  EXPECT_EQ(compose(PartialMap::twist(2, 1), PartialMap::twist(1, 2)), PartialMap::identity(3));
}

TEST(Decompose, RecoversRandomMaps) {
  std::mt19937 rng(13);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(rng() % 5), m = static_cast<int>(rng() % 5);
    PartialMap f = random_map(rng, n, m);
    Word w = decompose(f);
    EXPECT_EQ(evaluate(w, n), f) << f.to_string() << " = " << to_string(w);
  }
}

TEST(Generators, CountSmall) {
  auto g = generators_up_to(2);
  // [0]: id, d1, z1; [1]: id, d1, d2, z1, z2, s1; [2]: id, s1, twist
  EXPECT_EQ(g.size(), 12u);
  for (const auto& x : g) EXPECT_LE(std::max(x.source(), x.target()), 2);
}
