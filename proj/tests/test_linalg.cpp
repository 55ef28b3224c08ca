#include <gtest/gtest.h>

#include <random>

#include "einf/matrix.hpp"

using namespace einf;

namespace {

Mat random_mat(std::mt19937& rng, Index r, Index c) {
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Fp(static_cast<long long>(rng() % Fp::prime()));
  return m;
}

}  // namespace

TEST(Echelon, KernelAndSolveRandom) {
  for (unsigned p : {2u, 3u, 5u}) {
    PrimeGuard g(p);
    std::mt19937 rng(7 + p);
    for (int trial = 0; trial < 40; ++trial) {
      const Index r = 1 + rng() % 7, c = 1 + rng() % 7;
      Mat a = random_mat(rng, r, c);
      Echelon e(a, {.transform = true});
      Mat k = e.kernel();
      EXPECT_EQ(k.cols(), c - e.rank());
      EXPECT_TRUE(is_zero(a * k));
      Vec x = random_mat(rng, c, 1);
      Vec b = a * x;
      auto y = e.solve(b);
      ASSERT_TRUE(y.has_value());
      EXPECT_TRUE(equal(a * *y, b));
    }
  }
}

TEST(Echelon, DetectsInconsistentSystem) {
  Mat a = zeros(2, 1);
  a(0, 0) = 1;
  Vec b = zero_vec(2);
  b(1) = 1;
  EXPECT_FALSE(solve_linear(a, b).has_value());
}

TEST(Echelon, RankOfKnownMatrix) {
  PrimeGuard g(3);
  Mat a(2, 2);
  a << Fp(1), Fp(2), Fp(2), Fp(1);  // det = -3 = 0 mod 3
  EXPECT_EQ(rank(a), 1);
}

TEST(Subspace, TagsTrackCombinations) {
  PrimeGuard g(5);
  Subspace s(3, 2);
  Vec u(3), v(3);
  u << Fp(1), Fp(2), Fp(0);
  v << Fp(0), Fp(1), Fp(1);
  EXPECT_TRUE(s.insert(u, unit_vec(2, 0)));
  EXPECT_TRUE(s.insert(v, unit_vec(2, 1)));
  EXPECT_FALSE(s.insert(u + v));
  Vec w = u * Fp(3) + v * Fp(4);
  auto tag = s.tag_of(w);
  ASSERT_TRUE(tag.has_value());
  EXPECT_EQ((*tag)(0), Fp(3));
  EXPECT_EQ((*tag)(1), Fp(4));
  EXPECT_FALSE(s.contains(unit_vec(3, 2)));
}
