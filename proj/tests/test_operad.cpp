#include <gtest/gtest.h>

#include <random>

#include "einf/operad.hpp"

using namespace einf;

namespace {

// e0, e1, e2 in arity 2 with ∂e_d = e_{d-1}(1 + (-1)^d τ), plus a ternary
// degree-1 generator whose boundary is the associator of e0.
QuasiFreeOperad small_operad(int max_arity = 4, int max_degree = 4) {
  QuasiFreeOperad p(max_arity, max_degree);
  p.add_generator("e0", 2, 0, OperadElement(2, -1), Fp(1));
  p.add_generator("e1", 2, 1, parse_element(p, "e0(1,2) - e0(2,1)", 2, 0));
  p.add_generator("e2", 2, 2, parse_element(p, "e1(1,2) + e1(2,1)", 2, 1));
  p.add_generator("m3", 3, 1, parse_element(p, "e0(e0(1,2),3) - e0(1,e0(2,3))", 3, 0));
  return p;
}

OperadElement random_element(const QuasiFreeOperad& p, std::mt19937& rng, int arity, int degree) {
  OperadElement x(arity, degree);
  if (arity == 1 && degree == 0) return operad_unit();
  auto b = basis(p, arity, degree);
  if (b.empty()) return x;
  for (int k = 0; k < 3; ++k) x.add(b[rng() % b.size()], Fp(static_cast<long long>(1 + rng() % (Fp::prime() - 1))));
  return x;
}

// Random arity profile summing to at most `budget`, each part ≥ 1.
std::vector<int> random_arities(std::mt19937& rng, int parts, int budget) {
  std::vector<int> a(static_cast<size_t>(parts), 1);
  int left = budget - parts;
  for (auto& x : a) {
    if (left <= 0) break;
    const int add = static_cast<int>(rng() % (left + 1));
    x += add;
    left -= add;
  }
  return a;
}

int random_degree(std::mt19937& rng, int arity) { return arity == 1 ? 0 : static_cast<int>(rng() % 2); }

}  // namespace

TEST(Operad, ParseRoundTrip) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  OperadElement x = parse_element(p, "e1(e0(1,3),2) + 2*e0(2,e1(3,1))", 3, 1);
  EXPECT_FALSE(x.is_zero());
  OperadElement y = parse_element(p, "e1(e0(1,3),2)", 3, 1);
  EXPECT_EQ(parse_element(p, to_string(p, y), 3, 1), y);
  EXPECT_THROW(parse_element(p, "e7(1,2)", 2, 0), std::invalid_argument);
  EXPECT_THROW(parse_element(p, "e0(1,1)", 2, 0), std::invalid_argument);
}

TEST(Operad, RejectsNonCycleBoundary) {
  QuasiFreeOperad p = small_operad();
  EXPECT_THROW(p.add_generator("bad", 2, 2, parse_element(p, "e1(1,2)", 2, 1)), std::invalid_argument);
  EXPECT_THROW(p.add_generator("e0", 2, 0, OperadElement(2, -1)), std::invalid_argument);
}

TEST(Operad, BasisCounts) {
  QuasiFreeOperad p = small_operad();
  EXPECT_EQ(basis(p, 2, 3).size(), 0u);
  EXPECT_EQ(basis(p, 2, 1).size(), 2u);
  EXPECT_EQ(basis(p, 3, 0).size(), 12u);
  // degree 1 in arity 3: e1 on top or bottom (2 shapes x 2) + m3
  EXPECT_EQ(basis_representatives(p, 3, 1).size(), 5u);
}

TEST(Operad, DifferentialSquaresToZero) {
  for (unsigned pr : {2u, 3u}) {
    PrimeGuard g(pr);
    QuasiFreeOperad p = small_operad();
    std::mt19937 rng(1 + pr);
    for (int t = 0; t < 50; ++t) {
      const int a = 2 + static_cast<int>(rng() % 3);
      const int d = 1 + static_cast<int>(rng() % 3);
      OperadElement x = random_element(p, rng, a, d);
      EXPECT_TRUE(differential(p, differential(p, x)).is_zero()) << to_string(p, x);
    }
  }
}

TEST(Operad, GammaAssociative) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    const int r = 1 + static_cast<int>(rng() % 2) + 1;
    OperadElement f = random_element(p, rng, r, static_cast<int>(rng() % 2));
    auto ga = random_arities(rng, r, 3);
    std::vector<OperadElement> gs;
    int total = 0;
    for (int a : ga) {
      gs.push_back(random_element(p, rng, a, random_degree(rng, a)));
      total += a;
    }
    auto ha = random_arities(rng, total, 4);
    std::vector<OperadElement> hs;
    for (int a : ha) hs.push_back(random_element(p, rng, a, random_degree(rng, a)));
    OperadElement lhs = gamma(p, gamma(p, f, gs), hs);
    // Regrouping moves each h-block past the later g's.
    std::vector<OperadElement> inner;
    size_t k = 0;
    int parity = 0, later_g = 0;
    for (const auto& x : gs) later_g += x.degree();
    for (size_t i = 0; i < gs.size(); ++i) {
      std::vector<OperadElement> slice(hs.begin() + static_cast<std::ptrdiff_t>(k),
                                       hs.begin() + static_cast<std::ptrdiff_t>(k + static_cast<size_t>(ga[i])));
      k += static_cast<size_t>(ga[i]);
      later_g -= gs[i].degree();
      for (const auto& h : slice) parity ^= (h.degree() & later_g & 1);
      inner.push_back(gamma(p, gs[i], slice));
    }
    OperadElement rhs = gamma(p, f, inner) * sign_power(parity);
    EXPECT_EQ(lhs, rhs) << to_string(p, lhs) << " vs " << to_string(p, rhs);
  }
}

TEST(Operad, GammaEquivariantInInputs) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  std::mt19937 rng(23);
  for (int t = 0; t < 50; ++t) {
    OperadElement f = random_element(p, rng, 2, static_cast<int>(rng() % 3));
    auto ga = random_arities(rng, 2, 4);
    std::vector<OperadElement> gs, gt;
    std::vector<int> block;
    for (int a : ga) {
      OperadElement x = random_element(p, rng, a, random_degree(rng, a));
      Permutation s = Permutation::from_index(a, static_cast<int>(rng() % factorial(a)));
      gs.push_back(x);
      gt.push_back(sigma_action(x, s));
      const int off = static_cast<int>(block.size());
      for (int i = 0; i < a; ++i) block.push_back(off + s(i));
    }
    EXPECT_EQ(gamma(p, f, gt), sigma_action(gamma(p, f, gs), Permutation(block)));
  }
}

TEST(Operad, GammaEquivariantInOutput) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  std::mt19937 rng(29);
  for (int t = 0; t < 50; ++t) {
    const int r = 2 + static_cast<int>(rng() % 2);
    OperadElement f = random_element(p, rng, r, static_cast<int>(rng() % 2));
    Permutation s = Permutation::from_index(r, static_cast<int>(rng() % factorial(r)));
    auto ga = random_arities(rng, r, 4);
    std::vector<OperadElement> gs;
    for (int a : ga) gs.push_back(random_element(p, rng, a, random_degree(rng, a)));
    std::vector<int> off(static_cast<size_t>(r) + 1, 0), off2(static_cast<size_t>(r) + 1, 0);
    std::vector<OperadElement> moved;
    Permutation si = s.inverse();
    for (int j = 0; j < r; ++j) moved.push_back(gs[static_cast<size_t>(si(j))]);
    for (int i = 0; i < r; ++i) off[static_cast<size_t>(i) + 1] = off[static_cast<size_t>(i)] + ga[static_cast<size_t>(i)];
    for (int j = 0; j < r; ++j) off2[static_cast<size_t>(j) + 1] = off2[static_cast<size_t>(j)] + moved[static_cast<size_t>(j)].arity();
    std::vector<int> pi(static_cast<size_t>(off[static_cast<size_t>(r)]));
    int parity = 0;
    for (int i = 0; i < r; ++i) {
      for (int l = 0; l < ga[static_cast<size_t>(i)]; ++l) pi[static_cast<size_t>(off[static_cast<size_t>(i)] + l)] = off2[static_cast<size_t>(s(i))] + l;
      for (int i2 = i + 1; i2 < r; ++i2)
        if (s(i) > s(i2)) parity ^= (gs[static_cast<size_t>(i)].degree() & gs[static_cast<size_t>(i2)].degree() & 1);
    }
    OperadElement lhs = gamma(p, sigma_action(f, s), gs);
    OperadElement rhs = sigma_action(gamma(p, f, moved), Permutation(pi)) * sign_power(parity);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Operad, Leibniz) {
  for (unsigned pr : {2u, 3u}) {
    PrimeGuard g(pr);
    QuasiFreeOperad p = small_operad();
    std::mt19937 rng(31 + pr);
    for (int t = 0; t < 50; ++t) {
      const int r = 2 + static_cast<int>(rng() % 2);
      OperadElement f = random_element(p, rng, r, static_cast<int>(rng() % 2) + (r == 2));
      auto ga = random_arities(rng, r, 4);
      std::vector<OperadElement> gs;
      for (int a : ga) gs.push_back(random_element(p, rng, a, a == 1 ? 0 : static_cast<int>(rng() % 2)));
      OperadElement lhs = differential(p, gamma(p, f, gs));
      OperadElement rhs = gamma(p, differential(p, f), gs);
      int before = f.degree();
      for (size_t i = 0; i < gs.size(); ++i) {
        auto h = gs;
        h[i] = differential(p, gs[i]);
        if (gs[i].degree() > 0) rhs += gamma(p, f, h) * sign_power(before);
        before += gs[i].degree();
      }
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Operad, NormalFormMatchesGamma) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  std::mt19937 rng(3);
  for (const TreeMonomial& t : basis(p, 4, 1)) {
    auto [raw, out] = to_raw(p, t);
    EXPECT_EQ(normal_form(p, raw, out), OperadElement::monomial(t, 1));
  }
}

TEST(Operad, ComponentIsSigmaFreeComplex) {
  PrimeGuard g(3);
  QuasiFreeOperad p = small_operad();
  OperadComponent c(p, 3, 3);
  EXPECT_FALSE(c.module()->check().has_value());
  EXPECT_EQ(c.module()->dim(0), 12);
  for (int d = 0; d <= 3; ++d) {
    for (Index b = 0; b < c.module()->dim(d); ++b) EXPECT_EQ(c.index_of(c.monomial(d, b), d), b);
  }
}

TEST(Operad, TruncationZeroesOverflow) {
  QuasiFreeOperad p = truncate(small_operad(), 2);
  OperadElement e0 = corolla(p, 0);
  OperadElement x = gamma(p, e0, {e0, operad_unit()});
  EXPECT_TRUE(x.is_zero());
  EXPECT_TRUE(basis(p, 3, 0).empty());
  QuasiFreeOperad q = small_operad(3, 4);
  EXPECT_THROW(gamma(q, corolla(q, 0), {corolla(q, 0), corolla(q, 0)}), TruncationError);
}
