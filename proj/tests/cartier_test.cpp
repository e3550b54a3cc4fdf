#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "anum/cartier.hpp"

using anum::CartierMatrix;
using anum::CurveFamily;
using anum::LaurentDifferential;
using anum::Prime;
using anum::Residue;
using anum::SparseCoeffMap;

namespace {

CartierMatrix from_rows(Prime p, const std::vector<std::vector<std::int64_t>>& rows) {
  CartierMatrix M(p, rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows.size(); ++c) M.set(r, c, Residue(rows[r][c], p));
  }
  return M;
}

LaurentDifferential monomial(Prime p, std::int64_t exponent, std::int64_t coeff = 1) {
  return {SparseCoeffMap(p, {{exponent, coeff}})};
}

SparseCoeffMap random_laurent(std::mt19937_64& rng, Prime p, int terms, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> exp(lo, hi);
  std::uniform_int_distribution<std::int64_t> coeff(1, static_cast<std::int64_t>(p.value()) - 1);
  SparseCoeffMap out(p);
  for (int t = 0; t < terms; ++t) out.add(exp(rng), Residue(coeff(rng), p));
  return out;
}

// |{M v : v in F_p^g}| = p^rank, by enumerating every v.
std::size_t brute_force_rank(const CartierMatrix& M) {
  const std::size_t g = M.genus();
  const std::uint64_t p = M.p().value();
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < g; ++t) total *= p;
  std::set<std::vector<std::uint64_t>> image;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint64_t> v(g);
    std::uint64_t c = code;
    for (auto& x : v) {
      x = c % p;
      c /= p;
    }
    std::vector<std::uint64_t> w(g, 0);
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t k = 0; k < g; ++k) w[r] = (w[r] + M.raw(r, k) * v[k]) % p;
    }
    image.insert(w);
  }
  std::size_t rank = 0;
  for (std::size_t size = image.size(); size > 1; size /= p) ++rank;
  return rank;
}

}  // namespace

TEST(CartierDifferential, Examples) {
  for (std::uint64_t pv : {3U, 5U, 7U}) {
    const Prime p(pv);
    EXPECT_EQ(anum::cartier_differential(monomial(p, static_cast<std::int64_t>(pv) - 1)), monomial(p, 0));
  }
  const Prime p5(5);
  EXPECT_TRUE(anum::cartier_differential(monomial(p5, 2)).coeffs.empty());
  EXPECT_EQ(anum::cartier_differential(monomial(p5, -1, 3)), monomial(p5, -1, 3));
}

TEST(CartierDifferential, MonomialRuleExhaustive) {
  for (std::int64_t pv : {3, 5, 7, 11}) {
    const Prime p(static_cast<std::uint64_t>(pv));
    for (std::int64_t j = 0; j < 4 * pv; ++j) {
      const auto image = anum::cartier_differential(monomial(p, j, 2));
      if ((j + 1) % pv != 0) {
        EXPECT_TRUE(image.coeffs.empty()) << "p=" << pv << " j=" << j;
      } else {
        const std::int64_t s = (j + 1) / pv;
        EXPECT_EQ(image, monomial(p, s - 1, 2)) << "p=" << pv << " j=" << j;
      }
    }
  }
}

TEST(CartierDifferential, PthPowersFactorOut) {
  std::mt19937_64 rng(31);
  const std::vector<std::uint64_t> primes{3, 5, 7, 11, 13};
  for (int trial = 0; trial < 1000; ++trial) {
    const Prime p(primes[trial % primes.size()]);
    const auto pv = static_cast<std::int64_t>(p.value());
    const Residue c(static_cast<std::int64_t>(1 + rng() % (p.value() - 1)), p);
    const std::int64_t t = static_cast<std::int64_t>(rng() % 21) - 10;
    const LaurentDifferential omega{random_laurent(rng, p, 8, -3 * pv, 6 * pv)};

    // u^p omega with u = c x^t: exponents move by pt, coefficients pick up c^p.
    const LaurentDifferential twisted{omega.coeffs.scaled_shift(c.pow(p.value()), pv * t)};
    const LaurentDifferential lhs = anum::cartier_differential(twisted);
    const LaurentDifferential rhs{anum::cartier_differential(omega).coeffs.scaled_shift(c, t)};
    ASSERT_EQ(lhs, rhs) << "trial " << trial;
  }
}

TEST(CartierDifferential, ExactFormsVanish) {
  std::mt19937_64 rng(17);
  const std::vector<std::uint64_t> primes{3, 5, 7, 11, 13, 97};
  for (int trial = 0; trial < 1000; ++trial) {
    const Prime p(primes[trial % primes.size()]);
    const auto pv = static_cast<std::int64_t>(p.value());
    const SparseCoeffMap h = random_laurent(rng, p, 10, trial % 2 ? 0 : -2 * pv, 5 * pv);
    ASSERT_TRUE(anum::cartier_differential(anum::exact_differential(h)).coeffs.empty()) << "trial " << trial;
  }
}

TEST(CartierDifferential, LogarithmicFormsAreFixed) {
  const Prime p(7);
  const LaurentDifferential dx_over_x = monomial(p, -1);
  EXPECT_EQ(anum::cartier_differential(dx_over_x), dx_over_x);
  // dh/h = n dx/x for h = c x^n.
  for (std::int64_t n = -5; n <= 5; ++n) {
    const LaurentDifferential log_form = monomial(p, -1, n);
    EXPECT_EQ(anum::cartier_differential(log_form), log_form);
  }
}

TEST(CartierMatrix, Examples) {
  const Prime p3(3), p5(5);
  const auto a37 = anum::make_curve(p3, CurveFamily::family_a(7));
  EXPECT_EQ(anum::cartier_matrix(a37), from_rows(p3, {{0, 0, 1}, {0, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(anum::cartier_matrix(anum::make_curve(p3, CurveFamily::family_a(4))), from_rows(p3, {{0}}));
  EXPECT_EQ(anum::cartier_matrix(anum::make_curve(p5, CurveFamily::family_a(4))), from_rows(p5, {{2}}));
}

TEST(CartierMatrix, EntriesAreFrobeniusFixed) {
  const auto spec = anum::make_curve(Prime(13), CurveFamily::family_a(92));
  EXPECT_TRUE(anum::cartier_matrix(spec).frobenius_fixed());
}

TEST(CartierAction, Examples) {
  const Prime p3(3);
  const auto b39 = anum::make_curve(p3, CurveFamily::family_b(9));
  const CartierMatrix A = anum::cartier_action_on_basis(b39);
  for (std::size_t r = 0; r < 4; ++r) {
    bool nonzero = false;
    for (std::size_t c = 0; c < 4; ++c) nonzero = nonzero || !A.at(r, c).is_zero();
    EXPECT_EQ(nonzero, r == 1 || r == 2) << "row " << r + 1;
  }
  EXPECT_TRUE(anum::cartier_action_on_basis(anum::make_curve(p3, CurveFamily::family_a(4))).is_zero());
}

TEST(CartierAction, IsTransposeOfMatrix) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (std::uint64_t pv : {3U, 5U, 7U, 11U, 13U}) {
    const Prime p(pv);
    for (std::uint64_t m = 3; m <= 60; ++m) {
      for (auto family : {CurveFamily::family_a(m), CurveFamily::family_b(m)}) {
        try {
          const auto spec = anum::make_curve(p, family);
          ASSERT_EQ(anum::cartier_action_on_basis(spec), anum::cartier_matrix(spec).transposed()) << pv << " " << m;
          ++checked;
        } catch (const anum::CurveError&) {
        }
      }
    }
    // Random dense curves of degree 3..12.
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::int64_t> coeffs(3 + rng() % 10 + 1);
      for (auto& c : coeffs) c = static_cast<std::int64_t>(rng() % pv);
      coeffs.back() = 1 + static_cast<std::int64_t>(rng() % (pv - 1));
      try {
        const auto spec = anum::make_curve(p, CurveFamily::generic(coeffs));
        const auto M = anum::cartier_matrix(spec);
        const auto A = anum::cartier_action_on_basis(spec);
        ASSERT_EQ(A, M.transposed());
        ASSERT_EQ(anum::rank_mod_p(A), anum::rank_mod_p(M));
        ++checked;
      } catch (const anum::CurveError&) {
      }
    }
  }
  EXPECT_GT(checked, 400);
}

TEST(RankModP, Examples) {
  const Prime p(7);
  EXPECT_EQ(anum::rank_mod_p(CartierMatrix(p, 5)), 0U);
  CartierMatrix I(p, 5);
  for (std::size_t i = 0; i < 5; ++i) I.set(i, i, Residue::one(p));
  EXPECT_EQ(anum::rank_mod_p(I), 5U);
  EXPECT_EQ(anum::rank_mod_p(from_rows(Prime(3), {{0, 0, 1}, {0, 0, 0}, {0, 1, 0}})), 2U);
  EXPECT_EQ(anum::rank_mod_p(from_rows(Prime(5), {{1, 2, 3}, {2, 4, 6}, {1, 1, 1}})), 2U);
}

TEST(RankModP, MatchesImageEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Prime p(trial % 2 ? 3 : 5);
    const std::size_t g = 1 + rng() % 4;
    CartierMatrix M(p, g);
    // Sparse-ish entries so low ranks show up often.
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t c = 0; c < g; ++c) {
        if (rng() % 3 == 0) M.set(r, c, Residue(static_cast<std::int64_t>(rng() % p.value()), p));
      }
    }
    ASSERT_EQ(anum::rank_mod_p(M), brute_force_rank(M)) << "trial " << trial;
  }
}

TEST(RankModP, KernelDimensionComplementsRank) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Prime p(trial % 3 == 0 ? 3 : trial % 3 == 1 ? 7 : 13);
    const std::size_t g = 1 + rng() % 9;
    CartierMatrix M(p, g);
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t c = 0; c < g; ++c) {
        if (rng() % 2 == 0) M.set(r, c, Residue(static_cast<std::int64_t>(rng() % p.value()), p));
      }
    }
    // Duplicate a row now and then to force a kernel.
    if (g > 1 && trial % 4 == 0) {
      for (std::size_t c = 0; c < g; ++c) M.set(g - 1, c, M.at(0, c));
    }
    const auto kernel = anum::null_space(M);
    ASSERT_EQ(kernel.size() + anum::rank_mod_p(M), g);
    for (const auto& v : kernel) {
      for (std::size_t r = 0; r < g; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < g; ++c) acc = (acc + M.raw(r, c) * v[c]) % p.value();
        ASSERT_EQ(acc, 0U);
      }
    }
  }
}

TEST(ANumber, Examples) {
  const Prime p3(3);
  EXPECT_EQ(anum::a_number(anum::make_curve(p3, CurveFamily::family_a(7))), (anum::ANumberResult{3, 2, 1}));
  EXPECT_EQ(anum::a_number(anum::make_curve(p3, CurveFamily::family_a(4))), (anum::ANumberResult{1, 0, 1}));
  EXPECT_EQ(anum::a_number(anum::make_curve(p3, CurveFamily::family_b(9))), (anum::ANumberResult{4, 2, 2}));
  EXPECT_EQ(anum::a_number(anum::make_curve(Prime(5), CurveFamily::generic({1, 0, 0, 0, 1}))),
            (anum::ANumberResult{1, 1, 0}));
}

TEST(MatrixDump, FormatAndParse) {
  const auto spec = anum::make_curve(Prime(3), CurveFamily::family_a(7));
  const auto M = anum::cartier_matrix(spec);
  const std::string text = anum::format_matrix_dump(spec, M);
  EXPECT_EQ(text, "# p=3 m=7 family=A g=3\n0,0,1\n0,0,0\n0,1,0\n");
  const auto dump = anum::parse_matrix_dump(text);
  EXPECT_EQ(dump.family, 'A');
  EXPECT_EQ(anum::to_matrix(dump), M);
  EXPECT_THROW(anum::parse_matrix_dump("0,0\n"), std::invalid_argument);
  EXPECT_THROW(anum::parse_matrix_dump("# p=3 m=7 family=A g=2\n0,0\n"), std::invalid_argument);
}
