#include <gtest/gtest.h>

#include "anum/curves.hpp"

using anum::CurveErrorKind;
using anum::CurveFamily;
using anum::Prime;
using anum::SparseCoeffMap;
using anum::Strategy;

namespace {

CurveErrorKind error_kind(Prime p, const CurveFamily& family) {
  try {
    anum::make_curve(p, family);
  } catch (const anum::CurveError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected CurveError";
  return CurveErrorKind::GenusZero;
}

}  // namespace

TEST(MakeCurve, GenusOfFamilies) {
  EXPECT_EQ(anum::make_curve(Prime(3), CurveFamily::family_a(7)).genus(), 3U);
  EXPECT_EQ(anum::make_curve(Prime(3), CurveFamily::family_a(4)).genus(), 1U);
  const auto b = anum::make_curve(Prime(3), CurveFamily::family_b(9));
  EXPECT_EQ(b.genus(), 4U);
  EXPECT_EQ(b.degree(), 9U);
  EXPECT_EQ(b.m(), 9U);
}

TEST(MakeCurve, GenericGenusFromDegree) {
  EXPECT_EQ(anum::make_curve(Prime(5), CurveFamily::generic({1, 0, 0, 1})).genus(), 1U);
  EXPECT_EQ(anum::make_curve(Prime(5), CurveFamily::generic({1, 0, 0, 0, 1})).genus(), 1U);
  EXPECT_EQ(anum::make_curve(Prime(7), CurveFamily::generic({1, 2, 0, 0, 0, 1})).genus(), 2U);
  EXPECT_EQ(anum::make_curve(Prime(7), CurveFamily::generic({1, 2, 0, 0, 0, 0, 1})).genus(), 2U);
}

TEST(MakeCurve, Rejections) {
  EXPECT_EQ(error_kind(Prime(5), CurveFamily::family_a(5)), CurveErrorKind::NotSquarefree);
  EXPECT_EQ(error_kind(Prime(3), CurveFamily::family_a(2)), CurveErrorKind::GenusZero);
  EXPECT_EQ(error_kind(Prime(3), CurveFamily::family_b(1)), CurveErrorKind::GenusZero);
  EXPECT_EQ(error_kind(Prime(5), CurveFamily::generic({1, 0, 1})), CurveErrorKind::DegreeTooSmall);
  // x^3 + 5 reduces to x^3 over F_5.
  EXPECT_EQ(error_kind(Prime(5), CurveFamily::generic({5, 0, 0, 1})), CurveErrorKind::NotSquarefree);
  // Leading coefficient 7 vanishes mod 7, leaving degree 2.
  EXPECT_EQ(error_kind(Prime(7), CurveFamily::generic({1, 0, 1, 7})), CurveErrorKind::DegreeTooSmall);
  // (x-1)^2 (x+1) = x^3 - x^2 - x + 1.
  EXPECT_EQ(error_kind(Prime(7), CurveFamily::generic({1, -1, -1, 1})), CurveErrorKind::NotSquarefree);
  // B with p | m-1: x (x^(m-1) + 1) is x times a p-th power.
  EXPECT_EQ(error_kind(Prime(3), CurveFamily::family_b(7)), CurveErrorKind::NotSquarefree);
}

TEST(HalfPowerCoeffs, Examples) {
  const Prime p3(3), p5(5);
  const auto a37 = anum::make_curve(p3, CurveFamily::family_a(7));
  const auto a54 = anum::make_curve(p5, CurveFamily::family_a(4));
  const auto b39 = anum::make_curve(p3, CurveFamily::family_b(9));
  for (auto strategy : {Strategy::Sparse, Strategy::Dense}) {
    EXPECT_EQ(anum::half_power_coeffs(a37, strategy), SparseCoeffMap(p3, {{0, 1}, {7, 1}}));
    EXPECT_EQ(anum::half_power_coeffs(a54, strategy), SparseCoeffMap(p5, {{0, 1}, {4, 2}, {8, 1}}));
    EXPECT_EQ(anum::half_power_coeffs(b39, strategy), SparseCoeffMap(p3, {{1, 1}, {9, 1}}));
  }
}

TEST(HalfPowerCoeffs, SparseNeedsFamily) {
  const auto spec = anum::make_curve(Prime(5), CurveFamily::generic({1, 0, 0, 1}));
  EXPECT_THROW(anum::half_power_coeffs(spec, Strategy::Sparse), std::invalid_argument);
  EXPECT_EQ(anum::half_power_coeffs(spec, Strategy::Dense), SparseCoeffMap(Prime(5), {{0, 1}, {3, 2}, {6, 1}}));
}

// Every valid family curve with p <= 97 and m <= 300.
TEST(HalfPowerCoeffs, SparseAndDenseAgree) {
  int checked = 0;
  for (std::uint64_t pv = 3; pv <= 97; pv += 2) {
    if (!Prime::is_prime(pv)) continue;
    const Prime p(pv);
    for (std::uint64_t m = 3; m <= 300; ++m) {
      for (auto family : {CurveFamily::family_a(m), CurveFamily::family_b(m)}) {
        std::optional<anum::CurveSpec> spec;
        try {
          spec = anum::make_curve(p, family);
        } catch (const anum::CurveError&) {
          continue;
        }
        const auto sparse = anum::half_power_coeffs(*spec, Strategy::Sparse);
        const auto dense = anum::half_power_coeffs(*spec, Strategy::Dense);
        ASSERT_EQ(sparse, dense) << "p=" << pv << " m=" << m;
        ASSERT_EQ(dense.max_exponent(), static_cast<std::int64_t>(p.half() * spec->degree()));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(ParseCoefficients, ConstantTermFirst) {
  EXPECT_EQ(anum::parse_coefficients("1,0,0,1"), (std::vector<std::int64_t>{1, 0, 0, 1}));
  EXPECT_EQ(anum::parse_coefficients("-2, 3"), (std::vector<std::int64_t>{-2, 3}));
  EXPECT_THROW(anum::parse_coefficients(""), std::invalid_argument);
  EXPECT_THROW(anum::parse_coefficients("1,,2"), std::invalid_argument);
  EXPECT_THROW(anum::parse_coefficients("1,x"), std::invalid_argument);
}
