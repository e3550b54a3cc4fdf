/**
 * @file anum/closedform.hpp
 * @brief Closed-form a-number predictions for y^2 = x^m + 1 and y^2 = x^m + x,
 * and the congruence count that predicts the Cartier-Manin rank.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "anum/curves.hpp"

namespace anum {

enum class TheoremId { T31_1, T31_2, T32_1, T32_2, T41 };

inline const char* to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::T31_1: return "T31_1";
    case TheoremId::T31_2: return "T31_2";
    case TheoremId::T32_1: return "T32_1";
    case TheoremId::T32_2: return "T32_2";
    case TheoremId::T41: return "T41";
  }
  return "?";
}

struct TheoremPrediction {
  TheoremId theorem;
  std::uint64_t s = 0;
  std::uint64_t k = 0;
  std::uint64_t predicted_a = 0;

  friend bool operator==(const TheoremPrediction&, const TheoremPrediction&) = default;
};

namespace detail {

// (k+1)(p-1)/2 or k(p-1)/2; p is odd so both are integral.
inline std::uint64_t half_multiple(std::uint64_t factor, std::uint64_t p) {
  const std::uint64_t twice = factor * (p - 1);
  if (twice % 2 != 0) throw std::logic_error("closed form is not integral");
  return twice / 2;
}

inline TheoremPrediction predict(TheoremId id, std::uint64_t s, std::uint64_t p) {
  const bool odd = s % 2 == 1;
  const std::uint64_t k = odd ? (s - 1) / 2 : s / 2;
  // Only m = sp+1 and m = sp with odd s carry the (k+1) factor.
  const bool plus_one_factor = id == TheoremId::T31_1 || id == TheoremId::T41;
  return {id, s, k, half_multiple(plus_one_factor ? k + 1 : k, p)};
}

}  // namespace detail

/// Matches m against sp+1, sp-1, sp (in that order) for the family's
/// theorem; nullopt when no closed form applies.
inline std::optional<TheoremPrediction> predicted_a(const CurveSpec& spec) {
  if (!spec.family().is_family()) return std::nullopt;
  const std::uint64_t p = spec.p().value();
  const std::uint64_t m = spec.family().m;

  if (spec.tag() == FamilyTag::A) {
    if (m % p == 1 && m > 1) {
      const std::uint64_t s = (m - 1) / p;
      return detail::predict(s % 2 == 1 ? TheoremId::T31_1 : TheoremId::T31_2, s, p);
    }
    if (m % p == p - 1) {
      const std::uint64_t s = (m + 1) / p;
      return detail::predict(s % 2 == 1 ? TheoremId::T32_1 : TheoremId::T32_2, s, p);
    }
    return std::nullopt;
  }

  if (m % p == 0 && (m / p) % 2 == 1) return detail::predict(TheoremId::T41, m / p, p);
  return std::nullopt;
}

/// Number of basis indices i in 1..g for which some j in 0..(p-1)/2 puts the
/// exponent of x^(i-1) f^((p-1)/2) dx at p-1 mod p:
///   A: e = i - 1 + j m
///   B: e = i - 1 + j (m - 1) + (p-1)/2
/// Each such i has exactly one surviving monomial and distinct i land on
/// distinct images (i <= g < m), so the count is the rank.
inline std::uint64_t congruence_rank(const CurveSpec& spec) {
  if (!spec.family().is_family()) throw std::invalid_argument("congruence rank needs family A or B");
  const std::uint64_t p = spec.p().value();
  const std::uint64_t half = spec.p().half();
  const std::uint64_t m = spec.family().m;
  const bool family_b = spec.tag() == FamilyTag::B;
  const std::uint64_t step = (family_b ? m - 1 : m) % p;
  const std::uint64_t offset = family_b ? half % p : 0;

  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i <= spec.genus(); ++i) {
    for (std::uint64_t j = 0; j <= half; ++j) {
      if ((i - 1 + j * step + offset) % p == p - 1) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace anum
