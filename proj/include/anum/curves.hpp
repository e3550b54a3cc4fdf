/**
 * @file anum/curves.hpp
 * @brief Validated hyperelliptic curves y^2 = f(x) over F_p and the
 * coefficient map of y^(p-1) = f(x)^((p-1)/2).
 */
#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anum/ffpoly.hpp"

namespace anum {

enum class FamilyTag { A, B, Generic };

/// Single-letter tag used in dumps and reports: A, B or G.
inline char family_letter(FamilyTag tag) noexcept {
  switch (tag) {
    case FamilyTag::A: return 'A';
    case FamilyTag::B: return 'B';
    case FamilyTag::Generic: return 'G';
  }
  return '?';
}

/// y^2 = x^m + 1 (A), y^2 = x^m + x (B), or explicit integer coefficients
/// (constant term first) reduced mod p when the curve is built.
struct CurveFamily {
  FamilyTag tag = FamilyTag::A;
  std::uint64_t m = 0;
  std::vector<std::int64_t> coeffs;

  static CurveFamily family_a(std::uint64_t m) { return {FamilyTag::A, m, {}}; }
  static CurveFamily family_b(std::uint64_t m) { return {FamilyTag::B, m, {}}; }
  static CurveFamily generic(std::vector<std::int64_t> coeffs) { return {FamilyTag::Generic, 0, std::move(coeffs)}; }

  bool is_family() const noexcept { return tag != FamilyTag::Generic; }
};

enum class CurveErrorKind { NotSquarefree, DegreeTooSmall, GenusZero };

inline const char* to_string(CurveErrorKind kind) noexcept {
  switch (kind) {
    case CurveErrorKind::NotSquarefree: return "not squarefree";
    case CurveErrorKind::DegreeTooSmall: return "degree too small";
    case CurveErrorKind::GenusZero: return "genus zero";
  }
  return "unknown";
}

class CurveError : public std::runtime_error {
 public:
  CurveError(CurveErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  CurveErrorKind kind() const noexcept { return kind_; }

 private:
  CurveErrorKind kind_;
};

class CurveSpec;
CurveSpec make_curve(Prime p, const CurveFamily& family);

/// A curve that passed validation: f squarefree, degree >= 3, genus >= 1.
/// Only make_curve produces these.
class CurveSpec {
 public:
  Prime p() const noexcept { return p_; }
  const CurveFamily& family() const noexcept { return family_; }
  FamilyTag tag() const noexcept { return family_.tag; }
  const DensePolynomial& f() const noexcept { return f_; }
  std::uint64_t degree() const noexcept { return static_cast<std::uint64_t>(f_.degree()); }
  std::uint64_t genus() const noexcept { return genus_; }

  /// m for the families, deg f for generic curves.
  std::uint64_t m() const noexcept { return family_.is_family() ? family_.m : degree(); }

 private:
  friend CurveSpec make_curve(Prime p, const CurveFamily& family);
  CurveSpec(Prime p, CurveFamily family, DensePolynomial f, std::uint64_t genus)
      : p_(p), family_(std::move(family)), f_(std::move(f)), genus_(genus) {}

  Prime p_;
  CurveFamily family_;
  DensePolynomial f_;
  std::uint64_t genus_;
};

inline DensePolynomial materialize(Prime p, const CurveFamily& family) {
  switch (family.tag) {
    case FamilyTag::A:
      return DensePolynomial::monomial(p, family.m) + DensePolynomial::monomial(p, 0);
    case FamilyTag::B:
      return DensePolynomial::monomial(p, family.m) + DensePolynomial::monomial(p, 1);
    case FamilyTag::Generic:
      break;
  }
  return DensePolynomial(p, family.coeffs);
}

inline CurveSpec make_curve(Prime p, const CurveFamily& family) {
  if (family.is_family()) {
    // m = 1 collapses x^m + x to 2x; treat anything below 3 as genus zero.
    const std::uint64_t m = family.m;
    const std::uint64_t g = m < 3 ? 0 : (m % 2 == 1 ? (m - 1) / 2 : (m - 2) / 2);
    if (g == 0) throw CurveError(CurveErrorKind::GenusZero, "m=" + std::to_string(m));
    DensePolynomial f = materialize(p, family);
    if (poly_gcd(f, poly_derivative(f)).degree() != 0) {
      throw CurveError(CurveErrorKind::NotSquarefree, "gcd(f, f') != 1 for m=" + std::to_string(m) +
                                                          " over F_" + std::to_string(p.value()));
    }
    return CurveSpec(p, family, std::move(f), g);
  }

  DensePolynomial f = materialize(p, family);
  if (f.degree() < 3) {
    throw CurveError(CurveErrorKind::DegreeTooSmall, "deg f = " + std::to_string(f.degree()) + " after reduction mod " +
                                                         std::to_string(p.value()));
  }
  const auto g = static_cast<std::uint64_t>((f.degree() - 1) / 2);
  if (g == 0) throw CurveError(CurveErrorKind::GenusZero, "deg f = " + std::to_string(f.degree()));
  if (poly_gcd(f, poly_derivative(f)).degree() != 0) {
    throw CurveError(CurveErrorKind::NotSquarefree, "gcd(f, f') != 1");
  }
  return CurveSpec(p, family, std::move(f), g);
}

enum class Strategy { Sparse, Dense };

/// Sparse for the two families (closed-form binomials), Dense otherwise.
inline Strategy preferred_strategy(const CurveSpec& spec) noexcept {
  return spec.family().is_family() ? Strategy::Sparse : Strategy::Dense;
}

/// Coefficients of f(x)^((p-1)/2).
///
/// The sparse path writes the binomial expansion directly:
///   A: (x^m + 1)^e            -> c_{jm}              = C(e, j)
///   B: x^e (x^(m-1) + 1)^e    -> c_{j(m-1) + e}      = C(e, j)
/// with e = (p-1)/2 and 0 <= j <= e. The dense path raises f itself.
inline SparseCoeffMap half_power_coeffs(const CurveSpec& spec, Strategy strategy,
                                        std::uint64_t slot_limit = kDefaultSlotLimit) {
  const Prime p = spec.p();
  const std::uint64_t e = p.half();
  if (strategy == Strategy::Dense) return poly_pow_coeffs(spec.f(), e, slot_limit);
  if (!spec.family().is_family()) throw std::invalid_argument("sparse expansion needs family A or B");

  const auto m = static_cast<std::int64_t>(spec.family().m);
  const auto se = static_cast<std::int64_t>(e);
  const std::int64_t step = spec.tag() == FamilyTag::A ? m : m - 1;
  const std::int64_t offset = spec.tag() == FamilyTag::A ? 0 : se;
  SparseCoeffMap out(p);
  for (std::int64_t j = 0; j <= se; ++j) {
    const Residue c = lucas_binom(e, static_cast<std::uint64_t>(j), p);
    // e < p, so every digit-wise factor is a unit.
    if (c.is_zero()) throw std::logic_error("C((p-1)/2, j) vanished mod p");
    out.set(j * step + offset, c);
  }
  return out;
}

/// Parses "1,0,0,1" (constant term first) into integer coefficients.
inline std::vector<std::int64_t> parse_coefficients(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) throw std::invalid_argument("empty coefficient list");
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw std::invalid_argument("bad coefficient '" + std::string(field) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace anum
