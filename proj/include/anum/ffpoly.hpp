/**
 * @file anum/ffpoly.hpp
 * @brief Exact arithmetic over the prime field F_p: residues, dense
 * polynomials and sparse (Laurent) coefficient maps.
 *
 * Every value in this header is immutable after construction except the
 * builder-style SparseCoeffMap::add / set. No floating point is used.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace anum {

namespace detail {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return (a * b) % p;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) noexcept {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

// Fermat inverse; caller guarantees a != 0 mod p.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) noexcept {
  return pow_mod(a, p - 2, p);
}

inline std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) noexcept {
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = v % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// An odd prime characteristic. Bounded by 2^31 so that products of two
/// residues fit in 64 bits.
class Prime {
 public:
  static constexpr std::uint64_t kMax = (std::uint64_t{1} << 31) - 1;

  explicit Prime(std::uint64_t value) : value_(value) {
    if (value == 2) throw std::invalid_argument("characteristic 2 is not supported");
    if (value > kMax) throw std::invalid_argument("prime " + std::to_string(value) + " exceeds 2^31-1");
    if (!is_prime(value)) throw std::invalid_argument(std::to_string(value) + " is not prime");
  }

  std::uint64_t value() const noexcept { return value_; }

  /// (p-1)/2, the exponent that turns f into the coefficients of y^(p-1).
  std::uint64_t half() const noexcept { return (value_ - 1) / 2; }

  friend bool operator==(const Prime&, const Prime&) = default;

  // Deterministic trial division; values are bounded by kMax.
  static bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint64_t value_;
};

/// An element of F_p stored as its least non-negative representative.
class Residue {
 public:
  Residue(std::int64_t value, Prime p) : value_(detail::reduce_signed(value, p.value())), p_(p) {}
  static Residue zero(Prime p) { return Residue(0, p); }
  static Residue one(Prime p) { return Residue(1, p); }

  std::uint64_t value() const noexcept { return value_; }
  Prime modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Residue pow(std::uint64_t e) const { return raw(detail::pow_mod(value_, e, p_.value()), p_); }

  Residue inverse() const {
    if (is_zero()) throw std::domain_error("zero residue has no inverse");
    return raw(detail::inv_mod(value_, p_.value()), p_);
  }

  friend Residue operator+(const Residue& a, const Residue& b) {
    check(a, b);
    return raw(detail::add_mod(a.value_, b.value_, a.p_.value()), a.p_);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    check(a, b);
    return raw(detail::sub_mod(a.value_, b.value_, a.p_.value()), a.p_);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    check(a, b);
    return raw(detail::mul_mod(a.value_, b.value_, a.p_.value()), a.p_);
  }
  friend Residue operator/(const Residue& a, const Residue& b) { return a * b.inverse(); }
  Residue operator-() const { return raw(detail::sub_mod(0, value_, p_.value()), p_); }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  static Residue raw(std::uint64_t reduced, Prime p) {
    Residue r(0, p);
    r.value_ = reduced;
    return r;
  }
  static void check(const Residue& a, const Residue& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("residues over different primes");
  }

  std::uint64_t value_;
  Prime p_;
};

/// C(n, r) mod p via Lucas' theorem: the product of digit-wise binomials in
/// base p. Zero when r > n.
inline Residue lucas_binom(std::uint64_t n, std::uint64_t r, Prime prime) {
  const std::uint64_t p = prime.value();
  std::uint64_t result = 1;
  while (r > 0 || n > 0) {
    const std::uint64_t nd = n % p;
    const std::uint64_t rd = r % p;
    if (rd > nd) return Residue::zero(prime);
    // C(nd, rd) with nd < p: the denominator is a unit.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t t = 0; t < rd; ++t) {
      num = detail::mul_mod(num, nd - t, p);
      den = detail::mul_mod(den, t + 1, p);
    }
    result = detail::mul_mod(result, detail::mul_mod(num, detail::inv_mod(den, p), p), p);
    n /= p;
    r /= p;
  }
  return Residue(static_cast<std::int64_t>(result), prime);
}

/// Polynomial over F_p with coefficients indexed by exponent, constant term
/// first. The stored vector never carries trailing zeros.
class DensePolynomial {
 public:
  explicit DensePolynomial(Prime p) : p_(p) {}

  DensePolynomial(Prime p, std::span<const std::int64_t> coeffs) : p_(p) {
    coeffs_.reserve(coeffs.size());
    for (auto c : coeffs) coeffs_.push_back(detail::reduce_signed(c, p.value()));
    trim();
  }

  DensePolynomial(Prime p, std::initializer_list<std::int64_t> coeffs)
      : DensePolynomial(p, std::span<const std::int64_t>(coeffs.begin(), coeffs.size())) {}

  static DensePolynomial from_reduced(Prime p, std::vector<std::uint64_t> coeffs) {
    DensePolynomial f(p);
    f.coeffs_ = std::move(coeffs);
    f.trim();
    return f;
  }

  static DensePolynomial monomial(Prime p, std::size_t degree, std::int64_t coeff = 1) {
    std::vector<std::uint64_t> c(degree + 1, 0);
    c[degree] = detail::reduce_signed(coeff, p.value());
    return from_reduced(p, std::move(c));
  }

  Prime modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

  Residue coeff(std::size_t n) const {
    return Residue(n < coeffs_.size() ? static_cast<std::int64_t>(coeffs_[n]) : 0, p_);
  }
  Residue leading() const { return is_zero() ? Residue::zero(p_) : coeff(coeffs_.size() - 1); }

  std::span<const std::uint64_t> raw() const noexcept { return coeffs_; }

  DensePolynomial monic() const {
    if (is_zero()) return *this;
    const std::uint64_t p = p_.value();
    const std::uint64_t inv = detail::inv_mod(coeffs_.back(), p);
    std::vector<std::uint64_t> c(coeffs_);
    for (auto& x : c) x = detail::mul_mod(x, inv, p);
    return from_reduced(p_, std::move(c));
  }

  friend bool operator==(const DensePolynomial&, const DensePolynomial&) = default;

  friend DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b) {
    check(a, b);
    const std::uint64_t p = a.p_.value();
    std::vector<std::uint64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = detail::add_mod(i < a.coeffs_.size() ? a.coeffs_[i] : 0, i < b.coeffs_.size() ? b.coeffs_[i] : 0, p);
    }
    return from_reduced(a.p_, std::move(c));
  }

  friend DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b) {
    check(a, b);
    const std::uint64_t p = a.p_.value();
    std::vector<std::uint64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = detail::sub_mod(i < a.coeffs_.size() ? a.coeffs_[i] : 0, i < b.coeffs_.size() ? b.coeffs_[i] : 0, p);
    }
    return from_reduced(a.p_, std::move(c));
  }

  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
    check(a, b);
    return from_reduced(a.p_, convolve(a.coeffs_, b.coeffs_, a.p_.value()));
  }

  /// Classical convolution of reduced coefficient vectors. Zero entries are
  /// skipped, which keeps powers of sparse inputs such as x^m + 1 cheap.
  static std::vector<std::uint64_t> convolve(std::span<const std::uint64_t> a,
                                             std::span<const std::uint64_t> b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
    std::vector<std::size_t> b_support;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) b_support.push_back(j);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::uint64_t ai = a[i];
      if (ai == 0) continue;
      std::uint64_t* row = out.data() + i;
      for (std::size_t j : b_support) row[j] = (row[j] + ai * b[j]) % p;
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  static void check(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("polynomials over different primes");
  }

  Prime p_;
  std::vector<std::uint64_t> coeffs_;
};

/// Quotient and remainder of a by a nonzero b.
inline std::pair<DensePolynomial, DensePolynomial> divmod(const DensePolynomial& a, const DensePolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.modulus() != b.modulus()) throw std::invalid_argument("polynomials over different primes");
  const Prime prime = a.modulus();
  const std::uint64_t p = prime.value();
  std::vector<std::uint64_t> rem(a.raw().begin(), a.raw().end());
  const auto db = static_cast<std::size_t>(b.degree());
  if (rem.size() <= db) return {DensePolynomial(prime), a};

  std::vector<std::uint64_t> quot(rem.size() - db, 0);
  const std::uint64_t lead_inv = detail::inv_mod(b.raw()[db], p);
  for (std::size_t k = rem.size(); k-- > db;) {
    const std::uint64_t q = detail::mul_mod(rem[k], lead_inv, p);
    quot[k - db] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] = detail::sub_mod(rem[k - db + j], detail::mul_mod(q, b.raw()[j], p), p);
    }
  }
  rem.resize(db);
  return {DensePolynomial::from_reduced(prime, std::move(quot)), DensePolynomial::from_reduced(prime, std::move(rem))};
}

/// Monic gcd by the Euclidean algorithm. Rejects gcd(0, 0).
inline DensePolynomial poly_gcd(DensePolynomial a, DensePolynomial b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials is undefined");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Formal derivative; terms whose exponent is divisible by p vanish.
inline DensePolynomial poly_derivative(const DensePolynomial& f) {
  const std::uint64_t p = f.modulus().value();
  if (f.degree() < 1) return DensePolynomial(f.modulus());
  std::vector<std::uint64_t> c(static_cast<std::size_t>(f.degree()), 0);
  for (std::size_t n = 1; n < f.raw().size(); ++n) c[n - 1] = detail::mul_mod(n % p, f.raw()[n], p);
  return DensePolynomial::from_reduced(f.modulus(), std::move(c));
}

/// Exponent -> nonzero residue. Exponents are signed so the same type holds
/// Laurent differentials such as dx/x.
class SparseCoeffMap {
 public:
  using Storage = std::map<std::int64_t, std::uint64_t>;
  using const_iterator = Storage::const_iterator;

  explicit SparseCoeffMap(Prime p) : p_(p) {}

  SparseCoeffMap(Prime p, std::initializer_list<std::pair<std::int64_t, std::int64_t>> terms) : p_(p) {
    for (const auto& [e, c] : terms) add(e, Residue(c, p));
  }

  static SparseCoeffMap from_dense(const DensePolynomial& f) {
    SparseCoeffMap out(f.modulus());
    for (std::size_t n = 0; n < f.raw().size(); ++n) {
      if (f.raw()[n] != 0) out.entries_.emplace(static_cast<std::int64_t>(n), f.raw()[n]);
    }
    return out;
  }

  Prime modulus() const noexcept { return p_; }

  /// Coefficient at `exponent`; zero when absent.
  Residue at(std::int64_t exponent) const {
    auto it = entries_.find(exponent);
    return Residue(it == entries_.end() ? 0 : static_cast<std::int64_t>(it->second), p_);
  }

  void add(std::int64_t exponent, const Residue& value) {
    if (value.modulus() != p_) throw std::invalid_argument("residue over a different prime");
    if (value.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(exponent, value.value());
    if (inserted) return;
    it->second = detail::add_mod(it->second, value.value(), p_.value());
    if (it->second == 0) entries_.erase(it);
  }

  void set(std::int64_t exponent, const Residue& value) {
    if (value.modulus() != p_) throw std::invalid_argument("residue over a different prime");
    if (value.is_zero()) {
      entries_.erase(exponent);
    } else {
      entries_[exponent] = value.value();
    }
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  std::optional<std::int64_t> min_exponent() const {
    return empty() ? std::nullopt : std::optional(entries_.begin()->first);
  }
  std::optional<std::int64_t> max_exponent() const {
    return empty() ? std::nullopt : std::optional(entries_.rbegin()->first);
  }

  /// Multiplication by c * x^offset.
  SparseCoeffMap scaled_shift(const Residue& c, std::int64_t offset) const {
    SparseCoeffMap out(p_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : entries_) {
      out.entries_.emplace_hint(out.entries_.end(), e + offset, detail::mul_mod(v, c.value(), p_.value()));
    }
    return out;
  }
  SparseCoeffMap shifted(std::int64_t offset) const { return scaled_shift(Residue::one(p_), offset); }

  friend bool operator==(const SparseCoeffMap&, const SparseCoeffMap&) = default;

 private:
  Prime p_;
  Storage entries_;
};

/// Default bound on e * deg(f) coefficient slots for dense powering.
inline constexpr std::uint64_t kDefaultSlotLimit = 10'000'000;

class SlotLimitExceeded : public std::runtime_error {
 public:
  explicit SlotLimitExceeded(std::uint64_t slots)
      : std::runtime_error("dense power needs " + std::to_string(slots) + " coefficient slots"), slots_(slots) {}
  std::uint64_t slots() const noexcept { return slots_; }

 private:
  std::uint64_t slots_;
};

/// Coefficients of f^e by repeated squaring over dense coefficient vectors.
inline SparseCoeffMap poly_pow_coeffs(const DensePolynomial& f, std::uint64_t e,
                                      std::uint64_t slot_limit = kDefaultSlotLimit) {
  const Prime prime = f.modulus();
  const std::uint64_t p = prime.value();
  if (e == 0) return SparseCoeffMap(prime, {{0, 1}});
  if (f.is_zero()) return SparseCoeffMap(prime);
  const auto d = static_cast<std::uint64_t>(f.degree());
  if (d != 0 && e > (slot_limit / d)) throw SlotLimitExceeded(e * d + 1);
  if (e * d + 1 > slot_limit) throw SlotLimitExceeded(e * d + 1);

  std::vector<std::uint64_t> result{1};
  std::vector<std::uint64_t> base(f.raw().begin(), f.raw().end());
  while (true) {
    if (e & 1U) result = DensePolynomial::convolve(result, base, p);
    e >>= 1U;
    if (e == 0) break;
    base = DensePolynomial::convolve(base, base, p);
  }
  return SparseCoeffMap::from_dense(DensePolynomial::from_reduced(prime, std::move(result)));
}

}  // namespace anum
