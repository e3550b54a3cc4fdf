/**
 * @file anum/cartier.hpp
 * @brief The Cartier operator on monomial differentials, the Cartier-Manin
 * matrix of a hyperelliptic curve, exact rank over F_p and the a-number.
 *
 * Coefficients live in F_p, where x -> x^p is the identity, so the
 * p^-1-semilinear twist of the operator is trivial and rank over F_p equals
 * rank over the algebraic closure.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "anum/curves.hpp"
#include "anum/ffpoly.hpp"

namespace anum {

/// h(x) dx with h a Laurent polynomial over F_p.
struct LaurentDifferential {
  SparseCoeffMap coeffs;

  friend bool operator==(const LaurentDifferential&, const LaurentDifferential&) = default;
};

/// Cartier operator on h(x) dx: x^j dx -> x^(s-1) dx when j + 1 = ps, else 0.
inline LaurentDifferential cartier_differential(const LaurentDifferential& omega) {
  const auto p = static_cast<std::int64_t>(omega.coeffs.modulus().value());
  LaurentDifferential out{SparseCoeffMap(omega.coeffs.modulus())};
  for (const auto& [j, c] : omega.coeffs) {
    if ((j + 1) % p != 0) continue;
    out.coeffs.add((j + 1) / p - 1, Residue(static_cast<std::int64_t>(c), omega.coeffs.modulus()));
  }
  return out;
}

/// dh for a Laurent polynomial h, expanded formally.
inline LaurentDifferential exact_differential(const SparseCoeffMap& h) {
  const Prime p = h.modulus();
  LaurentDifferential out{SparseCoeffMap(p)};
  for (const auto& [n, c] : h) {
    out.coeffs.add(n - 1, Residue(n, p) * Residue(static_cast<std::int64_t>(c), p));
  }
  return out;
}

/// Square g x g matrix of residues, row-major. Rows and columns are 0-based
/// here; row r, column c corresponds to (i, j) = (r + 1, c + 1).
class CartierMatrix {
 public:
  CartierMatrix(Prime p, std::size_t genus) : p_(p), g_(genus), entries_(genus * genus, 0) {}

  Prime p() const noexcept { return p_; }
  std::size_t genus() const noexcept { return g_; }

  Residue at(std::size_t row, std::size_t col) const {
    return Residue(static_cast<std::int64_t>(entries_.at(row * g_ + col)), p_);
  }
  std::uint64_t raw(std::size_t row, std::size_t col) const { return entries_.at(row * g_ + col); }

  void set(std::size_t row, std::size_t col, const Residue& v) {
    if (v.modulus() != p_) throw std::invalid_argument("residue over a different prime");
    entries_.at(row * g_ + col) = v.value();
  }

  CartierMatrix transposed() const {
    CartierMatrix t(p_, g_);
    for (std::size_t r = 0; r < g_; ++r) {
      for (std::size_t c = 0; c < g_; ++c) t.entries_[c * g_ + r] = entries_[r * g_ + c];
    }
    return t;
  }

  /// Every entry satisfies v^p = v.
  bool frobenius_fixed() const {
    for (auto v : entries_) {
      if (detail::pow_mod(v, p_.value(), p_.value()) != v) return false;
    }
    return true;
  }

  bool is_zero() const noexcept {
    for (auto v : entries_) {
      if (v != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CartierMatrix&, const CartierMatrix&) = default;

 private:
  Prime p_;
  std::size_t g_;
  std::vector<std::uint64_t> entries_;
};

/// M[i][j] = c_{ip - j} for 1 <= i, j <= g; indices outside the expansion
/// read as zero.
inline CartierMatrix cartier_matrix(const CurveSpec& spec, const SparseCoeffMap& coeffs) {
  const std::size_t g = spec.genus();
  const auto p = static_cast<std::int64_t>(spec.p().value());
  CartierMatrix M(spec.p(), g);
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t c = 0; c < g; ++c) {
      const std::int64_t n = static_cast<std::int64_t>(r + 1) * p - static_cast<std::int64_t>(c + 1);
      M.set(r, c, coeffs.at(n));
    }
  }
  if (!M.frobenius_fixed()) throw std::logic_error("Cartier-Manin entry not fixed by Frobenius");
  return M;
}

inline CartierMatrix cartier_matrix(const CurveSpec& spec) {
  return cartier_matrix(spec, half_power_coeffs(spec, preferred_strategy(spec)));
}

/// Row i holds C(omega_i) in the basis omega_l = x^(l-1) dx / y, obtained by
/// applying the Cartier operator to x^(i-1) f^((p-1)/2) dx. Since
/// omega_i = y^-p x^(i-1) y^(p-1) dx, the y^-p factor comes out as 1/y.
inline CartierMatrix cartier_action_on_basis(const CurveSpec& spec, const SparseCoeffMap& coeffs) {
  const std::size_t g = spec.genus();
  CartierMatrix A(spec.p(), g);
  for (std::size_t r = 0; r < g; ++r) {
    const LaurentDifferential image =
        cartier_differential(LaurentDifferential{coeffs.shifted(static_cast<std::int64_t>(r))});
    for (const auto& [exponent, v] : image.coeffs) {
      if (exponent < 0 || exponent >= static_cast<std::int64_t>(g)) {
        throw std::logic_error("Cartier image x^" + std::to_string(exponent) + " dx/y leaves the holomorphic basis");
      }
      A.set(r, static_cast<std::size_t>(exponent), Residue(static_cast<std::int64_t>(v), spec.p()));
    }
  }
  return A;
}

inline CartierMatrix cartier_action_on_basis(const CurveSpec& spec) {
  return cartier_action_on_basis(spec, half_power_coeffs(spec, preferred_strategy(spec)));
}

/// Reduced row echelon form. Pivots are taken as the first nonzero entry in
/// column order.
struct RowEchelon {
  Prime p;
  std::size_t cols;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

inline RowEchelon row_reduce(const CartierMatrix& M) {
  const std::size_t g = M.genus();
  const std::uint64_t p = M.p().value();
  RowEchelon out{M.p(), g, {}, {}};
  out.rows.assign(g, std::vector<std::uint64_t>(g, 0));
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t c = 0; c < g; ++c) out.rows[r][c] = M.raw(r, c);
  }

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < g && pivot_row < g; ++col) {
    std::size_t found = pivot_row;
    while (found < g && out.rows[found][col] == 0) ++found;
    if (found == g) continue;
    std::swap(out.rows[pivot_row], out.rows[found]);

    auto& prow = out.rows[pivot_row];
    const std::uint64_t inv = detail::inv_mod(prow[col], p);
    for (auto& x : prow) x = detail::mul_mod(x, inv, p);

    for (std::size_t r = 0; r < g; ++r) {
      if (r == pivot_row || out.rows[r][col] == 0) continue;
      const std::uint64_t factor = out.rows[r][col];
      for (std::size_t c = col; c < g; ++c) {
        out.rows[r][c] = detail::sub_mod(out.rows[r][c], detail::mul_mod(factor, prow[c], p), p);
      }
    }
    out.pivot_cols.push_back(col);
    ++pivot_row;
  }
  return out;
}

inline std::size_t rank_mod_p(const CartierMatrix& M) { return row_reduce(M).rank(); }

/// Basis of {v : M v = 0}, one vector per free column of the echelon form.
inline std::vector<std::vector<std::uint64_t>> null_space(const CartierMatrix& M) {
  const RowEchelon E = row_reduce(M);
  const std::uint64_t p = M.p().value();
  std::vector<bool> is_pivot(E.cols, false);
  for (auto c : E.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < E.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(E.cols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < E.pivot_cols.size(); ++k) {
      v[E.pivot_cols[k]] = detail::sub_mod(0, E.rows[k][free], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

struct ANumberResult {
  std::uint64_t genus = 0;
  std::uint64_t rank = 0;
  std::uint64_t a = 0;

  friend bool operator==(const ANumberResult&, const ANumberResult&) = default;
};

/// a = g - rank(M): the dimension of the kernel of the Cartier operator on
/// holomorphic differentials.
inline ANumberResult a_number(const CartierMatrix& M) {
  const auto rank = static_cast<std::uint64_t>(rank_mod_p(M));
  return {M.genus(), rank, M.genus() - rank};
}

inline ANumberResult a_number(const CurveSpec& spec) { return a_number(cartier_matrix(spec)); }

// Matrix dump: a header line then one comma-separated row per line.
//   # p=3 m=7 family=A g=3
//   0,0,1
inline std::string format_matrix_dump(const CurveSpec& spec, const CartierMatrix& M) {
  std::ostringstream os;
  os << "# p=" << spec.p().value() << " m=" << spec.m() << " family=" << family_letter(spec.tag())
     << " g=" << M.genus() << '\n';
  for (std::size_t r = 0; r < M.genus(); ++r) {
    for (std::size_t c = 0; c < M.genus(); ++c) {
      if (c) os << ',';
      os << M.raw(r, c);
    }
    os << '\n';
  }
  return os.str();
}

struct MatrixDump {
  std::uint64_t p = 0;
  std::uint64_t m = 0;
  char family = '?';
  std::uint64_t g = 0;
  std::vector<std::vector<std::uint64_t>> rows;
};

inline MatrixDump parse_matrix_dump(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  MatrixDump out;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw std::invalid_argument("missing dump header");
  {
    std::istringstream hs(line.substr(2));
    std::string field;
    int seen = 0;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad header field '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "p") {
        out.p = std::stoull(value);
      } else if (key == "m") {
        out.m = std::stoull(value);
      } else if (key == "g") {
        out.g = std::stoull(value);
      } else if (key == "family" && value.size() == 1) {
        out.family = value[0];
      } else {
        throw std::invalid_argument("bad header field '" + field + "'");
      }
      ++seen;
    }
    if (seen != 4) throw std::invalid_argument("dump header needs p, m, family and g");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::uint64_t> row;
    std::istringstream rs(line);
    std::string cell;
    while (std::getline(rs, cell, ',')) row.push_back(std::stoull(cell));
    if (row.size() != out.g) throw std::invalid_argument("row width differs from g");
    out.rows.push_back(std::move(row));
  }
  if (out.rows.size() != out.g) throw std::invalid_argument("row count differs from g");
  return out;
}

inline CartierMatrix to_matrix(const MatrixDump& dump) {
  CartierMatrix M(Prime(dump.p), dump.g);
  for (std::size_t r = 0; r < dump.g; ++r) {
    for (std::size_t c = 0; c < dump.g; ++c) {
      M.set(r, c, Residue(static_cast<std::int64_t>(dump.rows[r][c]), M.p()));
    }
  }
  return M;
}

}  // namespace anum
