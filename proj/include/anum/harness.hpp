/**
 * @file anum/harness.hpp
 * @brief Parameter sweeps over the two curve families. Every grid point is
 * computed along independent paths (sparse vs dense coefficients, matrix vs
 * basis action vs congruence count) and checked against the closed forms.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "anum/cartier.hpp"
#include "anum/closedform.hpp"
#include "anum/curves.hpp"
#include "anum/ffpoly.hpp"

namespace anum {

/// m = sp + 1, m = sp - 1, m = sp.
enum class Shape { PlusOne, MinusOne, Multiple };
enum class Parity { Odd, Even, Both };

struct Pattern {
  Shape shape = Shape::PlusOne;
  Parity parity = Parity::Both;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// "sp+1", "sp-1", "sp", optionally suffixed ":odd", ":even" or ":both".
/// Without a suffix sp+1 and sp-1 cover both parities of s and sp covers odd
/// s only, which is exactly the set of stated closed forms.
inline Pattern parse_pattern(std::string_view token) {
  std::string_view base = token;
  std::optional<Parity> parity;
  if (const auto colon = token.find(':'); colon != std::string_view::npos) {
    base = token.substr(0, colon);
    const std::string_view suffix = token.substr(colon + 1);
    if (suffix == "odd") {
      parity = Parity::Odd;
    } else if (suffix == "even") {
      parity = Parity::Even;
    } else if (suffix == "both") {
      parity = Parity::Both;
    } else {
      throw std::invalid_argument("unknown parity '" + std::string(suffix) + "'");
    }
  }
  if (base == "sp+1") return {Shape::PlusOne, parity.value_or(Parity::Both)};
  if (base == "sp-1") return {Shape::MinusOne, parity.value_or(Parity::Both)};
  if (base == "sp") return {Shape::Multiple, parity.value_or(Parity::Odd)};
  throw std::invalid_argument("unknown pattern '" + std::string(token) + "'");
}

/// Family A pairs with sp+-1 (p | m makes x^m + 1 inseparable); family B
/// pairs with sp.
inline bool compatible(FamilyTag family, Shape shape) noexcept {
  if (family == FamilyTag::A) return shape != Shape::Multiple;
  if (family == FamilyTag::B) return shape == Shape::Multiple;
  return false;
}

struct SweepGrid {
  std::vector<Prime> primes;
  std::vector<FamilyTag> families;
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;
  std::vector<Pattern> patterns;

  void validate() const {
    if (primes.empty()) throw std::invalid_argument("grid needs at least one prime");
    if (families.empty()) throw std::invalid_argument("grid needs at least one family");
    if (patterns.empty()) throw std::invalid_argument("grid needs at least one pattern");
    if (k_min < 0 || k_max < k_min) throw std::invalid_argument("k range must be non-empty and non-negative");
    for (auto f : families) {
      if (f == FamilyTag::Generic) throw std::invalid_argument("grid families must be A or B");
    }
  }
};

struct GridPoint {
  FamilyTag family;
  Prime p;
  std::uint64_t m;
  std::uint64_t s;
  std::uint64_t k;
};

/// Points sorted by (family, p, m). s = 0 (even parity at k = 0) is not a
/// point: the even-s closed forms start at k = 1.
inline std::vector<GridPoint> grid_points(const SweepGrid& grid) {
  grid.validate();
  std::vector<GridPoint> points;
  for (auto family : grid.families) {
    for (const Prime& p : grid.primes) {
      for (const Pattern& pattern : grid.patterns) {
        if (!compatible(family, pattern.shape)) continue;
        for (auto k = static_cast<std::uint64_t>(grid.k_min); k <= static_cast<std::uint64_t>(grid.k_max); ++k) {
          std::vector<std::uint64_t> svals;
          if (pattern.parity != Parity::Even) svals.push_back(2 * k + 1);
          if (pattern.parity != Parity::Odd && k > 0) svals.push_back(2 * k);
          for (auto s : svals) {
            const std::uint64_t sp = s * p.value();
            const std::uint64_t m = pattern.shape == Shape::PlusOne ? sp + 1 : pattern.shape == Shape::MinusOne ? sp - 1 : sp;
            points.push_back({family, p, m, s, k});
          }
        }
      }
    }
  }
  auto key = [](const GridPoint& g) { return std::make_tuple(static_cast<int>(g.family), g.p.value(), g.m); };
  std::sort(points.begin(), points.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  points.erase(std::unique(points.begin(), points.end(), [&](const auto& a, const auto& b) { return key(a) == key(b); }),
               points.end());
  return points;
}

/// One computed curve. a_number, match and paths_agree are derived from the
/// stored inputs on every call.
struct ANumberReport {
  FamilyTag family = FamilyTag::A;
  std::uint64_t p = 0;
  std::uint64_t m = 0;
  std::optional<std::uint64_t> s;
  std::optional<std::uint64_t> k;
  std::uint64_t genus = 0;
  std::uint64_t rank = 0;
  std::optional<std::uint64_t> action_rank;
  std::optional<std::uint64_t> congruence_rank;
  std::optional<bool> coeffs_agree;
  std::optional<TheoremPrediction> prediction;

  std::uint64_t a_number() const noexcept { return genus - rank; }
  bool match() const noexcept { return !prediction || prediction->predicted_a == a_number(); }
  bool paths_agree() const noexcept {
    return coeffs_agree.value_or(true) && action_rank.value_or(rank) == rank &&
           congruence_rank.value_or(rank) == rank;
  }
};

struct SkipRecord {
  FamilyTag family;
  std::uint64_t p;
  std::uint64_t m;
  std::uint64_t s;
  std::uint64_t k;
  std::string reason;
};

using Predictor = std::function<std::optional<TheoremPrediction>(const CurveSpec&)>;

struct EvalOptions {
  Predictor predictor = [](const CurveSpec& spec) { return predicted_a(spec); };
  std::uint64_t slot_limit = kDefaultSlotLimit;
};

/// Full pipeline for one curve. The matrix is built from the dense
/// coefficients and the basis action from the sparse ones, so the rank
/// comparison also crosses coefficient paths.
inline ANumberReport evaluate(const CurveSpec& spec, const EvalOptions& options = {}) {
  ANumberReport r;
  r.family = spec.tag();
  r.p = spec.p().value();
  r.m = spec.m();
  r.genus = spec.genus();

  const SparseCoeffMap dense = half_power_coeffs(spec, Strategy::Dense, options.slot_limit);
  const CartierMatrix M = cartier_matrix(spec, dense);
  r.rank = rank_mod_p(M);

  if (spec.family().is_family()) {
    const SparseCoeffMap sparse = half_power_coeffs(spec, Strategy::Sparse);
    r.coeffs_agree = sparse == dense;
    r.action_rank = rank_mod_p(cartier_action_on_basis(spec, sparse));
    r.congruence_rank = congruence_rank(spec);
  } else {
    r.action_rank = rank_mod_p(cartier_action_on_basis(spec, dense));
  }

  if (options.predictor) r.prediction = options.predictor(spec);
  if (r.prediction) {
    r.s = r.prediction->s;
    r.k = r.prediction->k;
  }
  return r;
}

/// Explicit hint, else ANUM_THREADS, else the hardware concurrency.
inline unsigned resolve_thread_count(std::optional<unsigned> hint = std::nullopt) {
  if (hint && *hint > 0) return *hint;
  if (const char* env = std::getenv("ANUM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct SweepOptions {
  EvalOptions eval;
  std::optional<unsigned> threads;
};

struct SweepResult {
  std::vector<ANumberReport> reports;
  std::vector<SkipRecord> skips;
};

inline SweepResult sweep(const SweepGrid& grid, const SweepOptions& options = {}) {
  const std::vector<GridPoint> points = grid_points(grid);
  std::vector<std::variant<ANumberReport, SkipRecord>> slots(points.size());

  auto run_point = [&](std::size_t idx) {
    const GridPoint& pt = points[idx];
    const auto skip = [&](std::string reason) {
      slots[idx] = SkipRecord{pt.family, pt.p.value(), pt.m, pt.s, pt.k, std::move(reason)};
    };
    try {
      const CurveSpec spec = make_curve(pt.p, pt.family == FamilyTag::A ? CurveFamily::family_a(pt.m)
                                                                        : CurveFamily::family_b(pt.m));
      ANumberReport r = evaluate(spec, options.eval);
      r.s = pt.s;
      r.k = pt.k;
      slots[idx] = std::move(r);
    } catch (const CurveError& e) {
      skip(to_string(e.kind()));
    } catch (const SlotLimitExceeded& e) {
      skip("slot limit exceeded");
    }
  };

  const unsigned workers = std::min<std::size_t>(resolve_thread_count(options.threads), std::max<std::size_t>(1, points.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) run_point(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SweepResult out;
  for (auto& slot : slots) {
    if (auto* r = std::get_if<ANumberReport>(&slot)) {
      out.reports.push_back(std::move(*r));
    } else {
      out.skips.push_back(std::move(std::get<SkipRecord>(slot)));
    }
  }
  return out;
}

struct VerifyResult {
  SweepResult sweep;
  std::vector<ANumberReport> mismatches;
  int exit_status = 0;
};

inline VerifyResult verify(const SweepGrid& grid, const SweepOptions& options = {}) {
  VerifyResult out{sweep(grid, options), {}, 0};
  for (const auto& r : out.sweep.reports) {
    if (!r.match() || !r.paths_agree()) out.mismatches.push_back(r);
  }
  out.exit_status = out.mismatches.empty() ? 0 : 1;
  return out;
}

}  // namespace anum
