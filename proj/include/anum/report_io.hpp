/**
 * @file anum/report_io.hpp
 * @brief CSV, JSON and plain-text rendering of sweep reports.
 */
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anum/harness.hpp"
#include "json.hpp"

namespace anum {

inline constexpr const char* kCsvHeader =
    "family,p,m,s,k,genus,rank,a_number,congruence_rank,predicted_a,theorem,match,paths_agree";

namespace detail {

inline std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline std::string csv_row(const ANumberReport& r) {
  std::ostringstream os;
  os << family_letter(r.family) << ',' << r.p << ',' << r.m << ',' << detail::opt_str(r.s) << ','
     << detail::opt_str(r.k) << ',' << r.genus << ',' << r.rank << ',' << r.a_number() << ','
     << detail::opt_str(r.congruence_rank) << ','
     << detail::opt_str(r.prediction ? std::optional(r.prediction->predicted_a) : std::nullopt) << ','
     << (r.prediction ? to_string(r.prediction->theorem) : "") << ',' << detail::bool_str(r.match()) << ','
     << detail::bool_str(r.paths_agree());
  return os.str();
}

inline std::string to_csv(const std::vector<ANumberReport>& reports) {
  std::string out = std::string(kCsvHeader) + '\n';
  for (const auto& r : reports) out += csv_row(r) + '\n';
  return out;
}

inline nlohmann::ordered_json to_json(const ANumberReport& r) {
  auto opt = [](const std::optional<std::uint64_t>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["family"] = std::string(1, family_letter(r.family));
  j["p"] = r.p;
  j["m"] = r.m;
  j["s"] = opt(r.s);
  j["k"] = opt(r.k);
  j["genus"] = r.genus;
  j["rank"] = r.rank;
  j["a_number"] = r.a_number();
  j["congruence_rank"] = opt(r.congruence_rank);
  j["predicted_a"] = opt(r.prediction ? std::optional(r.prediction->predicted_a) : std::nullopt);
  j["theorem"] = r.prediction ? nlohmann::ordered_json(to_string(r.prediction->theorem)) : nlohmann::ordered_json(nullptr);
  j["match"] = r.match();
  j["paths_agree"] = r.paths_agree();
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<ANumberReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline std::string to_text(const ANumberReport& r) {
  std::ostringstream os;
  os << "family=" << family_letter(r.family) << " p=" << r.p << " m=" << r.m << '\n'
     << "genus=" << r.genus << '\n'
     << "rank=" << r.rank << '\n'
     << "a_number=" << r.a_number() << '\n';
  if (r.congruence_rank) os << "congruence_rank=" << *r.congruence_rank << '\n';
  if (r.prediction) {
    os << "predicted_a=" << r.prediction->predicted_a << " (" << to_string(r.prediction->theorem)
       << ", s=" << r.prediction->s << ", k=" << r.prediction->k << ")\n";
  } else {
    os << "predicted_a=none\n";
  }
  os << "match=" << detail::bool_str(r.match()) << '\n' << "paths_agree=" << detail::bool_str(r.paths_agree()) << '\n';
  return os.str();
}

inline std::string to_text(const SkipRecord& s) {
  std::ostringstream os;
  os << "skip family=" << family_letter(s.family) << " p=" << s.p << " m=" << s.m << " s=" << s.s << " k=" << s.k
     << " reason=" << s.reason;
  return os.str();
}

inline std::string to_text(const SweepResult& result) {
  std::ostringstream os;
  for (const auto& r : result.reports) {
    os << family_letter(r.family) << " p=" << r.p << " m=" << r.m << " g=" << r.genus << " rank=" << r.rank
       << " a=" << r.a_number();
    if (r.prediction) os << " predicted=" << r.prediction->predicted_a << " [" << to_string(r.prediction->theorem) << ']';
    os << " match=" << detail::bool_str(r.match()) << " paths_agree=" << detail::bool_str(r.paths_agree()) << '\n';
  }
  for (const auto& s : result.skips) os << to_text(s) << '\n';
  os << result.reports.size() << " reports, " << result.skips.size() << " skipped\n";
  return os.str();
}

}  // namespace anum
