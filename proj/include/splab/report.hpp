#pragma once

// Machine-readable renderings of every result type. All integers are
// emitted as decimal strings so consumers never round them through a double.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splab/dependence.hpp"
#include "splab/elliptic.hpp"
#include "splab/mulgroup.hpp"
#include "splab/order_search.hpp"
#include "splab/relation.hpp"

namespace splab::report {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

inline json num(u64 v) { return std::to_string(v); }
inline json num(const BigInt& v) { return v.str(); }

template <class Seq>
json nums(const Seq& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(num(v));
  return out;
}

inline json congruence(const Congruence& c) { return {{"residue", num(c.residue)}, {"modulus", num(c.modulus)}}; }

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// {"tool_version", "config", "exclusions", "result"}.
inline json envelope(json config, const std::vector<u64>& exclusions, json result) {
  return {{"tool_version", kToolVersion},
          {"config", std::move(config)},
          {"exclusions", nums(exclusions)},
          {"result", std::move(result)}};
}

inline json to_json(const SupportReport& r) {
  json out = {{"x", r.x.to_string()},
              {"y", r.y.to_string()},
              {"n_max", num(r.n_max)},
              {"p_max", num(r.p_max)},
              {"verdict", r.verdict == SupportVerdict::Witness ? "Witness" : "EqualInRange"},
              {"witness", nullptr}};
  if (r.witness)
    out["witness"] = {{"n", num(r.witness->n)},
                      {"prime", num(r.witness->prime)},
                      {"side", std::string(1, r.witness->side)},
                      {"cross_checked", r.witness->cross_checked}};
  return out;
}

inline json to_json(const SweepReport& r, bool details) {
  auto row_json = [](const SweepRow& row) { return json{{"p", num(row.p)}, {"l_parts", nums(row.l_parts)}, {"match", row.match}}; };
  json match_rows = json::array();
  json rows = json::array();
  for (const auto& row : r.rows) {
    if (row.match) match_rows.push_back(row_json(row));
    if (details) rows.push_back(row_json(row));
  }
  json out = {{"system", r.system},
              {"l", num(r.profile.l)},
              {"ks", nums(std::vector<u64>(r.profile.ks.begin(), r.profile.ks.end()))},
              {"lo", num(r.lo)},
              {"hi", num(r.hi)},
              {"scanned", num(r.scanned)},
              {"match_count", num(static_cast<u64>(r.matches.size()))},
              {"density", fixed6(r.density())},
              {"matches", nums(r.matches)},
              {"match_rows", std::move(match_rows)}};
  if (details) out["rows"] = std::move(rows);
  return out;
}

inline json to_json(const ImplicationReport& r) {
  json out = {{"system", r.system},
              {"p", num(r.p)},
              {"status", to_string(r.status)},
              {"method", to_string(r.method)},
              {"witness", nums(r.witness)},
              {"multiplier", nullptr}};
  if (r.method == ImplicationMethod::BoxBruteForce) out["box_bound"] = num(r.box_bound);
  if (r.multiplier) out["multiplier"] = congruence(*r.multiplier);
  return out;
}

inline json to_json(const SchinzelCondition& c) {
  json out = {{"status", to_string(c.status)}, {"witness", nums(c.witness)}, {"constraint", nullptr}};
  if (c.status == ConditionStatus::Holds)
    out["constraint"] = {{"p", num(c.constraint.p)}, {"residue", num(c.constraint.residue)}, {"modulus", num(c.constraint.modulus)}};
  return out;
}

inline json to_json(const RelationWitness& w) {
  json constraints = json::array();
  for (const auto& c : w.constraints)
    constraints.push_back({{"p", num(c.p)}, {"residue", num(c.residue)}, {"modulus", num(c.modulus)}});
  json pairs = json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back({{"alpha", num(a)}, {"beta", num(b)}});
  json out = {{"kind", to_string(w.kind)},
              {"exponent", nullptr},
              {"pairs", std::move(pairs)},
              {"refuting_prime", nullptr},
              {"conflicting_prime", nullptr},
              {"fails_witness", nums(w.fails_witness)},
              {"reason", w.reason},
              {"primes_sampled", num(w.primes_sampled)},
              {"combined", congruence(w.combined)},
              {"constraints", std::move(constraints)}};
  if (w.kind == RelationKind::Exponent) out["exponent"] = num(w.exponent);
  if (w.kind == RelationKind::Refuted) out["refuting_prime"] = num(w.refuting_prime);
  if (w.conflicting_prime) out["conflicting_prime"] = num(*w.conflicting_prime);
  if (w.search_bound > 0) out["search_bound"] = num(w.search_bound);
  return out;
}

inline json to_json(const GroupOrderCertificate& c) {
  return {{"p", num(c.p)}, {"order", num(c.order)}, {"method", to_string(c.method)}, {"hasse_ok", within_hasse(c.p, c.order)}};
}

/// Flat per-prime rows: p, lpart_1..lpart_s, match.
inline std::string sweep_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "p";
  for (std::size_t t = 0; t < r.profile.ks.size(); ++t) os << ",lpart_" << (t + 1);
  os << ",match\n";
  for (const auto& row : r.rows) {
    os << row.p;
    for (u64 v : row.l_parts) os << ',' << v;
    os << ',' << (row.match ? 1 : 0) << '\n';
  }
  return os.str();
}

inline std::string join(const std::vector<u64>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

inline std::string describe(const RelationWitness& w) {
  std::ostringstream os;
  switch (w.kind) {
    case RelationKind::Exponent: os << "Verified(e=" << w.exponent << ")"; break;
    case RelationKind::Pairs: {
      os << "Pairs(";
      for (std::size_t i = 0; i < w.pairs.size(); ++i)
        os << (i ? ", " : "") << "(" << w.pairs[i].first << "," << w.pairs[i].second << ")";
      os << ")";
      break;
    }
    case RelationKind::Refuted:
      os << "Refuted(p=" << w.refuting_prime;
      if (w.conflicting_prime) os << ", conflicts with p=" << *w.conflicting_prime;
      if (!w.fails_witness.empty()) os << ", m=(" << join(w.fails_witness) << ")";
      os << ")";
      break;
    case RelationKind::Inconclusive:
      os << "Inconclusive(";
      if (w.search_bound > 0)
        os << "bound=" << w.search_bound;
      else
        os << "e == " << w.combined.residue << " mod " << w.combined.modulus;
      os << ")";
      break;
  }
  return os.str();
}

}  // namespace splab::report
