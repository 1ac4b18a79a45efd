#pragma once

// Result types shared by the exponent-recovery routines of the
// multiplicative and elliptic systems.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splab/arith.hpp"

namespace splab {

/// The exponent class forced at one prime: e == residue (mod modulus), modulus | p - 1
/// in the multiplicative case, modulus | ord(r_p(P_i)) in general.
struct PrimeExponentConstraint {
  u64 p = 0;
  BigInt modulus{1};
  BigInt residue{0};

  Congruence as_congruence() const { return {residue, modulus}; }
  friend bool operator==(const PrimeExponentConstraint&, const PrimeExponentConstraint&) = default;
};

enum class RelationKind { Exponent, Pairs, Refuted, Inconclusive };

inline std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Exponent: return "Exponent";
    case RelationKind::Pairs: return "Pairs";
    case RelationKind::Refuted: return "Refuted";
    case RelationKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// A recovered global relation, or the reason none was found.
///
/// Exponent: Q_i = e P_i verified exactly. Pairs: alpha_i P_i + beta_i Q_i = 0
/// verified exactly. Refuted: a prime where no exponent is possible, either
/// because the per-prime implication fails (fails_witness is set), because
/// r_p(Q_i) is outside <r_p(P_i)>, or because its constraint contradicts the
/// one at conflicting_prime. Inconclusive: every sampled prime was consistent
/// but no candidate verified (or the pair search hit its bound).
struct RelationWitness {
  RelationKind kind = RelationKind::Inconclusive;
  BigInt exponent{0};
  std::vector<std::pair<BigInt, BigInt>> pairs;
  u64 refuting_prime = 0;
  std::optional<u64> conflicting_prime;
  std::vector<u64> fails_witness;
  std::string reason;
  std::vector<PrimeExponentConstraint> constraints;
  Congruence combined;
  u64 primes_sampled = 0;
  std::vector<u64> exclusions;
  u64 search_bound = 0;

  bool verified() const { return kind == RelationKind::Exponent || kind == RelationKind::Pairs; }
};

namespace detail {

/// Ascending-prime fold of per-prime constraints. Returns the first
/// contradiction as (prime, earlier conflicting prime).
inline std::optional<std::pair<u64, u64>> fold_constraints(const std::vector<PrimeExponentConstraint>& cs,
                                                           Congruence& acc) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (auto met = crt_meet(acc, cs[i].as_congruence())) {
      acc = *met;
      continue;
    }
    // pairwise-compatible congruences are jointly compatible, so some earlier one conflicts alone
    for (std::size_t j = 0; j < i; ++j)
      if (!crt_meet(cs[j].as_congruence(), cs[i].as_congruence())) return std::pair{cs[i].p, cs[j].p};
    return std::pair{cs[i].p, cs[i].p};
  }
  return std::nullopt;
}

/// Candidate exponents from a combined class: the balanced representative,
/// then its nearest neighbour of the opposite sign. Zero is never a candidate.
inline std::vector<BigInt> exponent_candidates(const Congruence& c) {
  std::vector<BigInt> out;
  const BigInt r = balanced_lift(c);
  const BigInt other = r > 0 ? BigInt(r - c.modulus) : BigInt(r + c.modulus);
  for (const BigInt& e : {r, other})
    if (e != 0) out.push_back(e);
  return out;
}

}  // namespace detail

}  // namespace splab
