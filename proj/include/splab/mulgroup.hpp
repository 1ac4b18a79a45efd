#pragma once

// The multiplicative group Q^*: supports of x^n - 1, Erdős's question, and
// the per-prime kernel condition with exponent recovery for q_i = p_i^e.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "splab/arith.hpp"
#include "splab/elliptic.hpp"  // rational parsing helpers
#include "splab/group.hpp"
#include "splab/parallel.hpp"
#include "splab/relation.hpp"

namespace splab {

/// A nonzero rational number in canonical form (coprime, positive denominator).
class MulElement {
 public:
  MulElement(BigInt numerator, BigInt denominator = 1) : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (num_ == 0) throw std::domain_error("MulElement: zero is not in Q^*");
    if (den_ == 0) throw std::domain_error("MulElement: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  /// Parses "n" or "n/d".
  static MulElement parse(std::string_view text) {
    const Rational r = detail::parse_rational(text);
    return MulElement(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_torsion() const { return den_ == 1 && (num_ == 1 || num_ == -1); }

  /// True when p divides the numerator or denominator.
  bool is_bad_prime(u64 p) const { return num_ % p == 0 || den_ % p == 0; }

  /// num * den^{-1} mod p; p must be good.
  u64 residue(u64 p) const {
    const auto inv = inv_mod(reduce_big(den_, p), p);
    if (!inv || num_ % p == 0) throw std::domain_error("MulElement: p = " + std::to_string(p) + " is bad for " + to_string());
    return mul_mod(reduce_big(num_, p), *inv, p);
  }

  MulElement operator*(const MulElement& o) const { return MulElement(num_ * o.num_, den_ * o.den_); }

  MulElement inverse() const { return MulElement(den_, num_); }

  /// Approximate bit length of max(|num|, den).
  std::size_t height_bits() const {
    const BigInt& big = abs(num_) > den_ ? abs(num_) : den_;
    return big == 0 ? 0 : boost::multiprecision::msb(big) + 1;
  }

  MulElement pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(-e);
    const auto k = static_cast<unsigned>(e);
    return MulElement(boost::multiprecision::pow(num_, k), boost::multiprecision::pow(den_, k));
  }

  std::string to_string() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  friend bool operator==(const MulElement&, const MulElement&) = default;

 private:
  BigInt num_;
  BigInt den_;
};

/// F_p^* written additively, for the generic group algorithms.
class FpStar {
 public:
  using element_type = u64;

  explicit FpStar(u64 p) : p_(p), p_minus_1_(factorize(p - 1)) {
    if (!is_prime(p)) throw std::domain_error("FpStar: modulus is not prime");
  }
  FpStar(u64 p, Factorization p_minus_1) : p_(p), p_minus_1_(std::move(p_minus_1)) {}

  u64 p() const { return p_; }
  const Factorization& order_factorization() const { return p_minus_1_; }

  u64 identity() const { return 1; }
  u64 add(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 neg(u64 a) const { return *inv_mod(a, p_); }
  u64 key(u64 a) const { return a; }
  const Factorization& annihilator(u64) const { return p_minus_1_; }

 private:
  u64 p_;
  Factorization p_minus_1_;
};

/// Supp(m): the primes dividing m.
inline std::vector<u64> supp(u64 m) { return factorize(m).primes(); }

inline std::vector<BigInt> supp(const BigInt& m) { return factorize(m).primes(); }

/// Order of x mod p in F_p^*.
inline u64 reduction_order(const MulElement& x, u64 p) {
  if (!is_prime(p)) throw std::domain_error("reduction_order: modulus is not prime");
  if (x.is_bad_prime(p)) throw std::domain_error("reduction_order: p = " + std::to_string(p) + " is bad for " + x.to_string());
  return multiplicative_order(x.residue(p), p);
}

// ---------------------------------------------------------------------------
// Erdős's question

enum class SupportVerdict { EqualInRange, Witness };

/// A prime in the support of exactly one of x^n - 1, y^n - 1.
struct SupportWitness {
  u64 n = 0;
  u64 prime = 0;
  char side = 'x';  ///< 'x' or 'y': which of the two numerators the prime divides
  bool cross_checked = false;  ///< re-verified by factoring the numerator (n <= 12)

  friend bool operator==(const SupportWitness&, const SupportWitness&) = default;
};

struct SupportReport {
  MulElement x{2};
  MulElement y{2};
  u64 n_max = 0;
  u64 p_max = 0;
  SupportVerdict verdict = SupportVerdict::EqualInRange;
  std::optional<SupportWitness> witness;
  std::vector<u64> exclusions;
};

namespace detail {

/// Numerator of x^n - 1 in lowest terms, i.e. num^n - den^n.
inline BigInt power_minus_one_numerator(const MulElement& x, u64 n) {
  const auto k = static_cast<unsigned>(n);
  return boost::multiprecision::pow(x.numerator(), k) - boost::multiprecision::pow(x.denominator(), k);
}

/// p in Supp(num(x^n - 1)) decided from a factorization, with plain
/// divisibility as the fallback when factoring gives up.
inline bool in_support_by_factoring(const MulElement& x, u64 n, u64 p) {
  const BigInt v = abs(power_minus_one_numerator(x, n));
  try {
    const auto primes = supp(v);
    return std::find(primes.begin(), primes.end(), BigInt(p)) != primes.end();
  } catch (const factoring_error&) {
    return v % p == 0;
  }
}

}  // namespace detail

/// Least n <= n_max (then least prime p <= p_max) at which p belongs to the
/// support of exactly one of x^n - 1 and y^n - 1. Membership uses
/// p | x^n - 1 <=> ord_p(x) | n; primes dividing a numerator or denominator
/// of x or y are excluded and listed. Witnesses with n <= 12 are re-checked
/// by factoring.
inline SupportReport erdos_test(const MulElement& x, const MulElement& y, u64 n_max, u64 p_max, Parallelism par = {}) {
  if (x.is_torsion() || y.is_torsion()) throw std::domain_error("erdos_test: x and y must differ from 1 and -1");
  if (n_max < 1 || p_max < 2) throw std::domain_error("erdos_test: need n_max >= 1 and p_max >= 2");
  SupportReport report;
  report.x = x;
  report.y = y;
  report.n_max = n_max;
  report.p_max = p_max;
  std::vector<u64> good;
  for (u64 p : sieve_primes(p_max)) {
    if (x.is_bad_prime(p) || y.is_bad_prime(p))
      report.exclusions.push_back(p);
    else
      good.push_back(p);
  }
  struct Hit {
    u64 n = 0;  // 0: none
    char side = 'x';
  };
  const auto hits = parallel_map(good, par, [&](u64 p) {
    const Factorization f = factorize(p - 1);
    const u64 ox = multiplicative_order(x.residue(p), p, f);
    const u64 oy = multiplicative_order(y.residue(p), p, f);
    // the least multiple of exactly one order is one of the orders themselves
    Hit h;
    if (ox <= n_max && ox % oy != 0) h = {ox, 'x'};
    if (oy <= n_max && oy % ox != 0 && (h.n == 0 || oy < h.n)) h = {oy, 'y'};
    return h;
  });
  for (std::size_t i = 0; i < good.size(); ++i) {
    if (hits[i].n == 0) continue;
    if (!report.witness || hits[i].n < report.witness->n) report.witness = SupportWitness{hits[i].n, good[i], hits[i].side};
  }
  if (report.witness) {
    report.verdict = SupportVerdict::Witness;
    auto& w = *report.witness;
    if (w.n <= 12) {
      const bool in_x = detail::in_support_by_factoring(x, w.n, w.prime);
      const bool in_y = detail::in_support_by_factoring(y, w.n, w.prime);
      if (in_x == in_y || in_x != (w.side == 'x'))
        throw std::logic_error("erdos_test: order criterion disagrees with factorization");
      w.cross_checked = true;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// per-prime kernel condition and exponent recovery

enum class ConditionStatus { Holds, Fails, Vacuous };

inline std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Holds: return "Holds";
    case ConditionStatus::Fails: return "Fails";
    case ConditionStatus::Vacuous: return "Vacuous";
  }
  return "?";
}

struct SchinzelCondition {
  ConditionStatus status = ConditionStatus::Vacuous;
  PrimeExponentConstraint constraint;  ///< Holds: the admissible exponents e_p
  std::vector<u64> witness;            ///< Fails: positive m with prod p_i^m_i == 1, prod q_i^m_i != 1
};

/// Decides at the prime p whether prod p_i^{m_i} == 1 implies prod q_i^{m_i} == 1
/// (mod p) for every vector of positive integers m. With a_i, b_i the
/// discrete logs of p_i, q_i to a primitive root this is kernel containment
/// in Z/(p - 1), i.e. b == c a for some c; the classes of c become the
/// exponent constraint.
inline SchinzelCondition schinzel_condition_at(std::span<const MulElement> ps, std::span<const MulElement> qs, u64 p) {
  if (ps.empty() || ps.size() != qs.size()) throw std::domain_error("schinzel_condition_at: need |ps| = |qs| >= 1");
  if (!is_prime(p)) throw std::domain_error("schinzel_condition_at: modulus is not prime");
  for (const auto& v : {ps, qs})
    for (const auto& e : v)
      if (e.is_bad_prime(p)) throw std::domain_error("schinzel_condition_at: p = " + std::to_string(p) + " is bad for " + e.to_string());
  const FpStar group(p);
  const u64 N = p - 1;
  const u64 g = primitive_root(p, group.order_factorization());
  std::vector<u64> a, b;
  auto dlog = [&](const MulElement& x) {
    auto e = discrete_log(group, g, x.residue(p));
    if (!e) throw std::logic_error("schinzel_condition_at: discrete log failed in a cyclic group");
    return *e;
  };
  for (const auto& x : ps) a.push_back(dlog(x));
  for (const auto& x : qs) b.push_back(dlog(x));
  SchinzelCondition out;
  const bool trivial = std::all_of(a.begin(), a.end(), [](u64 v) { return v == 0; }) &&
                       std::all_of(b.begin(), b.end(), [](u64 v) { return v == 0; });
  if (trivial) {
    out.status = ConditionStatus::Vacuous;
    out.constraint = {p, 1, 0};
    return out;
  }
  const KernelContainment kc = kernel_containment(a, b, N);
  if (!kc.holds) {
    out.status = ConditionStatus::Fails;
    out.witness = kc.witness;
    return out;
  }
  out.status = ConditionStatus::Holds;
  out.constraint = {p, kc.multiplier.modulus, kc.multiplier.residue};
  return out;
}

/// Largest |e| * height (in bits) for which q = p^e is checked by exact powering.
inline constexpr std::size_t kMaxExactPowerBits = std::size_t{1} << 22;

namespace detail {

inline bool exact_power_matches(const MulElement& base, const BigInt& e, const MulElement& target) {
  const BigInt budget = BigInt(kMaxExactPowerBits);
  if (abs(e) * std::max<std::size_t>(base.height_bits(), 1) > budget) return false;
  return base.pow(e) == target;
}

}  // namespace detail

/// Recovers e with q_i = p_i^e: intersects the per-prime constraints over
/// the good primes of the range by CRT, lifts to the balanced representative,
/// and verifies exactly in Q. The first failing prime (ascending) refutes.
inline RelationWitness recover_exponent_mul(std::span<const MulElement> ps, std::span<const MulElement> qs,
                                            const PrimeRange& range, Parallelism par = {}) {
  if (ps.empty() || ps.size() != qs.size()) throw std::domain_error("recover_exponent_mul: need |ps| = |qs| >= 1");
  for (const auto& v : {ps, qs})
    for (const auto& e : v)
      if (e.is_torsion()) throw std::domain_error("recover_exponent_mul: elements must have infinite order");
  RelationWitness w;
  std::vector<u64> good;
  for (u64 p : sieve_segment(range.lo(), range.hi())) {
    bool bad = range.excluded().count(p) > 0;
    for (const auto& v : {ps, qs})
      for (const auto& e : v) bad = bad || e.is_bad_prime(p);
    (bad ? w.exclusions : good).push_back(p);
  }
  if (good.empty()) throw std::domain_error("recover_exponent_mul: no good primes in range");
  const auto conds = parallel_map(good, par, [&](u64 p) { return schinzel_condition_at(ps, qs, p); });
  w.primes_sampled = good.size();
  for (std::size_t i = 0; i < good.size(); ++i) {
    if (conds[i].status == ConditionStatus::Fails) {
      w.kind = RelationKind::Refuted;
      w.refuting_prime = good[i];
      w.fails_witness = conds[i].witness;
      w.reason = "per-prime implication fails";
      return w;
    }
    if (conds[i].status == ConditionStatus::Holds) w.constraints.push_back(conds[i].constraint);
  }
  if (auto conflict = detail::fold_constraints(w.constraints, w.combined)) {
    w.kind = RelationKind::Refuted;
    w.refuting_prime = conflict->first;
    w.conflicting_prime = conflict->second;
    w.reason = "exponent constraints conflict";
    return w;
  }
  for (const BigInt& e : detail::exponent_candidates(w.combined)) {
    bool ok = true;
    for (std::size_t i = 0; i < ps.size() && ok; ++i) ok = detail::exact_power_matches(ps[i], e, qs[i]);
    if (ok) {
      w.kind = RelationKind::Exponent;
      w.exponent = e;
      return w;
    }
  }
  w.kind = RelationKind::Inconclusive;
  w.reason = "no candidate exponent verifies exactly";
  return w;
}

}  // namespace splab
