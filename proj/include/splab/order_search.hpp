#pragma once

// Prime sweeps for prescribed l-power orders of reductions: the primes p
// at which the l-part of ord(r_p(P_t)) equals l^{k_t} for every t.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "splab/arith.hpp"
#include "splab/elliptic.hpp"
#include "splab/mulgroup.hpp"
#include "splab/parallel.hpp"

namespace splab {

struct OrderProfile {
  u64 l = 2;
  std::vector<unsigned> ks;

  OrderProfile() = default;
  OrderProfile(u64 l_, std::vector<unsigned> ks_) : l(l_), ks(std::move(ks_)) {
    if (!is_prime(l)) throw std::domain_error("OrderProfile: l must be prime");
    if (ks.empty()) throw std::domain_error("OrderProfile: need at least one exponent");
  }

  u64 target(std::size_t t) const {
    u64 v = 1;
    for (unsigned i = 0; i < ks[t]; ++i) v *= l;
    return v;
  }
};

struct SweepRow {
  u64 p = 0;
  std::vector<u64> l_parts;
  bool match = false;
};

struct SweepReport {
  std::string system;
  OrderProfile profile;
  u64 lo = 2;
  u64 hi = 2;
  std::vector<u64> matches;
  u64 scanned = 0;
  std::vector<u64> exclusions;
  std::vector<SweepRow> rows;  ///< every scanned prime, ascending

  double density() const { return scanned == 0 ? 0.0 : static_cast<double>(matches.size()) / scanned; }
};

namespace detail {

template <class LPartsAt>
SweepReport run_sweep(std::string system, const OrderProfile& profile, const PrimeRange& range,
                      const std::vector<u64>& extra_bad, Parallelism par, LPartsAt l_parts_at) {
  SweepReport report;
  report.system = std::move(system);
  report.profile = profile;
  report.lo = range.lo();
  report.hi = range.hi();
  std::vector<u64> scan;
  for (u64 p : sieve_segment(range.lo(), range.hi())) {
    const bool bad = p == profile.l || range.excluded().count(p) > 0 ||
                     std::find(extra_bad.begin(), extra_bad.end(), p) != extra_bad.end();
    (bad ? report.exclusions : scan).push_back(p);
  }
  if (scan.empty()) throw std::domain_error("sweep: no admissible primes in range");
  report.rows = parallel_map(scan, par, [&](u64 p) {
    SweepRow row{p, l_parts_at(p), true};
    for (std::size_t t = 0; t < row.l_parts.size(); ++t) row.match = row.match && row.l_parts[t] == profile.target(t);
    return row;
  });
  report.scanned = scan.size();
  for (const auto& row : report.rows)
    if (row.match) report.matches.push_back(row.p);
  return report;
}

}  // namespace detail

/// Primes p in range (p != l, p good for every x_t) with l_part(ord_p(x_t), l) = l^{k_t} for all t.
inline SweepReport sweep_mul(std::span<const MulElement> xs, const OrderProfile& profile, const PrimeRange& range,
                             Parallelism par = {}) {
  if (xs.size() != profile.ks.size()) throw std::domain_error("sweep_mul: profile arity does not match elements");
  for (const auto& x : xs)
    if (x.is_torsion()) throw std::domain_error("sweep_mul: elements must have infinite order");
  std::vector<u64> bad;
  for (u64 p : sieve_segment(range.lo(), range.hi()))
    for (const auto& x : xs)
      if (x.is_bad_prime(p)) bad.push_back(p);
  return detail::run_sweep("mul", profile, range, bad, par, [&](u64 p) {
    const Factorization f = factorize(p - 1);
    std::vector<u64> parts;
    for (const auto& x : xs) parts.push_back(l_part(multiplicative_order(x.residue(p), p, f), profile.l));
    return parts;
  });
}

/// The elliptic sweep. Linear independence of the points (the hypothesis
/// under which such primes are guaranteed to exist) is not checked.
inline SweepReport sweep_ec(const EllipticCurve& E, std::span<const RationalPoint> points, const OrderProfile& profile,
                            const PrimeRange& range, Parallelism par = {}) {
  if (points.size() != profile.ks.size()) throw std::domain_error("sweep_ec: profile arity does not match points");
  for (const auto& P : points)
    if (!on_curve(E, P)) throw std::domain_error("sweep_ec: point " + P.to_string() + " is not on the curve");
  const PrimeRange good = good_primes(E, range);
  return detail::run_sweep("ec", profile, good, {}, par, [&](u64 p) {
    const ReducedCurve C(E, p);
    std::vector<u64> parts;
    for (const auto& P : points) parts.push_back(l_part(point_order(C, reduce_point(E, P, p)), profile.l));
    return parts;
  });
}

}  // namespace splab
