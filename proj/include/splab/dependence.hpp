#pragma once

// Per-prime support implications and the global relations they force:
// Q_i = e P_i for a single integer e, or alpha_i P_i + beta_i Q_i = 0.
//
// Everything is written once over a "system": the global group (Q^* or
// E(Q)), its reduction at a prime, and exact global arithmetic for the
// final verification.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "splab/arith.hpp"
#include "splab/elliptic.hpp"
#include "splab/group.hpp"
#include "splab/mulgroup.hpp"
#include "splab/parallel.hpp"
#include "splab/relation.hpp"

namespace splab {

/// Q^* reduced into F_p^*.
struct MulSystem {
  using value_type = MulElement;
  using group_type = FpStar;
  static constexpr const char* name = "mul";

  bool is_good_prime(u64 p, std::span<const MulElement> values) const {
    return std::none_of(values.begin(), values.end(), [p](const MulElement& x) { return x.is_bad_prime(p); });
  }
  FpStar group_at(u64 p) const { return FpStar(p); }
  u64 reduce(const MulElement& x, u64 p) const { return x.residue(p); }
  MulElement identity() const { return MulElement(1); }
  MulElement combine(const MulElement& a, const MulElement& b) const { return a * b; }
  bool is_identity(const MulElement& x) const { return x == MulElement(1); }
  bool has_infinite_order(const MulElement& x) const { return !x.is_torsion(); }
  std::string format(const MulElement& x) const { return x.to_string(); }

  /// e*x (that is, x^e), or nullopt when it would exceed the exact-arithmetic budget.
  std::optional<MulElement> scale(const BigInt& e, const MulElement& x) const {
    if (abs(e) * std::max<std::size_t>(x.height_bits(), 1) > BigInt(kMaxExactPowerBits)) return std::nullopt;
    return x.pow(e);
  }
};

/// Largest |e| for which e*P is computed exactly over Q.
inline constexpr u64 kMaxExactScalar = 512;

/// E(Q) reduced into E(F_p).
struct EcSystem {
  using value_type = RationalPoint;
  using group_type = ReducedCurve;
  static constexpr const char* name = "ec";

  EllipticCurve curve;

  bool is_good_prime(u64 p, std::span<const RationalPoint>) const { return curve.is_good_prime(p); }
  ReducedCurve group_at(u64 p) const { return ReducedCurve(curve, p); }
  FieldPoint reduce(const RationalPoint& P, u64 p) const { return reduce_point(curve, P, p); }
  RationalPoint identity() const { return RationalPoint::at_infinity(); }
  RationalPoint combine(const RationalPoint& a, const RationalPoint& b) const { return add(curve, a, b); }
  bool is_identity(const RationalPoint& P) const { return P.infinity; }
  bool has_infinite_order(const RationalPoint& P) const { return looks_nontorsion(curve, P); }
  std::string format(const RationalPoint& P) const { return P.to_string(); }

  std::optional<RationalPoint> scale(const BigInt& e, const RationalPoint& P) const {
    if (abs(e) > kMaxExactScalar) return std::nullopt;
    return scalar_mul(curve, e, P);
  }
};

enum class ImplicationStatus { Holds, HoldsUpToBound, Fails, Vacuous };
enum class ImplicationMethod { ExactS1, CyclicShortcut, BoxBruteForce };

inline std::string to_string(ImplicationStatus s) {
  switch (s) {
    case ImplicationStatus::Holds: return "Holds";
    case ImplicationStatus::HoldsUpToBound: return "HoldsUpToBound";
    case ImplicationStatus::Fails: return "Fails";
    case ImplicationStatus::Vacuous: return "Vacuous";
  }
  return "?";
}

inline std::string to_string(ImplicationMethod m) {
  switch (m) {
    case ImplicationMethod::ExactS1: return "Exact-s1";
    case ImplicationMethod::CyclicShortcut: return "CyclicShortcut";
    case ImplicationMethod::BoxBruteForce: return "BoxBruteForce";
  }
  return "?";
}

struct ImplicationReport {
  std::string system;
  u64 p = 0;
  ImplicationStatus status = ImplicationStatus::Vacuous;
  ImplicationMethod method = ImplicationMethod::ExactS1;
  u64 box_bound = 0;         ///< BoxBruteForce: side of the searched box
  std::vector<u64> witness;  ///< Fails: antecedent true, consequent false
  std::optional<Congruence> multiplier;  ///< CyclicShortcut / Exact-s1 Holds: the c with b = c a

  bool holds() const { return status == ImplicationStatus::Holds || status == ImplicationStatus::HoldsUpToBound; }
};

/// Upper limit on the number of box points a brute-force search may visit.
inline constexpr u64 kMaxBoxPoints = u64{1} << 28;

namespace detail {

template <class Group>
u64 lcm_of_orders(const Group& g, std::span<const typename Group::element_type> elems) {
  u64 l = 1;
  for (const auto& e : elems) {
    const u64 n = element_order(g, e);
    l = l / gcd_u64(l, n) * n;
  }
  return l;
}

/// Visits m in [1, bound]^s in lexicographic order, calling
/// visit(m, sum m_i R_i, sum m_i S_i) until it returns false.
template <class Group, class Visit>
void box_search(const Group& g, std::span<const typename Group::element_type> Rs,
                std::span<const typename Group::element_type> Ss, u64 bound, Visit visit) {
  const std::size_t s = Rs.size();
  std::vector<u64> m(s, 1);
  std::vector<typename Group::element_type> sumR(s), sumS(s);
  auto rebuild = [&](std::size_t from) {
    for (std::size_t k = from; k < s; ++k) {
      sumR[k] = k == 0 ? Rs[0] : g.add(sumR[k - 1], Rs[k]);
      sumS[k] = k == 0 ? Ss[0] : g.add(sumS[k - 1], Ss[k]);
    }
  };
  rebuild(0);
  for (;;) {
    if (!visit(m, sumR[s - 1], sumS[s - 1])) return;
    std::size_t d = s;
    while (d > 0 && m[d - 1] == bound) --d;
    if (d == 0) return;
    --d;
    ++m[d];
    sumR[d] = g.add(sumR[d], Rs[d]);
    sumS[d] = g.add(sumS[d], Ss[d]);
    for (std::size_t k = d + 1; k < s; ++k) m[k] = 1;
    rebuild(d + 1);
  }
}

inline u64 checked_box_size(u64 bound, std::size_t s) {
  u128 total = 1;
  for (std::size_t i = 0; i < s; ++i) {
    total *= bound;
    if (total > kMaxBoxPoints) throw resource_error("box search: bound^s exceeds the search budget; lower --m-bound");
  }
  return static_cast<u64>(total);
}

template <class System>
void check_arity(std::span<const typename System::value_type> Ps, std::span<const typename System::value_type> Qs) {
  if (Ps.empty() || Ps.size() != Qs.size()) throw std::domain_error("need |Ps| = |Qs| >= 1");
}

template <class System>
void check_prime(const System& sys, u64 p, std::span<const typename System::value_type> Ps,
                 std::span<const typename System::value_type> Qs) {
  if (!is_prime(p)) throw std::domain_error("not a prime: " + std::to_string(p));
  if (!sys.is_good_prime(p, Ps) || !sys.is_good_prime(p, Qs))
    throw std::domain_error("p = " + std::to_string(p) + " is a bad prime for this data");
}

}  // namespace detail

/// Decides at p whether sum m_i r_p(P_i) = 0 implies sum m_i r_p(Q_i) = 0
/// for all positive m. s = 1 is exact (ord r_p(Q) | ord r_p(P)); when every
/// reduction lies in one cyclic subgroup the kernel-containment criterion is
/// exact; otherwise the box [1, min(m_bound, L)]^s is searched, L the lcm of
/// the orders involved, and the result is exact only when the box covers L.
template <class System>
ImplicationReport implication_at(const System& sys, std::span<const typename System::value_type> Ps,
                                 std::span<const typename System::value_type> Qs, u64 p, u64 m_bound) {
  detail::check_arity<System>(Ps, Qs);
  detail::check_prime(sys, p, Ps, Qs);
  const auto G = sys.group_at(p);
  using Elem = typename System::group_type::element_type;
  std::vector<Elem> Rs, Ss;
  for (const auto& P : Ps) Rs.push_back(sys.reduce(P, p));
  for (const auto& Q : Qs) Ss.push_back(sys.reduce(Q, p));
  ImplicationReport rep;
  rep.system = System::name;
  rep.p = p;
  const auto is_id = [&](const Elem& e) { return is_identity(G, e); };
  if (std::all_of(Rs.begin(), Rs.end(), is_id) && std::all_of(Ss.begin(), Ss.end(), is_id)) {
    rep.status = ImplicationStatus::Vacuous;
    rep.method = Ps.size() == 1 ? ImplicationMethod::ExactS1 : ImplicationMethod::CyclicShortcut;
    return rep;
  }
  if (Ps.size() == 1) {
    rep.method = ImplicationMethod::ExactS1;
    const u64 n = element_order(G, Rs[0]);
    if (is_identity(G, multiple(G, n, Ss[0]))) {
      rep.status = ImplicationStatus::Holds;
    } else {
      rep.status = ImplicationStatus::Fails;
      rep.witness = {n};
    }
    return rep;
  }
  std::vector<Elem> all(Rs);
  all.insert(all.end(), Ss.begin(), Ss.end());
  if (const auto gen = cyclic_generator(G, std::span<const Elem>(all))) {
    rep.method = ImplicationMethod::CyclicShortcut;
    const u64 N = element_order(G, *gen);
    std::vector<u64> a, b;
    for (const auto& R : Rs) a.push_back(*discrete_log(G, *gen, R));
    for (const auto& S : Ss) b.push_back(*discrete_log(G, *gen, S));
    const KernelContainment kc = kernel_containment(a, b, N);
    if (kc.holds) {
      rep.status = ImplicationStatus::Holds;
      rep.multiplier = kc.multiplier;
    } else {
      rep.status = ImplicationStatus::Fails;
      rep.witness = kc.witness;
    }
    return rep;
  }
  rep.method = ImplicationMethod::BoxBruteForce;
  const u64 L = detail::lcm_of_orders(G, std::span<const Elem>(all));
  const u64 bound = std::min(m_bound, L);
  rep.box_bound = bound;
  detail::checked_box_size(bound, Rs.size());
  rep.status = bound == L ? ImplicationStatus::Holds : ImplicationStatus::HoldsUpToBound;
  detail::box_search(G, std::span<const Elem>(Rs), std::span<const Elem>(Ss), bound,
                     [&](const std::vector<u64>& m, const Elem& r, const Elem& s) {
                       if (is_id(r) && !is_id(s)) {
                         rep.status = ImplicationStatus::Fails;
                         rep.witness = m;
                         return false;
                       }
                       return true;
                     });
  return rep;
}

/// The affine variant: sum m_i r_p(P_i) = r_p(P_0) implies sum m_i r_p(Q_i) = r_p(Q_0).
/// For s = 1 the antecedent set is the coset d + ord(r_p(P_1)) Z (or empty,
/// which is Vacuous), and two representatives decide it; larger s uses the
/// box search.
template <class System>
ImplicationReport affine_implication_at(const System& sys, std::span<const typename System::value_type> Ps,
                                        const typename System::value_type& P0,
                                        std::span<const typename System::value_type> Qs,
                                        const typename System::value_type& Q0, u64 p, u64 m_bound) {
  detail::check_arity<System>(Ps, Qs);
  detail::check_prime(sys, p, Ps, Qs);
  detail::check_prime(sys, p, std::span(&P0, 1), std::span(&Q0, 1));
  const auto G = sys.group_at(p);
  using Elem = typename System::group_type::element_type;
  std::vector<Elem> Rs, Ss;
  for (const auto& P : Ps) Rs.push_back(sys.reduce(P, p));
  for (const auto& Q : Qs) Ss.push_back(sys.reduce(Q, p));
  const Elem R0 = sys.reduce(P0, p), S0 = sys.reduce(Q0, p);
  ImplicationReport rep;
  rep.system = System::name;
  rep.p = p;
  if (Ps.size() == 1) {
    rep.method = ImplicationMethod::ExactS1;
    const auto d = discrete_log(G, Rs[0], R0);
    if (!d) {
      rep.status = ImplicationStatus::Vacuous;
      return rep;
    }
    const u64 n = element_order(G, Rs[0]);
    const u64 first = *d == 0 ? n : *d;
    for (u64 m : {first, first + n}) {
      if (!(multiple(G, m, Ss[0]) == S0)) {
        rep.status = ImplicationStatus::Fails;
        rep.witness = {m};
        return rep;
      }
    }
    rep.status = ImplicationStatus::Holds;
    return rep;
  }
  rep.method = ImplicationMethod::BoxBruteForce;
  std::vector<Elem> all(Rs);
  all.insert(all.end(), Ss.begin(), Ss.end());
  const u64 L = detail::lcm_of_orders(G, std::span<const Elem>(all));
  const u64 bound = std::min(m_bound, L);
  rep.box_bound = bound;
  detail::checked_box_size(bound, Rs.size());
  bool antecedent_seen = false;
  bool failed = false;
  detail::box_search(G, std::span<const Elem>(Rs), std::span<const Elem>(Ss), bound,
                     [&](const std::vector<u64>& m, const Elem& r, const Elem& s) {
                       if (!(r == R0)) return true;
                       antecedent_seen = true;
                       if (!(s == S0)) {
                         failed = true;
                         rep.witness = m;
                         return false;
                       }
                       return true;
                     });
  if (failed)
    rep.status = ImplicationStatus::Fails;
  else if (!antecedent_seen)
    rep.status = bound == L ? ImplicationStatus::Vacuous : ImplicationStatus::HoldsUpToBound;
  else
    rep.status = bound == L ? ImplicationStatus::Holds : ImplicationStatus::HoldsUpToBound;
  return rep;
}

/// What one prime contributes to exponent inference.
struct PrimeEvidence {
  u64 p = 0;
  bool refutes = false;
  std::string reason;
  std::vector<u64> fails_witness;
  std::vector<PrimeExponentConstraint> constraints;  ///< one per i with r_p(P_i) != 0
};

template <class System>
PrimeEvidence exponent_evidence_at(const System& sys, std::span<const typename System::value_type> Ps,
                                   std::span<const typename System::value_type> Qs, u64 p, u64 m_bound) {
  PrimeEvidence ev;
  ev.p = p;
  const ImplicationReport rep = implication_at(sys, Ps, Qs, p, m_bound);
  if (rep.status == ImplicationStatus::Fails) {
    ev.refutes = true;
    ev.reason = "per-prime implication fails";
    ev.fails_witness = rep.witness;
    return ev;
  }
  const auto G = sys.group_at(p);
  for (std::size_t i = 0; i < Ps.size(); ++i) {
    const auto R = sys.reduce(Ps[i], p);
    const auto S = sys.reduce(Qs[i], p);
    if (is_identity(G, R)) {
      if (!is_identity(G, S)) {
        ev.refutes = true;
        ev.reason = "r_p(Q_" + std::to_string(i + 1) + ") is outside <r_p(P_" + std::to_string(i + 1) + ")>";
        return ev;
      }
      continue;
    }
    const auto e = discrete_log(G, R, S);
    if (!e) {
      ev.refutes = true;
      ev.reason = "r_p(Q_" + std::to_string(i + 1) + ") is outside <r_p(P_" + std::to_string(i + 1) + ")>";
      return ev;
    }
    ev.constraints.push_back({p, BigInt(element_order(G, R)), BigInt(*e)});
  }
  return ev;
}

/// Recovers e with Q_i = e P_i for all i. Every good prime of the range
/// contributes e == dlog(r_p(Q_i); r_p(P_i)) mod ord(r_p(P_i)); the classes
/// are met by CRT in ascending prime order, the balanced lift is tried
/// (then its opposite-sign neighbour), and the winner is verified exactly
/// in the global group.
template <class System>
RelationWitness infer_exponent(const System& sys, std::span<const typename System::value_type> Ps,
                               std::span<const typename System::value_type> Qs, const PrimeRange& range,
                               Parallelism par = {}, u64 m_bound = 64) {
  detail::check_arity<System>(Ps, Qs);
  RelationWitness w;
  std::vector<u64> good;
  for (u64 p : sieve_segment(range.lo(), range.hi())) {
    const bool ok = !range.excluded().count(p) && sys.is_good_prime(p, Ps) && sys.is_good_prime(p, Qs);
    (ok ? good : w.exclusions).push_back(p);
  }
  if (good.empty()) throw std::domain_error("infer_exponent: no good primes in range");
  const auto evidence =
      parallel_map(good, par, [&](u64 p) { return exponent_evidence_at(sys, Ps, Qs, p, m_bound); });
  w.primes_sampled = good.size();
  for (const auto& ev : evidence) {
    if (ev.refutes) {
      w.kind = RelationKind::Refuted;
      w.refuting_prime = ev.p;
      w.reason = ev.reason;
      w.fails_witness = ev.fails_witness;
      return w;
    }
    w.constraints.insert(w.constraints.end(), ev.constraints.begin(), ev.constraints.end());
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
    for (std::size_t i = 0; i < Ps.size() && ok; ++i) {
      const auto scaled = sys.scale(e, Ps[i]);
      ok = scaled && *scaled == Qs[i];
    }
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

/// Smallest (alpha, beta) with alpha > 0, beta != 0, |alpha|, |beta| <= bound and
/// alpha P + beta Q = 0 exactly, ordered by max(|alpha|, |beta|) then
/// lexicographically. Inconclusive when the bound is exhausted; that is not
/// a proof of independence.
template <class System>
RelationWitness search_pair_relation(const System& sys, const typename System::value_type& P,
                                     const typename System::value_type& Q, u64 bound) {
  using V = typename System::value_type;
  RelationWitness w;
  w.search_bound = bound;
  if (bound == 0) throw std::domain_error("search_pair_relation: bound must be positive");
  // multiples[k] = k*X for k in [0, bound]
  auto multiples = [&](const V& X) {
    std::vector<V> out{sys.identity()};
    for (u64 k = 1; k <= bound; ++k) out.push_back(sys.combine(out.back(), X));
    return out;
  };
  const auto mp = multiples(P);
  const auto mq = multiples(Q);
  // alpha P + beta Q = 0  <=>  alpha P = (-beta) Q; (-beta) Q for beta > 0 is -(beta Q)
  const auto negate = [&](const V& x) -> V {
    if constexpr (std::is_same_v<V, MulElement>)
      return x.inverse();
    else
      return neg(sys.curve, x);
  };
  auto holds = [&](u64 alpha, i64 beta) {
    const V rhs = beta < 0 ? mq[static_cast<u64>(-beta)] : negate(mq[static_cast<u64>(beta)]);
    return mp[alpha] == rhs;
  };
  for (u64 k = 1; k <= bound; ++k) {
    for (u64 alpha = 1; alpha <= k; ++alpha) {
      for (i64 beta = -static_cast<i64>(k); beta <= static_cast<i64>(k); ++beta) {
        if (beta == 0) continue;
        if (std::max<u64>(alpha, static_cast<u64>(beta < 0 ? -beta : beta)) != k) continue;
        if (holds(alpha, beta)) {
          w.kind = RelationKind::Pairs;
          w.pairs = {{BigInt(alpha), BigInt(beta)}};
          return w;
        }
      }
    }
  }
  w.kind = RelationKind::Inconclusive;
  w.reason = "no relation with coefficients up to the bound";
  return w;
}

/// Per-index pair search; Pairs only when every index has a relation.
template <class System>
RelationWitness search_pair_relations(const System& sys, std::span<const typename System::value_type> Ps,
                                      std::span<const typename System::value_type> Qs, u64 bound) {
  detail::check_arity<System>(Ps, Qs);
  RelationWitness w;
  w.search_bound = bound;
  for (std::size_t i = 0; i < Ps.size(); ++i) {
    const RelationWitness one = search_pair_relation(sys, Ps[i], Qs[i], bound);
    if (one.kind != RelationKind::Pairs) {
      w.kind = RelationKind::Inconclusive;
      w.reason = "no relation up to the bound for index " + std::to_string(i + 1);
      w.pairs.clear();
      return w;
    }
    w.pairs.push_back(one.pairs.front());
  }
  w.kind = RelationKind::Pairs;
  return w;
}

}  // namespace splab
