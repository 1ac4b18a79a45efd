#pragma once

// Algorithms over finite abelian groups written additively: scalar
// multiplication, element orders, baby-step giant-step, Pohlig-Hellman,
// and generators of cyclic subgroups. F_p^* and E(F_p) both plug in.

#include <concepts>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "splab/arith.hpp"

namespace splab {

/// A finite abelian group in additive notation.
///
/// `key` must be injective on the group (it indexes BSGS tables), and
/// `annihilator(a)` returns the factorization of some positive multiple of
/// the order of `a`.
template <class G>
concept FiniteAbelianGroup = requires(const G& g, const typename G::element_type& a) {
  typename G::element_type;
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.add(a, a) } -> std::convertible_to<typename G::element_type>;
  { g.neg(a) } -> std::convertible_to<typename G::element_type>;
  { g.key(a) } -> std::convertible_to<u64>;
  { g.annihilator(a) } -> std::convertible_to<Factorization>;
  { a == a } -> std::convertible_to<bool>;
};

template <FiniteAbelianGroup G>
typename G::element_type multiple(const G& g, u64 n, typename G::element_type a) {
  auto acc = g.identity();
  while (n > 0) {
    if (n & 1) acc = g.add(acc, a);
    n >>= 1;
    if (n > 0) a = g.add(a, a);
  }
  return acc;
}

template <FiniteAbelianGroup G>
typename G::element_type multiple(const G& g, const BigInt& n, const typename G::element_type& a) {
  if (n < 0) return g.neg(multiple(g, BigInt(-n), a));
  auto acc = g.identity();
  auto base = a;
  BigInt k = n;
  while (k > 0) {
    if ((k & 1) != 0) acc = g.add(acc, base);
    k >>= 1;
    if (k > 0) base = g.add(base, base);
  }
  return acc;
}

template <FiniteAbelianGroup G>
bool is_identity(const G& g, const typename G::element_type& a) {
  return a == g.identity();
}

/// Order of `a` given a factored multiple of it: strip each prime while the
/// smaller multiple still annihilates.
template <FiniteAbelianGroup G>
u64 order_from_multiple(const G& g, const typename G::element_type& a, const Factorization& multiple_of_order) {
  u64 order = multiple_of_order.value;
  for (const auto& [q, e] : multiple_of_order.factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (!is_identity(g, multiple(g, order / q, a))) break;
      order /= q;
    }
  }
  return order;
}

template <FiniteAbelianGroup G>
u64 element_order(const G& g, const typename G::element_type& a) {
  if (is_identity(g, a)) return 1;
  return order_from_multiple(g, a, g.annihilator(a));
}

/// Least x in [0, bound) with x*base == target, by baby-step giant-step.
template <FiniteAbelianGroup G>
std::optional<u64> bsgs_dlog(const G& g, const typename G::element_type& base, const typename G::element_type& target,
                             u64 bound) {
  if (bound == 0) return std::nullopt;
  u64 m = isqrt(bound);
  if (m * m < bound) ++m;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  auto step = g.identity();
  for (u64 j = 0; j < m; ++j) {
    baby.try_emplace(g.key(step), j);
    step = g.add(step, base);
  }
  // step == m*base
  const auto giant = g.neg(step);
  auto probe = target;
  for (u64 i = 0; i * m < bound; ++i) {
    if (auto it = baby.find(g.key(probe)); it != baby.end()) {
      u64 x = i * m + it->second;
      if (x < bound) return x;
    }
    probe = g.add(probe, giant);
  }
  return std::nullopt;
}

/// Pohlig-Hellman discrete log: least e >= 0 with e*base == target, or
/// nullopt when target is not in the cyclic subgroup generated by base.
template <FiniteAbelianGroup G>
std::optional<u64> discrete_log(const G& g, const typename G::element_type& base,
                                const typename G::element_type& target) {
  if (is_identity(g, target)) return 0;
  if (is_identity(g, base)) return std::nullopt;
  const u64 n = element_order(g, base);
  const Factorization nf = factorize(n);
  Congruence acc;
  for (const auto& [q, k] : nf.factors) {
    u64 qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= q;
    const u64 cofactor = n / qk;
    const auto g0 = multiple(g, cofactor, base);
    const auto h0 = multiple(g, cofactor, target);
    const auto gamma = multiple(g, qk / q, g0);  // order q
    u64 x = 0, qi = 1;
    for (unsigned i = 0; i < k; ++i) {
      const auto residual = g.add(h0, g.neg(multiple(g, x, g0)));
      const auto hi = multiple(g, qk / qi / q, residual);
      auto digit = bsgs_dlog(g, gamma, hi, q);
      if (!digit) return std::nullopt;
      x += *digit * qi;
      qi *= q;
    }
    auto met = crt_meet(acc, Congruence{BigInt(x), BigInt(qk)});
    if (!met) return std::nullopt;
    acc = *met;
  }
  const u64 e = static_cast<u64>(acc.residue);
  if (!(multiple(g, e, base) == target)) return std::nullopt;
  return e;
}

/// A generator of the subgroup spanned by `elements` when that subgroup is
/// cyclic; nullopt otherwise. For each prime q of the lcm of the orders the
/// element with the largest q-part contributes its q-primary component.
template <FiniteAbelianGroup G>
std::optional<typename G::element_type> cyclic_generator(const G& g,
                                                         std::span<const typename G::element_type> elements) {
  using E = typename G::element_type;
  std::vector<u64> orders;
  orders.reserve(elements.size());
  std::map<u64, std::pair<u64, std::size_t>> best;  // prime -> (prime power, index)
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const u64 n = element_order(g, elements[i]);
    orders.push_back(n);
    for (const auto& [q, e] : factorize(n).factors) {
      u64 qe = 1;
      for (unsigned j = 0; j < e; ++j) qe *= q;
      auto& slot = best[q];
      if (qe > slot.first) slot = {qe, i};
    }
  }
  E gen = g.identity();
  for (const auto& [q, slot] : best) {
    const auto& [qe, idx] = slot;
    gen = g.add(gen, multiple(g, orders[idx] / qe, elements[idx]));
  }
  for (const auto& e : elements) {
    if (!discrete_log(g, gen, e)) return std::nullopt;
  }
  return gen;
}

/// Outcome of testing ker(a) ⊆ ker(b) for linear forms a, b on (Z/N)^s.
struct KernelContainment {
  bool holds = false;
  /// When holds: every c with b == c*a (mod N), as a class modulo a divisor of N.
  Congruence multiplier;
  /// When not: a vector of positive integers with sum m_i a_i == 0 and sum m_i b_i != 0 (mod N).
  std::vector<u64> witness;
};

namespace detail {

inline u64 lin_form(std::span<const u64> coeffs, std::span<const u64> m, u64 N) {
  u64 acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) acc = add_mod(acc, mul_mod(coeffs[i] % N, m[i] % N, N), N);
  return acc;
}

/// c with c*a == b (mod N), as a class mod N/gcd(a, N); nullopt if none.
inline std::optional<Congruence> solve_linear(u64 a, u64 b, u64 N) {
  const u64 g = gcd_u64(a, N);
  if (b % g != 0) return std::nullopt;
  const u64 n = N / g;
  if (n == 1) return Congruence{0, 1};
  const u64 c = mul_mod((b / g) % n, *inv_mod((a / g) % n, n), n);
  return Congruence{BigInt(c), BigInt(n)};
}

}  // namespace detail

/// In a cyclic group of order N, the m with sum m_i a_i == 0 all satisfy
/// sum m_i b_i == 0 exactly when b == c*a (mod N) for a single c. Each
/// coordinate constrains c to a class mod N/gcd(a_i, N); congruences that
/// are pairwise compatible are jointly compatible, so a failure comes from a
/// single coordinate or a single pair, and the witness is built from the
/// kernel generators of that coordinate or pair. Positivity of m costs
/// nothing because adding N to a coordinate leaves both forms unchanged.
inline KernelContainment kernel_containment(std::span<const u64> a, std::span<const u64> b, u64 N) {
  const std::size_t s = a.size();
  if (b.size() != s || s == 0) throw std::invalid_argument("kernel_containment: need equal nonzero arity");
  KernelContainment out;
  std::vector<Congruence> per(s);
  auto finish_witness = [&](std::vector<u64> m) {
    for (auto& v : m)
      if (v == 0) v = N;
    if (detail::lin_form(a, m, N) != 0 || detail::lin_form(b, m, N) == 0)
      throw std::logic_error("kernel_containment: constructed witness does not recompute");
    out.holds = false;
    out.witness = std::move(m);
    return out;
  };
  for (std::size_t i = 0; i < s; ++i) {
    auto sol = detail::solve_linear(a[i] % N, b[i] % N, N);
    if (!sol) {
      std::vector<u64> m(s, N);
      m[i] = N / gcd_u64(a[i] % N, N);
      return finish_witness(std::move(m));
    }
    per[i] = *sol;
  }
  Congruence acc;
  for (std::size_t i = 0; i < s; ++i) {
    auto met = crt_meet(acc, per[i]);
    if (met) {
      acc = *met;
      continue;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (crt_meet(per[i], per[j])) continue;
      // kernel of (u, v) -> u a_i + v a_j is spanned by (u0, v0) and (0, N/g_j);
      // the second always passes since coordinate j is solvable on its own
      const u64 ai = a[i] % N, aj = a[j] % N;
      const u64 gj = gcd_u64(aj, N);
      const u64 u0 = gj / gcd_u64(gj, ai);
      const u64 nj = N / gj;
      u64 v0 = 0;
      if (nj > 1) {
        const u64 rhs = sub_mod(0, mul_mod(u0, ai, N), N) / gj % nj;
        v0 = mul_mod(rhs, *inv_mod((aj / gj) % nj, nj), nj);
      }
      std::vector<u64> m(s, N);
      m[i] = u0;
      m[j] = v0;
      return finish_witness(std::move(m));
    }
    throw std::logic_error("kernel_containment: conflict without a conflicting pair");
  }
  out.holds = true;
  out.multiplier = acc;
  return out;
}

}  // namespace splab
