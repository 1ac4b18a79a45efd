#pragma once

// Integer number theory shared by every other module: word-size modular
// arithmetic, sieving, primality, factorization, orders and valuations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace splab {

using BigInt = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Raised when a computation would exceed a configured resource budget
/// (sieve memory, factoring iterations, point-counting size).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when Pollard-rho gives up. Never accompanied by a partial answer.
class factoring_error : public resource_error {
 public:
  using resource_error::resource_error;
};

// ---------------------------------------------------------------------------
// word-size modular arithmetic

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

/// base^exp mod modulus; modulus 1 gives 0.
inline u64 mod_pow(u64 base, u64 exp, u64 modulus) {
  if (modulus == 1) return 0;
  u64 result = 1;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

/// Residue of a signed 64-bit value in [0, m).
inline u64 reduce_signed(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids overflow at INT64_MIN
  return (m - 1) - r;
}

/// Residue of an arbitrary-precision value in [0, m).
inline u64 reduce_big(const BigInt& a, u64 m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// Inverse of a modulo m; nullopt when gcd(a, m) != 1.
inline std::optional<u64> inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  u64 r = m, new_r = a % m;
  // Bezout coefficients can exceed 2^63 in magnitude; track them in 128 bits.
  __int128 tt = 0, nt = 1;
  while (new_r != 0) {
    u64 q = r / new_r;
    __int128 tmp = tt - static_cast<__int128>(q) * nt;
    tt = nt;
    nt = tmp;
    u64 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  if (r != 1) return std::nullopt;
  if (tt < 0) tt += m;
  return static_cast<u64>(tt);
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// sieving

/// Largest sieve bound accepted by the sieves (one bit per candidate).
inline constexpr u64 kDefaultSieveBudget = u64{1} << 32;

/// Primes in [2, bound], ascending.
inline std::vector<u64> sieve_primes(u64 bound, u64 budget = kDefaultSieveBudget) {
  if (bound < 2) throw std::domain_error("sieve_primes: bound must be at least 2");
  if (bound > budget)
    throw resource_error("sieve_primes: bound " + std::to_string(bound) + " exceeds memory budget " +
                         std::to_string(budget));
  std::vector<bool> composite(bound + 1, false);
  std::vector<u64> primes;
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

/// Primes in [lo, hi] by a segmented sieve over base primes up to sqrt(hi).
inline std::vector<u64> sieve_segment(u64 lo, u64 hi, u64 budget = kDefaultSieveBudget) {
  if (hi < 2 || lo > hi) return {};
  lo = std::max<u64>(lo, 2);
  if (hi - lo > budget) throw resource_error("sieve_segment: range exceeds memory budget");
  u64 root = isqrt(hi);
  std::vector<u64> base = root >= 2 ? sieve_primes(root, budget) : std::vector<u64>{};
  std::vector<bool> composite(hi - lo + 1, false);
  for (u64 q : base) {
    u64 start = std::max(q * q, (lo + q - 1) / q * q);
    for (u64 j = start; j <= hi; j += q) composite[j - lo] = true;
  }
  std::vector<u64> out;
  for (u64 i = lo; i <= hi; ++i)
    if (!composite[i - lo]) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// primality

namespace detail {

inline bool miller_rabin_round(u64 n, u64 a, u64 d, int s) {
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
  BigInt x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic below 2^64 (first twelve prime bases suffice).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    if (!detail::miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

/// Rounds of Miller-Rabin with pseudo-random bases above 2^64; a composite
/// survives with probability at most 4^-40.
inline constexpr int kProbabilisticRounds = 40;

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_prime(static_cast<u64>(n));
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Fixed seed keeps the answer reproducible.
  boost::random::mt19937_64 rng(0x5eed0f5ab0ULL);
  boost::random::uniform_int_distribution<BigInt> pick(BigInt(2), n - 2);
  for (int round = 0; round < kProbabilisticRounds; ++round) {
    BigInt a = pick(rng);
    if (!detail::miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// factorization

/// Prime factorization of a positive integer; factors ascending by prime.
template <class Int>
struct BasicFactorization {
  Int value{1};
  std::vector<std::pair<Int, unsigned>> factors;

  std::vector<Int> primes() const {
    std::vector<Int> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
  }

  Int product() const {
    Int acc = 1;
    for (const auto& [p, e] : factors)
      for (unsigned i = 0; i < e; ++i) acc *= p;
    return acc;
  }

  friend bool operator==(const BasicFactorization&, const BasicFactorization&) = default;
};

using Factorization = BasicFactorization<u64>;
using BigFactorization = BasicFactorization<BigInt>;

/// Trial-division bound before switching to Pollard-rho.
inline constexpr u64 kTrialDivisionBound = 1'000'000;
/// Default iteration budget for a single Pollard-rho split.
inline constexpr u64 kDefaultRhoBudget = u64{1} << 26;

namespace detail {

inline u64 brent_rho(u64 n, u64 c, u64 budget) {
  // Brent's cycle detection with batched gcds, f(x) = x^2 + c.
  const u64 batch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1, r = 1, used = 0;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = add_mod(mul_mod(y, y, n), c, n);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      u64 lim = std::min(batch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = add_mod(mul_mod(y, y, n), c, n);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(q, n);
      k += lim;
      used += lim;
      if (used > budget) return 0;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = add_mod(mul_mod(ys, ys, n), c, n);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline BigInt brent_rho(const BigInt& n, const BigInt& c, u64 budget) {
  const u64 batch = 128;
  BigInt y = 2, x = 2, ys = 2, q = 1, g = 1;
  u64 r = 1, used = 0;
  auto step = [&](const BigInt& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      u64 lim = std::min(batch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = step(y);
        q = q * (x > y ? BigInt(x - y) : BigInt(y - x)) % n;
      }
      g = boost::multiprecision::gcd(q, n);
      k += lim;
      used += lim;
      if (used > budget) return 0;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = boost::multiprecision::gcd(x > ys ? BigInt(x - ys) : BigInt(ys - x), n);
    } while (g == 1);
  }
  return g;
}

template <class Int>
void split_composite(const Int& n, u64 budget, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1; c < 64; ++c) {
    Int d = brent_rho(n, Int(c), budget);
    if (d == 0) break;
    if (d != n) {
      split_composite<Int>(d, budget, out);
      split_composite<Int>(Int(n / d), budget, out);
      return;
    }
  }
  throw factoring_error("factorize: Pollard-rho budget exhausted on a cofactor");
}

template <class Int>
BasicFactorization<Int> factorize_impl(Int n, u64 rho_budget) {
  if (n < 1) throw std::domain_error("factorize: argument must be positive");
  BasicFactorization<Int> f;
  f.value = n;
  std::map<Int, unsigned> found;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) found[Int(p)] += e;
  };
  take(2);
  for (u64 p = 3; p <= kTrialDivisionBound; p += 2) {
    if (Int(p) * p > n) break;
    take(p);
  }
  if (n > 1) {
    if (Int(kTrialDivisionBound) * kTrialDivisionBound >= n)
      ++found[n];  // no factor below its square root
    else
      split_composite<Int>(n, rho_budget, found);
  }
  f.factors.assign(found.begin(), found.end());
  return f;
}

}  // namespace detail

/// Trial division to 10^6, then Brent's Pollard-rho. Throws factoring_error
/// instead of returning a partial factorization.
inline Factorization factorize(u64 n, u64 rho_budget = kDefaultRhoBudget) {
  return detail::factorize_impl<u64>(n, rho_budget);
}

inline BigFactorization factorize(const BigInt& n, u64 rho_budget = kDefaultRhoBudget) {
  return detail::factorize_impl<BigInt>(n, rho_budget);
}

// ---------------------------------------------------------------------------
// orders and valuations

/// Least n >= 1 with a^n == 1 (mod p), given the factorization of p - 1.
inline u64 multiplicative_order(u64 a, u64 p, const Factorization& p_minus_1) {
  a %= p;
  if (a == 0) throw std::domain_error("multiplicative_order: p divides a");
  u64 order = p - 1;
  for (const auto& [q, e] : p_minus_1.factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (mod_pow(a, order / q, p) != 1) break;
      order /= q;
    }
  }
  return order;
}

inline u64 multiplicative_order(u64 a, u64 p) {
  if (!is_prime(p)) throw std::domain_error("multiplicative_order: modulus is not prime");
  return multiplicative_order(a, p, factorize(p - 1));
}

/// Largest power of the prime l dividing n.
inline u64 l_part(u64 n, u64 l) {
  if (!is_prime(l)) throw std::domain_error("l_part: l is not prime");
  if (n == 0) throw std::domain_error("l_part: n must be positive");
  u64 part = 1;
  while (n % l == 0) {
    n /= l;
    part *= l;
  }
  return part;
}

/// Exponent k with l_part(n, l) == l^k.
inline unsigned l_valuation(u64 n, u64 l) {
  unsigned k = 0;
  for (u64 part = l_part(n, l); part > 1; part /= l) ++k;
  return k;
}

/// A generator of F_p^*, found by testing candidates against the prime factors of p - 1.
inline u64 primitive_root(u64 p, const Factorization& p_minus_1) {
  if (p == 2) return 1;
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : p_minus_1.factors) {
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found, modulus not prime");
}

/// Legendre symbol (a/p) for odd prime p, as -1, 0 or 1.
inline int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// A square root of a modulo the odd prime p (Tonelli-Shanks), or nullopt for non-residues.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p), r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// congruence systems

/// The set {x : x == residue (mod modulus)}; modulus 1 means "no information".
struct Congruence {
  BigInt residue{0};
  BigInt modulus{1};

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Meet of two congruence classes (generalized CRT); nullopt when they are disjoint.
inline std::optional<Congruence> crt_meet(const Congruence& a, const Congruence& b) {
  using boost::multiprecision::gcd;
  BigInt g = gcd(a.modulus, b.modulus);
  BigInt diff = b.residue - a.residue;
  if (diff % g != 0) return std::nullopt;
  BigInt m1 = a.modulus / g, m2 = b.modulus / g;
  // solve a.residue + a.modulus * t == b.residue (mod b.modulus)
  BigInt t = 0;
  if (m2 != 1) {
    // inverse of m1 modulo m2 via extended Euclid
    BigInt old_r = m1 % m2, r = m2, old_s = 1, s = 0;
    while (r != 0) {
      BigInt q = old_r / r;
      BigInt tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
    }
    BigInt inv = old_s % m2;
    if (inv < 0) inv += m2;
    t = (diff / g) % m2 * inv % m2;
    if (t < 0) t += m2;
  }
  Congruence out;
  out.modulus = a.modulus * m2;
  out.residue = (a.residue + a.modulus * t) % out.modulus;
  if (out.residue < 0) out.residue += out.modulus;
  return out;
}

/// Representative of the class with least absolute value (ties resolved toward the positive one).
inline BigInt balanced_lift(const Congruence& c) {
  BigInt r = c.residue % c.modulus;
  if (r < 0) r += c.modulus;
  if (2 * r > c.modulus) r -= c.modulus;
  return r;
}

// ---------------------------------------------------------------------------
// prime ranges

/// Primes p with lo <= p <= hi that are not in `excluded`, iterated ascending.
class PrimeRange {
 public:
  PrimeRange(u64 lo, u64 hi, std::set<u64> excluded = {}) : lo_(lo), hi_(hi), excluded_(std::move(excluded)) {
    if (lo_ < 2 || lo_ > hi_) throw std::domain_error("PrimeRange: need 2 <= lo <= hi");
  }

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  const std::set<u64>& excluded() const { return excluded_; }

  /// Excluded primes that actually fall inside [lo, hi].
  std::vector<u64> exclusions_in_range() const {
    std::vector<u64> out;
    for (u64 p : excluded_)
      if (p >= lo_ && p <= hi_ && is_prime(p)) out.push_back(p);
    return out;
  }

  PrimeRange with_excluded(const std::vector<u64>& more) const {
    PrimeRange r = *this;
    r.excluded_.insert(more.begin(), more.end());
    return r;
  }

  bool contains(u64 p) const { return p >= lo_ && p <= hi_ && !excluded_.count(p) && is_prime(p); }

  std::vector<u64> primes() const {
    std::vector<u64> out;
    for (u64 p : sieve_segment(lo_, hi_))
      if (!excluded_.count(p)) out.push_back(p);
    return out;
  }

  friend bool operator==(const PrimeRange&, const PrimeRange&) = default;

 private:
  u64 lo_;
  u64 hi_;
  std::set<u64> excluded_;
};

}  // namespace splab
