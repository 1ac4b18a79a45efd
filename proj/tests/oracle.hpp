#pragma once

// Brute-force reference computations for the test suites. Nothing here
// calls into the library: every answer comes from direct enumeration.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using ll = long long;

inline bool is_prime_td(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (is_prime_td(p)) out.push_back(p);
  return out;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor_td(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline ll md(ll a, ll p) { return ((a % p) + p) % p; }

/// Least n >= 1 with a^n == 1 mod p, by repeated multiplication.
inline std::uint64_t order_by_iteration(ll a, ll p) {
  ll x = md(a, p);
  std::uint64_t n = 1;
  for (ll y = x; y != 1; y = y * x % p) ++n;
  return n;
}

inline ll pow_mod(ll a, ll e, ll p) {
  ll r = 1 % p, b = md(a, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline ll inv_fermat(ll a, ll p) {
  ll r = 1, b = md(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

struct Pt {
  bool inf = true;
  ll x = 0, y = 0;
  bool operator==(const Pt& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

/// Naive long-Weierstrass arithmetic over F_p with small p.
struct Curve {
  ll a1, a2, a3, a4, a6, p;

  bool on(ll x, ll y) const {
    return md(y * y + a1 * x * y + a3 * y - (x * x % p * x + a2 * x * x + a4 * x + a6), p) == 0;
  }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x && md(P.y + Q.y + a1 * Q.x + a3, p) == 0) return {};
    ll lam;
    if (P.x == Q.x)
      lam = md(3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y, p) * inv_fermat(2 * P.y + a1 * P.x + a3, p) % p;
    else
      lam = md(Q.y - P.y, p) * inv_fermat(Q.x - P.x, p) % p;
    const ll nu = md(P.y - lam * P.x, p);
    const ll x3 = md(lam * lam + a1 * lam - a2 - P.x - Q.x, p);
    const ll y3 = md(-(lam + a1) * x3 - nu - a3, p);
    return {false, x3, y3};
  }

  std::vector<Pt> all_points() const {
    std::vector<Pt> out{Pt{}};
    for (ll x = 0; x < p; ++x)
      for (ll y = 0; y < p; ++y)
        if (on(x, y)) out.push_back({false, x, y});
    return out;
  }

  /// Order by adding P to itself until reaching infinity.
  std::uint64_t order(const Pt& P) const {
    std::uint64_t n = 1;
    for (Pt R = P; !R.inf; R = add(R, P)) ++n;
    return n;
  }
};

}  // namespace oracle
