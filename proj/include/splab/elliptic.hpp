#pragma once

// Elliptic curves over Q in long Weierstrass form
//   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
// exact group law over Q, reduction at good primes, point counting and
// point orders in E(F_p).

#include <array>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "splab/arith.hpp"
#include "splab/group.hpp"

namespace splab {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline BigInt parse_integer(std::string_view text) {
  const std::string s = trim(text);
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("expected an integer, got '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

inline Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  const BigInt num = parse_integer(std::string_view(s).substr(0, slash));
  const BigInt den = parse_integer(std::string_view(s).substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
  std::string out = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1) out += "/" + boost::multiprecision::denominator(r).str();
  return out;
}

}  // namespace detail

/// An integral long-Weierstrass model with nonzero discriminant.
class EllipticCurve {
 public:
  EllipticCurve(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6)
      : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    discriminant_ = compute_discriminant(a_);
    if (discriminant_ == 0) throw std::domain_error("EllipticCurve: singular model (discriminant 0)");
  }

  /// Parses "a1,a2,a3,a4,a6".
  static EllipticCurve parse(std::string_view text) {
    std::vector<BigInt> c;
    std::size_t start = 0;
    for (;;) {
      const auto comma = text.find(',', start);
      c.push_back(detail::parse_integer(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (c.size() != 5) throw std::invalid_argument("curve needs five coefficients a1,a2,a3,a4,a6");
    return EllipticCurve(c[0], c[1], c[2], c[3], c[4]);
  }

  const BigInt& a1() const { return a_[0]; }
  const BigInt& a2() const { return a_[1]; }
  const BigInt& a3() const { return a_[2]; }
  const BigInt& a4() const { return a_[3]; }
  const BigInt& a6() const { return a_[4]; }
  const std::array<BigInt, 5>& coefficients() const { return a_; }
  const BigInt& discriminant() const { return discriminant_; }

  bool is_good_prime(u64 p) const { return discriminant_ % p != 0; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < a_.size(); ++i) out += (i ? "," : "") + a_[i].str();
    return out;
  }

  /// Discriminant through the b2, b4, b6, b8 covariants.
  static BigInt compute_discriminant(const std::array<BigInt, 5>& a) {
    const auto& [a1, a2, a3, a4, a6] = a;
    const BigInt b2 = a1 * a1 + 4 * a2;
    const BigInt b4 = 2 * a4 + a1 * a3;
    const BigInt b6 = a3 * a3 + 4 * a6;
    const BigInt b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }

  friend bool operator==(const EllipticCurve& l, const EllipticCurve& r) { return l.a_ == r.a_; }

 private:
  std::array<BigInt, 5> a_;
  BigInt discriminant_;
};

// ---------------------------------------------------------------------------
// points over Q

/// A point of E(Q): infinity, or affine (x, y) in lowest terms.
struct RationalPoint {
  bool infinity = true;
  Rational x{0};
  Rational y{0};

  static RationalPoint at_infinity() { return {}; }
  static RationalPoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }

  /// Parses "(x,y)" with integer or "n/d" coordinates, or "inf".
  static RationalPoint parse(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s == "inf" || s == "O" || s == "infinity") return at_infinity();
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
      throw std::invalid_argument("point must look like (x,y) or inf, got '" + s + "'");
    const std::string body = s.substr(1, s.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
      throw std::invalid_argument("point must have exactly two coordinates: '" + s + "'");
    return affine(detail::parse_rational(body.substr(0, comma)), detail::parse_rational(body.substr(comma + 1)));
  }

  std::string to_string() const {
    if (infinity) return "inf";
    return "(" + detail::format_rational(x) + "," + detail::format_rational(y) + ")";
  }

  friend bool operator==(const RationalPoint& l, const RationalPoint& r) {
    if (l.infinity || r.infinity) return l.infinity == r.infinity;
    return l.x == r.x && l.y == r.y;
  }
};

inline bool on_curve(const EllipticCurve& E, const RationalPoint& P) {
  if (P.infinity) return true;
  const Rational &x = P.x, &y = P.y;
  return y * y + Rational(E.a1()) * x * y + Rational(E.a3()) * y ==
         x * x * x + Rational(E.a2()) * x * x + Rational(E.a4()) * x + Rational(E.a6());
}

inline RationalPoint neg(const EllipticCurve& E, const RationalPoint& P) {
  if (P.infinity) return P;
  return RationalPoint::affine(P.x, -P.y - Rational(E.a1()) * P.x - Rational(E.a3()));
}

/// Chord-tangent sum over Q.
inline RationalPoint add(const EllipticCurve& E, const RationalPoint& P, const RationalPoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const Rational a1(E.a1()), a2(E.a2()), a3(E.a3()), a4(E.a4());
  if (P.x == Q.x && P.y + Q.y + a1 * Q.x + a3 == 0) return RationalPoint::at_infinity();
  Rational lambda;
  if (P.x == Q.x) {
    lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  const Rational nu = P.y - lambda * P.x;
  Rational x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
  Rational y3 = -(lambda + a1) * x3 - nu - a3;
  return RationalPoint::affine(std::move(x3), std::move(y3));
}

/// n*P by double-and-add; negative n goes through the negation formula.
inline RationalPoint scalar_mul(const EllipticCurve& E, BigInt n, const RationalPoint& P) {
  if (n < 0) return scalar_mul(E, -n, neg(E, P));
  RationalPoint acc = RationalPoint::at_infinity();
  RationalPoint base = P;
  while (n > 0) {
    if ((n & 1) != 0) acc = add(E, acc, base);
    n >>= 1;
    if (n > 0) base = add(E, base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// points over F_p

/// A point of E(F_p): infinity, or affine residues (x, y).
struct FieldPoint {
  bool infinity = true;
  u64 x = 0;
  u64 y = 0;

  static FieldPoint at_infinity() { return {}; }
  static FieldPoint affine(u64 x, u64 y) { return {false, x, y}; }

  std::string to_string() const {
    if (infinity) return "inf";
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }

  friend bool operator==(const FieldPoint& l, const FieldPoint& r) {
    if (l.infinity || r.infinity) return l.infinity == r.infinity;
    return l.x == r.x && l.y == r.y;
  }
};

/// The reduction of an integral model at a good prime p < 2^32, as a
/// FiniteAbelianGroup.
class ReducedCurve {
 public:
  using element_type = FieldPoint;

  ReducedCurve(const EllipticCurve& E, u64 p) : p_(p) {
    if (!is_prime(p)) throw std::domain_error("ReducedCurve: modulus is not prime");
    if (p >= (u64{1} << 32)) throw std::domain_error("ReducedCurve: primes must be below 2^32");
    if (!E.is_good_prime(p))
      throw std::domain_error("ReducedCurve: p = " + std::to_string(p) + " divides the discriminant");
    for (std::size_t i = 0; i < 5; ++i) a_[i] = reduce_big(E.coefficients()[i], p);
  }

  u64 p() const { return p_; }
  u64 a1() const { return a_[0]; }
  u64 a2() const { return a_[1]; }
  u64 a3() const { return a_[2]; }
  u64 a4() const { return a_[3]; }
  u64 a6() const { return a_[4]; }

  FieldPoint identity() const { return FieldPoint::at_infinity(); }

  bool on_curve(const FieldPoint& P) const {
    if (P.infinity) return true;
    const u64 x = P.x, y = P.y, p = p_;
    const u64 lhs = add_mod(mul_mod(y, y, p), mul_mod(add_mod(mul_mod(a1(), x, p), a3(), p), y, p), p);
    return lhs == rhs(x);
  }

  FieldPoint neg(const FieldPoint& P) const {
    if (P.infinity) return P;
    const u64 t = add_mod(mul_mod(a1(), P.x, p_), a3(), p_);
    return FieldPoint::affine(P.x, sub_mod(sub_mod(0, P.y, p_), t, p_));
  }

  FieldPoint add(const FieldPoint& P, const FieldPoint& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const u64 p = p_;
    u64 lambda;
    if (P.x == Q.x) {
      const u64 denom = add_mod(add_mod(mul_mod(2, P.y, p), mul_mod(a1(), P.x, p), p), a3(), p);
      if (P.y != Q.y || denom == 0) return FieldPoint::at_infinity();
      u64 numer = mul_mod(3, mul_mod(P.x, P.x, p), p);
      numer = add_mod(numer, mul_mod(mul_mod(2, a2(), p), P.x, p), p);
      numer = add_mod(numer, a4(), p);
      numer = sub_mod(numer, mul_mod(a1(), P.y, p), p);
      lambda = mul_mod(numer, *inv_mod(denom, p), p);
    } else {
      lambda = mul_mod(sub_mod(Q.y, P.y, p), *inv_mod(sub_mod(Q.x, P.x, p), p), p);
    }
    const u64 nu = sub_mod(P.y, mul_mod(lambda, P.x, p), p);
    u64 x3 = add_mod(mul_mod(lambda, lambda, p), mul_mod(a1(), lambda, p), p);
    x3 = sub_mod(sub_mod(sub_mod(x3, a2(), p), P.x, p), Q.x, p);
    u64 y3 = sub_mod(0, mul_mod(add_mod(lambda, a1(), p), x3, p), p);
    y3 = sub_mod(sub_mod(y3, nu, p), a3(), p);
    return FieldPoint::affine(x3, y3);
  }

  u64 key(const FieldPoint& P) const { return P.infinity ? ~u64{0} : P.x * p_ + P.y; }

  /// Hasse interval [lo, hi] around p + 1, clamped below at 1.
  std::pair<u64, u64> hasse_interval() const {
    const u64 w = isqrt(4 * p_);
    const u64 lo = p_ + 1 > w ? std::max<u64>(1, p_ + 1 - w) : 1;
    return {lo, p_ + 1 + w};
  }

  /// Least M in the Hasse interval with M*R = O, by baby-step giant-step.
  /// #E(F_p) lies in the interval and annihilates R, so such M exists.
  u64 hasse_annihilator(const FieldPoint& R) const {
    if (R.infinity) return 1;
    const auto [lo, hi] = hasse_interval();
    const u64 width = hi - lo + 1;
    u64 m = isqrt(width);
    if (m * m < width) ++m;
    std::unordered_map<u64, u64> baby;
    baby.reserve(2 * m);
    FieldPoint step = identity();
    for (u64 j = 0; j < m; ++j) {
      baby.try_emplace(key(step), j);
      step = add(step, R);
    }
    FieldPoint giant = splab::multiple(*this, lo, R);
    for (u64 i = 0; i * m < width; ++i) {
      if (auto it = baby.find(key(neg(giant))); it != baby.end()) {
        const u64 M = lo + i * m + it->second;
        if (M <= hi) return M;
      }
      giant = add(giant, step);
    }
    throw std::logic_error("hasse_annihilator: no annihilator in the Hasse interval (curve not reduced correctly)");
  }

  Factorization annihilator(const FieldPoint& R) const { return factorize(hasse_annihilator(R)); }

  /// Right-hand side x^3 + a2 x^2 + a4 x + a6 mod p.
  u64 rhs(u64 x) const {
    const u64 p = p_;
    u64 v = add_mod(x, a2(), p);
    v = add_mod(mul_mod(v, x, p), a4(), p);
    return add_mod(mul_mod(v, x, p), a6(), p);
  }

  /// All points with the given x-coordinate (zero, one or two of them).
  std::vector<FieldPoint> points_at(u64 x) const {
    std::vector<FieldPoint> out;
    const u64 p = p_;
    const u64 t = add_mod(mul_mod(a1(), x, p), a3(), p);  // y^2 + t y - rhs = 0
    if (p == 2) {
      for (u64 y = 0; y < 2; ++y)
        if (add_mod(mul_mod(y, y, p), mul_mod(t, y, p), p) == rhs(x)) out.push_back(FieldPoint::affine(x, y));
      return out;
    }
    const u64 disc = add_mod(mul_mod(t, t, p), mul_mod(4, rhs(x), p), p);
    const auto root = sqrt_mod(disc, p);
    if (!root) return out;
    const u64 inv2 = (p + 1) / 2;
    const u64 y1 = mul_mod(sub_mod(*root, t, p), inv2, p);
    out.push_back(FieldPoint::affine(x, y1));
    if (*root != 0) out.push_back(FieldPoint::affine(x, mul_mod(sub_mod(sub_mod(0, *root, p), t, p), inv2, p)));
    return out;
  }

  /// A uniformly chosen x with at least one point above it, then one of those points.
  template <class Rng>
  FieldPoint random_point(Rng& rng) const {
    std::uniform_int_distribution<u64> pick(0, p_ - 1);
    for (;;) {
      const auto pts = points_at(pick(rng));
      if (pts.empty()) continue;
      return pts[pts.size() == 1 ? 0 : pick(rng) % 2];
    }
  }

 private:
  u64 p_;
  std::array<u64, 5> a_{};
};

// ---------------------------------------------------------------------------
// reduction and counting

/// Drops the primes dividing the discriminant from the range.
inline PrimeRange good_primes(const EllipticCurve& E, const PrimeRange& range) {
  std::vector<u64> bad;
  if (abs(E.discriminant()) <= BigInt(range.hi())) {
    for (const auto& [q, e] : factorize(BigInt(abs(E.discriminant()))).factors)
      if (q >= range.lo() && q <= range.hi()) bad.push_back(static_cast<u64>(q));
  } else {
    for (u64 p : sieve_segment(range.lo(), range.hi()))
      if (!E.is_good_prime(p)) bad.push_back(p);
  }
  return range.with_excluded(bad);
}

/// r_p(P): a point whose coordinates have p in the denominator reduces to infinity.
inline FieldPoint reduce_point(const EllipticCurve& E, const RationalPoint& P, u64 p) {
  if (!E.is_good_prime(p)) throw std::domain_error("reduce_point: p = " + std::to_string(p) + " is a bad prime");
  if (P.infinity) return FieldPoint::at_infinity();
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const u64 dx = reduce_big(denominator(P.x), p), dy = reduce_big(denominator(P.y), p);
  if (dx == 0 || dy == 0) return FieldPoint::at_infinity();
  const u64 x = mul_mod(reduce_big(numerator(P.x), p), *inv_mod(dx, p), p);
  const u64 y = mul_mod(reduce_big(numerator(P.y), p), *inv_mod(dy, p), p);
  return FieldPoint::affine(x, y);
}

enum class CountMethod { NaiveCount, PointOrderLcm };

inline std::string to_string(CountMethod m) { return m == CountMethod::NaiveCount ? "NaiveCount" : "PointOrderLcm"; }

struct GroupOrderCertificate {
  u64 p = 0;
  u64 order = 0;
  CountMethod method = CountMethod::NaiveCount;
};

/// True when |p + 1 - order| <= 2 sqrt(p).
inline bool within_hasse(u64 p, u64 order) {
  const i64 t = static_cast<i64>(p + 1) - static_cast<i64>(order);
  return static_cast<u128>(t < 0 ? -t : t) * static_cast<u128>(t < 0 ? -t : t) <= static_cast<u128>(4) * p;
}

/// Largest p counted by the O(p) character sum.
inline constexpr u64 kNaiveCountLimit = u64{1} << 24;

/// #E(F_p). For p in {2, 3} every (x, y) is tried; for p > 3 the sum
/// p + 1 + sum_x ((4x^3 + b2 x^2 + 2 b4 x + b6) / p) of the completed-square
/// model is used. Above the naive limit, the lcm of random point orders is
/// used once it pins down a single multiple inside the Hasse interval.
inline GroupOrderCertificate count_points(const EllipticCurve& E, u64 p, u64 seed = 1,
                                          u64 naive_limit = kNaiveCountLimit) {
  const ReducedCurve C(E, p);
  GroupOrderCertificate cert{p, 0, CountMethod::NaiveCount};
  if (p <= 3) {
    u64 n = 1;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y)
        if (C.on_curve(FieldPoint::affine(x, y))) ++n;
    cert.order = n;
    return cert;
  }
  if (p <= naive_limit) {
    const u64 b2 = add_mod(mul_mod(C.a1(), C.a1(), p), mul_mod(4, C.a2(), p), p);
    const u64 b4 = add_mod(mul_mod(2, C.a4(), p), mul_mod(C.a1(), C.a3(), p), p);
    const u64 b6 = add_mod(mul_mod(C.a3(), C.a3(), p), mul_mod(4, C.a6(), p), p);
    i64 sum = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 f = add_mod(mul_mod(4, x, p), b2, p);
      f = add_mod(mul_mod(f, x, p), mul_mod(2, b4, p), p);
      f = add_mod(mul_mod(f, x, p), b6, p);
      sum += legendre(f, p);
    }
    cert.order = static_cast<u64>(static_cast<i64>(p + 1) + sum);
    return cert;
  }
  cert.method = CountMethod::PointOrderLcm;
  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
  const auto [lo, hi] = C.hasse_interval();
  u64 l = 1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const FieldPoint R = C.random_point(rng);
    const u64 ord = element_order(C, R);
    l = l / gcd_u64(l, ord) * ord;
    const u64 first = (lo + l - 1) / l * l;
    if (first <= hi && first + l > hi) {
      cert.order = first;
      return cert;
    }
  }
  throw resource_error("count_points: group exponent did not determine #E(F_p) for p = " + std::to_string(p));
}

/// Exact order of R in E(F_p): a BSGS annihilator from the Hasse interval, then prime stripping.
inline u64 point_order(const ReducedCurve& C, const FieldPoint& R) { return element_order(C, R); }

inline u64 point_order(const EllipticCurve& E, const FieldPoint& R, u64 p) { return point_order(ReducedCurve(E, p), R); }

/// Least e >= 0 with e*base = target in E(F_p), or nullopt if target is outside <base>.
inline std::optional<u64> dlog_in_cyclic(const ReducedCurve& C, const FieldPoint& base, const FieldPoint& target) {
  if (base.infinity) throw std::domain_error("dlog_in_cyclic: base must not be the point at infinity");
  return discrete_log(C, base, target);
}

inline std::optional<u64> dlog_in_cyclic(const EllipticCurve& E, const FieldPoint& base, const FieldPoint& target,
                                         u64 p) {
  return dlog_in_cyclic(ReducedCurve(E, p), base, target);
}

/// Mazur's bound: rational torsion has order at most 12, and prime-to-p
/// torsion injects into E(F_p) at odd good primes. A reduction order above
/// 16 at two such primes therefore certifies infinite order.
inline bool looks_nontorsion(const EllipticCurve& E, const RationalPoint& P, u64 p_max = 1000) {
  if (P.infinity) return false;
  int hits = 0;
  for (u64 p : sieve_primes(std::max<u64>(p_max, 3))) {
    if (p == 2 || !E.is_good_prime(p)) continue;
    const FieldPoint R = reduce_point(E, P, p);
    if (R.infinity) continue;
    if (point_order(E, R, p) > 16 && ++hits == 2) return true;
  }
  return false;
}

}  // namespace splab
