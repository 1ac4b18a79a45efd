"""Brute-force oracle for frozen test values. Independent of the C++ code paths."""
from fractions import Fraction


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def disc(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def count_brute(c, p):
    a1, a2, a3, a4, a6 = c
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0:
                n += 1
    return n


def ec_add(c, P, Q, p):
    a1, a2, a3, a4, a6 = c
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(2 * y1 + a1 * x1 + a3, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return (x3, y3)


def order_brute(c, P, p):
    k, R = 1, P
    while R is not None:
        R = ec_add(c, R, P, p)
        k += 1
    return k


def mult_order(a, p):
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


if __name__ == "__main__":
    curves = {"37a1": (0, 0, 1, -1, 0), "389a1": (0, 1, 1, -2, 0), "5077a1": (0, 0, 1, -7, 6),
              "11a1": (0, -1, 1, -10, -20), "53a1": (1, -1, 1, 0, 0)}
    for k, c in curves.items():
        print(k, "disc", disc(*c))
    c = curves["37a1"]
    print("37a1 #E(F_2), #E(F_3), #E(F_5):", count_brute(c, 2), count_brute(c, 3), count_brute(c, 5))
    print("37a1 first counts p<=50:", [(p, count_brute(c, p)) for p in primes_upto(50) if p != 37])
    print("ord (0,0) at p=2:", order_brute(c, (0, 0), 2))
    print("2*(0,0) mod 5:", ec_add(c, (0, 0), (0, 0), 5))
    print("ord_7(2), ord_7(10):", mult_order(2, 7), mult_order(10, 7))
    print("primes<=100:", len(primes_upto(100)))
    # (2,3) vs (4,45): least prime <= 100 where kernel containment fails (brute force over m box)
    for p in primes_upto(100):
        if p in (2, 3, 5):
            continue
        N = p - 1
        bad = None
        for m1 in range(1, N + 1):
            for m2 in range(1, N + 1):
                if pow(2, m1, p) * pow(3, m2, p) % p == 1 and pow(4, m1, p) * pow(45, m2, p) % p != 1:
                    bad = (m1, m2)
                    break
            if bad:
                break
        if bad:
            print("(2,3)->(4,45) fails at p =", p, "m =", bad)
            break
    # sweep_mul examples
    print("xs=[2] l=2 k=0 p<=50:", [p for p in primes_upto(50) if p != 2 and mult_order(2, p) % 2 == 1])
    print("xs=[2] l=2 k=1 p<=50:", [p for p in primes_upto(50) if p != 2 and mult_order(2, p) % 4 == 2])
