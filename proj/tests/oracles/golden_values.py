#!/usr/bin/env python3
"""Brute-force reference values frozen into the C++ unit tests.

Everything here is computed by direct enumeration with exact rationals where
possible, independent of the C++ implementation. Run it to regenerate the
constants quoted in tests/*.cpp.
"""
from fractions import Fraction as Fr
from itertools import product
from math import log2, sqrt, log, e


def iid(n, p1):
    return {x: Fr(1) * _prod(p1 if b else 1 - p1 for b in x) for x in product((0, 1), repeat=n)}


def _prod(it):
    r = Fr(1)
    for v in it:
        r *= v
    return r


def hamming_syndrome(block):
    # M_d . x over GF(2), columns = binary of 1..2^d-1, row 1 = MSB
    d = (len(block) + 1).bit_length() - 1
    s = [0] * d
    for j, bit in enumerate(block, start=1):
        if bit:
            for r in range(d):
                s[r] ^= (j >> (d - 1 - r)) & 1
    return tuple(s)


def pushforward(mu, f):
    out = {}
    for x, p in mu.items():
        y = f(x)
        out[y] = out.get(y, 0) + p
    return out


def min_entropy(mu):
    return -log2(float(max(mu.values())))


def shannon(mu):
    return -sum(float(p) * log2(float(p)) for p in mu.values() if p > 0)


def half_l1_to_uniform(nu, m):
    u = Fr(1, 2 ** m)
    return sum(abs(nu.get(y, 0) - u) for y in product((0, 1), repeat=m)) / 2


q = Fr(3, 4)
print("iid(0.75)^4 min-entropy", min_entropy(iid(4, q)), 4 * log2(4 / 3))
print("H(0.75,0.25)", shannon({0: Fr(3, 4), 1: Fr(1, 4)}))

print("d=2 syndromes", {''.join(map(str, x)): ''.join(map(str, hamming_syndrome(x))) for x in product((0, 1), repeat=3)})

nu = pushforward(iid(3, q), hamming_syndrome)
print("iid(0.75)^3 -> g_2", {''.join(map(str, k)): v for k, v in sorted(nu.items())})
print("  H_inf", min_entropy(nu), "H", shannon(nu), "ratio", max(nu.values()) / min(nu.values()))
print("  bound 2-log2(3)", 2 - log2(3))

# very strong extractor sliced from f_2, n=6, D=2, mu = iid(0.75)^6
mu6 = iid(6, q)
f2 = lambda x: hamming_syndrome(x[:3]) + hamming_syndrome(x[3:])
for D in (1, 2, 4):
    mo = 4 // D
    g = lambda x, s: f2(x)[(s - 1) * mo: s * mo]
    vse = Fr(0)
    strong = Fr(0)
    for t in range(1, D + 1):
        strong += half_l1_to_uniform(pushforward(mu6, lambda x: g(x, t)), mo) / D
        for z, pz in mu6.items():
            key = tuple(g(z, s) for s in range(1, t))
            cond = {x: p for x, p in mu6.items() if tuple(g(x, s) for s in range(1, t)) == key}
            tot = sum(cond.values())
            cn = pushforward({x: p / tot for x, p in cond.items()}, lambda x: g(x, t))
            vse += pz / D * half_l1_to_uniform(cn, mo)
    H = shannon(pushforward(mu6, f2))
    eps_h = 1 - H / 4
    print(f"D={D} strong={float(strong)!r} very_strong={float(vse)!r} H(f2)={H!r} eps_h={eps_h!r} "
          f"claim={sqrt(log(2) / 2 * eps_h * 4 / D)!r}")

print("extr_cond(0.01, 4)", 1 - 0.01 - sqrt(4 * log2(e) * 0.01 / 4))
print("theorem2 d=3 delta=1/3", 1 - (1 / 3) * log2((4 / 3) / (2 / 3)))
# greedy distribution for A={11}, n=2, delta=0.5
# Pr[X_i = 0 | u] = q when |{v: u0v in A}| >= |{v: u1v in A}|, else p.
def greedy(A, n, p, q):
    mu = {}
    for x in range(2 ** n):
        bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
        w = Fr(1)
        for i in range(n):
            u = bits[:i]
            c0 = sum(1 for a in A if a[:i] == u and a[i] == 0)
            c1 = sum(1 for a in A if a[:i] == u and a[i] == 1)
            p0 = q if c0 >= c1 else p
            w *= p0 if bits[i] == 0 else 1 - p0
        mu[tuple(bits)] = w
    return mu
g11 = greedy([[1, 1]], 2, Fr(1, 4), Fr(3, 4))
print("greedy A={11}:", {k: str(v) for k, v in g11.items()})
ok = all(Fr(1, 4) <= g11[(a, 1)] / (g11[(a, 0)] + g11[(a, 1)]) <= Fr(3, 4) for a in (0, 1)) and \
     all(Fr(1, 4) <= g11[(1, b)] / (g11[(0, b)] + g11[(1, b)]) <= Fr(3, 4) for b in (0, 1))
print("greedy A={11} strong SV:", ok)
n = 6
pm = (2 - 2 ** (1 - n))
print("pinsker point mass n=6 lower", log2(e) / 2 * pm ** 2, "upper", pm / 2 * n + sqrt(2 * log2(e) * pm * n))
