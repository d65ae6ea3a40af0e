#!/usr/bin/env python3
"""Measure |exact - estimate| / scale(T) for the three summatory checks.

The envelope constants in tests/config/envelopes.json are these maxima
rounded up with some headroom.
"""
import argparse
import json
import math

import numpy as np

GAMMA = 0.57721566490153286061


def totients(n):
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def mobius(n):
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    sieve = np.ones(n + 1, dtype=bool)
    for p in range(2, n + 1):
        if sieve[p]:
            sieve[p * p::p] = False
            mu[p::p] *= -1
            if p * p <= n:
                mu[p * p::p * p] = 0
    return mu


def gamma0(terms):
    mu = mobius(terms).astype(np.float64)
    d = np.arange(1, terms + 1, dtype=np.float64)
    return math.fsum(mu[1:] * (GAMMA - np.log(d)) / (d * d))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-t", type=int, default=10**6)
    ap.add_argument("--gamma0-terms", type=int, default=10**7)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    grid = [10**k for k in range(3, 7) if 10**k <= args.max_t]
    phi = totients(args.max_t)
    g0 = gamma0(args.gamma0_terms)

    worst = {"coprime_count": 0.0, "totient_sum": 0.0, "totient_over_square_sum": 0.0}
    for a in (1, 2, 6, 30, 210, 997, 1000):
        for T in grid:
            exact = sum(1 for c in range(1, T + 1) if math.gcd(c, a) == 1)
            est = phi[a] * T / a
            worst["coprime_count"] = max(worst["coprime_count"], abs(exact - est) / a**0.25)
    prefix = np.cumsum(phi)
    inv = phi[1:] / np.arange(1, args.max_t + 1, dtype=np.float64) ** 2
    for T in grid:
        est = 3 * T * T / math.pi**2
        worst["totient_sum"] = max(worst["totient_sum"], abs(int(prefix[T]) - est) / (T * math.log(T)))
        exact = math.fsum(inv[:T])
        est = 6 / math.pi**2 * math.log(T) + g0
        worst["totient_over_square_sum"] = max(worst["totient_over_square_sum"],
                                                abs(exact - est) / (math.log(T) / T))

    if args.json:
        print(json.dumps({"gamma0": g0, "worst": worst}, indent=2))
    else:
        print(f"gamma0 ~ {g0:.12f}")
        for k, v in worst.items():
            print(f"{k:26s} max ratio {v:.6g}")


if __name__ == "__main__":
    main()
