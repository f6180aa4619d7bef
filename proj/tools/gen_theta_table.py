#!/usr/bin/env python3
"""Regenerate data/theta_table.txt with mpmath (independent of the C++ code)."""
import sys

import mpmath as mp

mp.mp.dps = 100
TERMS = 260
TOL = mp.mpf(2) ** -53


def hbar_coeffs(d):
    g = [mp.mpf(0)] * (TERMS + 1)
    for n in range(d + 1, TERMS + 1):
        g[n] = (-1) ** (n + d) * mp.binomial(n - 1, d) / mp.factorial(n)
    h = [mp.mpf(0)] * (TERMS + 1)
    power = list(g)
    j = 1
    while j * (d + 1) <= TERMS:
        sign = 1 if j % 2 else -1
        for n in range(TERMS + 1):
            h[n] += sign * power[n] / j
        nxt = [mp.mpf(0)] * (TERMS + 1)
        for a in range(TERMS + 1):
            if power[a] == 0:
                continue
            for b in range(d + 1, TERMS + 1 - a):
                nxt[a + b] += power[a] * g[b]
        power = nxt
        j += 1
    return [abs(h[n]) for n in range(d + 1, TERMS + 1)]


def theta(d):
    c = hbar_coeffs(d)

    def f(x):
        return mp.fsum(ci * x ** (d + i) for i, ci in enumerate(c)) - TOL

    lo, hi = mp.mpf(0), mp.mpf(1)
    while f(hi) <= 0:
        lo, hi = hi, 2 * hi
    for _ in range(80):
        mid = (lo + hi) / 2
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def main():
    out = ["# degree theta_d for tolerance 2^-53", "tolerance 1.1102230246251565e-16"]
    for d in range(2, 31):
        out.append(f"{d} {mp.nstr(theta(d), 17)}")
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
