#!/usr/bin/env python3
"""Generate Chebyshev tables for the Riemann-Siegel corrections C5 and C6.

C0..C4 have closed forms in derivatives of
    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
and are evaluated directly in src/zeta_engine.cpp. C5 and C6 are recovered
numerically: at fixed p the normalised remainder
    (-1)^(N-1) a^(1/2) (Z(t) - 2 sum_{n<=N} n^(-1/2) cos(theta - t log n)),
    a = sqrt(t / 2 pi) = N + p,
is a power series sum_k C_k(p) a^(-k). Subtracting C0..C4 and solving for
the next coefficients from several N gives C5(p), C6(p) to high accuracy.
The values are then fitted by Chebyshev series in x = 2p - 1.

Usage: python3 tools/rs_coefficients.py [--check]
"""
import sys

import mpmath as mp

mp.mp.dps = 60
NODES = 256
DEGREE = 120
CHEB_N = 36
N_VALUES = [60, 80, 100, 130, 170, 220, 280]


def psi(z):
    return mp.cos(2 * mp.pi * (z * z - z - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * z)


def psi_taylor():
    vals = [psi(mp.mpf(1) / 2 + mp.expjpi(mp.mpf(2 * j) / NODES)) for j in range(NODES)]
    coeffs = []
    for k in range(DEGREE + 1):
        s = mp.fsum(vals[j] * mp.expjpi(-mp.mpf(2 * k * j % (2 * NODES)) / NODES) for j in range(NODES))
        coeffs.append(mp.re(s) / NODES)
    return coeffs


TAYLOR = psi_taylor()


def dpsi(j, p):
    x = p - mp.mpf(1) / 2
    acc = mp.mpf(0)
    for k in range(DEGREE, j - 1, -1):
        acc = acc * x + TAYLOR[k] * mp.ff(k, j)
    return acc


def closed_form(p):
    pi = mp.pi
    d = {j: dpsi(j, p) for j in (0, 1, 2, 3, 4, 5, 6, 8, 9, 12)}
    c0 = d[0]
    c1 = -d[3] / (96 * pi**2)
    c2 = d[6] / (18432 * pi**4) + d[2] / (64 * pi**2)
    c3 = -d[9] / (5308416 * pi**6) - d[5] / (3840 * pi**4) - d[1] / (64 * pi**2)
    c4 = (d[12] / (2038431744 * pi**8) + 11 * d[8] / (5898240 * pi**6)
          + 19 * d[4] / (24576 * pi**4) + d[0] / (128 * pi**2))
    return [c0, c1, c2, c3, c4]


def remainder_series(p, known):
    """Return C_{len(known)}, C_{len(known)+1} at p from the exact remainder."""
    rows, rhs = [], []
    first = len(known)
    for n in N_VALUES:
        a = n + p
        t = 2 * mp.pi * a * a
        th = mp.siegeltheta(t)
        main = mp.fsum(mp.cos(th - t * mp.log(k)) / mp.sqrt(k) for k in range(1, n + 1))
        r = mp.siegelz(t) - 2 * main
        sign = 1 if n % 2 == 1 else -1
        y = sign * mp.sqrt(a) * r - mp.fsum(c * a**(-k) for k, c in enumerate(known))
        rows.append([a**(-m) for m in range(len(N_VALUES))])
        rhs.append(y * a**first)
    sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    return sol[0], sol[1]


def chebyshev(values):
    n = len(values)
    out = []
    for m in range(n):
        s = mp.fsum(values[j] * mp.cos(mp.pi * m * (j + mp.mpf(1) / 2) / n) for j in range(n))
        out.append(2 * s / n)
    out[0] /= 2
    return out


def main():
    if "--check" in sys.argv:
        # C4 recovered from C0..C3 must match its closed form.
        for p in (mp.mpf("0.1"), mp.mpf("0.5"), mp.mpf("0.83")):
            cf = closed_form(p)
            c4, _ = remainder_series(p, cf[:4])
            print(f"p={float(p):.2f} C4 closed={mp.nstr(cf[4], 12)} recovered={mp.nstr(c4, 12)}")
        return
    xs = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / CHEB_N) for j in range(CHEB_N)]
    c5, c6 = [], []
    for x in xs:
        p = (x + 1) / 2
        a5, a6 = remainder_series(p, closed_form(p))
        c5.append(a5)
        c6.append(a6)
    for name, vals in (("kC5Chebyshev", c5), ("kC6Chebyshev", c6)):
        coeffs = chebyshev(vals)
        print(f"constexpr std::array<double, {CHEB_N}> {name} = {{")
        for c in coeffs:
            print(f"    {mp.nstr(c, 17, min_fixed=0, max_fixed=0)},")
        print("};")


if __name__ == "__main__":
    main()
