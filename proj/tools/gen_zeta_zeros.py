#!/usr/bin/env python3
"""Write the imaginary parts of the first N nontrivial zeros of zeta(s).

Output is the plain-imag format: one positive decimal per line, ascending.
Zeros below --switch come from mpmath.zetazero; above it Z(t) is evaluated with
the Riemann-Siegel formula (corrections C0..C4, long double) on a grid, sign
changes are refined by false position, and a few indices are spot-checked
against mpmath at the end.

Usage: gen_zeta_zeros.py N OUT [--switch 1000] [--step 0.005]
"""
import argparse
import sys

import mpmath
import numpy as np

LD = np.longdouble
PI = LD("3.14159265358979323846264338327950288")
TWO_PI = 2 * PI

TAYLOR = 34  # Taylor order of Psi kept per node
NODES = 512  # half-grid nodes (i - 1/2)/NODES, never on a pole of 1/cos(2 pi p)


def psi_taylor_table():
    """Psi^{(k)}(p_i) for Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)."""
    mp = mpmath.mp
    mp.dps = 60
    K = TAYLOR

    def exp_i(u):
        # Taylor coefficients of exp(i u(x)) from those of u; E' = i u' E
        e = [mpmath.mpc(0)] * (K + 1)
        e[0] = mpmath.expj(u[0])
        du = [(k + 1) * u[k + 1] for k in range(K)] + [mpmath.mpf(0)]
        for n in range(K):
            e[n + 1] = 1j * mpmath.fsum(du[k] * e[n - k] for k in range(n + 1)) / (n + 1)
        return [mpmath.re(c) for c in e]

    def div(a, b):
        q = [mpmath.mpf(0)] * (K + 1)
        for n in range(K + 1):
            q[n] = (a[n] - mpmath.fsum(b[k] * q[n - k] for k in range(1, n + 1))) / b[0]
        return q

    tp = 2 * mpmath.pi
    table = np.zeros((NODES + 2, K + 1), dtype=LD)
    for i in range(NODES + 2):
        p0 = (mpmath.mpf(i) - mpmath.mpf(1) / 2) / NODES
        num = exp_i([tp * (p0 * p0 - p0 - mpmath.mpf(1) / 16), tp * (2 * p0 - 1), tp] + [mpmath.mpf(0)] * (K - 2))
        den = exp_i([tp * p0, tp] + [mpmath.mpf(0)] * (K - 1))
        q = div(num, den)
        # stored as Taylor coefficients q_j = Psi^{(j)}/j!
        table[i] = [LD(mpmath.nstr(c, 30)) for c in q]
    return table


class RiemannSiegel:
    def __init__(self):
        self.q = psi_taylor_table()

    def psi_derivs(self, p, kmax=12):
        i = np.clip(np.rint(p * NODES + LD(0.5)).astype(int), 0, NODES + 1)
        h = p - (i.astype(LD) - LD(0.5)) / NODES
        out = []
        fact = LD(1)
        for k in range(kmax + 1):
            if k:
                fact *= k
            # Psi^{(k)}(p) = sum_j q_{k+j} (k+j)!/j! h^j
            acc = np.zeros_like(p)
            coef = [LD(1)]
            for j in range(1, TAYLOR - k + 1):
                coef.append(coef[-1] * (k + j) / j)
            for j in range(TAYLOR - k, -1, -1):
                acc = acc * h + self.q[i, k + j] * coef[j]
            out.append(acc * fact)
        return out

    @staticmethod
    def theta(t):
        return (t / 2 * np.log(t / TWO_PI) - t / 2 - PI / 8 + 1 / (48 * t) + 7 / (5760 * t**3)
                + 31 / (80640 * t**5) + 127 / (430080 * t**7))

    def Z(self, t):
        t = np.asarray(t, dtype=LD)
        x = np.sqrt(t / TWO_PI)
        N = np.floor(x).astype(int)
        p = x - N
        th = self.theta(t)
        s = np.zeros_like(t)
        for n in range(1, int(N.max()) + 1):
            s += np.where(N >= n, np.cos(th - t * np.log(LD(n))) / np.sqrt(LD(n)), 0)
        d = self.psi_derivs(p)
        pi2, pi4, pi6, pi8 = PI**2, PI**4, PI**6, PI**8
        c0 = d[0]
        c1 = -d[3] / (96 * pi2)
        c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi4)
        c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi4) - d[9] / (5308416 * pi6)
        c4 = (d[0] / (128 * pi2) + 19 * d[4] / (24576 * pi4) + 11 * d[8] / (5898240 * pi6)
              + d[12] / (2038431744 * pi8))
        a = 1 / x
        sign = np.where(N % 2 == 1, 1, -1)
        return 2 * s + sign * np.sqrt(a) * (c0 + a * (c1 + a * (c2 + a * (c3 + a * c4))))

    def zeros(self, t0, count, step, chunk=50000):
        found = []
        lo = LD(t0)
        while len(found) < count:
            grid = lo + step * np.arange(chunk + 1, dtype=LD)
            v = self.Z(grid)
            idx = np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
            found.extend(self.refine(grid[idx], grid[idx + 1], v[idx], v[idx + 1]))
            lo = grid[-1]
        return found[:count]

    def refine(self, a, b, fa, fb, iters=80):
        # Illinois false position on all brackets at once
        side = np.zeros(len(a), dtype=int)
        for _ in range(iters):
            if len(a) == 0 or np.max(b - a) < LD("1e-14"):
                break
            c = (a * fb - b * fa) / (fb - fa)
            fc = self.Z(c)
            left = np.sign(fc) == np.sign(fa)
            fb = np.where(left & (side == 1), fb / 2, fb)
            fa = np.where(~left & (side == -1), fa / 2, fa)
            a, fa = np.where(left, c, a), np.where(left, fc, fa)
            b, fb = np.where(left, b, c), np.where(left, fb, fc)
            side = np.where(left, 1, -1)
        return list((a * fb - b * fa) / (fb - fa))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("count", type=int)
    ap.add_argument("out")
    ap.add_argument("--switch", type=float, default=1000.0)
    ap.add_argument("--step", type=float, default=0.005)
    args = ap.parse_args()

    mpmath.mp.dps = 15
    low = []
    while len(low) < args.count:
        g = mpmath.zetazero(len(low) + 1).imag
        if g > args.switch:
            break
        low.append(mpmath.nstr(g, 15, strip_zeros=False))
    print(f"{len(low)} zeros from mpmath below {args.switch}", file=sys.stderr)

    high = []
    if len(low) < args.count:
        rs = RiemannSiegel()
        high = ["%.15g" % float(v) for v in rs.zeros(args.switch, args.count - len(low), LD(args.step))]
    values = low + high

    mpmath.mp.dps = 20
    for n in sorted({len(low) + 1, (len(low) + args.count) // 2, args.count}):
        if n > len(low):
            ref = mpmath.zetazero(n).imag
            err = abs(float(values[n - 1]) - float(ref))
            print(f"check zero {n}: {values[n - 1]} vs {mpmath.nstr(ref, 15)} ({err:.1e})", file=sys.stderr)
            if err > 1e-9:
                sys.exit(f"zero {n} disagrees with mpmath; a close pair was probably missed, lower --step")

    with open(args.out, "w") as fh:
        fh.write("\n".join(values) + "\n")


if __name__ == "__main__":
    main()
