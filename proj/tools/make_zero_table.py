#!/usr/bin/env python3
"""Generate a table of nontrivial Riemann zeta zero ordinates.

Writes one ordinate per line in plain ASCII, the same layout as the
published Odlyzko tables, so the output can be fed straight to the
zero-table loader in this repository.

Method: bracket sign changes of the Riemann-Siegel Z function on a grid
(theta asymptotics plus the C0 remainder term), narrow each bracket by
vectorized bisection, then polish every root with secant iterations on a
high-accuracy Euler-Maclaurin evaluation of zeta(1/2 + it).  The C0
remainder limits the scan accuracy to ~1e-4 near t = 500; the polish
step is good to ~1e-10 everywhere, so printed digits are trustworthy.

Validation (on by default): strict monotonicity, gap sanity against the
local mean spacing, a Riemann-von Mangoldt count drift check at every
root, and mpmath spot checks of evenly spaced indices.
"""

import argparse
import math
import sys
import time

import numpy as np

TWO_PI = 2.0 * math.pi

# B_{2j} / (2j)! for j = 1..14, enough for ~1e-13 tails at N ~ 0.5 t.
_EM_COEFF = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
    -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138,
    -236364091 / 2730, 8553103 / 6, -23749461029 / 870,
]
_EM_COEFF = [b / math.factorial(2 * (j + 1)) for j, b in enumerate(_EM_COEFF)]


def theta(t):
    """Riemann-Siegel theta, asymptotic series (error < 1e-9 for t > 10)."""
    return ((t / 2) * np.log(t / TWO_PI) - t / 2 - math.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t**3) + 31 / (80640 * t**5))


def z_rs(t):
    """Z(t) via the Riemann-Siegel formula with the C0 remainder.

    Vectorized over t.  Absolute error decays like (t/2pi)^(-3/4):
    roughly 2e-3 at t = 50 and 1e-5 at t = 75000.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tau = np.sqrt(t / TWO_PI)
    m = np.floor(tau).astype(np.int64)
    th = theta(t)
    n = np.arange(1, m.max() + 1)
    phase = th[:, None] - np.outer(t, np.log(n))
    terms = np.cos(phase) / np.sqrt(n)[None, :]
    main = 2.0 * np.where(n[None, :] <= m[:, None], terms, 0.0).sum(axis=1)
    p = tau - m
    psi = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / np.cos(TWO_PI * p)
    return main + (-1.0) ** (m + 1) * psi / np.sqrt(tau)


def z_em(t):
    """Z(t) via Euler-Maclaurin zeta(1/2+it); scalar t, ~1e-11 accuracy."""
    s = 0.5 + 1j * t
    big_n = max(32, int(0.5 * t) + 16)
    k = np.arange(1, big_n)
    total = np.sum(np.exp(-s * np.log(k)))
    total += big_n ** (1.0 - s) / (s - 1) + 0.5 * big_n ** (-s)
    poch = s
    for j in range(1, len(_EM_COEFF) + 1):
        total += _EM_COEFF[j - 1] * poch * big_n ** (-s - (2 * j - 1))
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
    return float((np.exp(1j * theta(t)) * total).real)


def mean_spacing(t):
    """Local mean gap between consecutive ordinates near height t."""
    return TWO_PI / np.log(np.maximum(t, 20.0) / TWO_PI)


def scan_block(t_lo, t_hi, step):
    """Return (brackets, values) for sign changes of z_rs on [t_lo, t_hi]."""
    lefts = []
    n_pts = int((t_hi - t_lo) / step) + 2
    chunk = 40000
    prev_t = prev_z = None
    for start in range(0, n_pts, chunk):
        idx = np.arange(start, min(start + chunk, n_pts))
        tg = t_lo + idx * step
        zg = z_rs(tg)
        if prev_t is not None:
            tg = np.concatenate(([prev_t], tg))
            zg = np.concatenate(([prev_z], zg))
        flip = np.nonzero(np.signbit(zg[:-1]) != np.signbit(zg[1:]))[0]
        lefts.append(tg[flip])
        prev_t, prev_z = tg[-1], zg[-1]
    lo = np.concatenate(lefts) if lefts else np.empty(0)
    return lo, lo + step


def bisect_vec(lo, hi, iters=48):
    """Vectorized bisection of z_rs roots inside [lo, hi]."""
    flo = z_rs(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fmid = z_rs(mid)
        left = np.signbit(flo) != np.signbit(fmid)
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fmid)
    return 0.5 * (lo + hi)


def rescan_wide_gaps(roots, factor=1.25, oversample=400):
    """Re-scan suspiciously wide gaps at high resolution; returns new roots.

    Close pairs narrower than the scan step hide inside one grid cell and
    surface as a wide observed gap, so only those gaps need a second look.
    """
    found = []
    gaps = np.diff(roots)
    suspect = np.nonzero(gaps > factor * mean_spacing(roots[:-1]))[0]
    for i in suspect:
        a, b = roots[i] + 1e-6, roots[i + 1] - 1e-6
        tg = np.linspace(a, b, oversample)
        zg = z_rs(tg)
        flip = np.nonzero(np.signbit(zg[:-1]) != np.signbit(zg[1:]))[0]
        if len(flip):
            found.extend(bisect_vec(tg[flip], tg[flip + 1]))
    return np.array(found)


def polish(root, spacing):
    """Secant iterations of z_em from the bisected root; ~1e-10 accuracy."""
    h = 1e-5
    x0, x1 = root - h, root + h
    f0, f1 = z_em(x0), z_em(x1)
    for _ in range(6):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if abs(x2 - root) > 0.45 * spacing:  # derivative too flat; keep bisected value
            return root
        if abs(x2 - x1) < 5e-12:
            return x2
        x0, f0, x1 = x1, f1, x2
        f1 = z_em(x1)
    return x1


def validate_spots(roots, every, tol=5e-9):
    """Compare a spread of indices against mpmath.zetazero."""
    import mpmath as mp
    mp.mp.dps = 25
    idx = sorted(set(list(range(1, 11)) + list(range(every, len(roots) + 1, every)) + [len(roots)]))
    worst = 0.0
    for n in idx:
        ref = float(mp.zetazero(n).imag)
        err = abs(roots[n - 1] - ref)
        worst = max(worst, err)
        if err > tol:
            sys.exit(f"spot check failed: zero {n} = {roots[n - 1]:.12f}, expected {ref:.12f}")
    return len(idx), worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100000, help="number of zeros to emit")
    ap.add_argument("--out", default="data/riemann_zeros_100k.txt")
    ap.add_argument("--decimals", type=int, default=9)
    ap.add_argument("--spot-every", type=int, default=2500,
                    help="mpmath spot-check stride (0 disables)")
    args = ap.parse_args()

    t_start = time.time()
    roots = []
    t_lo = 10.0
    drift_lo = math.inf
    drift_hi = -math.inf
    while len(roots) < args.count:
        # Invert the zero-counting estimate to cover ~5000 zeros per block.
        target = min(len(roots) + 5000, args.count) + 8
        t_hi = t_lo + 40.0
        for _ in range(60):
            est = theta(t_hi) / math.pi + 1.0
            if est >= target:
                break
            t_hi += (target - est) * mean_spacing(t_hi) * 1.05
        step = min(0.03, mean_spacing(t_hi) / 8.0)
        lo, hi = scan_block(t_lo - step, t_hi, step)
        block = bisect_vec(lo, hi)
        extra = rescan_wide_gaps(block)
        if len(extra):
            block = np.sort(np.concatenate([block, extra]))
        sp = mean_spacing(block)
        block_polished = [polish(r, s) for r, s in zip(block, sp)]
        for r in block_polished:
            if roots and r <= roots[-1] + 1e-9:
                continue
            roots.append(r)
            # Riemann-von Mangoldt: theta(t_k)/pi + 1 - k = -S(t_k), small.
            d = theta(r) / math.pi + 1.0 - len(roots)
            drift_lo, drift_hi = min(drift_lo, d), max(drift_hi, d)
            if abs(d) > 2.5:
                sys.exit(f"count drift {d:+.2f} at zero {len(roots)} (t={r:.6f}); "
                         "a root was likely missed or duplicated")
        t_lo = t_hi
        print(f"  {len(roots):>7d} zeros, t <= {roots[-1]:.3f}, "
              f"drift in [{drift_lo:+.2f}, {drift_hi:+.2f}], "
              f"{time.time() - t_start:.0f}s", flush=True)
    roots = np.array(roots[:args.count])

    if np.any(np.diff(roots) <= 0):
        sys.exit("output not strictly increasing")
    if args.spot_every > 0:
        n_checked, worst = validate_spots(roots, args.spot_every)
        print(f"  spot checks: {n_checked} indices vs mpmath, worst |err| = {worst:.2e}")

    with open(args.out, "w") as f:
        for r in roots:
            f.write(f"{r:.{args.decimals}f}\n")
    print(f"wrote {len(roots)} ordinates to {args.out} "
          f"({time.time() - t_start:.0f}s total)")


if __name__ == "__main__":
    main()
