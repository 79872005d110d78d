#!/usr/bin/env python3
"""Reference values frozen into the C++ tests.

Computed independently of the library: AHF values in 40-digit arithmetic,
resampling as an explicit 2-D weighted sum, and the fixture RMSE with a
scalar loop. Re-run after changing a convention and paste the output into
the matching test.
"""
import math

import mpmath
import numpy as np
from PIL import Image

mpmath.mp.dps = 40


def ahf(x, xi):
    return mpmath.mpf(1) / 2 + mpmath.atan(mpmath.mpf(x) / mpmath.mpf(xi)) / mpmath.pi


def keys(x, a=-0.5):
    x = abs(x)
    if x <= 1:
        return (a + 2) * x**3 - (a + 3) * x**2 + 1
    if x < 2:
        return a * x**3 - 5 * a * x**2 + 8 * a * x - 4 * a
    return 0.0


def weights_1d(src, dst):
    """Dense dst x src weight matrix, center-aligned, replicate border."""
    scale = dst / src
    shrink = scale < 1
    w = np.zeros((dst, src))
    for i in range(dst):
        u = (i + 0.5) / scale - 0.5
        row = {}
        for j in range(math.floor(u) - 20, math.floor(u) + 21):
            d = u - j
            k = scale * keys(scale * d) if shrink else keys(d)
            if k != 0:
                jj = min(max(j, 0), src - 1)
                row[jj] = row.get(jj, 0.0) + k
        total = sum(row.values())
        for jj, k in row.items():
            w[i, jj] = k / total
    return w


def resize_2d(img, rows, cols):
    wr = weights_1d(img.shape[0], rows)
    wc = weights_1d(img.shape[1], cols)
    out = np.zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            acc = 0.0
            for p in range(img.shape[0]):
                for q in range(img.shape[1]):
                    acc += wr[i, p] * wc[j, q] * img[p, q]
            out[i, j] = acc
    return out


def dictionary(xi, rows, cols, k=12, q=36):
    d = np.zeros((rows * cols, k * q))
    for t in range(k):
        th = 2 * math.pi * t / k
        for j in range(q):
            for r in range(rows):
                for c in range(cols):
                    z = math.cos(th) * (r + 1) / rows + math.sin(th) * (c + 1) / cols + (j + 1) / q
                    d[r * cols + c, t * q + j] = 0.5 + math.atan(z / xi) / math.pi
    return d


def patch_residuals(patch, s=2, tau=3, lam1=1e-2, lam2=1e-6, rho=1e-4, iters=100, tol=1e-6):
    n = patch.shape[0]
    p1, p2 = dictionary(0.1, n, n), dictionary(1e-4, n, n)
    f1, f2 = dictionary(0.1, s * n, s * n), dictionary(1e-4, s * n, s * n)
    m = p1.shape[1]
    psi = np.hstack([p1, p2])
    K = psi.T @ psi
    K[:m, :m] += lam1 * np.eye(m)
    K[m:, m:] += rho / 2 * np.eye(m)
    chol = np.linalg.cholesky(K)
    wd = weights_1d(s * n, n)
    L = patch.reshape(-1).copy()
    norms = []
    for _ in range(tau):
        norms.append(np.linalg.norm(L))
        u = np.zeros(m)
        b = np.zeros(m)
        for _ in range(iters):
            rhs = psi.T @ L
            rhs[m:] += rho / 2 * (u + b)
            beta = np.linalg.solve(chol.T, np.linalg.solve(chol, rhs))
            v = beta[m:] - b
            u = np.sign(v) * np.maximum(np.abs(v) - lam2 / rho, 0)
            b = b + u - beta[m:]
            if np.linalg.norm(u - beta[m:]) <= tol * math.sqrt(m):
                break
        h = (f1 @ beta[:m] + f2 @ beta[m:]).reshape(s * n, s * n)
        L = L - (wd @ h @ wd.T).reshape(-1)
    return norms


def main():
    print("ahf(1, 0.1)       =", mpmath.nstr(ahf(1, "0.1"), 20))
    print("ahf(-0.05, 0.1)   =", mpmath.nstr(ahf("-0.05", "0.1"), 20))
    print("ahf(-1, 1e-4)     =", mpmath.nstr(ahf(-1, "1e-4"), 20))

    # Coarse smooth atom: 6x6 grid, pixel (2,4), angle 5 of 12, offset 10 of 36.
    th = 2 * mpmath.pi * 5 / 12
    z = mpmath.cos(th) * mpmath.mpf(3) / 6 + mpmath.sin(th) * mpmath.mpf(5) / 6 + mpmath.mpf(11) / 36
    print("psi1[2,4;5,10]    =", mpmath.nstr(ahf(z, "0.1"), 20))
    # Fine edge atom on the 12x12 one-based grid: pixel (7,3), angle 8, offset 20.
    th = 2 * mpmath.pi * 8 / 12
    z = mpmath.cos(th) * mpmath.mpf(8) / 12 + mpmath.sin(th) * mpmath.mpf(4) / 12 + mpmath.mpf(21) / 36
    print("psi2f[7,3;8,20]   =", mpmath.nstr(ahf(z, "1e-4"), 20))

    g = np.array([[math.exp(-(i * i + j * j) / 2.0) for j in range(-2, 3)] for i in range(-2, 3)])
    print("gauss center      = %.15f" % (g[2, 2] / g.sum()))
    print("gauss corner      = %.15f" % (g[0, 0] / g.sum()))

    ramp = np.array([[(4 * r + c) / 15.0 for c in range(4)] for r in range(4)])
    print("ramp 4->2         =", [["%.15f" % v for v in row] for row in resize_2d(ramp, 2, 2)])
    pat = np.array([[0.1, 0.9, 0.3], [0.7, 0.2, 0.5], [0.4, 0.8, 0.0]])
    up = resize_2d(pat, 6, 6)
    print("pat 3->6 (0,0)    = %.15f" % up[0, 0])
    print("pat 3->6 (2,3)    = %.15f" % up[2, 3])
    print("pat 3->6 (5,1)    = %.15f" % up[5, 1])

    step = np.array([[0.2 if c < 3 else 0.8 for c in range(6)] for _ in range(6)])
    print("step-edge residual norms =", ["%.12e" % v for v in patch_residuals(step)])

    gt = np.asarray(Image.open("tests/data/camera_64.png").convert("L"), dtype=float) / 255.0
    wr_d, wc_d = weights_1d(64, 32), weights_1d(64, 32)
    wr_u, wc_u = weights_1d(32, 64), weights_1d(32, 64)
    low = wr_d @ gt @ wc_d.T
    bic = wr_u @ low @ wc_u.T
    sq = 0.0
    for i in range(64):
        for j in range(64):
            sq += (bic[i, j] - gt[i, j]) ** 2
    print("camera_64 bicubic rmse*255 = %.10f" % (255 * math.sqrt(sq / 4096)))


if __name__ == "__main__":
    main()
