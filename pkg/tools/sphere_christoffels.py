#!/usr/bin/env python3
"""Independent Christoffel oracle for the round unit sphere.

Computes Gamma^i_{jk} directly from the metric g = diag(1, sin^2 x1) by
central finite differences of the metric components, with no reference to
any closed-form symbol table:

    Gamma^i_{jk} = 1/2 g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk})

Used by the test suite as a ground truth for the Levi-Civita fixture; run
directly it prints the symbols on a small grid.
"""

import numpy as np


def metric(x):
    theta = x[0]
    return np.diag([1.0, np.sin(theta) ** 2])


def christoffels(x, h=1e-6):
    """Gamma[i][j][k] at the point x = (theta, phi), by differentiating the
    metric numerically."""
    x = np.asarray(x, dtype=float)
    d = len(x)
    g = metric(x)
    g_inv = np.linalg.inv(g)
    dg = np.empty((d, d, d))  # dg[l] = d_l g
    for l in range(d):
        step = np.zeros(d)
        step[l] = h
        dg[l] = (metric(x + step) - metric(x - step)) / (2.0 * h)
    gamma = np.empty((d, d, d))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                gamma[i, j, k] = 0.5 * sum(
                    g_inv[i, l] * (dg[j][l, k] + dg[k][l, j] - dg[l][j, k])
                    for l in range(d))
    return gamma


def main():
    for theta in np.linspace(0.3, 1.8, 6):
        gamma = christoffels([theta, 0.0])
        print(f"theta = {theta:.3f}")
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    if abs(gamma[i, j, k]) > 1e-12:
                        print(f"  Gamma^{i+1}_{{{j+1}{k+1}}} = "
                              f"{gamma[i, j, k]: .10f}")


if __name__ == "__main__":
    main()
