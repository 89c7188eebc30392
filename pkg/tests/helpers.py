"""Shared helpers for the test suite."""

import numpy as np

from convfem import Mesh


def random_palindromic_mesh(rng, n):
    """Mesh with exactly mirrored random element lengths (n elements).

    Lengths are random multiples of 1/64, so every node coordinate and every
    recomputed element length is exact in binary floating point; the mirror
    symmetry of the lengths then holds bitwise, not just approximately.
    """
    half = (n + 1) // 2
    lengths = rng.integers(4, 65, size=half) / 64.0
    mirrored = np.concatenate([lengths, lengths[: n - half][::-1]])
    assert mirrored.size == n and np.array_equal(mirrored, mirrored[::-1])
    nodes = np.concatenate([[0.0], np.cumsum(mirrored)])
    mesh = Mesh(nodes)
    assert np.array_equal(mesh.element_lengths, mirrored)
    return mesh


def gauss_integral(func, a, b, panels=8, points=12):
    """Plain composite Gauss integration, independent of the package path."""
    x, w = np.polynomial.legendre.leggauss(points)
    total = 0.0
    edges = np.linspace(a, b, panels + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = (lo + hi) / 2.0
        half = (hi - lo) / 2.0
        total += half * sum(wq * func(mid + half * xq) for xq, wq in zip(x, w))
    return total


def global_hat(mesh, i):
    """Global hat function of node i (1-based) as a scalar callable."""
    nodes = mesh.nodes
    left = nodes[i - 2] if i >= 2 else None
    center = nodes[i - 1]
    right = nodes[i] if i <= mesh.n else None

    def hat(s):
        if left is not None and left <= s <= center:
            return (s - left) / (center - left)
        if right is not None and center <= s <= right:
            return (right - s) / (right - center)
        return 0.0

    return hat


def global_hat_derivative(mesh, i):
    """Derivative of the hat of node i; arbitrary value at the kinks."""
    nodes = mesh.nodes
    left = nodes[i - 2] if i >= 2 else None
    center = nodes[i - 1]
    right = nodes[i] if i <= mesh.n else None

    def slope(s):
        if left is not None and left < s < center:
            return 1.0 / (center - left)
        if right is not None and center < s < right:
            return -1.0 / (right - center)
        return 0.0

    return slope
