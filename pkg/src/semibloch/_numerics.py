"""Grid partitioning and deterministic reductions shared by the scanners.

Every grid is cut into fixed blocks of ``BLOCK`` points, independent of the
worker count, so each element is computed by the same numpy call whatever
the parallelism.  Sums go through :func:`math.fsum` (correctly rounded, hence
order independent); maxima are order independent anyway.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

BLOCK = 8192


def block_slices(n: int, block: int = BLOCK) -> list[slice]:
    return [slice(i, min(i + block, n)) for i in range(0, n, block)]


def block_map(func: Callable[[slice], object], n: int, workers: int = 1,
              block: int = BLOCK) -> list:
    """Apply ``func`` to each fixed block of ``range(n)``; results in block order."""
    slices = block_slices(n, block)
    if workers <= 1 or len(slices) <= 1:
        return [func(s) for s in slices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, slices))


def exact_sum(parts: Sequence[np.ndarray]) -> complex:
    """Correctly rounded sum of the concatenated (possibly complex) arrays."""
    arr = np.concatenate([np.ravel(p) for p in parts]) if parts else np.zeros(0)
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real), math.fsum(arr.imag))
    return math.fsum(arr)


def simpson_weights(n_panels: int, h: float) -> np.ndarray:
    """Composite Simpson weights on ``2*n_panels + 1`` nodes spaced ``h``."""
    w = np.ones(2 * n_panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def gauss_legendre(a: float, b: float, panels: int, order: int = 16):
    """Nodes and weights of composite Gauss-Legendre on ``[a, b]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
