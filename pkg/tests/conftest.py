"""Shared constructions for the test suite."""

import numpy as np

from naimark_lab import Povm, convex_combine, post_process

# frozen reference values, computed independently of the library
TRINE_EXACT = 0.49600503416600095  # (2/3) H((1 - 1/sqrt(3))/2)
E_AT_PI_3 = 0.5218506219142366  # (2 f(1/2) + f(-1)) / 3
LOG2_3_MINUS_1 = 0.5849625007211562


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def kpom() -> Povm:
    """Four-outcome qubit POVM: both computational and Hadamard bases at half weight."""
    s = 1 / np.sqrt(2)
    return Povm(np.array([[1, 0], [0, 1], [s, s], [s, -s]], dtype=complex) * s)


def n_d3() -> Povm:
    """Five-outcome zero-cost POVM in d = 3 that is not a basis mixture."""
    s = 1 / np.sqrt(2)
    return Povm(
        np.array(
            [
                [1, 0, 0],
                [0, s, 0],
                [0, 0, s],
                [0, 0.5, 0.5],
                [0, 0.5, -0.5],
            ],
            dtype=complex,
        )
    )


def n_d3_unmerged() -> Povm:
    """The six-element parent of n_d3: mixture of two von Neumann bases in d = 3."""
    s = 1 / np.sqrt(2)
    return Povm(
        np.array(
            [
                [s, 0, 0],
                [0, s, 0],
                [0, 0, s],
                [s, 0, 0],
                [0, 0.5, 0.5],
                [0, 0.5, -0.5],
            ],
            dtype=complex,
        )
    )


def two_basis_mixture(seed: int) -> Povm:
    """Random mixture p U0 + (1-p) U1 of two Haar qubit bases (m = 4)."""
    rng = np.random.default_rng(seed)
    U0 = haar_unitary(2, rng)
    U1 = haar_unitary(2, rng)
    p = float(rng.uniform(0.15, 0.85))
    return convex_combine(Povm(U0.conj()), Povm(U1.conj()), p)


def random_split(P: Povm, seed: int, max_parts: int = 2) -> Povm:
    """Post-process P with a random per-outcome classical refinement."""
    rng = np.random.default_rng(seed)
    splits = []
    for _ in range(P.m):
        parts = int(rng.integers(1, max_parts + 1))
        w = rng.uniform(0.2, 1.0, parts)
        splits.append(list(w / w.sum()))
    return post_process(P, splits)
