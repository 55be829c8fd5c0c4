"""Closed-form cost bounds and zero-cost certification.

Upper bounds: 1 - 1/m from the element count, H((1 - 1/sqrt(d))/2) from the
dimension, and the one-extra-direction family swept over probe vectors zeta.
Zero-cost side: the operator-inequality necessary condition for general d,
and the complete d = 2 decision (merge parallel elements, then look for a
perfect pairing into orthogonal equal-weight partners).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import binary_entropy
from .povm import ZERO_NORM_SQ, Povm, merge_parallel
from .naimark import _prop5_predicted


@dataclass(frozen=True)
class ZeroCostCertificate:
    decision: str  # zero | nonzero | inconclusive
    per_element_margins: np.ndarray
    pairing: list[tuple[int, int]] | None = None


@dataclass(frozen=True)
class BoundReport:
    value: float
    witness: str
    bound_element_count: float
    bound_dimension: float
    bound_zeta_best: float


def bound_element_count(P: Povm) -> float:
    """Any m-outcome POVM costs at most 1 - 1/m ebits."""
    return 1 - 1 / P.m


def bound_dimension(d: int) -> float:
    """Any POVM in dimension d costs at most H((1 - 1/sqrt(d))/2) ebits."""
    if d < 2:
        raise ValueError("dimension bound needs d >= 2")
    return binary_entropy((1 - 1 / np.sqrt(d)) / 2)


def bound_prop5(P: Povm, zeta: np.ndarray) -> float:
    """Cost of the one-extra-direction extension built on probe vector zeta.

    sum_mu (r_mu^2/d) H(1/2 - sqrt(a^2 + (1 - a^2) |<zeta|k_mu_hat>|^2)/2)
    with a = 1 - 2 r_mu^2. An upper bound on the minimal cost for any unit
    zeta; zeta parallel to an element kills that element's term.
    """
    return _prop5_predicted(P, zeta)


def best_bound(P: Povm, zeta_samples: int = 16, seed: int = 0) -> BoundReport:
    """Smallest available upper bound with the name of its achiever.

    Probes the one-extra-direction bound at every element direction and at
    zeta_samples Haar-random unit vectors (seeded); ties keep the earliest
    candidate in evaluation order.
    """
    candidates: list[tuple[str, float]] = [
        ("element_count", bound_element_count(P)),
        ("dimension", bound_dimension(P.d)),
    ]
    norms2 = np.einsum("ij,ij->i", P.matrix.conj(), P.matrix).real
    for mu in range(P.m):
        if norms2[mu] < ZERO_NORM_SQ:
            continue
        zeta = P.matrix[mu] / np.sqrt(norms2[mu])
        candidates.append((f"zeta=element_{mu + 1}", bound_prop5(P, zeta)))
    rng = np.random.default_rng(seed)
    for t in range(zeta_samples):
        z = rng.standard_normal(P.d) + 1j * rng.standard_normal(P.d)
        z /= np.linalg.norm(z)
        candidates.append((f"zeta=sample_{t + 1}", bound_prop5(P, z)))
    witness, value = min(candidates, key=lambda c: c[1])
    # min() already keeps the earliest on exact ties
    zeta_best = min(v for name, v in candidates if name.startswith("zeta="))
    return BoundReport(
        value=value,
        witness=witness,
        bound_element_count=candidates[0][1],
        bound_dimension=candidates[1][1],
        bound_zeta_best=zeta_best,
    )


def _necessary_margins(P: Povm, tol: float) -> np.ndarray:
    """Min eigenvalue of [|k_mu><k_mu| + sum of orthogonal partners] - r_mu^2 I."""
    M = P.matrix
    norms = np.linalg.norm(M, axis=1)
    margins = np.empty(P.m)
    for mu in range(P.m):
        lhs = np.outer(M[mu], M[mu].conj())
        for nu in range(P.m):
            if nu == mu:
                continue
            if abs(np.vdot(M[mu], M[nu])) <= tol * norms[mu] * norms[nu]:
                lhs = lhs + np.outer(M[nu], M[nu].conj())
        lhs -= norms[mu] ** 2 * np.eye(P.d)
        margins[mu] = np.linalg.eigvalsh(lhs).min()
    return margins


def zero_cost_necessary(P: Povm, tol: float = 1e-9) -> ZeroCostCertificate:
    """Operator-inequality necessary condition for zero cost.

    A zero-cost POVM must satisfy, for every mu,
    |k_mu><k_mu| + sum_{nu orthogonal to mu} |k_nu><k_nu| >= <k_mu|k_mu> I.
    A margin below -tol proves nonzero cost; otherwise the certificate is
    inconclusive (the condition is necessary, never sufficient).
    """
    margins = _necessary_margins(P, tol)
    decision = "nonzero" if margins.min() < -tol else "inconclusive"
    return ZeroCostCertificate(decision=decision, per_element_margins=margins)


def _find_pairing(compat: np.ndarray) -> list[tuple[int, int]] | None:
    """Exact perfect matching by backtracking, lowest indices first."""
    m = compat.shape[0]
    if m % 2:
        return None
    used = [False] * m
    pairs: list[tuple[int, int]] = []

    def rec() -> bool:
        try:
            i = used.index(False)
        except ValueError:
            return True
        used[i] = True
        for j in range(i + 1, m):
            if not used[j] and compat[i, j]:
                used[j] = True
                pairs.append((i, j))
                if rec():
                    return True
                pairs.pop()
                used[j] = False
        used[i] = False
        return False

    return pairs if rec() else None


def zero_cost_decide_d2(P: Povm, tol: float = 1e-9) -> ZeroCostCertificate:
    """Complete zero-cost decision for qubit POVMs.

    After merging parallel elements, the POVM has zero cost exactly when
    its elements admit a perfect pairing into orthogonal partners of equal
    squared norm. Margins and pairing indices refer to the merged POVM.
    """
    if P.d != 2:
        raise ValueError("this decision procedure is specific to d = 2")
    merged = merge_parallel(P, tol)
    if merged.m > 20:
        raise ValueError("brute-force pairing is capped at 20 merged elements")
    margins = _necessary_margins(merged, tol)
    M = merged.matrix
    norms2 = np.einsum("ij,ij->i", M.conj(), M).real
    m = merged.m
    compat = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            orth = abs(np.vdot(M[i], M[j])) / np.sqrt(norms2[i] * norms2[j]) <= tol
            equal = abs(norms2[i] - norms2[j]) <= tol
            compat[i, j] = compat[j, i] = orth and equal
    pairing = _find_pairing(compat)
    if pairing is not None:
        return ZeroCostCertificate(
            decision="zero", per_element_margins=margins, pairing=pairing
        )
    return ZeroCostCertificate(decision="nonzero", per_element_margins=margins)


def asymptotic_bound_curve(P: Povm, n_max: int) -> list[tuple[int, float]]:
    """Per-copy cost bound for n parallel uses: H((1 - d^(-n/2))/2) / n.

    Strictly decreasing in n and tending to zero, which is the sense in
    which the asymptotic entanglement cost of any POVM vanishes.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    d = P.d
    return [
        (n, binary_entropy((1 - d ** (-n / 2)) / 2) / n) for n in range(1, n_max + 1)
    ]
