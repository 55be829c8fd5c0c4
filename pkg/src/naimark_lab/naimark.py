"""Naimark extensions of rank-1 POVMs.

An extension is an orthonormal basis {|w_nu>} of the de-dimensional
system (x) ancilla space, stored as a (de, de) matrix with one basis vector
per row, components ordered ancilla-major (entry i*d + j multiplies
|system j>|ancilla i>). The canonical form fixes the ancilla state to
basis vector 0 and requires block 0 of row nu to equal k_nu for nu <= m
and to vanish for nu > m. Measuring the basis with the ancilla prepared
in state 0 then reproduces the POVM, and rows nu > m never fire.

The completion freedom, a (de-d)-dimensional unitary acting on the
completion columns, is exactly the search space of the cost optimizer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    binary_entropy,
    gram_schmidt_complete,
    hermitian_eigensystem,
    partial_trace,
    von_neumann_entropy,
)
from .povm import ZERO_NORM_SQ, OutcomeDistribution, Povm

# forgiving orthonormality gate for internal completions; POVM validity at
# the standard 1e-9 must not be rejected here
_COMPLETE_TOL = 1e-7


@dataclass(frozen=True)
class NaimarkExtension:
    d: int
    e: int
    m: int
    basis: np.ndarray  # (de, de), row nu = |w_nu>
    ancilla_state_index: int = 0

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        de = self.d * self.e
        if b.shape != (de, de):
            raise ValueError(f"basis must be {de} x {de}")
        if self.ancilla_state_index != 0:
            raise ValueError("canonical frame requires ancilla state index 0")
        object.__setattr__(self, "basis", b)


@dataclass(frozen=True)
class ExtensionCostBreakdown:
    per_outcome_entanglement: np.ndarray  # E_nu in ebits, nu <= m
    weights: OutcomeDistribution
    total: float


@dataclass(frozen=True)
class ExtensionReport:
    ok: bool
    unitarity_residual: float
    form_residual: float


def _default_block_basis(P: Povm, e: int) -> np.ndarray:
    """de x de unitary whose first d columns are the zero-padded element rows."""
    de = P.d * e
    if de < P.m:
        raise ValueError(f"capacity d*e = {de} < m = {P.m}")
    block = np.zeros((de, P.d), dtype=complex)
    block[: P.m] = P.matrix
    return gram_schmidt_complete(block, tol=_COMPLETE_TOL)


def construct_default(P: Povm, e: int) -> NaimarkExtension:
    """Zero-pad the element rows to de and complete deterministically."""
    L = _default_block_basis(P, e)
    return NaimarkExtension(d=P.d, e=e, m=P.m, basis=L)


def construct_completion(P: Povm, e: int, V: np.ndarray) -> NaimarkExtension:
    """Extension with completion columns C replaced by C V, V in U(de-d).

    Sweeping V over the unitary group reaches every extension with this
    (d, e) up to physically irrelevant row phases.
    """
    V = np.asarray(V, dtype=complex)
    n = P.d * e - P.d
    if V.shape != (n, n):
        raise ValueError(f"V must be {n} x {n}")
    if n > 0 and np.abs(V.conj().T @ V - np.eye(n)).max() > 1e-10:
        raise ValueError("V is not unitary within 1e-10")
    L = _default_block_basis(P, e)
    return NaimarkExtension(d=P.d, e=e, m=P.m, basis=_apply_completion(L, P.d, V))


def _apply_completion(L: np.ndarray, d: int, V: np.ndarray) -> np.ndarray:
    out = L.copy()
    out[:, d:] = L[:, d:] @ V
    return out


def validate_extension(N: NaimarkExtension, P: Povm, tol: float = 1e-9) -> ExtensionReport:
    """Check unitarity and the canonical form against P.

    Block 0 of row nu must match k_nu up to a global phase for nu <= m and
    vanish for nu > m; the reported form residual is the worst row.
    """
    if N.d != P.d or N.m != P.m:
        raise ValueError("extension and POVM dimensions are inconsistent")
    B = N.basis
    de = N.d * N.e
    unit = float(np.abs(B @ B.conj().T - np.eye(de)).max())
    form = 0.0
    for nu in range(de):
        v0 = B[nu, : N.d]
        if nu < N.m:
            k = P.matrix[nu]
            # distance minimized over a global phase on the row
            ip = np.vdot(k, v0)
            phase = ip / abs(ip) if abs(ip) > ZERO_NORM_SQ else 1.0
            form = max(form, float(np.linalg.norm(v0 - phase * k)))
        else:
            form = max(form, float(np.linalg.norm(v0)))
    return ExtensionReport(ok=unit <= tol and form <= tol, unitarity_residual=unit, form_residual=form)


def extension_cost(N: NaimarkExtension, weights: OutcomeDistribution) -> ExtensionCostBreakdown:
    """Weighted entanglement of the extension: E = sum_nu w_nu E_nu over nu <= m.

    E_nu is the base-2 entropy of the reduced state of row nu; rows past m
    never fire and carry no cost.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.size != N.m:
        raise ValueError("need one weight per POVM outcome")
    ent = np.empty(N.m)
    for nu in range(N.m):
        rho = partial_trace(N.basis[nu], N.d, N.e, keep="system")
        ent[nu] = von_neumann_entropy(rho)
    return ExtensionCostBreakdown(
        per_outcome_entanglement=ent, weights=weights, total=float(ent @ weights)
    )


def marginal_povms(N: NaimarkExtension) -> list[Povm]:
    """Ancilla slice i -> the POVM {|v^i_nu>}_nu, zero-norm members dropped."""
    out = []
    for i in range(N.e):
        block = N.basis[:, i * N.d : (i + 1) * N.d]
        norms2 = np.einsum("ij,ij->i", block.conj(), block).real
        out.append(Povm(block[norms2 >= ZERO_NORM_SQ]))
    return out


def _complete_rows(W: np.ndarray) -> np.ndarray:
    """Complete orthonormal rows W (m x n) to an n x n unitary, rows first."""
    U = gram_schmidt_complete(W.conj().T, tol=_COMPLETE_TOL)
    return U.conj().T


def _check_zeta(P: Povm, zeta: np.ndarray) -> np.ndarray:
    zeta = np.asarray(zeta, dtype=complex).ravel()
    if zeta.size != P.d:
        raise ValueError("zeta has the wrong dimension")
    if abs(np.vdot(zeta, zeta).real - 1) > 1e-10:
        raise ValueError("zeta must be normalized")
    return zeta


def _prop5_predicted(P: Povm, zeta: np.ndarray) -> float:
    """Closed-form cost of the one-extra-direction extension on zeta."""
    zeta = _check_zeta(P, zeta)
    M = P.matrix
    d = P.d
    norms2 = np.einsum("ij,ij->i", M.conj(), M).real
    predicted = 0.0
    for mu in range(P.m):
        r2 = norms2[mu]
        if r2 < ZERO_NORM_SQ:
            continue
        t = abs(np.vdot(zeta, M[mu] / np.sqrt(r2))) ** 2
        alpha = 1 - 2 * r2
        arg = alpha**2 + (1 - alpha**2) * t
        predicted += (r2 / d) * binary_entropy(0.5 - 0.5 * np.sqrt(arg))
    return float(predicted)


def prop5_extension(P: Povm, zeta: np.ndarray) -> tuple[NaimarkExtension, float]:
    """One-extra-direction extension |w_nu> = |k_nu>|a_0> + |zeta>|xi_nu>.

    The xi_nu live in the ancilla directions 1..m and reproduce the Gram
    deficit delta_ab - <k_a|k_b>; zeta is any unit system vector. Returns
    the extension (ancilla dimension m+1) together with its closed-form
    cost, which the measured extension_cost matches to ~1e-9.
    """
    zeta = _check_zeta(P, zeta)
    M = P.matrix
    m, d = P.m, P.d
    e = m + 1
    de = d * e

    # Gram target: <xi_a|xi_b> = delta_ab - <k_a|k_b>; conjugation puts the
    # POVM Gram into position, since (M M^dag)[a,b] = <k_b|k_a>.
    K = np.eye(m) - np.conj(M @ M.conj().T)
    lam, V = hermitian_eigensystem(K)
    keep = lam >= 1e-12
    X = (np.sqrt(lam[keep])[:, None]) * V[:, keep].conj().T  # (r, m), col nu = xi_nu

    W = np.zeros((m, de), dtype=complex)
    W[:, :d] = M
    for i in range(X.shape[0]):
        W[:, (i + 1) * d : (i + 2) * d] = np.outer(X[i], zeta)
    basis = _complete_rows(W)
    return NaimarkExtension(d=d, e=e, m=m, basis=basis), _prop5_predicted(P, zeta)


def rotate_ancilla(N: NaimarkExtension, R: np.ndarray) -> NaimarkExtension:
    """Apply the ancilla unitary R to every basis vector.

    Entanglements are unchanged; the canonical form survives only when
    R fixes ancilla basis vector 0 up to phase. Callers validating an
    external extension whose fixed ancilla state is some |a0> != basis
    vector 0 should pass an R mapping |a0> to basis vector 0.
    """
    R = np.asarray(R, dtype=complex)
    if R.shape != (N.e, N.e):
        raise ValueError("R must act on the ancilla space")
    if np.abs(R.conj().T @ R - np.eye(N.e)).max() > 1e-10:
        raise ValueError("R is not unitary within 1e-10")
    de = N.d * N.e
    rows = np.empty((de, de), dtype=complex)
    for nu in range(de):
        rows[nu] = (R @ N.basis[nu].reshape(N.e, N.d)).ravel()
    return NaimarkExtension(d=N.d, e=N.e, m=N.m, basis=rows)


def compress_ancilla(N: NaimarkExtension) -> NaimarkExtension:
    """Shrink the ancilla to the support actually used by the first m rows.

    The m firing rows occupy at most m*d ancilla dimensions, and for a
    valid canonical extension ancilla vector 0 lies inside that support.
    Rotating the support to the leading coordinates (keeping vector 0
    fixed) and truncating preserves every per-outcome entanglement.
    """
    d, e, m = N.d, N.e, N.m
    candidates = [np.eye(e, dtype=complex)[:, 0]]
    for nu in range(m):
        A = N.basis[nu].reshape(e, d)
        candidates.extend(A[:, j] for j in range(d))
    span: list[np.ndarray] = []
    for c in candidates:
        v = c.astype(complex)
        for b in span:
            v = v - b * (b.conj() @ v)
        nrm = np.linalg.norm(v)
        if nrm < 1e-8:
            continue
        v = v / nrm
        for b in span:
            v = v - b * (b.conj() @ v)
        span.append(v / np.linalg.norm(v))
    Q = np.array(span).T  # (e, r), column 0 = ancilla vector 0
    r = Q.shape[1]
    e_new = r
    W = np.empty((m, d * e_new), dtype=complex)
    for nu in range(m):
        A = N.basis[nu].reshape(e, d)
        W[nu] = (Q.conj().T @ A).ravel()
    return NaimarkExtension(d=d, e=e_new, m=m, basis=_complete_rows(W))
