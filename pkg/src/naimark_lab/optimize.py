"""Minimization of extension cost over the unitary completion freedom.

The search space for ancilla dimension e is U(de - d), parameterized
surjectively as V = exp(S) with S skew-Hermitian, (de - d)^2 real
parameters. Multi-restart local search: restart 0 always starts at the
default completion (params = 0), later restarts at seeded Gaussian points.
Results are upper estimates of the true minimum; the problem is not convex
and no global certificate is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .linalg import unitary_from_skew, von_neumann_entropy
from .naimark import (
    ExtensionCostBreakdown,
    NaimarkExtension,
    _apply_completion,
    _default_block_basis,
    extension_cost,
)
from .povm import Povm, canonical_distribution

# Nelder-Mead handles small parameter counts well; beyond this the simplex
# is too slow to shrink and finite-difference descent takes over.
_NM_PARAM_LIMIT = 36


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_iters: int = 2000
    objective_tol: float = 1e-8
    step_tol: float = 1e-10
    seed: int = 0
    method: str | None = None  # nelder_mead | finite_diff_gradient_descent | None=auto

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("counts must be positive")
        if self.objective_tol <= 0 or self.step_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.method not in (None, "nelder_mead", "finite_diff_gradient_descent"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class CostReport:
    e_used: int
    best_cost: float
    best_extension: NaimarkExtension
    breakdown: ExtensionCostBreakdown
    restarts_run: int
    converged: bool
    history: list = field(default_factory=list)  # per-restart final values


def _skew_from_params(params: np.ndarray, n: int) -> np.ndarray:
    S = np.zeros((n, n), dtype=complex)
    S[np.diag_indices(n)] = 1j * params[:n]
    idx = n
    for j in range(n):
        for k in range(j + 1, n):
            a, b = params[idx], params[idx + 1]
            idx += 2
            S[j, k] = a + 1j * b
            S[k, j] = -a + 1j * b
    return S


def _cost_of_basis(basis: np.ndarray, d: int, e: int, m: int, weights: np.ndarray) -> float:
    ent = np.empty(m)
    for nu in range(m):
        A = basis[nu].reshape(e, d)
        ent[nu] = von_neumann_entropy(A.T @ A.conj())
    return float(ent @ weights)


def _objective_impl(L0, d, e, m, weights, params) -> float:
    n = d * e - d
    if params.size != n * n:
        raise ValueError(f"expected {n * n} parameters, got {params.size}")
    if n == 0:
        return _cost_of_basis(L0, d, e, m, weights)
    V = unitary_from_skew(_skew_from_params(params, n))
    return _cost_of_basis(_apply_completion(L0, d, V), d, e, m, weights)


def objective(P: Povm, e: int, params: np.ndarray) -> float:
    """Extension cost at completion exp(skew(params)), canonical weights."""
    params = np.asarray(params, dtype=float).ravel()
    L0 = _default_block_basis(P, e)
    return _objective_impl(L0, P.d, e, P.m, canonical_distribution(P), params)


def _descend_finite_diff(fun, x0, max_iters, objective_tol, step_tol):
    """Gradient descent on a finite-difference gradient with backtracking."""
    h = 1e-5
    x = x0.copy()
    f = fun(x)
    converged = False
    for _ in range(max_iters):
        grad = np.empty_like(x)
        for i in range(x.size):
            xp = x.copy()
            xm = x.copy()
            xp[i] += h
            xm[i] -= h
            grad[i] = (fun(xp) - fun(xm)) / (2 * h)
        gnorm = np.linalg.norm(grad)
        if gnorm == 0:
            converged = True
            break
        step = 1.0
        improved = False
        while step * gnorm > step_tol:
            x_new = x - step * grad
            f_new = fun(x_new)
            if f_new <= f - 1e-4 * step * gnorm**2:
                improved = True
                break
            step *= 0.5
        if not improved:
            converged = True  # no descent direction at resolution step_tol
            break
        if f - f_new < objective_tol:
            x, f = x_new, f_new
            converged = True
            break
        x, f = x_new, f_new
    return x, f, converged


def minimize(P: Povm, e: int, cfg: OptimizerConfig = OptimizerConfig()) -> CostReport:
    """Multi-restart minimization of extension cost at fixed ancilla dimension.

    Restart r >= 1 draws its starting parameters from a generator seeded
    with cfg.seed + r; ties between restarts resolve to the lowest index,
    so serial and concurrent execution agree bit for bit.
    """
    weights = canonical_distribution(P)
    L0 = _default_block_basis(P, e)  # raises on capacity d*e < m
    d, m = P.d, P.m
    n = d * e - d
    npar = n * n

    def fun(x: np.ndarray) -> float:
        return _objective_impl(L0, d, e, m, weights, x)

    method = cfg.method or (
        "nelder_mead" if npar <= _NM_PARAM_LIMIT else "finite_diff_gradient_descent"
    )

    if npar == 0:
        f0 = fun(np.empty(0))
        history = [f0]
        best_x = np.empty(0)
        best_f, converged, restarts_run = f0, True, 1
    else:
        best_f, best_x, converged = np.inf, None, False
        history = []
        for r in range(cfg.restarts):
            if r == 0:
                x0 = np.zeros(npar)
            else:
                rng = np.random.default_rng(cfg.seed + r)
                x0 = 0.5 * rng.standard_normal(npar)
            if method == "nelder_mead":
                res = scipy.optimize.minimize(
                    fun,
                    x0,
                    method="Nelder-Mead",
                    options=dict(
                        maxiter=cfg.max_iters,
                        fatol=cfg.objective_tol,
                        xatol=cfg.step_tol,
                    ),
                )
                xr, fr, okr = res.x, float(res.fun), bool(res.success)
            else:
                xr, fr, okr = _descend_finite_diff(
                    fun, x0, cfg.max_iters, cfg.objective_tol, cfg.step_tol
                )
            history.append(fr)
            if fr < best_f:
                best_f, best_x, converged = fr, xr, okr
        restarts_run = cfg.restarts

    if n == 0:
        basis = L0
    else:
        V = unitary_from_skew(_skew_from_params(np.asarray(best_x, dtype=float), n))
        basis = _apply_completion(L0, d, V)
    ext = NaimarkExtension(d=d, e=e, m=m, basis=basis)
    breakdown = extension_cost(ext, weights)
    return CostReport(
        e_used=e,
        best_cost=breakdown.total,
        best_extension=ext,
        breakdown=breakdown,
        restarts_run=restarts_run,
        converged=converged,
        history=history,
    )


def minimize_over_e(
    P: Povm,
    e_min: int | None = None,
    e_max: int | None = None,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> CostReport:
    """Sweep the ancilla dimension and keep the cheapest report.

    Defaults cover ceil(m/d) (smallest capacity) through m + 1 (where a
    one-extra-direction extension always exists); e_max may be raised to
    m*d, beyond which larger ancillas provably cannot help.
    """
    d, m = P.d, P.m
    lo = int(np.ceil(m / d))
    if e_min is None:
        e_min = lo
    if e_max is None:
        e_max = m + 1
    if e_min < lo:
        raise ValueError(f"e_min must be >= ceil(m/d) = {lo}")
    if e_max > m * d:
        raise ValueError(f"e_max must be <= m*d = {m * d}")
    if e_min > e_max:
        raise ValueError("empty ancilla range")
    best = None
    for e in range(e_min, e_max + 1):
        rep = minimize(P, e, cfg)
        if best is None or rep.best_cost < best.best_cost:
            best = rep
    return best


def normalized_cost(report: CostReport, d: int) -> float:
    """Cost per qubit of system space: best_cost / log2(d)."""
    if d < 2:
        raise ValueError("normalized cost needs d >= 2")
    return report.best_cost / np.log2(d)
