"""Least-squares inference of the reduced quadratic operator.

With a fixed linear reference model (A, B, C) of order r, the second and
third harmonic transfer functions are linear respectively quadratic in the
column-stacked vectorization v of the r-by-r^2 operator Q:

    H2(jw) = row2(jw) v,            row2 = g1^T kron g1^T kron j1(2jw)
    H3(jw) = v^T K(jw) v,           K as in ``h3_quadratic_form``

where g1(s) = (sE - A)^{-1} B and j1(s) = C (sE - A)^{-1}.  Stacking rows
over a frequency grid turns harmonic samples into (linearized)
least-squares problems; the coupled problem over both harmonics is solved
by a fixed-point iteration that freezes one factor of the quadratic form,
solves the stacked linear problem, and repeats until the iterate stops
moving.  All pseudo-inverses are SVD-truncated at a relative singular-value
threshold.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DegenerateLinearization, ZeroMatrix
from .systems import _resolvent_lu, eval_g1, output_functional

DEFAULT_MAX_ITER = 500


def vec_quadratic(Q):
    """Column-stack an r-by-r^2 operator into a vector of length r^3."""
    Q = np.asarray(Q)
    r = Q.shape[0]
    if Q.shape != (r, r * r):
        raise ValueError(f"expected shape (r, r^2), got {Q.shape}")
    return Q.T.reshape(-1).copy()


def unvec_quadratic(v, r=None):
    """Inverse of :func:`vec_quadratic`."""
    v = np.asarray(v).reshape(-1)
    if r is None:
        r = round(len(v) ** (1.0 / 3.0))
    if r ** 3 != len(v):
        raise ValueError(f"length {len(v)} is not a perfect cube")
    return v.reshape(r * r, r).T.copy()


@dataclass
class SolverConfig:
    """Tolerances of the coupled fixed-point solver.

    tau      -- absolute Euclidean tolerance on successive iterates
    epsilon  -- relative singular-value threshold of the pseudo-inverses
    max_iter -- iteration cap; exceeding it returns the best iterate
                with ``converged=False``
    """

    tau: float = 1e-10
    epsilon: float = 0.0
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("epsilon must lie in [0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass
class QuadraticFitResult:
    """Outcome of the coupled iteration (or of a one-step fit)."""

    v: np.ndarray
    Q: np.ndarray
    iterations: int
    deviation_trace: np.ndarray
    residual_h2: float
    residual_h3: float
    converged: bool


class HarmonicFormFactors:
    """Factored form of the third-harmonic quadratic form K(jw).

    K(jw) = 2 [ (g1 kron g1) kron Phi(2jw)^T ] kron g1^T kron j1(3jw)
    is never needed entrywise inside the iteration: a row v^T K costs only
    O(r^4) through the factors stored here.
    """

    def __init__(self, model_sys, omega):
        s = 1j * omega
        g1 = eval_g1(model_sys, s)
        r = model_sys.n
        # Phi(2s) as a matrix via an identity-RHS solve (r is small here).
        phi2 = sla.lu_solve(_resolvent_lu(model_sys, 2 * s),
                            np.eye(r, dtype=complex))
        self.left = np.kron(np.kron(g1, g1).reshape(-1, 1), phi2.T)  # (r^3, r)
        self.g1 = g1
        self.j3 = output_functional(model_sys, 3 * s)
        self.r = r

    def row(self, v):
        """Row vector v^T K(jw) without materializing K."""
        return 2.0 * np.kron(np.kron(v @ self.left, self.g1), self.j3)

    def full(self):
        """Materialize K(jw) as an (r^3, r^3) matrix."""
        return 2.0 * np.kron(np.kron(self.left, self.g1.reshape(1, -1)),
                             self.j3.reshape(1, -1))

    def quadratic_value(self, v):
        """Evaluate v^T K(jw) v."""
        return complex(self.row(v) @ v)


def h2_design_matrix(model_sys, omegas):
    """Rows g1^T kron g1^T kron j1(2jw) over the frequency grid.

    Depends only on the linear reference model; multiplying by the
    vectorized quadratic operator reproduces H2 at every grid point.
    """
    omegas = np.asarray(omegas, dtype=float).reshape(-1)
    r = model_sys.n
    T = np.empty((len(omegas), r ** 3), dtype=complex)
    for ell, w in enumerate(omegas):
        s = 1j * w
        g1 = eval_g1(model_sys, s)
        j1 = output_functional(model_sys, 2 * s)
        T[ell] = np.kron(np.kron(g1, g1), j1)
    return T


def h3_quadratic_form(model_sys, omega):
    """Materialized quadratic-form matrix K(jw) of the third harmonic."""
    return HarmonicFormFactors(model_sys, omega).full()


def h3_form_factors(model_sys, omegas):
    """Factored K(jw) per grid frequency, for row-wise assembly."""
    return [HarmonicFormFactors(model_sys, w)
            for w in np.asarray(omegas, dtype=float).reshape(-1)]


def _form_row(K, v):
    if isinstance(K, HarmonicFormFactors):
        return K.row(v)
    return v @ K


def _linearized_rows(Ks, v):
    return np.array([_form_row(K, v) for K in Ks])


def truncated_svd_solve(M, b, epsilon):
    """Minimum-norm least-squares solution keeping sigma_i/sigma_1 >= epsilon.

    Singular triplets below the relative threshold (and exact zeros) are
    excluded from the sum x = sum_i (u_i^* b / sigma_i) v_i.
    """
    M = np.asarray(M)
    b = np.asarray(b).reshape(-1)
    if M.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {M.shape} vs {b.shape}")
    U, sigma, Vh = np.linalg.svd(M, full_matrices=False)
    if sigma[0] == 0.0:
        raise ZeroMatrix("least-squares matrix is identically zero")
    keep = (sigma / sigma[0] >= epsilon) & (sigma > 0.0)
    coeffs = (U[:, keep].conj().T @ b) / sigma[keep]
    return Vh[keep].conj().T @ coeffs


def _split_real(M, b):
    return np.vstack([M.real, M.imag]), np.concatenate([b.real, b.imag])


def _ls_solve(M, b, epsilon, real_solution):
    if real_solution:
        M, b = _split_real(M, b)
    return truncated_svd_solve(M, b, epsilon)


def fit_h2_one_step(T2, V2, epsilon, real_solution=True):
    """One-step estimate: thresholded pseudo-inverse solve of T2 v = V2.

    With ``real_solution`` the complex rows are split into real and
    imaginary parts (equivalent to stacking the conjugate frequencies), so
    the solution vector is real.
    """
    V2 = np.asarray(V2).reshape(-1)
    return _ls_solve(np.asarray(T2), V2, epsilon, real_solution)


def fit_h3_linearized(Ks, v_h2, V3, epsilon, real_solution=True):
    """Solve the third-harmonic problem linearized at a fixed left factor.

    Row ell of the linearized matrix is v_h2^T K(jw_ell); the solve is the
    same thresholded pseudo-inverse as everywhere else.
    """
    V3 = np.asarray(V3).reshape(-1)
    T3 = _linearized_rows(Ks, np.asarray(v_h2).reshape(-1))
    if np.abs(T3).max() == 0.0:
        if np.abs(V3).max() > 0:
            raise DegenerateLinearization(
                "linearization point annihilates every row but data is nonzero")
        return np.zeros(T3.shape[1], dtype=float if real_solution else complex)
    return _ls_solve(T3, V3, epsilon, real_solution)


def fit_quadratic_coupled(T2, Ks, V2, V3, config, real_solution=True):
    """Fixed-point iteration for the coupled two- and three-harmonic fit.

    Initialization solves the second-harmonic problem alone.  Each pass
    freezes the current iterate as the left factor of the quadratic form,
    assembles the linearized third-harmonic rows, and solves the stacked
    least-squares system over both harmonic residual blocks (equal
    weighting).  The loop stops when the Euclidean distance between
    successive iterates drops to ``config.tau``; every tested distance is
    recorded in the deviation trace.
    """
    T2 = np.asarray(T2)
    V2 = np.asarray(V2).reshape(-1)
    V3 = np.asarray(V3).reshape(-1)
    N = T2.shape[0]
    if len(Ks) != N or len(V2) != N or len(V3) != N:
        raise ValueError("T2, Ks, V2, V3 must all cover the same N frequencies")

    v_bar = _ls_solve(T2, V2, config.epsilon, real_solution)
    v_tilde = np.zeros_like(v_bar)
    trace = [float(np.linalg.norm(v_bar - v_tilde))]
    q = 0
    converged = trace[-1] <= config.tau
    while not converged:
        if q >= 1:
            v_bar = v_tilde
        T3 = _linearized_rows(Ks, v_bar)
        M = np.vstack([T2, T3])
        rhs = np.concatenate([V2, V3])
        v_tilde = _ls_solve(M, rhs, config.epsilon, real_solution)
        q += 1
        trace.append(float(np.linalg.norm(v_bar - v_tilde)))
        if trace[-1] <= config.tau:
            converged = True
        elif q >= config.max_iter:
            break

    res_h2 = float(np.sum(np.abs(T2 @ v_tilde - V2) ** 2))
    res_h3 = float(np.sum(np.abs(
        np.array([_form_row(K, v_tilde) @ v_tilde for K in Ks]) - V3) ** 2))
    return QuadraticFitResult(v=v_tilde, Q=unvec_quadratic(v_tilde),
                              iterations=q, deviation_trace=np.array(trace),
                              residual_h2=res_h2, residual_h3=res_h3,
                              converged=converged)
