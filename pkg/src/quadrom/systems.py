"""Quadratic state-space systems and their harmonic transfer functions.

A system is

    E x'(t) = A x(t) + Q (x(t) kron x(t)) + B u(t),   y(t) = C x(t),

with E, A of shape (n, n), Q of shape (n, n^2), and B, C n-vectors.  The
Kronecker square follows row-lexicographic order,

    x kron x = [x_1^2, x_1 x_2, ..., x_1 x_n, ..., x_n^2],

which is exactly ``numpy.kron`` on 1-D arrays.  Every module in the package
shares this convention.

Driving such a system with a single complex tone ``u(t) = alpha e^{j w t}``
excites output harmonics at multiples of ``w``; the closed-form kernels of
the first three harmonics are evaluated here (``eval_h1`` .. ``eval_h3``).
All resolvents are computed by LU-backed linear solves, never by forming an
explicit inverse.
"""

import numpy as np
import scipy.linalg as sla

from .errors import SingularResolvent

# Relative reciprocal-condition floor below which (sE - A) is treated as
# singular to working precision.
_RCOND_FLOOR = 1e-13


def _as_vector(x, n, name):
    v = np.asarray(x).reshape(-1)
    if v.shape != (n,):
        raise ValueError(f"{name} must have {n} entries, got shape {np.shape(x)}")
    return v


class QuadraticSystem:
    """State-space realization (E, A, Q, B, C) of a quadratic control system.

    Parameters
    ----------
    E, A : (n, n) array_like
        Descriptor and drift matrices.  E must be invertible.
    Q : (n, n*n) array_like or None
        Quadratic operator acting on ``x kron x``; ``None`` means zero.
    B, C : (n,) array_like
        Input and output maps (SISO).
    symmetric : bool, optional
        When True, ``Q (v kron w) == Q (w kron v)`` is verified on all
        canonical pairs (e_i, e_j) at construction and the symmetric
        single-term third-harmonic formula is used by ``eval_h3``.
    """

    def __init__(self, E, A, Q, B, C, symmetric=False):
        E = np.atleast_2d(np.asarray(E, dtype=float))
        A = np.atleast_2d(np.asarray(A, dtype=float))
        n = E.shape[0]
        if E.shape != (n, n) or A.shape != (n, n):
            raise ValueError("E and A must be square matrices of equal size")
        if Q is None:
            Q = np.zeros((n, n * n))
        Q = np.atleast_2d(np.asarray(Q, dtype=float))
        if Q.shape != (n, n * n):
            raise ValueError(f"Q must have shape ({n}, {n * n}), got {Q.shape}")
        cond = np.linalg.cond(E)
        if not np.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
            raise ValueError("descriptor matrix E is singular to working precision")
        self.E = E
        self.A = A
        self.Q = Q
        self.B = _as_vector(B, n, "B").astype(float)
        self.C = _as_vector(C, n, "C").astype(float)
        self.n = n
        if symmetric:
            Q3 = Q.reshape(n, n, n)
            if not np.allclose(Q3, Q3.transpose(0, 2, 1),
                               rtol=0.0, atol=1e-12 * max(1.0, np.abs(Q).max())):
                raise ValueError("Q is not symmetric on the canonical pairs (e_i, e_j)")
        self.symmetric = bool(symmetric)

    def __repr__(self):
        return (f"QuadraticSystem(n={self.n}, symmetric={self.symmetric}, "
                f"|Q|={np.abs(self.Q).max():.3g})")


def _resolvent_lu(sys, s):
    """LU factorization of (sE - A), rejecting near-singular pencil points."""
    M = s * sys.E.astype(complex) - sys.A
    anorm = np.linalg.norm(M, 1)
    if anorm == 0.0:
        raise SingularResolvent(f"(sE - A) is zero at s={s}")
    lu, piv = sla.lu_factor(M)
    gecon = sla.get_lapack_funcs("gecon", (M,))
    rcond, _ = gecon(lu, anorm)
    if not np.isfinite(rcond) or rcond < _RCOND_FLOOR:
        raise SingularResolvent(
            f"s={s} is a generalized eigenvalue of (A, E) to working precision "
            f"(rcond={rcond:.2e})")
    return lu, piv


def resolvent_apply(sys, s, v):
    """Apply the resolvent (sE - A)^{-1} to a vector via a linear solve."""
    v = _as_vector(v, sys.n, "v").astype(complex)
    lu, piv = _resolvent_lu(sys, s)
    return sla.lu_solve((lu, piv), v)


def output_functional(sys, s):
    """Row vector C (sE - A)^{-1}, computed by a transposed solve."""
    lu, piv = _resolvent_lu(sys, s)
    return sla.lu_solve((lu, piv), sys.C.astype(complex), trans=1)


def apply_quadratic(Q, x, y):
    """Evaluate Q (x kron y) without materializing the Kronecker product."""
    Q = np.asarray(Q)
    n = Q.shape[0]
    if Q.shape != (n, n * n):
        raise ValueError(f"Q must have shape ({n}, {n * n}), got {Q.shape}")
    x = _as_vector(x, n, "x")
    y = _as_vector(y, n, "y")
    Q3 = Q.reshape(n, n, n)
    return (Q3 @ y) @ x


def symmetrize_quadratic(Q):
    """Symmetric part of Q: columns (i,j) and (j,i) are averaged.

    The returned operator agrees with Q on every Kronecker square,
    ``Q' (x kron x) = Q (x kron x)``.
    """
    Q = np.asarray(Q)
    n = Q.shape[0]
    if Q.shape != (n, n * n):
        raise ValueError(f"Q must have shape ({n}, {n * n}), got {Q.shape}")
    Q3 = Q.reshape(n, n, n)
    return (0.5 * (Q3 + Q3.transpose(0, 2, 1))).reshape(n, n * n)


def eval_g1(sys, s):
    """Internal first-harmonic response G1(s) = (sE - A)^{-1} B."""
    return resolvent_apply(sys, s, sys.B)


def eval_h1(sys, s):
    """First (linear) transfer function H1(s) = C (sE - A)^{-1} B."""
    return complex(sys.C @ eval_g1(sys, s))


def eval_g2(sys, s):
    """Internal second-harmonic response G2(s) = Phi(2s) Q (G1 kron G1)."""
    g1 = eval_g1(sys, s)
    return resolvent_apply(sys, 2 * s, apply_quadratic(sys.Q, g1, g1))


def eval_h2(sys, s):
    """Second transfer function H2(s) = C Phi(2s) Q (G1(s) kron G1(s))."""
    return complex(sys.C @ eval_g2(sys, s))


def eval_h3(sys, s):
    """Third transfer function H3(s).

    Uses the single-term form ``2 C Phi(3s) Q (G2 kron G1)`` when the system
    is flagged symmetric, otherwise the general two-term form
    ``C Phi(3s) [Q (G2 kron G1) + Q (G1 kron G2)]``.
    """
    g1 = eval_g1(sys, s)
    g2 = resolvent_apply(sys, 2 * s, apply_quadratic(sys.Q, g1, g1))
    if sys.symmetric:
        w = 2.0 * apply_quadratic(sys.Q, g2, g1)
    else:
        w = apply_quadratic(sys.Q, g2, g1) + apply_quadratic(sys.Q, g1, g2)
    return complex(sys.C @ resolvent_apply(sys, 3 * s, w))


def controllability_matrix(A, B, r=None):
    """Krylov matrix [B, AB, ..., A^{r-1}B] used for realization alignment."""
    A = np.asarray(A)
    b = np.asarray(B).reshape(-1)
    r = A.shape[0] if r is None else r
    cols = [b]
    for _ in range(r - 1):
        cols.append(A @ cols[-1])
    return np.column_stack(cols)


def align_to_reference(sys, ref):
    """Express ``sys`` in the state coordinates of ``ref``.

    Both systems must be minimal SISO realizations of the same linear
    transfer function; the unique similarity T with A_ref = T A T^{-1},
    B_ref = T B, C_ref = C T^{-1} is recovered from the controllability
    matrices and applied to all operators including Q.  The entrywise
    comparison of two quadratic operators is only meaningful after such an
    alignment.
    """
    if sys.n != ref.n:
        raise ValueError(f"orders differ: {sys.n} vs {ref.n}")
    K_sys = controllability_matrix(sys.A, sys.B)
    K_ref = controllability_matrix(ref.A, ref.B)
    T = np.linalg.solve(K_sys.T, K_ref.T).T  # T = K_ref K_sys^{-1}
    Ti = np.linalg.inv(T)
    A = T @ sys.A @ Ti
    B = T @ sys.B
    C = sys.C @ Ti
    Q = T @ sys.Q @ np.kron(Ti, Ti)
    E = T @ sys.E @ Ti
    return QuadraticSystem(E, A, Q, B, C)
