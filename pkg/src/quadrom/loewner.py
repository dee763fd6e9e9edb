"""Loewner-pencil rational interpolation of first-transfer-function samples.

Given samples ``(s_i, H(s_i))`` of a scalar rational function, the divided
difference matrices

    L(i,j)  = (v_i - w_j) / (mu_i - lambda_j)
    Ls(i,j) = (mu_i v_i - lambda_j w_j) / (mu_i - lambda_j)

built from a left partition ``(mu_i, v_i)`` and right partition
``(lambda_j, w_j)`` encode an interpolating descriptor model
``E = -L, A = -Ls, B = V, C = W``.  A rank-revealing SVD of the pencil gives
the minimal interpolation order; projecting onto the leading singular
subspaces and normalizing the descriptor yields the reduced linear model
used downstream as the reference for quadratic-operator inference.

Data closed under complex conjugation (samples at +jw and -jw) can be
rotated by a block-unitary transform into an equivalent all-real pencil, so
the reduced model has real matrices.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (DuplicatePoint, NotConjugateClosed, SingularProjection,
                     ZeroDenominator, ZeroPencil)
from .systems import QuadraticSystem

_CONJ_RTOL = 1e-9


@dataclass(frozen=True)
class InterpolationData:
    """Left and right interpolation partitions, each a list of (point, value)."""

    right: list  # (lambda_j, w_j)
    left: list   # (mu_i, v_i)

    @property
    def size(self):
        return len(self.right)


@dataclass(frozen=True)
class LoewnerPencil:
    """Loewner matrix pair with the data vectors and partition record."""

    L: np.ndarray
    Ls: np.ndarray
    V: np.ndarray   # column of left values v_i
    W: np.ndarray   # row of right values w_j
    partition: InterpolationData
    realified: bool = False


@dataclass(frozen=True)
class ReducedLinearModel:
    """E-normalized projected model (descriptor = identity)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    r: int
    singular_values: np.ndarray = field(repr=False, default=None)

    def to_system(self, Q=None, symmetric=False):
        """Wrap as a QuadraticSystem with identity descriptor."""
        return QuadraticSystem(np.eye(self.r), self.A, Q, self.B, self.C,
                               symmetric=symmetric)

    def transfer(self, s):
        """H(s) = C (sI - A)^{-1} B."""
        return complex(self.C @ np.linalg.solve(
            s * np.eye(self.r) - self.A, self.B.astype(complex)))


def _conjugate_units(points, values):
    """Group samples into real singletons and adjacent conjugate pairs.

    Returns a list of units, each a list of (point, value) of length 1 or 2.
    Pairing is by exact conjugate match first, then by relative tolerance.
    """
    pts = list(points)
    vals = list(values)
    k = len(pts)
    scale = max(abs(p) for p in pts) or 1.0
    for i in range(k):
        for j in range(i + 1, k):
            if abs(pts[i] - pts[j]) <= _CONJ_RTOL * scale:
                raise DuplicatePoint(f"point {pts[i]} appears more than once")
    used = [False] * k
    units = []
    for i in range(k):
        if used[i]:
            continue
        used[i] = True
        p = complex(pts[i])
        if p.imag == 0.0:
            units.append([(p, complex(vals[i]))])
            continue
        mate = None
        for j in range(i + 1, k):
            if not used[j] and abs(complex(pts[j]) - p.conjugate()) <= _CONJ_RTOL * scale:
                mate = j
                break
        if mate is None:
            units.append([(p, complex(vals[i]))])
        else:
            used[mate] = True
            units.append([(p, complex(vals[i])),
                          (complex(pts[mate]), complex(vals[mate]))])
    return units


def partition_samples(points, values, mode="interleave"):
    """Split samples into disjoint left/right sets for the Loewner pencil.

    Conjugate pairs are kept together; units (pairs or real singletons) are
    assigned per ``mode``:

    interleave -- alternate units right, left, right, ...  (default)
    halves     -- first half of the units right, second half left; keeps
                  every cross-partition denominator away from zero, which
                  makes the pencil singular values far less sensitive to
                  measurement noise

    A trailing unit that cannot be balanced is dropped with a warning.
    """
    if len(points) != len(values):
        raise ValueError("points and values must have equal length")
    if len(points) < 2:
        raise ValueError("need at least two samples to partition")
    if mode not in ("interleave", "halves"):
        raise ValueError(f"unknown partition mode {mode!r}")
    units = _conjugate_units(points, values)
    if len(units) % 2 == 1:
        warnings.warn(f"odd number of sample units ({len(units)}); dropping the last",
                      stacklevel=2)
        units = units[:-1]
    right, left = [], []
    if mode == "interleave":
        for idx, unit in enumerate(units):
            (right if idx % 2 == 0 else left).extend(unit)
    else:
        half = len(units) // 2
        for idx, unit in enumerate(units):
            (right if idx < half else left).extend(unit)
    if len(right) != len(left):
        k = min(len(right), len(left))
        warnings.warn("unbalanced partition from mixed real/complex data; "
                      f"truncating both sides to {k} samples", stacklevel=2)
        right, left = right[:k], left[:k]
    return InterpolationData(right=right, left=left)


def build_pencil(data):
    """Assemble (L, Ls, V, W) entrywise from the partitioned data."""
    lam = np.array([p for p, _ in data.right], dtype=complex)
    w = np.array([v for _, v in data.right], dtype=complex)
    mu = np.array([p for p, _ in data.left], dtype=complex)
    v = np.array([x for _, x in data.left], dtype=complex)
    denom = mu[:, None] - lam[None, :]
    if np.any(denom == 0):
        raise ZeroDenominator("a left point equals a right point")
    L = (v[:, None] - w[None, :]) / denom
    Ls = (mu[:, None] * v[:, None] - lam[None, :] * w[None, :]) / denom
    return LoewnerPencil(L=L, Ls=Ls, V=v.copy(), W=w.copy(), partition=data)


def _realifying_blocks(side):
    """Block-unitary transform turning a conjugate-closed side real.

    Each conjugate pair (z, zbar) maps to (sqrt2 Re z, sqrt2 Im z); real
    points pass through.  Raises NotConjugateClosed when the side does not
    consist of adjacent value-consistent conjugate pairs and real points.
    """
    k = len(side)
    J = np.zeros((k, k), dtype=complex)
    scale = max(abs(p) for p, _ in side) or 1.0
    vscale = max(abs(v) for _, v in side) or 1.0
    i = 0
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    while i < k:
        p, val = side[i]
        if p.imag == 0.0:
            J[i, i] = 1.0
            i += 1
            continue
        if i + 1 >= k:
            raise NotConjugateClosed(f"point {p} has no adjacent conjugate partner")
        p2, val2 = side[i + 1]
        if abs(p2 - p.conjugate()) > _CONJ_RTOL * scale:
            raise NotConjugateClosed(f"points {p} and {p2} are not conjugates")
        if abs(val2 - val.conjugate()) > _CONJ_RTOL * vscale:
            raise NotConjugateClosed(f"values at {p} are not conjugate-consistent")
        J[i:i + 2, i:i + 2] = inv_sqrt2 * np.array([[1.0, 1.0], [-1j, 1j]])
        i += 2
    return J


def realify_pencil(pencil):
    """Rotate a conjugate-closed pencil into an equivalent real pencil.

    Left and right sides are transformed by block-unitary matrices, so the
    transfer function of any projected model and the singular values of the
    pencil are preserved.  Residual imaginary parts (rounding only) are
    verified below 1e-12 relative and dropped.
    """
    P = _realifying_blocks(pencil.partition.left)
    T = _realifying_blocks(pencil.partition.right).T
    L = P @ pencil.L @ T
    Ls = P @ pencil.Ls @ T
    V = P @ pencil.V
    W = pencil.W @ T
    scale = max(np.abs(pencil.L).max(), np.abs(pencil.Ls).max(),
                np.abs(pencil.V).max(), np.abs(pencil.W).max(), 1.0)
    worst = max(np.abs(L.imag).max(), np.abs(Ls.imag).max(),
                np.abs(V.imag).max(), np.abs(W.imag).max())
    if worst > 1e-12 * scale:
        raise NotConjugateClosed(
            f"realified pencil kept imaginary parts ({worst:.2e} vs scale {scale:.2e})")
    return LoewnerPencil(L=L.real, Ls=Ls.real, V=V.real, W=W.real,
                         partition=pencil.partition, realified=True)


def select_order(pencil, threshold):
    """Pick the truncation order from normalized pencil singular values.

    The SVD is taken of the column-stacked [L, Ls]; r counts the singular
    values with sigma_i / sigma_1 >= threshold.  The full list is returned
    for decay diagnostics.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must lie in (0, 1]")
    sigma = np.linalg.svd(np.hstack([pencil.L, pencil.Ls]), compute_uv=False)
    if sigma[0] == 0.0:
        raise ZeroPencil("pencil is identically zero")
    r = int(np.count_nonzero(sigma / sigma[0] >= threshold))
    return r, sigma


def project_model(pencil, r, _retries=2):
    """Project the pencil onto leading singular subspaces and E-normalize.

    X_r comes from the left singular vectors of the column-stacked [L, Ls];
    Y_r from the right singular vectors of the row-stacked [L; Ls].  When
    the projected descriptor -X_r* L Y_r is singular, r is decremented and
    the projection retried (at most twice) before giving up.
    """
    k = pencil.L.shape[0]
    if not 1 <= r <= k:
        raise ValueError(f"order r={r} out of range 1..{k}")
    X, sigma, _ = np.linalg.svd(np.hstack([pencil.L, pencil.Ls]), full_matrices=False)
    _, _, Zh = np.linalg.svd(np.vstack([pencil.L, pencil.Ls]), full_matrices=False)
    Y = Zh.conj().T
    Xr = X[:, :r]
    Yr = Y[:, :r]
    Ehat = -Xr.conj().T @ pencil.L @ Yr
    rcond = 1.0 / np.linalg.cond(Ehat)
    if not np.isfinite(rcond) or rcond < 1e-13:
        if _retries > 0 and r > 1:
            warnings.warn(f"projected descriptor singular at r={r}; retrying r={r - 1}",
                          stacklevel=2)
            return project_model(pencil, r - 1, _retries=_retries - 1)
        raise SingularProjection(f"projected descriptor singular at r={r}")
    Ahat = -Xr.conj().T @ pencil.Ls @ Yr
    Bhat = Xr.conj().T @ pencil.V
    Chat = pencil.W @ Yr
    A = np.linalg.solve(Ehat, Ahat)
    B = np.linalg.solve(Ehat, Bhat)
    if pencil.realified or (np.isrealobj(pencil.L) and np.isrealobj(pencil.V)):
        A, B, Chat = A.real, B.real, Chat.real
    return ReducedLinearModel(A=A, B=B, C=Chat, r=r,
                              singular_values=sigma.copy())


def singular_value_table(sigma):
    """Rows (index, sigma, sigma/sigma_1) for decay plots and CSV export."""
    sigma = np.asarray(sigma, dtype=float)
    return [(i + 1, s, s / sigma[0]) for i, s in enumerate(sigma)]
