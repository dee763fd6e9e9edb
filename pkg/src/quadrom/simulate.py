"""Fixed-step time integration of quadratic systems and output-error metrics."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import UnstableSimulation

OVERFLOW_GUARD = 1e12


@dataclass(frozen=True)
class TimeSignal:
    """Uniformly sampled scalar signal."""

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.values.ndim != 1 or len(self.values) < 2:
            raise ValueError("a signal needs at least two samples")

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(len(self.values))


def integrate(sys, u, x0, t_span, dt):
    """Integrate E x' = A x + Q (x kron x) + B u(t) with classical RK4.

    The descriptor is factorized once and reused in every stage evaluation.
    The state is kept real when both the initial state and the input are
    real.  Returns the output y = C x sampled on the uniform grid covering
    ``t_span`` (both endpoints included).

    Raises UnstableSimulation when the state norm exceeds the overflow
    guard (1e12).
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    dt = float(dt)
    steps = int(round((t1 - t0) / dt))
    if steps < 1:
        raise ValueError("t_span shorter than one step")
    n = sys.n
    x0 = np.asarray(x0).reshape(-1)
    if x0.shape != (n,):
        raise ValueError(f"x0 must have length {n}")
    is_complex = np.iscomplexobj(x0) or np.iscomplexobj(np.asarray(u(t0)))
    dtype = complex if is_complex else float
    x = x0.astype(dtype)
    E_lu = sla.lu_factor(sys.E)
    A, Q3, B, C = sys.A, sys.Q.reshape(n, n, n), sys.B, sys.C

    def rhs(t, xv):
        return sla.lu_solve(E_lu, A @ xv + (Q3 @ xv) @ xv + B * u(t))

    y = np.empty(steps + 1, dtype=dtype)
    y[0] = C @ x
    t = t0
    for k in range(steps):
        k1 = rhs(t, x)
        k2 = rhs(t + 0.5 * dt, x + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, x + 0.5 * dt * k2)
        k4 = rhs(t + dt, x + dt * k3)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (k + 1) * dt
        norm = np.linalg.norm(x)
        if not np.isfinite(norm) or norm > OVERFLOW_GUARD:
            raise UnstableSimulation(f"state norm {norm:.3g} at t={t:.6g}")
        y[k + 1] = C @ x
    return TimeSignal(t0=t0, dt=dt, values=y)


def decaying_cosine(t):
    """Validation input cos(t) exp(-0.1 t); accepts scalars or arrays."""
    return np.cos(t) * np.exp(-0.1 * np.asarray(t))


def output_error(y_ref, y_hat):
    """Pointwise, L2, and Linf deviation between two signals on one grid.

    Returns ``(error_signal, l2, linf)`` with the pointwise magnitudes as a
    TimeSignal, ``l2 = sqrt(dt * sum |e|^2)`` and ``linf = max |e|``.
    """
    if (len(y_ref.values) != len(y_hat.values)
            or abs(y_ref.dt - y_hat.dt) > 1e-12 * y_ref.dt
            or abs(y_ref.t0 - y_hat.t0) > 1e-12 * max(1.0, abs(y_ref.t0))):
        raise ValueError("signals are not on the same time grid")
    err = np.abs(y_ref.values - y_hat.values)
    l2 = float(np.sqrt(y_ref.dt * np.sum(err ** 2)))
    linf = float(err.max())
    return TimeSignal(t0=y_ref.t0, dt=y_ref.dt, values=err), l2, linf
