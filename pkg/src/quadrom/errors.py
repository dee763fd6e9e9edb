"""Exception types shared across the package."""


class QuadromError(Exception):
    """Base class for all package-specific errors."""


class SingularResolvent(QuadromError):
    """(sE - A) is singular to working precision at the requested frequency."""


class DuplicatePoint(QuadromError):
    """An interpolation point appears more than once."""


class ZeroDenominator(QuadromError):
    """A left point coincides with a right point, so a pencil entry divides by zero."""


class NotConjugateClosed(QuadromError):
    """Data is not closed under complex conjugation with conjugate pairs adjacent."""


class ZeroPencil(QuadromError):
    """All singular values of the pencil vanish."""


class SingularProjection(QuadromError):
    """The projected descriptor matrix is singular; the order r crosses a rank deficiency."""


class ZeroMatrix(QuadromError):
    """The matrix of a least-squares problem is identically zero."""


class DegenerateLinearization(QuadromError):
    """All linearized third-harmonic rows vanish while the data does not."""


class NonConvergedTransient(QuadromError):
    """Output energy still changes between the last two warm-up periods."""


class UnstableSimulation(QuadromError):
    """The simulated state exceeded the overflow guard."""
