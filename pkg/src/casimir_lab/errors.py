"""Exception hierarchy shared by all casimir_lab modules."""


class CasimirLabError(Exception):
    """Base class for every error raised by this package."""


class NonTimelike(CasimirLabError):
    """Vector cutoff is lightlike or spacelike; the regularized sums do not exist."""


class NegativeTimeComponent(CasimirLabError):
    """Vector cutoff points into the past (time component must be positive)."""


class BadDirection(CasimirLabError):
    """Boost direction is not a unit 2-vector."""


class SigmaTooLarge(CasimirLabError):
    """Scalar cutoff is >= the invariant vector cutoff; the mode sum diverges."""


class NegativeSigma(CasimirLabError):
    """Scalar cutoff must be non-negative."""


class NearPole(CasimirLabError):
    """(sigma_bar - Sigma)*pi/a below the precision guard; results would be meaningless."""


class NoConvergence(CasimirLabError):
    """Numerical routine exhausted its budget before reaching the requested tolerance."""


class TailTooFat(CasimirLabError):
    """Mode-sum cap reached before the analytic tail bound dropped below tolerance."""


class DegenerateInput(CasimirLabError):
    """Input data insufficient or degenerate for the requested operation."""
