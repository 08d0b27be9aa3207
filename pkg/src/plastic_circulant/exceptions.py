"""Exception types raised by the library."""


class PlasticError(ValueError):
    """Base class for domain errors."""


class NonReversible(PlasticError):
    """Negative index requested for a recurrence whose trailing coefficient is 0."""


class InexactBackstep(PlasticError):
    """A backward step is not divisible by the trailing coefficient."""


class UnsupportedFamily(PlasticError):
    """Operation is only defined for the (p, q, r) = (0, 1, 1) family."""


class NonnegativityViolated(PlasticError):
    """Closed-form spectral norm requested for a row with a negative entry."""


class ZeroDenominator(PlasticError):
    """(-1)^n (Q_{-n} - Q_n) vanished, so the closed determinant is undefined."""


class ConfigInvalid(PlasticError):
    """Verification configuration is out of range."""
