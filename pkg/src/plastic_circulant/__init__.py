"""Circulant matrices over the Padovan, Perrin and Van der Laan sequences.

Exact recurrence terms, closed-form spectra and determinants, and the
brute-force oracles that check them.
"""

__version__ = "0.1.0"

from .circulant import (  # noqa: E402
    CirculantInt,
    Spectrum,
    build_from_sequence,
    det_eigprod,
    det_exact,
    eig_oracle,
    norm_oracle,
    one_inf_norms,
)
from .closedform import (  # noqa: E402
    denominator_identity,
    det_closed,
    det_closed_preset,
    eig_closed,
    eig_closed_preset,
    norm_closed,
)
from .recurrence import (  # noqa: E402
    Preset,
    RecurrenceSpec,
    binet,
    roots,
    term_at,
    term_at_fast,
)

__all__ = [
    "CirculantInt", "Spectrum", "build_from_sequence", "det_eigprod", "det_exact",
    "eig_oracle", "norm_oracle", "one_inf_norms",
    "denominator_identity", "det_closed", "det_closed_preset", "eig_closed",
    "eig_closed_preset", "norm_closed",
    "Preset", "RecurrenceSpec", "binet", "roots", "term_at", "term_at_fast",
    "__version__",
]
