"""Closed-form eigenvalues, spectral norm and determinant of ``circ(Z0, ..., Z_{n-1})``.

Everything here is specific to ``Z(n+3) = Z(n+1) + Z(n)`` with seeds ``(a, b, c)``.
With ``s = w**(-j)`` and

    x = Z(n) - a,   y = Z(n+1) - b,   z = Z(n-1) - c + a,

the eigenvalues are ``(x + y s + z s**2) / (s**3 + s**2 - 1)``.  Multiplying over
all ``j`` gives the determinant ``x**n (1 - K**n)(1 - L**n) / ((-1)**n (Q(-n) - Q(n)))``
where ``K, L`` are the roots of ``x t**2 + y t + z``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .circulant import build_from_sequence
from .exceptions import NonnegativityViolated, ZeroDenominator
from .recurrence import Preset, RecurrenceSpec, require_plastic, term_at, terms

__all__ = [
    "DetFactors",
    "DetResult",
    "eig_closed",
    "eig_closed_all",
    "eig_closed_preset",
    "norm_closed",
    "norm_closed_preset",
    "det_factors",
    "det_from_factors",
    "det_closed",
    "det_closed_preset",
    "perrin_denominator",
    "denominator_identity",
    "product_identity",
]

_PERRIN = RecurrenceSpec.perrin()


def _unit(n: int, k: int) -> complex:
    """``w**(-k)`` with the exponent reduced mod n."""
    k %= n
    if k == 0:
        return 1 + 0j
    return cmath.exp(-2j * math.pi * k / n)


def _xyz(spec: RecurrenceSpec, n: int) -> tuple[int, int, int]:
    require_plastic(spec)
    if n < 1:
        raise ValueError("n must be >= 1")
    zm1, zn, zp1 = terms(spec, n - 1, n + 1)
    return zn - spec.a, zp1 - spec.b, zm1 - spec.c + spec.a


def _eig(x: int, y: int, z: int, n: int, j: int) -> complex:
    s1, s2, s3 = _unit(n, j), _unit(n, 2 * j), _unit(n, 3 * j)
    return (x + y * s1 + z * s2) / (s3 + s2 - 1)


def eig_closed(spec: RecurrenceSpec, n: int, j: int) -> complex:
    """Closed-form eigenvalue ``lam_j`` of the n x n circulant built from ``spec``."""
    if not 0 <= j < n:
        raise ValueError(f"j must lie in [0, {n})")
    return _eig(*_xyz(spec, n), n, j)


def eig_closed_all(spec: RecurrenceSpec, n: int) -> list[complex]:
    """All ``n`` closed-form eigenvalues; O(n) once the three terms are known."""
    x, y, z = _xyz(spec, n)
    return [_eig(x, y, z, n, j) for j in range(n)]


def eig_closed_preset(preset: Preset | str, n: int, j: int) -> complex:
    """The per-sequence eigenvalue formulas, written out with their own constants."""
    preset = Preset(preset)
    if not 0 <= j < n:
        raise ValueError(f"j must lie in [0, {n})")
    spec = RecurrenceSpec.from_preset(preset)
    zm1, zn, zp1 = terms(spec, n - 1, n + 1)
    s1, s2, s3 = _unit(n, j), _unit(n, 2 * j), _unit(n, 3 * j)
    if preset is Preset.CORDONNIER:
        num = zn - 1 + (zp1 - 1) * s1 + zm1 * s2
    elif preset is Preset.PERRIN:
        num = zn - 3 + zp1 * s1 + (zm1 + 1) * s2
    else:
        num = zn + (zp1 - 1) * s1 + zm1 * s2
    return num / (s3 + s2 - 1)


def norm_closed(spec: RecurrenceSpec, n: int) -> int:
    """Spectral norm ``Z(n+4) - Z(4)``.

    Only valid when every entry of the first row is nonnegative; then the
    j = 0 eigenvalue (the row sum) has the largest modulus.
    """
    require_plastic(spec)
    row = build_from_sequence(spec, n)
    if not row.is_nonnegative():
        raise NonnegativityViolated(
            f"{spec.label}: first row of order {n} has a negative entry; use norm_oracle")
    return term_at(spec, n + 4) - term_at(spec, 4)


def norm_closed_preset(preset: Preset | str, n: int) -> int:
    preset = Preset(preset)
    spec = RecurrenceSpec.from_preset(preset)
    if n < 1:
        raise ValueError("n must be >= 1")
    shift = {Preset.CORDONNIER: 2, Preset.PERRIN: 2, Preset.VANDERLAAN: 1}[preset]
    return term_at(spec, n + 4) - shift


def perrin_denominator(n: int) -> int:
    """``(-1)**n (Q(-n) - Q(n))``, equal to the product of ``s**3 + s**2 - 1`` over j."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = (-1) ** n * (term_at(_PERRIN, -n) - term_at(_PERRIN, n))
    if value == 0:
        raise ZeroDenominator(f"(-1)^n (Q(-n) - Q(n)) vanished at n={n}")
    return value


def denominator_identity(n: int) -> tuple[complex, int]:
    """Direct product of the eigenvalue denominators and its exact integer form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prod = 1 + 0j
    for j in range(n):
        prod *= _unit(n, 3 * j) + _unit(n, 2 * j) - 1
    return prod, perrin_denominator(n)


@dataclass(frozen=True)
class DetFactors:
    n: int
    x: int
    y: int
    z: int
    K: complex
    L: complex
    denom: int


@dataclass(frozen=True)
class DetResult:
    value: complex
    fallback: bool
    factors: DetFactors | None = None


def _quadratic_roots(x: int, y: int, z: int) -> tuple[complex, complex]:
    root = cmath.sqrt(complex(y * y - 4 * x * z))
    return (-y - root) / (2 * x), (-y + root) / (2 * x)


def det_factors(spec: RecurrenceSpec, n: int) -> DetFactors:
    """``x, y, z`` and the roots ``K, L`` of ``x t**2 + y t + z`` (requires x != 0)."""
    x, y, z = _xyz(spec, n)
    if x == 0:
        raise ZeroDivisionError(f"{spec.label}: Z(n) - a = 0 at n={n}")
    K, L = _quadratic_roots(x, y, z)
    return DetFactors(n, x, y, z, K, L, perrin_denominator(n))


def _formula(prefactor: int, n: int, K: complex, L: complex, denom: int) -> complex:
    try:
        kn, ln = K**n, L**n
        return float(prefactor) ** n * (1 - kn - ln + kn * ln) / denom
    except OverflowError as exc:
        raise OverflowError(f"closed-form determinant overflows double precision at n={n}") from exc


def det_from_factors(f: DetFactors, swap: bool = False) -> complex:
    """Evaluate the determinant formula; ``swap`` exchanges the roles of K and L."""
    K, L = (f.L, f.K) if swap else (f.K, f.L)
    return _formula(f.x, f.n, K, L, f.denom)


def _fallback(eigs: list[complex]) -> complex:
    prod = 1 + 0j
    for v in eigs:
        prod *= v
    return prod


def det_closed(spec: RecurrenceSpec, n: int) -> DetResult:
    """Closed-form determinant.

    When ``Z(n) - a = 0`` the formula divides by zero; the product of the
    closed-form eigenvalues is returned instead with ``fallback=True``.
    """
    x, y, z = _xyz(spec, n)
    if x == 0:
        return DetResult(_fallback([_eig(x, y, z, n, j) for j in range(n)]), True)
    f = det_factors(spec, n)
    return DetResult(det_from_factors(f), False, f)


def det_closed_preset(preset: Preset | str, n: int) -> DetResult:
    """The per-sequence determinant formulas with their own K, L and prefactor."""
    preset = Preset(preset)
    spec = RecurrenceSpec.from_preset(preset)
    if n < 1:
        raise ValueError("n must be >= 1")
    zm1, zn, zp1 = terms(spec, n - 1, n + 1)
    if preset is Preset.CORDONNIER:
        lead = zn - 1
        minus_y = 1 - zp1
        disc = (1 - zp1) ** 2 - 4 * zn * zm1 + 4 * zm1
    elif preset is Preset.PERRIN:
        lead = zn - 3
        minus_y = -zp1
        disc = zp1**2 - 4 * zn * zm1 - 4 * zn + 12 * zm1 + 12
    else:
        lead = zn
        minus_y = 1 - zp1
        disc = (1 - zp1) ** 2 - 4 * zn * zm1
    if lead == 0:
        return DetResult(_fallback([eig_closed_preset(preset, n, j) for j in range(n)]), True)
    root = cmath.sqrt(complex(disc))
    K = (minus_y - root) / (2 * lead)
    L = (minus_y + root) / (2 * lead)
    denom = perrin_denominator(n)
    return DetResult(_formula(lead, n, K, L, denom), False,
                     DetFactors(n, lead, -minus_y, zm1 - spec.c + spec.a, K, L, denom))


def product_identity(x: int, y: int, z: int, n: int) -> tuple[complex, complex]:
    """``prod_j (x + y s + z s**2)`` over ``s = w**(-j)``, directly and in closed form.

    The closed form is ``x**n (1 - K**n - L**n + K**n L**n)``.
    """
    direct = 1 + 0j
    for j in range(n):
        direct *= x + y * _unit(n, j) + z * _unit(n, 2 * j)
    K, L = _quadratic_roots(x, y, z)
    return direct, _formula(x, n, K, L, 1)
