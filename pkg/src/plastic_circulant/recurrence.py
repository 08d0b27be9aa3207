"""Third-order integer recurrences ``T(n+3) = p T(n+2) + q T(n+1) + r T(n)``.

Terms are exact Python integers in both directions.  Binet evaluation, the
partial-sum identities and the root helpers are restricted to the plastic
family ``(p, q, r) = (0, 1, 1)``, whose characteristic polynomial is
``x**3 - x - 1``.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .exceptions import InexactBackstep, NonReversible, UnsupportedFamily

__all__ = [
    "PRESETS",
    "Preset",
    "RecurrenceSpec",
    "CubicRoots",
    "SquareSumConstant",
    "term_at",
    "term_at_fast",
    "terms",
    "roots",
    "binet",
    "binet_vdl_as_printed",
    "binet_cordonnier_as_printed",
    "binet_perrin_power_sum",
    "sum_first",
    "sum_first_identity",
    "square_sum_constant",
    "sum_squares",
    "sum_squares_identity",
]

PLASTIC = (0, 1, 1)


class Preset(str, enum.Enum):
    CORDONNIER = "cordonnier"
    PERRIN = "perrin"
    VANDERLAAN = "vanderlaan"
    CUSTOM = "custom"


_PRESET_SEEDS = {
    Preset.CORDONNIER: (1, 1, 1),
    Preset.PERRIN: (3, 0, 2),
    Preset.VANDERLAAN: (0, 1, 0),
}


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficients ``(p, q, r)`` and seeds ``T0=a, T1=b, T2=c``."""

    a: int
    b: int
    c: int
    p: int = 0
    q: int = 1
    r: int = 1
    preset: Preset = Preset.CUSTOM

    def __post_init__(self):
        object.__setattr__(self, "preset", Preset(self.preset))
        for name in ("a", "b", "c", "p", "q", "r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int, got {value!r}")
        if self.preset is not Preset.CUSTOM:
            if self.coeffs != PLASTIC or self.seeds != _PRESET_SEEDS[self.preset]:
                raise ValueError(f"{self.preset.value} preset requires coeffs {PLASTIC} "
                                 f"and seeds {_PRESET_SEEDS[self.preset]}")

    @classmethod
    def cordonnier(cls) -> RecurrenceSpec:
        return cls(1, 1, 1, preset=Preset.CORDONNIER)

    @classmethod
    def perrin(cls) -> RecurrenceSpec:
        return cls(3, 0, 2, preset=Preset.PERRIN)

    @classmethod
    def van_der_laan(cls) -> RecurrenceSpec:
        return cls(0, 1, 0, preset=Preset.VANDERLAAN)

    @classmethod
    def from_preset(cls, preset: Preset | str) -> RecurrenceSpec:
        preset = Preset(preset)
        if preset is Preset.CUSTOM:
            raise ValueError("custom is not a named preset")
        return cls(*_PRESET_SEEDS[preset], preset=preset)

    @property
    def seeds(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def is_plastic(self) -> bool:
        return self.coeffs == PLASTIC

    @property
    def label(self) -> str:
        if self.preset is not Preset.CUSTOM:
            return self.preset.value
        return f"custom(a={self.a},b={self.b},c={self.c},p={self.p},q={self.q},r={self.r})"


PRESETS = (RecurrenceSpec.cordonnier(), RecurrenceSpec.perrin(), RecurrenceSpec.van_der_laan())


def require_plastic(spec: RecurrenceSpec) -> None:
    if not spec.is_plastic:
        raise UnsupportedFamily(f"{spec.label}: only (p,q,r)=(0,1,1) is supported here")


def _backstep(spec: RecurrenceSpec, t0: int, t1: int, t2: int) -> int:
    """Return T(n-1) given T(n), T(n+1), T(n+2)."""
    if spec.r == 0:
        raise NonReversible(f"{spec.label}: r = 0, the recurrence cannot run backwards")
    num = t2 - spec.p * t1 - spec.q * t0
    quot, rem = divmod(num, spec.r)
    if rem:
        raise InexactBackstep(f"{spec.label}: {num} is not divisible by r={spec.r}")
    return quot


def terms(spec: RecurrenceSpec, lo: int, hi: int) -> list[int]:
    """Terms ``T(lo), ..., T(hi)`` (inclusive) as exact integers."""
    if hi < lo:
        return []
    p, q, r = spec.coeffs
    window = [spec.a, spec.b, spec.c]
    neg: list[int] = []
    if lo < 0:
        t0, t1, t2 = window
        for _ in range(-lo):
            t0, t1, t2 = _backstep(spec, t0, t1, t2), t0, t1
            neg.append(t0)
        neg.reverse()  # neg[i] is T(lo + i)
    out = neg[: max(0, min(hi, -1) - lo + 1)]
    if hi >= 0:
        pos = list(window[: hi + 1])
        while len(pos) <= hi:
            pos.append(p * pos[-1] + q * pos[-2] + r * pos[-3])
        out.extend(pos[max(lo, 0):])
    return out


def term_at(spec: RecurrenceSpec, n: int) -> int:
    """Exact ``T(n)``; negative ``n`` runs the recurrence in reverse."""
    return terms(spec, n, n)[0]


def _mat_mul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def term_at_fast(spec: RecurrenceSpec, n: int) -> int:
    """``T(n)`` for ``n >= 0`` by squaring the companion matrix."""
    if n < 0:
        raise ValueError("term_at_fast requires n >= 0")
    result = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    base = [[spec.p, spec.q, spec.r], [1, 0, 0], [0, 1, 0]]
    k = n
    while k:
        if k & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        k >>= 1
    # M^n applied to (T2, T1, T0) gives (T(n+2), T(n+1), T(n))
    last = result[2]
    return last[0] * spec.c + last[1] * spec.b + last[2] * spec.a


@dataclass(frozen=True)
class CubicRoots:
    """Roots of ``x**3 - x - 1``: the plastic number and a conjugate pair."""

    rho: float
    beta: complex
    gamma: complex

    @property
    def all(self) -> tuple[complex, complex, complex]:
        return (complex(self.rho), self.beta, self.gamma)

    @property
    def fprime(self) -> tuple[complex, complex, complex]:
        """``(x - y)(x - z)`` for each root ``x``: the Binet denominators."""
        al, be, ga = self.all
        return ((al - be) * (al - ga), (be - al) * (be - ga), (ga - al) * (ga - be))


@functools.lru_cache(maxsize=None)
def roots() -> CubicRoots:
    """Newton iteration from 1.5 for the real root, then the quadratic cofactor.

    ``x**3 - x - 1 = (x - rho)(x**2 + rho*x + 1/rho)``, so the complex pair is
    ``(-rho +- i*sqrt(4/rho - rho**2)) / 2``.
    """
    x = 1.5
    for _ in range(100):
        step = (x**3 - x - 1) / (3 * x * x - 1)
        x -= step
        if abs(step) < 1e-17:
            break
    re = -x / 2
    im = math.sqrt(4 / x - x * x) / 2
    return CubicRoots(x, complex(re, im), complex(re, -im))


def binet(spec: RecurrenceSpec, n: int) -> float:
    """Root-power closed form for a plastic-family term, seeds ``(a, b, c)``.

    ``Z(n) = sum over roots x of ((x**2 - 1) a + x b + c) / f'(x) * x**n``.
    """
    require_plastic(spec)
    if n < 0:
        raise ValueError("binet requires n >= 0")
    a, b, c = spec.seeds
    total = 0j
    for x, d in zip(roots().all, roots().fprime):
        total += ((x * x - 1) * a + x * b + c) / d * x**n
    _check_real(total, spec.label, n)
    return total.real


def _check_real(z: complex, label: str, n: int) -> None:
    if abs(z.imag) > 1e-6 * (1 + abs(z.real)):
        raise ArithmeticError(f"{label}: Binet value at n={n} has imaginary residue {z.imag!r}")


def binet_vdl_as_printed(n: int) -> float:
    """``sum x**n / f'(x)`` over the roots, evaluated literally.

    This equals ``R(n-1)`` of the Van der Laan sequence, not ``R(n)``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    z = sum(x**n / d for x, d in zip(roots().all, roots().fprime))
    _check_real(z, "vdl-printed", n)
    return z.real


def binet_cordonnier_as_printed(n: int) -> float:
    """``sum x**(n+4) / f'(x)`` over the roots."""
    if n < 0:
        raise ValueError("n must be >= 0")
    z = sum(x ** (n + 4) / d for x, d in zip(roots().all, roots().fprime))
    _check_real(z, "cordonnier-printed", n)
    return z.real


def binet_perrin_power_sum(n: int) -> float:
    """Perrin term as the power sum of the three roots."""
    if n < 0:
        raise ValueError("n must be >= 0")
    z = sum(x**n for x in roots().all)
    _check_real(z, "perrin-power-sum", n)
    return z.real


def sum_first(spec: RecurrenceSpec, n: int) -> int:
    """``Z(0) + ... + Z(n)`` by direct accumulation."""
    require_plastic(spec)
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(terms(spec, 0, n))


def sum_first_identity(spec: RecurrenceSpec, n: int) -> int:
    """Right-hand side ``Z(n+5) - Z(4)`` of the linear sum identity."""
    require_plastic(spec)
    return term_at(spec, n + 5) - term_at(spec, 4)


@dataclass(frozen=True)
class SquareSumConstant:
    """Constant closing the sum-of-squares identity.

    ``anchor`` is fixed by requiring the identity at ``n = 3``; ``printed`` is
    ``2a(a-c) - (b+c)**2``.  The two disagree for every preset.
    """

    anchor: int
    printed: int

    @property
    def T(self) -> int:
        return self.anchor

    @property
    def agree(self) -> bool:
        return self.anchor == self.printed


def square_sum_constant(spec: RecurrenceSpec) -> SquareSumConstant:
    require_plastic(spec)
    z = terms(spec, 0, 5)
    anchor = sum(v * v for v in z[:4]) - z[5] ** 2 + z[2] ** 2 + z[0] ** 2
    a, b, c = spec.seeds
    return SquareSumConstant(anchor=anchor, printed=2 * a * (a - c) - (b + c) ** 2)


def sum_squares(spec: RecurrenceSpec, n: int) -> int:
    """``Z(0)**2 + ... + Z(n)**2`` by direct accumulation."""
    require_plastic(spec)
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(v * v for v in terms(spec, 0, n))


def sum_squares_identity(spec: RecurrenceSpec, n: int, T: int | None = None) -> int:
    """``Z(n+2)**2 - Z(n-1)**2 - Z(n-3)**2 + T``; ``T`` defaults to the anchor value.

    Indices below zero use the backward extension, so ``n = 0, 1, 2`` work too.
    """
    require_plastic(spec)
    if T is None:
        T = square_sum_constant(spec).anchor
    z = terms(spec, n - 3, n + 2)  # z[i] = Z(n - 3 + i)
    return z[5] ** 2 - z[2] ** 2 - z[0] ** 2 + T
