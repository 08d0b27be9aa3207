"""Integer circulant matrices and the brute-force oracles used to check closed forms.

Conventions: entry ``(i, j)`` of ``circ(c0, ..., c_{n-1})`` is ``c[(j - i) % n]``
and the spectrum is ``lam_j = sum_k c_k * w**(-j*k)`` with ``w = exp(2*pi*i/n)``,
listed in order of ``j`` (never sorted).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import divexact, mpz

from .recurrence import RecurrenceSpec, terms

__all__ = [
    "CirculantInt",
    "Spectrum",
    "build_from_sequence",
    "eig_oracle",
    "det_exact",
    "det_eigprod",
    "norm_oracle",
    "one_inf_norms",
    "is_normal",
    "fourier_vector",
    "roots_of_unity_powers",
]


@dataclass(frozen=True)
class CirculantInt:
    first_row: tuple[int, ...]

    def __post_init__(self):
        row = tuple(int(v) for v in self.first_row)
        if not row:
            raise ValueError("a circulant needs at least one entry")
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return len(self.first_row)

    def dense(self) -> np.ndarray:
        """Exact dense matrix as an object array of Python ints."""
        n = self.n
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        row = np.empty(n, dtype=object)
        row[:] = self.first_row
        return row[idx]

    def row_sum(self) -> int:
        return sum(self.first_row)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.first_row)


@dataclass(frozen=True)
class Spectrum:
    values: tuple[complex, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)


def build_from_sequence(spec: RecurrenceSpec, n: int) -> CirculantInt:
    """``circ(Z0, ..., Z_{n-1})`` for the sequence described by ``spec``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return CirculantInt(tuple(terms(spec, 0, n - 1)))


def roots_of_unity_powers(n: int) -> np.ndarray:
    """Matrix ``F[j, k] = w**(-j*k)``; exponents reduced mod n before exp."""
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(-2j * np.pi * jk / n)


def eig_oracle(m: CirculantInt) -> Spectrum:
    """Direct O(n^2) summation of ``sum_k c_k w**(-jk)`` for every j."""
    row = np.array([float(v) for v in m.first_row])
    lam = roots_of_unity_powers(m.n) @ row
    return Spectrum(tuple(complex(v) for v in lam))


def _bareiss(a: list[list[mpz]]) -> int:
    n = len(a)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        tail = a[k][k + 1:]
        for i in range(k + 1, n):
            row = a[i]
            aik = row[k]
            # every update is an exact division by the previous pivot
            row[k + 1:] = [divexact(x * akk - aik * y, prev) for x, y in zip(row[k + 1:], tail)]
        prev = akk
    return sign * int(a[n - 1][n - 1])


def det_exact(m: CirculantInt) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    return _bareiss([[mpz(v) for v in r] for r in m.dense().tolist()])


def det_eigprod(m: CirculantInt) -> complex:
    """Product of the oracle eigenvalues."""
    prod = 1 + 0j
    for v in eig_oracle(m).values:
        prod *= v
    return prod


def norm_oracle(m: CirculantInt) -> float:
    """Spectral norm as the largest eigenvalue modulus (circulants are normal)."""
    return float(np.max(np.abs(eig_oracle(m).as_array())))


def one_inf_norms(m: CirculantInt) -> tuple[int, int]:
    """Exact ``(||M||_1, ||M||_inf)``: max absolute column sum and row sum."""
    a = np.abs(m.dense())
    return int(max(a.sum(axis=0))), int(max(a.sum(axis=1)))


def is_normal(m: CirculantInt) -> bool:
    """``M M^T == M^T M`` in exact integer arithmetic."""
    a = m.dense()
    return bool(np.array_equal(a @ a.T, a.T @ a))


def fourier_vector(n: int, j: int) -> np.ndarray:
    """``(1, w**(-j), w**(-2j), ...)``: eigenvector of every n x n circulant for ``lam_j``."""
    k = (j * np.arange(n)) % n
    return np.exp(-2j * np.pi * k / n)
