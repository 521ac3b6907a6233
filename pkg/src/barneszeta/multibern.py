"""Generalized r-ple Bernoulli polynomials.

``B_k^{(r)}(x, w)`` are the Taylor coefficients (times ``k!``) of

    t^r exp((w_1 + ... + w_r - x) t) / prod_i (exp(w_i t) - 1)

around ``t = 0``.  The generating function factors into one-variable blocks
``t exp((w_i - y_i) t) / (exp(w_i t) - 1)`` with ``sum(y_i) = x``.  Each block
has coefficients ``w^(k-1) (-1)^k B_k(y / w)`` in terms of the classical
Bernoulli polynomials, and the blocks are combined by binomial convolution.
The whole of ``x`` is carried by the first block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import Sequence

from .errors import DomainError, NumericalError

DEFAULT_MAX_INDEX = 64
EXACT_MAX_INDEX = 30


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """Classical Bernoulli numbers ``B_0..B_n`` as exact fractions (``B_1 = -1/2``)."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return tuple(b)


def classical_bernoulli_poly(k: int, x):
    """Classical Bernoulli polynomial ``B_k(x)``; exact if ``x`` is a Fraction."""
    bn = bernoulli_numbers(k)
    if isinstance(x, Fraction):
        return sum(math.comb(k, j) * bn[k - j] * x**j for j in range(k + 1))
    return math.fsum(math.comb(k, j) * float(bn[k - j]) * x**j for j in range(k + 1))


def validate_weights(w: Sequence[Real]) -> tuple:
    w = tuple(w)
    if len(w) < 1:
        raise DomainError("at least one weight is required")
    for wi in w:
        if not (math.isfinite(wi) and wi > 0):
            raise DomainError(f"weights must be finite and positive, got {wi!r}")
    return w


@dataclass(frozen=True)
class GenBernoulliTable:
    """Coefficients of ``B_k^{(r)}(x, w)`` for ``k = 0..K``, ascending in ``x``."""

    weights: tuple
    K: int
    coeffs: tuple[tuple, ...]
    exact: bool = False

    @property
    def r(self) -> int:
        return len(self.weights)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "weights": [float(w) for w in self.weights],
            "K": self.K,
            "coeffs": [[float(c) for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GenBernoulliTable":
        weights = validate_weights(float(w) for w in data["weights"])
        if data["r"] != len(weights):
            raise DomainError("r does not match the number of weights")
        coeffs = tuple(tuple(float(c) for c in row) for row in data["coeffs"])
        if len(coeffs) != data["K"] + 1 or any(len(row) != k + 1 for k, row in enumerate(coeffs)):
            raise DomainError("coefficient rows must have lengths 1..K+1")
        return cls(weights, int(data["K"]), coeffs)


def _block_poly(k: int, w, bn) -> list:
    # coefficients in y of w^(k-1) (-1)^k B_k(y / w)
    sign = -1 if k % 2 else 1
    return [sign * math.comb(k, j) * bn[k - j] * w ** (k - 1 - j) for j in range(k + 1)]


def gen_bernoulli_table(w: Sequence[Real], K: int = DEFAULT_MAX_INDEX,
                        exact: bool = False) -> GenBernoulliTable:
    """Build the table of ``B_k^{(r)}(x, w)`` for ``k <= K``.

    With ``exact=True`` the weights are converted to fractions (floats convert
    exactly) and every coefficient is rational.  Exact mode is meant as a
    reference for ``K <= 30``; it gets slow beyond that.
    """
    if K < 0 or int(K) != K:
        raise DomainError(f"K must be a nonnegative integer, got {K!r}")
    K = int(K)
    w = validate_weights(w)
    if exact:
        if K > EXACT_MAX_INDEX:
            raise DomainError(f"exact mode supports K <= {EXACT_MAX_INDEX}")
        ws = [Fraction(wi) for wi in w]
        bn = bernoulli_numbers(K)
    else:
        ws = [float(wi) for wi in w]
        bn = [float(b) for b in bernoulli_numbers(K)]

    k = 0
    try:
        polys = []
        for k in range(K + 1):
            polys.append(_block_poly(k, ws[0], bn))
        for wi in ws[1:]:
            # the remaining blocks are evaluated at y = 0
            q = []
            for k in range(K + 1):
                q.append((-1 if k % 2 else 1) * bn[k] * wi ** (k - 1))
            polys = _convolve(polys, q, K)
    except OverflowError:
        raise NumericalError(f"Bernoulli coefficients overflow at index k={k}") from None

    if not exact:
        for k, row in enumerate(polys):
            if not all(math.isfinite(c) for c in row):
                raise NumericalError(f"Bernoulli coefficients overflow at index k={k}")
    return GenBernoulliTable(tuple(w), K, tuple(tuple(row) for row in polys), exact)


def _convolve(polys, q, K):
    # binomial convolution of the polynomial rows with a constant block
    new = []
    for k in range(K + 1):
        row = [0] * (k + 1)
        for j in range(k + 1):
            c = math.comb(k, j) * q[k - j]
            if c == 0:
                continue
            for d, pc in enumerate(polys[j]):
                row[d] += c * pc
        new.append(row)
    return new


def eval_bernoulli(table: GenBernoulliTable, k: int, x):
    """Evaluate ``B_k^{(r)}(x, w)`` from the table by Horner's rule."""
    if not 0 <= k <= table.K:
        raise IndexError(f"index {k} outside table range 0..{table.K}")
    acc = 0
    for c in reversed(table.coeffs[k]):
        acc = acc * x + c
    return acc


def bernoulli_values(table: GenBernoulliTable, x) -> list:
    """``[B_0^{(r)}(x, w), ..., B_K^{(r)}(x, w)]``."""
    return [eval_bernoulli(table, k, x) for k in range(table.K + 1)]


@lru_cache(maxsize=256)
def cached_table(w: tuple, K: int = DEFAULT_MAX_INDEX) -> GenBernoulliTable:
    """Shared float table keyed by ``(w, K)``; entries are immutable once built."""
    return gen_bernoulli_table(w, K)


@lru_cache(maxsize=1024)
def taylor_coefficients(w: tuple, a: float, K: int = DEFAULT_MAX_INDEX) -> tuple[float, ...]:
    """``B_k^{(r)}(a, w) / k!`` for ``k <= K``, the Laurent coefficients of the kernel."""
    table = cached_table(w, K)
    return tuple(v / math.factorial(k) for k, v in enumerate(bernoulli_values(table, a)))


def f_wn(w: Sequence[Real], n: int, a):
    """``(w1 + w2)^2 a^n - w1^2 (a - w2)^n - w2^2 (a - w1)^n``."""
    w1, w2 = _pair(w)
    if n < 1:
        raise DomainError("n must be a positive integer")
    return (w1 + w2) ** 2 * a**n - w1**2 * (a - w2) ** n - w2**2 * (a - w1) ** n


def f_wn_coeffs(w: Sequence[Real], n: int) -> list:
    """Coefficients of ``f_wn`` as a polynomial in ``a``, ascending degree.

    Exact when the weights are ints or Fractions.
    """
    w1, w2 = _pair(w)
    if n < 1:
        raise DomainError("n must be a positive integer")
    out = []
    for j in range(n + 1):
        c = math.comb(n, j)
        term = -w1**2 * c * (-w2) ** (n - j) - w2**2 * c * (-w1) ** (n - j)
        if j == n:
            term += (w1 + w2) ** 2
        out.append(term)
    return out


def _pair(w):
    w = tuple(w)
    if len(w) != 2:
        raise DomainError("this operation is defined for two weights only")
    validate_weights(w)
    return w
