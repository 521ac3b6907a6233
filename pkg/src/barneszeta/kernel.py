"""The Barnes kernel and its subtracted forms.

The kernel is ``exp((sum(w) - a) t) / prod_i (exp(w_i t) - 1)``, evaluated here
in the equivalent overflow-free form ``exp(-a t) / prod_i (1 - exp(-w_i t))``.
Subtracting its Laurent expansion through ``t^N`` gives ``_N G_r``, which is
``O(t^(N+1))`` at the origin.  For ``r = 2`` and ``N = -2`` this is ``G_2``;
``g_2`` and ``h_2`` are the auxiliary functions used to read off its sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalError
from .multibern import DEFAULT_MAX_INDEX, taylor_coefficients, validate_weights
from .quad import radius

TAIL_TERMS = 24
SWITCH_FRACTION = 0.1


@dataclass(frozen=True)
class BarnesParams:
    w: tuple
    a: float

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(float(x) for x in validate_weights(self.w)))
        if not (math.isfinite(self.a) and self.a > 0):
            raise DomainError(f"shift a must be finite and positive, got {self.a!r}")
        object.__setattr__(self, "a", float(self.a))

    @property
    def r(self) -> int:
        return len(self.w)

    def scaled(self, c: float) -> "BarnesParams":
        return BarnesParams(tuple(c * x for x in self.w), c * self.a)


def switch_point(w: Sequence[float]) -> float:
    """Below this ``t`` the subtracted kernel is summed from its Taylor tail."""
    return SWITCH_FRACTION * radius(w)


def _positive(t):
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("t must be positive")
    return arr


def _out(x, like):
    return float(x) if np.ndim(like) == 0 else x


def kernel_full(p: BarnesParams, t):
    """Full kernel; tends to ``exp(-a t)`` as ``t -> inf``."""
    tt = _positive(t)
    val = np.exp(-p.a * tt)
    for wi in p.w:
        val = val / -np.expm1(-wi * tt)
    return _out(val, t)


def check_order(p: BarnesParams, N: int) -> int:
    if int(N) != N or N < -p.r:
        raise DomainError(f"subtraction order N must be an integer >= -r = {-p.r}")
    return int(N)


def laurent_coefficients(p: BarnesParams, upto: int) -> tuple[float, ...]:
    """``B_k^{(r)}(a, w) / k!`` for ``k <= upto``; coefficient of ``t^(k - r)``."""
    return taylor_coefficients(p.w, p.a, max(DEFAULT_MAX_INDEX, upto))[: upto + 1]


def near_zero_series(p: BarnesParams, N: int):
    """``(t_switch, coeffs, powers)`` of the Taylor tail of ``_N G_r`` below the switch point."""
    N = check_order(p, N)
    lo, hi = N + p.r + 1, N + p.r + TAIL_TERMS
    c = laurent_coefficients(p, hi)
    ks = range(lo, hi + 1)
    return switch_point(p.w), [c[k] for k in ks], [k - p.r for k in ks]


def _powsum(coeffs, powers, t):
    acc = np.zeros_like(t)
    for c, e in zip(coeffs, powers):
        acc = acc + c * t**e
    return acc


def kernel_subtracted(p: BarnesParams, N: int, t):
    """``_N G_r(a, w, t)``: full kernel minus its expansion through ``t^N``."""
    tt = _positive(t)
    N = check_order(p, N)
    t_sw, tail_c, tail_p = near_zero_series(p, N)
    c = laurent_coefficients(p, N + p.r)
    head_p = [k - p.r for k in range(N + p.r + 1)]
    tt1 = np.atleast_1d(tt)
    out = np.empty_like(tt1)
    small = tt1 < t_sw
    if np.any(small):
        # sum the smallest terms first
        ts = tt1[small]
        out[small] = _powsum(tail_c[::-1], tail_p[::-1], ts)
    if np.any(~small):
        tl = tt1[~small]
        out[~small] = kernel_full(p, tl) - _powsum(c, head_p, tl)
    return _out(out[0], t) if np.ndim(t) == 0 else out.reshape(tt.shape)


def _require_pair(p: BarnesParams):
    if p.r != 2:
        raise DomainError("defined for r = 2 only")
    return p.w[0], p.w[1], p.a


def G2(p: BarnesParams, t):
    """``kernel - 1 / (w1 w2 t^2)``."""
    _require_pair(p)
    return kernel_subtracted(p, -2, t)


def g2(p: BarnesParams, t):
    """``w1 w2 t^2 (e^{w1 t} - 1)(e^{w2 t} - 1) G_2``; same sign as ``G_2``."""
    w1, w2, _ = _require_pair(p)
    tt = _positive(t)
    return _out(w1 * w2 * tt**2 * np.expm1(w1 * tt) * np.expm1(w2 * tt) * G2(p, tt), t)


def g2_derivatives(p: BarnesParams, t):
    """Closed forms of ``(g_2', g_2'')``."""
    w1, w2, a = _require_pair(p)
    tt = _positive(t)
    W = w1 + w2
    P = w1 * w2
    E = np.exp((W - a) * tt)
    d1 = (2 * P * tt * E + P * (W - a) * tt**2 * E
          - W * np.exp(W * tt) + w1 * np.exp(w1 * tt) + w2 * np.exp(w2 * tt))
    d2 = (2 * P * E + 4 * P * (W - a) * tt * E + P * (W - a) ** 2 * tt**2 * E
          - W**2 * np.exp(W * tt) + w1**2 * np.exp(w1 * tt) + w2**2 * np.exp(w2 * tt))
    return _out(d1, t), _out(d2, t)


def h2_family(p: BarnesParams, t):
    """``(h_2, h_2', h_2'', h_2''')`` with ``h_2 = e^{(a - w1 - w2) t} g_2'``."""
    w1, w2, a = _require_pair(p)
    tt = _positive(t)
    W = w1 + w2
    P = w1 * w2
    ea = np.exp(a * tt)
    e1 = np.exp((a - w2) * tt)
    e2 = np.exp((a - w1) * tt)
    h0 = 2 * P * tt + P * (W - a) * tt**2 - W * ea + w1 * e1 + w2 * e2
    h1 = 2 * P + 2 * P * (W - a) * tt - a * W * ea + w1 * (a - w2) * e1 + w2 * (a - w1) * e2
    h2 = 2 * P * (W - a) - a**2 * W * ea + w1 * (a - w2) ** 2 * e1 + w2 * (a - w1) ** 2 * e2
    h3 = -(a**3) * W * ea + w1 * (a - w2) ** 3 * e1 + w2 * (a - w1) ** 3 * e2
    return tuple(_out(h, t) for h in (h0, h1, h2, h3))


def find_t0(p: BarnesParams, rtol: float = 1e-12, max_steps: int = 60) -> float:
    """The unique ``t0 > 0`` where ``G_2`` changes sign from + to -.

    Requires ``a < (w1 + w2) / 2``; otherwise ``G_2 < 0`` on all of ``t > 0``.
    The bracket is searched on ``t_switch * 2^(+-j)`` and refined by bisection.
    """
    w1, w2, a = _require_pair(p)
    if not a < (w1 + w2) / 2:
        raise DomainError("no sign change: G2 < 0 for all t > 0 when a >= (w1 + w2) / 2")
    t = switch_point(p.w)
    if G2(p, t) > 0:
        lo = t
        for _ in range(max_steps):
            hi = 2 * lo
            if G2(p, hi) <= 0:
                break
            lo = hi
        else:
            raise NumericalError("no sign change of G2 found within the scan range")
    else:
        hi = t
        for _ in range(max_steps):
            lo = hi / 2
            if G2(p, lo) > 0:
                break
            hi = lo
        else:
            raise NumericalError("no sign change of G2 found within the scan range")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if G2(p, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
