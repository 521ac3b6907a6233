"""Real zeros of the Barnes double zeta function and of its relatives.

The zero in ``(1, 2)`` is located on ``H(sigma) = Gamma(sigma) zeta_2(sigma)``,
which is the Mellin integral of ``G_2`` and has the same zeros as ``zeta_2``
there.  ``H`` tends to ``+inf`` at 1 and ``-inf`` at 2 when
``a < (w1 + w2) / 2``, so a bracket is found by moving the endpoints toward
1 and 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import zeta as zt
from .errors import DomainError, NumericalError
from .kernel import BarnesParams, find_t0
from .multibern import cached_table, eval_bernoulli
from .gammafn import gamma

GRID_SIZE = 64
DELTA_STEPS = 31
POLE_OFFSETS = (1e-2, 1e-3, 1e-4, 1e-5)


@dataclass
class ZeroReport:
    interval: tuple[float, float]
    exists: bool
    criterion_value: float
    zero: Optional[float] = None
    residual: float = 0.0
    bracket_trace: list = field(default_factory=list)
    monotone_check: Optional[bool] = None
    slope: Optional[float] = None
    inconclusive: bool = False
    criterion_agrees: Optional[bool] = None

    def to_json(self) -> dict:
        out = {
            "interval": list(self.interval),
            "exists": self.exists,
            "criterion": self.criterion_value,
            "zero": self.zero,
            "residual": self.residual,
            "monotone": self.monotone_check,
            "trace": [[s, sg] for s, sg in self.bracket_trace],
        }
        if self.slope is not None:
            out["slope"] = self.slope
        if self.criterion_agrees is not None:
            out["inconclusive"] = self.inconclusive
            out["criterion_agrees"] = self.criterion_agrees
        return out


def _sign(x) -> int:
    return 1 if x > 0 else (-1 if x < 0 else 0)


def _pair(w):
    w = tuple(w)
    if len(w) != 2:
        raise DomainError("two weights are required")
    return w


def zero_exists_12(w: Sequence[float], a: float) -> bool:
    """Whether ``zeta_2(sigma, w, a)`` vanishes somewhere in ``(1, 2)``."""
    w1, w2 = _pair(w)
    BarnesParams((w1, w2), a)
    return a < (w1 + w2) / 2


def open_grid(lo: float, hi: float, n: int = GRID_SIZE) -> np.ndarray:
    """``n`` equally spaced points strictly inside ``(lo, hi)``."""
    return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)


def _bracket(f: Callable, lo_end: float, hi_end: float, trace: list):
    # expects f > 0 near lo_end and f < 0 near hi_end
    lo = hi = None
    for k in range(DELTA_STEPS):
        delta = 0.25 * 2.0**-k * (hi_end - lo_end)
        if lo is None:
            x = lo_end + delta
            v = f(x)
            trace.append((x, _sign(v)))
            if v > 0:
                lo = x
        if hi is None:
            x = hi_end - delta
            v = f(x)
            trace.append((x, _sign(v)))
            if v < 0:
                hi = x
        if lo is not None and hi is not None:
            return lo, hi
    raise NumericalError("no (+, -) bracket found; end-point limits were not reached")


def strip_function(p: BarnesParams, cfg=None) -> Callable[[float], float]:
    """``sigma -> Gamma(sigma) zeta_2(sigma, w, a)`` on ``(1, 2)``."""
    return lambda sigma: zt.mellin_strip2(p, float(sigma), cfg)[0]


def find_zero_12(w: Sequence[float], a: float, tol: float = 1e-15, grid_size: int = GRID_SIZE,
                 cfg=None) -> ZeroReport:
    """The unique simple zero of ``zeta_2(sigma, w, a)`` in ``(1, 2)``.

    Also checks that ``t0^-sigma H(sigma)`` decreases on a grid of ``(1, 2)``
    and records its central-difference slope at the zero.
    """
    p = BarnesParams(_pair(w), a)
    crit = (p.w[0] + p.w[1]) / 2 - a
    if not crit > 0:
        raise DomainError("a zero in (1, 2) needs a < (w1 + w2) / 2")
    H = strip_function(p, cfg)
    trace: list = []
    lo, hi = _bracket(H, 1.0, 2.0, trace)
    beta = brentq(H, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = H(beta) / gamma(beta)

    t0 = find_t0(p)
    F = lambda sigma: t0 ** -sigma * H(sigma)
    values = np.array([F(x) for x in open_grid(1.0, 2.0, grid_size)])
    monotone = bool(np.all(np.diff(values) < 0))
    h = 1e-4
    slope = (F(beta + h) - F(beta - h)) / (2 * h)
    return ZeroReport((1.0, 2.0), True, crit, float(beta), float(residual), trace, monotone, float(slope))


def report_12(w: Sequence[float], a: float, tol: float = 1e-15, grid_size: int = GRID_SIZE,
              cfg=None) -> ZeroReport:
    """Zero report for ``(1, 2)`` for any ``a``; without a zero the grid signs are traced."""
    w = _pair(w)
    if zero_exists_12(w, a):
        return find_zero_12(w, a, tol, grid_size, cfg)
    p = BarnesParams(w, a)
    H = strip_function(p, cfg)
    trace = [(float(x), _sign(H(x))) for x in open_grid(1.0, 2.0, grid_size)]
    found = any(sg >= 0 for _, sg in trace)
    return ZeroReport((1.0, 2.0), found, (w[0] + w[1]) / 2 - a, None, 0.0, trace, None)


def hurwitz_function(a: float, cfg=None) -> Callable[[float], float]:
    """``sigma -> Gamma(sigma) zeta(sigma, a)`` from the r = 1 continuation."""
    p = BarnesParams((1.0,), a)
    return lambda sigma: zt.mellin_general(p, float(sigma), cfg=cfg)[0]


def hurwitz_beta(a: float, tol: float = 1e-15, cfg=None) -> ZeroReport:
    """The unique zero of ``zeta(sigma, a)`` in ``(0, 1)`` for ``0 < a < 1/2``."""
    if not 0 < a < 0.5:
        raise DomainError("a zero in (0, 1) needs 0 < a < 1/2")
    H = hurwitz_function(a, cfg)
    trace: list = []
    lo, hi = _bracket(H, 0.0, 1.0, trace)
    beta = brentq(H, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = H(beta) / gamma(beta)
    return ZeroReport((0.0, 1.0), True, 0.5 - a, float(beta), float(residual), trace)


def hurwitz_asymptotic(a: float) -> float:
    """Leading terms ``1 - a + a^2 log a`` of the zero in ``(0, 1)`` as ``a -> 0``."""
    return 1 - a + a * a * math.log(a)


def bernoulli_criterion(p: BarnesParams, N: int) -> float:
    """``B_{r+N+1}^{(r)}(a, w) * B_{r+N}^{(r)}(a, w)``; positive values force a zero in ``(-N-1, -N)``."""
    if int(N) != N or N < -p.r:
        raise DomainError(f"N must be an integer >= -r = {-p.r}")
    k = p.r + int(N)
    table = cached_table(p.w, max(64, k + 1))
    return eval_bernoulli(table, k + 1, p.a) * eval_bernoulli(table, k, p.a)


def _scan_points(p: BarnesParams, N: int, grid_size: int) -> list[float]:
    left, right = float(-N - 1), float(-N)
    pts = list(open_grid(left, right, grid_size))
    for end, inward in ((left, 1.0), (right, -1.0)):
        if end <= 0:
            pts.append(end)
        else:
            # positive end points are poles; approach them from inside
            pts.extend(end + inward * d for d in POLE_OFFSETS)
    return sorted(pts)


def scan_negative_interval(p: BarnesParams, N: int, grid_size: int = GRID_SIZE, cfg=None) -> ZeroReport:
    """Grid search for real zeros of ``zeta_r`` in ``(-N-1, -N)``.

    End points that are nonpositive integers use the special values; end
    points that are poles are approached from inside.  No sign change on the
    grid is weak evidence of absence and is flagged ``inconclusive``.
    """
    crit = bernoulli_criterion(p, N)
    N = int(N)
    left, right = float(-N - 1), float(-N)
    f = lambda x: zt.zeta(p, x, cfg).value
    trace = [(x, f(x)) for x in _scan_points(p, N, grid_size)]
    zero = None
    residual = 0.0
    for (x0, v0), (x1, v1) in zip(trace, trace[1:]):
        if v0 == 0:
            zero = x0
            break
        if v0 * v1 < 0:
            zero = brentq(f, x0, x1, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)
            residual = f(zero)
            break
    exists = zero is not None
    return ZeroReport(
        (left, right), exists, crit, None if zero is None else float(zero), float(residual),
        [(x, _sign(v)) for x, v in trace], None,
        inconclusive=not exists, criterion_agrees=(crit > 0) == exists,
    )


class CurvePoint(NamedTuple):
    a: float
    beta: Optional[float]
    error: Optional[str] = None


def beta_curve(w: Sequence[float], a_values: Sequence[float], tol: float = 1e-15) -> list[CurvePoint]:
    """Zero in ``(1, 2)`` for each ``a``; failures are recorded and the sweep continues."""
    out = []
    for a in a_values:
        try:
            out.append(CurvePoint(a, find_zero_12(w, a, tol).zero))
        except (DomainError, NumericalError) as exc:
            out.append(CurvePoint(a, None, str(exc)))
    return out


def is_decreasing(curve: Sequence[CurvePoint]) -> Optional[bool]:
    """Whether the found zeros decrease with ``a``; ``None`` if fewer than two points succeeded."""
    pts = sorted((c.a, c.beta) for c in curve if c.beta is not None)
    if len(pts) < 2:
        return None
    return all(b1 < b0 for (_, b0), (_, b1) in zip(pts, pts[1:]))
