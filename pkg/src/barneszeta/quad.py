"""Adaptive Gauss-Kronrod quadrature for the Mellin-type integrals.

Two shapes are needed: a head integral over ``(0, lambda]`` whose integrand
may have an integrable power singularity at 0, and a tail integral over
``[lambda, inf)`` whose integrand decays like ``exp(-a t)``.  Both multiply the
user integrand ``f(t)`` by ``t^(s-1)``; ``s`` may be complex, in which case the
real and imaginary parts are integrated together as one complex array.

Integrands are called with 1-d numpy arrays and must return arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError

_EPS = np.finfo(float).eps

# 15-point Kronrod nodes on [-1, 1] and the embedded 7-point Gauss rule
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG7 = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (from the outside in)
for _i, _wg in zip((1, 3, 5, 7), _WG7):
    GAUSS_WEIGHTS[_i] = _wg
    GAUSS_WEIGHTS[14 - _i] = _wg

MAX_INTERVALS = 20000


@dataclass(frozen=True)
class QuadConfig:
    lam: float
    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_depth: int = 40
    tail_cut: Optional[float] = None

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("split point lambda must be positive")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")
        if self.tail_cut is not None and not self.tail_cut > self.lam:
            raise DomainError("tail cut must exceed lambda")

    @classmethod
    def for_weights(cls, w: Sequence[float], **overrides) -> "QuadConfig":
        """Default config: lambda at half the radius ``min(2 pi / w_i)``."""
        if overrides.get("lam") is None:
            overrides["lam"] = 0.5 * radius(w)
        return cls(**overrides)

    def check_weights(self, w: Sequence[float]) -> None:
        if not self.lam < radius(w):
            raise DomainError(
                f"lambda={self.lam:g} must lie below min(2 pi / w_i) = {radius(w):g}")

    def with_(self, **changes) -> "QuadConfig":
        return replace(self, **changes)


def radius(w: Sequence[float]) -> float:
    """Convergence radius ``min(2 pi / w_i)`` of the kernel's Laurent expansion."""
    return 2 * math.pi / max(w)


class QuadResult(NamedTuple):
    value: complex | float
    err_est: float
    converged: bool


def _result(value, err, ok) -> QuadResult:
    return QuadResult(_scalar(value), float(err), bool(ok))


def _gk15(g, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * NODES[None, :]
    fx = np.asarray(g(x.ravel())).reshape(x.shape)
    k = h * (fx @ KRONROD_WEIGHTS)
    gv = h * (fx @ GAUSS_WEIGHTS)
    resabs = h * (np.abs(fx) @ KRONROD_WEIGHTS)
    return k, np.abs(k - gv), 50 * _EPS * resabs


def adaptive(g: Callable, edges, abs_tol: float, rel_tol: float, max_depth: int = 40) -> QuadResult:
    """Integrate ``g`` over ``[edges[0], edges[-1]]`` starting from the given panels.

    Panels carrying the bulk of the error estimate are bisected until the
    summed estimate drops below ``max(abs_tol, rel_tol * |value|)``.  The
    estimate per panel is the Gauss/Kronrod difference, floored by a roundoff
    allowance.
    """
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1], edges[1:]
    depth = np.zeros(len(a), dtype=int)
    val, kg, floor = _gk15(g, a, b)
    while True:
        err_i = np.maximum(kg, floor)
        total = val.sum()
        err = float(err_i.sum())
        target = max(abs_tol, rel_tol * abs(total))
        if err <= target:
            return _result(total, err, True)
        order = np.argsort(err_i)[::-1]
        remaining = err - np.cumsum(err_i[order])
        n = int(np.searchsorted(-remaining, -0.5 * target)) + 1
        pick = order[:n]
        pick = pick[(depth[pick] < max_depth) & (kg[pick] > floor[pick])]
        if len(pick) == 0 or len(a) + len(pick) > MAX_INTERVALS:
            return _result(total, err, False)
        keep = np.ones(len(a), dtype=bool)
        keep[pick] = False
        mid = 0.5 * (a[pick] + b[pick])
        na = np.concatenate([a[pick], mid])
        nb = np.concatenate([mid, b[pick]])
        nd = np.concatenate([depth[pick], depth[pick]]) + 1
        v2, kg2, f2 = _gk15(g, na, nb)
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        depth = np.concatenate([depth[keep], nd])
        val = np.concatenate([val[keep], v2])
        kg = np.concatenate([kg[keep], kg2])
        floor = np.concatenate([floor[keep], f2])


def _scalar(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


def _weighted(f, s):
    if isinstance(s, complex) and s.imag != 0:
        return lambda t: f(t) * np.power(t.astype(complex), s - 1)
    sr = float(getattr(s, "real", s))
    return lambda t: f(t) * np.power(t, sr - 1)


def integrate(f: Callable, lo: float, hi: float, s=1.0, abs_tol: float = 1e-13,
              rel_tol: float = 1e-11, max_depth: int = 40, panels: int = 4) -> QuadResult:
    """``int_lo^hi f(t) t^(s-1) dt`` on a finite interval away from 0."""
    if not hi > lo:
        raise DomainError("integration bounds must satisfy lo < hi")
    return adaptive(_weighted(f, s), np.linspace(lo, hi, panels + 1), abs_tol, rel_tol, max_depth)


def integrate_head(f: Callable, s, cfg: QuadConfig, near_zero=None, max_panels: int = 200) -> QuadResult:
    """``int_0^lambda f(t) t^(s-1) dt``.

    ``near_zero``, if given, is ``(t_switch, coeffs, powers)`` describing a
    convergent expansion ``f(t) = sum c_k t^p_k`` on ``(0, t_switch]``; that
    piece is then integrated term by term and only ``[t_switch, lambda]`` is
    handled numerically.  Without it, geometric panels
    ``[lambda 2^-(j+1), lambda 2^-j]`` are laid toward 0 and the part below
    the last panel is extrapolated from the panel ratios.
    """
    lam = cfg.lam
    g = _weighted(f, s)
    if near_zero is not None:
        t_sw, coeffs, powers = near_zero
        if not 0 < t_sw <= lam:
            raise DomainError("series switch point must lie in (0, lambda]")
        analytic = 0j
        for c, p in zip(coeffs, powers):
            e = s + p
            if getattr(e, "real", e) <= 0:
                raise DomainError("near-zero expansion is not integrable at 0")
            analytic += c * t_sw**e / e
        if t_sw == lam:
            return _result(analytic, 0.0, True)
        res = adaptive(g, np.geomspace(t_sw, lam, 5), cfg.abs_tol, cfg.rel_tol, cfg.max_depth)
        return _result(res.value + analytic, res.err_est, res.converged)

    edges = lam * 2.0 ** -np.arange(max_panels + 1.0)
    pv, _, _ = _gk15(g, edges[1:], edges[:-1])
    absv = np.abs(pv)
    partial = np.cumsum(pv)
    best = None
    for J in range(3, max_panels):
        q = pv[J] / pv[J - 1] if pv[J - 1] != 0 else 0.0
        q_prev = pv[J - 1] / pv[J - 2] if pv[J - 2] != 0 else 0.0
        if abs(q) >= 1 or abs(q_prev) >= 1:
            continue
        s_j = partial[J] + pv[J] * q / (1 - q)
        s_prev = partial[J - 1] + pv[J - 1] * q_prev / (1 - q_prev)
        tail_err = abs(s_j - s_prev)
        target = max(cfg.abs_tol, cfg.rel_tol * abs(s_j))
        best = (J, pv[J] * q / (1 - q), tail_err)
        if tail_err <= 0.25 * target or absv[J] <= 0.25 * target * _EPS:
            break
    if best is None:
        return _result(partial[-1], float("inf"), False)
    J, rem, tail_err = best
    res = adaptive(g, edges[: J + 2][::-1], cfg.abs_tol, cfg.rel_tol, cfg.max_depth)
    err = res.err_est + tail_err
    target = max(cfg.abs_tol, cfg.rel_tol * abs(res.value + rem))
    return _result(res.value + rem, err, res.converged and err <= target)


def tail_bound(C: float, sigma: float, decay: float, T: float) -> float:
    """Upper bound of ``C int_T^inf exp(-decay t) t^(sigma-1) dt``.

    Valid when ``T >= 2 (sigma - 1) / decay``.
    """
    factor = 2.0 if sigma > 1 else 1.0
    return C * factor * T ** (sigma - 1) * math.exp(-decay * T) / decay


def integrate_tail(f: Callable, s, decay: float, cfg: QuadConfig, bound: Optional[float] = None) -> QuadResult:
    """``int_lambda^inf f(t) t^(s-1) dt`` for ``|f(t)| <= C exp(-decay t)``.

    ``bound`` is the constant ``C``; when omitted it is estimated from samples
    of ``|f(t)| exp(decay t)`` and doubled.  The range is cut at ``T`` where
    the analytic tail bound falls below ``abs_tol / 2``; that bound is added to
    the error estimate.
    """
    if not decay > 0:
        raise DomainError("decay rate must be positive")
    lam = cfg.lam
    sigma = float(getattr(s, "real", s))
    if bound is None:
        ts = lam + np.geomspace(1e-3, 60.0, 64) / decay
        bound = 2.0 * float(np.max(np.abs(f(ts)) * np.exp(decay * ts)))
        bound = max(bound, float(abs(f(np.array([lam]))[0])) * math.exp(decay * lam))
    if cfg.tail_cut is not None:
        T = cfg.tail_cut
    else:
        T = max(2 * lam, 2 * max(sigma - 1, 0.0) / decay + lam)
        while tail_bound(bound, sigma, decay, T) >= 0.5 * cfg.abs_tol:
            T += 1.0 / decay
    trunc = tail_bound(bound, sigma, decay, T) if T >= 2 * max(sigma - 1, 0) / decay else float("inf")
    n = max(1, int(math.ceil(math.log2(T / lam))))
    edges = np.unique(np.concatenate([lam * 2.0 ** np.arange(n), [T]]))
    edges = edges[edges <= T]
    res = adaptive(_weighted(f, s), edges, cfg.abs_tol, cfg.rel_tol, cfg.max_depth)
    err = res.err_est + trunc
    target = max(cfg.abs_tol, cfg.rel_tol * abs(res.value))
    return _result(res.value, err, res.converged and err <= target)
