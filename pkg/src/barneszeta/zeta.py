"""Evaluation of the Barnes r-ple zeta function ``zeta_r(s, w, a)``.

Four routes, each recorded in ``EvalResult.method``:

``series``
    Lattice sum for ``Re(s) > r``.  The innermost direction is summed to a
    cutoff and the remainder is added by Euler-Maclaurin; the recursion over
    directions uses ``int_A^inf zeta_{r-1}(s, w', x) dx = zeta_{r-1}(s-1, w', A) / (s-1)``.
``strip2``
    ``Gamma(s) zeta_2 = int_0^inf G_2(t) t^(s-1) dt`` for real ``1 < s < 2``.
``general``
    Split at ``lambda``: the full kernel on ``[lambda, inf)``, the kernel with
    its expansion through ``t^(N+1)`` removed on ``(0, lambda]``, and the
    removed terms integrated in closed form.  Valid for ``Re(s) > -N-2``.
``special_value``
    ``zeta_r(-n) = (-1)^n n! / (n+r)! B_{n+r}^{(r)}(a, w)``.
"""

from __future__ import annotations

import cmath
import decimal
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernel as kn
from .errors import DomainError, NumericalError, PoleError
from .gammafn import gamma
from .multibern import bernoulli_numbers, cached_table, eval_bernoulli
from .quad import QuadConfig, integrate_head, integrate_tail

POLE_RADIUS = 1e-6
EM_TERMS = 10
METHODS = ("series", "strip2", "general", "special_value", "hurwitz_reduction")


@dataclass(frozen=True)
class EvalResult:
    value: complex | float
    err_est: float
    method: str
    converged: bool = True

    def to_json(self) -> dict:
        out = {"method": self.method}
        if isinstance(self.value, complex):
            out["value"] = self.value.real
            out["value_imag"] = self.value.imag
        else:
            out["value"] = self.value
        out["err_est"] = self.err_est
        out["converged"] = self.converged
        return out


def _as_point(s):
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError("s must be finite")
    return s


def _finish(value: complex, s: complex):
    return value.real if s.imag == 0 else value


def is_nonpositive_integer(s) -> bool:
    s = complex(s)
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def check_poles(r: int, s) -> None:
    s = complex(s)
    for j in range(1, r + 1):
        if abs(s - j) < POLE_RADIUS:
            raise PoleError(j)


def _bern_ratio(j: int) -> float:
    # B_{2j} / (2j)!
    return float(bernoulli_numbers(2 * j)[2 * j]) / math.factorial(2 * j)


def _poch(s: complex, k: int) -> complex:
    out = 1 + 0j
    for i in range(k):
        out *= s + i
    return out


def _em(s: complex, w: tuple, a: float, terms: int):
    """Euler-Maclaurin evaluation of the lattice sum; returns ``(value, err)``."""
    if not w:
        return a ** (-s), 0.0
    wr, rest = w[-1], w[:-1]
    A_min = (abs(s) + 2 * terms + 2) * wr
    M = max(0, math.ceil((A_min - a) / wr))
    A = a + M * wr
    err = 0.0
    if not rest:
        n = np.arange(M, dtype=float)
        base = a + n * wr
        vals = np.power(base.astype(complex), -s) if s.imag else np.power(base, -s.real)
        total = complex(math.fsum(np.real(vals))) + 1j * math.fsum(np.imag(vals))
        # the phase of (a + n)^-s carries an error near eps |s| log(a + n)
        err += 4 * np.finfo(float).eps * (1 + abs(s) * math.log1p(A)) * float(np.sum(np.abs(vals)))
    else:
        total = 0j
        for m in range(M):
            v, e = _em(s, rest, a + m * wr, terms)
            total += v
            err += e
    v, e = _em(s - 1, rest, A, terms)
    if not rest:
        e += 4 * np.finfo(float).eps * (1 + abs(s) * math.log1p(A)) * abs(v)
    total += v / ((s - 1) * wr)
    err += e / abs((s - 1) * wr)
    v, e = _em(s, rest, A, terms)
    total += 0.5 * v
    err += 0.5 * e
    for j in range(1, terms + 2):
        k = 2 * j - 1
        coef = _bern_ratio(j) * wr**k * _poch(s, k)
        if coef == 0:
            break
        v, e = _em(s + k, rest, A, terms)
        if j == terms + 1:
            # first omitted correction bounds the remainder
            err += 2 * abs(coef * v)
            break
        total += coef * v
        err += abs(coef) * e
    return total, err


def zeta_series(p: kn.BarnesParams, s, tol: float = 1e-12) -> EvalResult:
    """Lattice series for ``Re(s) > r`` with an Euler-Maclaurin remainder."""
    s = _as_point(s)
    if not s.real > p.r:
        raise DomainError(f"series needs Re(s) > r = {p.r}")
    terms = EM_TERMS
    for _ in range(4):
        val, err = _em(s, p.w, p.a, terms)
        if err <= tol * max(1.0, abs(val)):
            return EvalResult(_finish(val, s), float(err), "series")
        terms += 6
    raise NumericalError(f"series tolerance {tol:g} not reached (err {err:.3g})")


HURWITZ_DIGITS = 40


def _em_hurwitz_real(s: float, a: float, terms: int):
    """Scalar Euler-Maclaurin for real ``s`` in 40-digit decimal arithmetic.

    For negative ``s`` the partial sum is about ``A^(1-s)`` times larger than
    the result, which costs several double-precision digits.
    """
    D = decimal.Decimal
    with decimal.localcontext() as ctx:
        ctx.prec = HURWITZ_DIGITS
        sd, ad = D(s), D(a)
        M = max(0, math.ceil(abs(s) + 2 * terms + 2 - a))
        A = ad + M
        power = lambda x, e: (-e * x.ln()).exp()
        total = sum((power(ad + m, sd) for m in range(M)), D(0))
        total += power(A, sd - 1) / (sd - 1) + power(A, sd) / 2
        err = D(0)
        poch = D(1)
        k_done = 0
        for j in range(1, terms + 2):
            k = 2 * j - 1
            while k_done < k:
                poch *= sd + k_done
                k_done += 1
            b = bernoulli_numbers(2 * j)[2 * j]
            term = D(b.numerator) / D(b.denominator) / math.factorial(2 * j) * poch * power(A, sd + k)
            if j == terms + 1:
                err = 2 * abs(term)
                break
            total += term
        return float(total), float(err) + 2 * np.finfo(float).eps * abs(float(total))


def hurwitz(s, a: float, tol: float = 1e-12) -> EvalResult:
    """Hurwitz zeta ``sum_n (n + a)^-s`` continued to ``s != 1`` by Euler-Maclaurin."""
    s = _as_point(s)
    if not (math.isfinite(a) and a > 0):
        raise DomainError("Hurwitz shift must be positive")
    if s == 1:
        raise PoleError(1)
    terms = max(EM_TERMS, math.ceil((2 - s.real) / 2) + EM_TERMS)
    em = (lambda n: _em_hurwitz_real(s.real, float(a), n)) if not s.imag else \
        (lambda n: _em(s, (1.0,), float(a), n))
    val, err = em(terms)
    if not err <= tol * max(1.0, abs(val)):
        val, err = em(terms + 8)
    return EvalResult(_finish(val, s), float(err), "series", bool(err <= tol * max(1.0, abs(val))))


def zeta_hurwitz_reduction(p: kn.BarnesParams, s, tol: float = 1e-12) -> EvalResult:
    """``zeta_1(s, w, a) = w^-s zeta(s, a / w)``."""
    if p.r != 1:
        raise DomainError("Hurwitz reduction applies to r = 1 only")
    s = _as_point(s)
    (w,) = p.w
    h = hurwitz(s, p.a / w, tol)
    scale = w ** (-s)
    return EvalResult(_finish(scale * h.value, s), abs(scale) * h.err_est, "hurwitz_reduction", h.converged)


def _config(p: kn.BarnesParams, cfg: Optional[QuadConfig]) -> QuadConfig:
    cfg = cfg or QuadConfig.for_weights(p.w)
    cfg.check_weights(p.w)
    return cfg


def _series_near_zero(p, N, cfg):
    t_sw, c, pw = kn.near_zero_series(p, N)
    return min(t_sw, cfg.lam), c, pw


def _tail(p: kn.BarnesParams, s, cfg: QuadConfig):
    bound = 1.0
    for wi in p.w:
        bound /= -math.expm1(-wi * cfg.lam)
    return integrate_tail(lambda t: kn.kernel_full(p, t), s, p.a, cfg, bound=bound)


def mellin_strip2(p: kn.BarnesParams, sigma: float, cfg: Optional[QuadConfig] = None):
    """``Gamma(sigma) zeta_2(sigma)`` as ``int_0^inf G_2 t^(sigma-1) dt``; returns ``(value, err, ok)``."""
    if p.r != 2:
        raise DomainError("strip representation is for r = 2")
    if not (isinstance(sigma, (int, float)) and 1 < sigma < 2):
        raise DomainError("strip representation needs real 1 < sigma < 2")
    cfg = _config(p, cfg)
    head = integrate_head(lambda t: kn.G2(p, t), sigma, cfg,
                          near_zero=_series_near_zero(p, -2, cfg))
    tail = _tail(p, sigma, cfg)
    # int_lambda^inf t^(sigma-3) dt / (w1 w2), the part of G_2 without exponential decay
    power = cfg.lam ** (sigma - 2) / ((2 - sigma) * p.w[0] * p.w[1])
    value = head.value + tail.value - power
    err = head.err_est + tail.err_est + 4 * np.finfo(float).eps * (abs(head.value) + abs(tail.value) + power)
    return value, err, head.converged and tail.converged


def zeta2_strip(w: Sequence[float], a: float, sigma: float, cfg: Optional[QuadConfig] = None) -> EvalResult:
    """``zeta_2(sigma, w, a)`` for real ``1 < sigma < 2`` from the subtracted Mellin integral."""
    p = kn.BarnesParams(tuple(w), a)
    value, err, ok = mellin_strip2(p, sigma, cfg)
    g = gamma(float(sigma))
    return EvalResult(value / g, err / g, "strip2", ok)


def default_order(p: kn.BarnesParams, s) -> int:
    return max(math.ceil(-complex(s).real) + 1, -p.r)


def mellin_general(p: kn.BarnesParams, s, N: Optional[int] = None, cfg: Optional[QuadConfig] = None):
    """``Gamma(s) zeta_r(s)`` via the lambda-split; returns ``(value, err, ok)``."""
    s = _as_point(s)
    check_poles(p.r, s)
    if N is None:
        N = default_order(p, s)
    N = kn.check_order(p, N)
    if not s.real > -N - 2:
        raise DomainError(f"order N={N} covers Re(s) > {-N - 2} only")
    cfg = _config(p, cfg)
    sv = s if s.imag else s.real
    tail = _tail(p, sv, cfg)
    head = integrate_head(lambda t: kn.kernel_subtracted(p, N + 1, t), sv, cfg,
                          near_zero=_series_near_zero(p, N + 1, cfg))
    c = kn.laurent_coefficients(p, N + p.r + 1)
    terms = []
    for k, ck in enumerate(c):
        e = (k - p.r) + s
        if e == 0:
            raise DomainError("s hits a nonpositive integer; use zeta_special_value")
        terms.append(ck * cfg.lam**e / e)
    rational = sum(terms)
    value = head.value + tail.value + rational
    roundoff = 4 * np.finfo(float).eps * (sum(abs(x) for x in terms) + abs(head.value) + abs(tail.value))
    err = head.err_est + tail.err_est + roundoff
    return _finish(complex(value), s), float(err), head.converged and tail.converged


def mellin_subtracted_strip(p: kn.BarnesParams, s, N: int, cfg: Optional[QuadConfig] = None):
    """``int_0^inf _N G_r(a, w, t) t^(s-1) dt`` for ``-N-1 < Re(s) < -N``; returns ``(value, err)``.

    On ``[lambda, inf)`` the subtracted powers ``t^(k-r)`` are integrated in
    closed form, which needs ``Re(s) < -N``; the exponential part goes to
    the quadrature.
    """
    s = _as_point(s)
    N = kn.check_order(p, N)
    if not -N - 1 < s.real < -N:
        raise DomainError(f"needs {-N - 1} < Re(s) < {-N}")
    check_poles(p.r, s)
    cfg = _config(p, cfg)
    sv = s if s.imag else s.real
    head = integrate_head(lambda t: kn.kernel_subtracted(p, N, t), sv, cfg,
                          near_zero=_series_near_zero(p, N, cfg))
    tail = _tail(p, sv, cfg)
    c = kn.laurent_coefficients(p, N + p.r)
    # -int_lambda^inf c_k t^(s+k-r-1) dt
    powers = sum(ck * cfg.lam ** ((k - p.r) + s) / ((k - p.r) + s) for k, ck in enumerate(c))
    return _finish(complex(head.value + tail.value + powers), s), head.err_est + tail.err_est


def zeta_general(p: kn.BarnesParams, s, N: Optional[int] = None, cfg: Optional[QuadConfig] = None) -> EvalResult:
    """Continuation of ``zeta_r`` to ``Re(s) > -N-2`` (default ``N = ceil(-Re s) + 1``)."""
    s = _as_point(s)
    if is_nonpositive_integer(s):
        raise DomainError("s is a nonpositive integer; use zeta_special_value")
    value, err, ok = mellin_general(p, s, N, cfg)
    g = gamma(s if s.imag else s.real)
    return EvalResult(_finish(complex(value / g), s), float(err / abs(g)), "general", ok)


def zeta_special_value(p: kn.BarnesParams, n: int, K: Optional[int] = None) -> float:
    """``zeta_r(-n, w, a)`` at a nonpositive integer."""
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    n = int(n)
    K = kn.DEFAULT_MAX_INDEX if K is None else K
    if n + p.r > K:
        raise DomainError(f"Bernoulli table depth {K} is below n + r = {n + p.r}")
    table = cached_table(p.w, K)
    b = eval_bernoulli(table, n + p.r, p.a)
    return (-1) ** n * math.factorial(n) / math.factorial(n + p.r) * b


def zeta(p: kn.BarnesParams, s, cfg: Optional[QuadConfig] = None, method: Optional[str] = None,
         tol: float = 1e-12, N: Optional[int] = None) -> EvalResult:
    """Evaluate ``zeta_r(s, w, a)``, choosing the representation from ``s`` unless ``method`` is given."""
    s = _as_point(s)
    check_poles(p.r, s)
    if method is None:
        if is_nonpositive_integer(s):
            method = "special_value"
        elif s.real > p.r:
            method = "series"
        elif p.r == 2 and s.imag == 0 and 1 < s.real < 2:
            method = "strip2"
        else:
            method = "general"
    if method == "special_value":
        if not is_nonpositive_integer(s):
            raise DomainError("special values exist at nonpositive integers only")
        return EvalResult(zeta_special_value(p, int(-s.real)), 0.0, "special_value")
    if method == "series":
        return zeta_series(p, s, tol)
    if method == "strip2":
        if s.imag:
            raise DomainError("strip representation needs real s")
        return zeta2_strip(p.w, p.a, s.real, cfg)
    if method == "general":
        return zeta_general(p, s, N, cfg)
    if method == "hurwitz_reduction":
        return zeta_hurwitz_reduction(p, s, tol)
    raise DomainError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
