"""Self-check catalogue run by ``barneszeta verify``.

Each check draws its random cases from a generator seeded by the caller and
returns ``(passed, detail)``.  Sizes are chosen to finish in well under a
minute in total; the pytest suite runs the larger versions.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from . import kernel as kn
from . import multibern as mb
from . import quad
from . import zeros as zr
from . import zeta as zt


class CheckResult(NamedTuple):
    module: str
    name: str
    passed: bool
    detail: str


def _weights(rng, n=2, lo=0.3, hi=3.0):
    return tuple(float(x) for x in rng.uniform(lo, hi, n))


def cauchy_bernoulli(w, x, k_max, radius=None, points=256):
    """``B_k^{(r)}(x, w)`` from a trapezoid-rule Cauchy integral of the generating function."""
    rho = radius or 0.5 * kn.radius(w)
    theta = 2 * np.pi * np.arange(points) / points
    z = rho * np.exp(1j * theta)
    val = z ** len(w) * np.exp((sum(w) - x) * z)
    for wi in w:
        val = val / np.expm1(wi * z)
    out = []
    for k in range(k_max + 1):
        ck = np.mean(val * np.exp(-1j * k * theta)) / rho**k
        out.append(math.factorial(k) * ck.real)
    return out


def check_r1_anchor(rng):
    # errors are measured against sum_j |c_j x^j|, since B_k has real roots in (0, 1)
    table = mb.gen_bernoulli_table((1.0,), 12)
    bern = mb.bernoulli_numbers(12)
    worst = 0.0
    for x in rng.uniform(0, 2, 50):
        for k in range(13):
            ref = (-1) ** k * float(mb.classical_bernoulli_poly(k, Fraction(x)))
            scale = sum(abs(math.comb(k, j) * float(bern[k - j])) * x**j for j in range(k + 1))
            worst = max(worst, abs(mb.eval_bernoulli(table, k, x) - ref) / scale)
    return worst < 1e-13, f"max condition-scaled err {worst:.2e}"


def check_convolution(rng):
    worst = 0.0
    for _ in range(5):
        w = _weights(rng, 2, 0.5, 2.0)
        x = float(rng.uniform(0, 3))
        table = mb.gen_bernoulli_table(w, 8)
        ref = cauchy_bernoulli(w, x, 8)
        for k in range(9):
            got = mb.eval_bernoulli(table, k, x)
            worst = max(worst, abs(got - ref[k]) / max(abs(ref[k]), 1e-12))
    return worst < 1e-6, f"max rel err {worst:.2e}"


def check_f_ladder(rng):
    for _ in range(5):
        w = tuple(Fraction(int(v), 7) for v in rng.integers(1, 30, 2))
        for n in range(1, 11):
            hi = mb.f_wn_coeffs(w, n + 1)
            lo = mb.f_wn_coeffs(w, n)
            deriv = [j * hi[j] for j in range(1, len(hi))]
            if deriv != [(n + 1) * c for c in lo]:
                return False, f"ladder broken at n={n}, w={w}"
    return True, "exact for n <= 10"


def check_f_positive(rng):
    for _ in range(200):
        w = _weights(rng)
        a = (w[0] + w[1]) / 2 * float(rng.uniform(1, 3))
        for n in range(1, 11):
            if not mb.f_wn(w, n, a) > 0:
                return False, f"f <= 0 at n={n}, w={w}, a={a}"
    return True, "200 samples, n <= 10"


def _log_grid(w, a=None):
    # G2 ~ -e^{-a t} for large t, so the grid must reach well past 1/a
    return np.geomspace(1e-6, 50 / min(min(w), a or math.inf), 200)


def check_g2_negative(rng):
    for _ in range(20):
        w = _weights(rng)
        for f in (1.0, 1.1, 2.0):
            p = kn.BarnesParams(w, (w[0] + w[1]) / 2 * f)
            if not np.all(kn.G2(p, _log_grid(w, p.a)) < 0):
                return False, f"G2 >= 0 somewhere for w={w}, a-factor {f}"
    return True, "G2 < 0 on 200-point grids"


def check_g2_single_sign_change(rng):
    for _ in range(20):
        w = _weights(rng)
        for f in (0.1, 0.5, 0.9):
            p = kn.BarnesParams(w, (w[0] + w[1]) / 2 * f)
            grid = _log_grid(w, p.a)
            sg = np.sign(kn.G2(p, grid))
            changes = np.nonzero(np.diff(sg))[0]
            if len(changes) != 1 or sg[0] <= 0:
                return False, f"{len(changes)} sign changes for w={w}, a-factor {f}"
            t0 = kn.find_t0(p)
            i = changes[0]
            if not grid[max(i - 1, 0)] <= t0 <= grid[min(i + 2, len(grid) - 1)]:
                return False, f"t0={t0:g} outside the sign-change cell"
    return True, "one sign change, located at t0"


def check_subtraction_order(rng):
    ts = np.geomspace(1e-6, 1e-3, 12)
    for _ in range(6):
        r = int(rng.integers(1, 4))
        p = kn.BarnesParams(_weights(rng, r, 0.5, 2.0), float(rng.uniform(0.1, 2)))
        for N in range(-r, 4):
            v = np.abs(kn.kernel_subtracted(p, N, ts))
            ok = v > 0
            slope = np.polyfit(np.log(ts[ok]), np.log(v[ok]), 1)[0]
            if slope < N + 0.9:
                return False, f"slope {slope:.3f} < N+0.9 for N={N}"
    return True, "log-log slopes >= N + 0.9"


def _richardson(g, t, h):
    # central differences with the h^2 error term eliminated
    def d(h):
        return (g(t + h) - g(t - h)) / (2 * h), (g(t + h) - 2 * g(t) + g(t - h)) / h**2
    (a1, a2), (b1, b2) = d(h), d(h / 2)
    return (4 * b1 - a1) / 3, (4 * b2 - a2) / 3


def check_g2_derivatives(rng):
    worst = 0.0
    for _ in range(20):
        w = _weights(rng, 2, 0.5, 2.0)
        p = kn.BarnesParams(w, float(rng.uniform(0.1, 3)))
        t = float(rng.uniform(0.1, 5))
        d1, d2 = kn.g2_derivatives(p, t)
        g = lambda x: kn.g2(p, x)
        fd1, fd2 = _richardson(g, t, 1e-3 * t)
        scale1 = max(abs(d1), 1e-3 * max(abs(g(t)), 1))
        scale2 = max(abs(d2), 1e-3 * max(abs(g(t)), 1))
        worst = max(worst, abs(fd1 - d1) / scale1, abs(fd2 - d2) / scale2)
    return worst < 1e-6, f"max rel diff {worst:.2e}"


def quad_oracle_cases(rng, n):
    """Random integrals with closed forms: ``(kind, f, s, lam, decay, exact)``."""
    cases = []
    for _ in range(n):
        lam = float(rng.uniform(0.5, 3))
        if rng.random() < 0.5:
            # int_0^lam t^m t^(s-1) dt
            m = float(rng.uniform(0, 3))
            s = float(rng.uniform(0.2, 3))
            cases.append(("head", (lambda t, m=m: t**m), s, lam, None, lam ** (s + m) / (s + m)))
        else:
            # int_lam^inf e^(-c t) t^(n-1) dt for integer n
            c = float(rng.uniform(0.2, 3))
            k = int(rng.integers(1, 5))
            exact = math.factorial(k - 1) * math.exp(-c * lam) * sum(
                (c * lam) ** j / math.factorial(j) for j in range(k)) / c**k
            cases.append(("tail", (lambda t, c=c: np.exp(-c * t)), k, lam, c, exact))
    return cases


def run_quad_case(case, cfg_kw=None):
    kind, f, s, lam, decay, exact = case
    cfg = quad.QuadConfig(lam=lam, **(cfg_kw or {}))
    if kind == "head":
        res = quad.integrate_head(f, s, cfg)
    else:
        res = quad.integrate_tail(f, s, decay, cfg)
    return res, abs(res.value - exact)


def check_quad_honesty(rng):
    cases = quad_oracle_cases(rng, 100)
    honest = sum(err <= 3 * res.err_est for res, err in (run_quad_case(c) for c in cases))
    return honest >= 95, f"{honest}/100 within 3x estimate"


def check_quad_additivity(rng):
    for _ in range(10):
        m = float(rng.uniform(0, 2))
        s = float(rng.uniform(0.3, 2))
        lam = float(rng.uniform(0.5, 3))
        f = lambda t: np.cos(t) * t**m
        whole = quad.integrate_head(f, s, quad.QuadConfig(lam=lam))
        half = quad.integrate_head(f, s, quad.QuadConfig(lam=lam / 2))
        rest = quad.integrate(f, lam / 2, lam, s)
        if abs(whole.value - half.value - rest.value) > whole.err_est + half.err_est + rest.err_est + 1e-15:
            return False, f"additivity off at m={m}, s={s}"
    return True, "split and unsplit head integrals agree"


def check_scaling(rng):
    worst = 0.0
    for _ in range(6):
        r = int(rng.integers(1, 4))
        p = kn.BarnesParams(_weights(rng, r, 0.5, 2.0), float(rng.uniform(0.2, 2)))
        s = complex(rng.uniform(-3, r + 3), rng.uniform(-2, 2))
        if any(abs(s - j) < 0.05 for j in range(1, r + 1)):
            continue
        for c in (0.5, 2.0, 3.0):
            lhs = zt.zeta(p.scaled(c), s).value
            rhs = c ** (-s) * zt.zeta(p, s).value
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst < 1e-8, f"max rel err {worst:.2e}"


def check_shift(rng):
    worst = 0.0
    for _ in range(6):
        w = _weights(rng, 2, 0.5, 2.0)
        a = float(rng.uniform(0.2, 2))
        s = complex(rng.uniform(2.2, 6), rng.uniform(-2, 2))
        lhs = zt.zeta(kn.BarnesParams(w, a), s).value - zt.zeta(kn.BarnesParams(w, a + w[0]), s).value
        rhs = zt.zeta(kn.BarnesParams((w[1],), a), s).value
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst < 1e-9, f"max rel err {worst:.2e}"


def check_method_agreement(rng):
    for _ in range(6):
        w = _weights(rng, 2, 0.5, 2.0)
        p = kn.BarnesParams(w, float(rng.uniform(0.2, 2)))
        s = float(rng.uniform(2.1, 5))
        a, b = zt.zeta_series(p, s), zt.zeta_general(p, s)
        if abs(a.value - b.value) > 10 * (a.err_est + b.err_est) + 1e-12 * abs(a.value):
            return False, f"series/general disagree at s={s}"
        s = float(rng.uniform(1.05, 1.95))
        a, b = zt.zeta2_strip(w, p.a, s), zt.zeta_general(p, s)
        if abs(a.value - b.value) > 10 * (a.err_est + b.err_est) + 1e-12 * abs(a.value):
            return False, f"strip/general disagree at s={s}"
    return True, "series, strip2 and general agree"


def check_pole_residues(rng):
    # residue at s = r - k is c_k / Gamma(r - k), with c_k the Laurent coefficients of the kernel
    eps = 1e-4
    worst = 0.0
    for _ in range(4):
        p = kn.BarnesParams(_weights(rng, 2, 0.5, 2.0), float(rng.uniform(0.2, 2)))
        c = mb.taylor_coefficients(p.w, p.a, 4)
        for k, pole in ((1, 1), (0, 2)):
            exact = float(c[k]) / math.gamma(pole)
            sym = eps * (zt.zeta(p, pole + eps).value - zt.zeta(p, pole - eps).value) / 2
            worst = max(worst, abs(sym - exact) / max(abs(exact), 1.0))
    return worst < 1e-6, f"symmetric-difference residues, max err {worst:.2e}"


def check_reduction(rng):
    worst = 0.0
    for _ in range(12):
        a = float(rng.uniform(0.1, 2))
        s = float(rng.uniform(-3, 6))
        if abs(s - 1) < 0.05 or abs(s - 2) < 0.05:
            continue
        got = zt.zeta(kn.BarnesParams((1.0, 1.0), a), s).value
        h1, h2 = zt.hurwitz(s - 1, a).value, zt.hurwitz(s, a).value
        ref = h1 + (1 - a) * h2
        worst = max(worst, abs(got - ref) / max(abs(ref), abs(h1), abs((1 - a) * h2)))
    return worst < 1e-8, f"max rel err {worst:.2e}"


def check_boundary(rng):
    for _ in range(4):
        w = _weights(rng, 2, 0.5, 2.0)
        half = (w[0] + w[1]) / 2
        rep = zr.find_zero_12(w, 0.99 * half)
        if not 1 < rep.zero < 2:
            return False, f"zero missing at a=0.99*(w1+w2)/2, w={w}"
        for f in (1.0, 1.01):
            rep = zr.report_12(w, f * half)
            if rep.exists or any(sg >= 0 for _, sg in rep.bracket_trace):
                return False, f"sign change at a={f}*(w1+w2)/2, w={w}"
    return True, "zero below the boundary, none at or above"


def check_uniqueness(rng):
    for _ in range(4):
        w = _weights(rng, 2, 0.5, 2.0)
        a = (w[0] + w[1]) / 2 * float(rng.uniform(0.05, 0.95))
        rep = zr.find_zero_12(w, a)
        if not rep.monotone_check or not rep.slope < 0:
            return False, f"F2 not decreasing or slope >= 0 for w={w}, a={a}"
    return True, "F2 decreasing, negative slope at the zero"


def check_scan_consistency(rng):
    for _ in range(6):
        w = _weights(rng, 2, 0.5, 2.0)
        a = (w[0] + w[1]) / 2 * float(rng.uniform(0.05, 1.6))
        rep = zr.scan_negative_interval(kn.BarnesParams(w, a), -2, grid_size=16)
        if rep.exists != zr.zero_exists_12(w, a):
            return False, f"scan and criterion disagree for w={w}, a={a}"
    return True, "scan(N=-2) matches the (1, 2) criterion"


CHECKS: list[tuple[str, str, Callable]] = [
    ("multibern", "r=1 anchor", check_r1_anchor),
    ("multibern", "convolution vs Cauchy integral", check_convolution),
    ("multibern", "f_wn derivative ladder", check_f_ladder),
    ("multibern", "f_wn positivity", check_f_positive),
    ("kernel", "G2 < 0 for a >= (w1+w2)/2", check_g2_negative),
    ("kernel", "single sign change of G2 at t0", check_g2_single_sign_change),
    ("kernel", "subtraction order", check_subtraction_order),
    ("kernel", "g2 derivative closed forms", check_g2_derivatives),
    ("quad", "error-estimate honesty", check_quad_honesty),
    ("quad", "additivity", check_quad_additivity),
    ("zeta", "scaling", check_scaling),
    ("zeta", "shift identity", check_shift),
    ("zeta", "method agreement", check_method_agreement),
    ("zeta", "pole residues", check_pole_residues),
    ("zeta", "w=(1,1) reduction", check_reduction),
    ("zeros", "boundary sharpness", check_boundary),
    ("zeros", "uniqueness and simplicity", check_uniqueness),
    ("zeros", "criterion vs scan", check_scan_consistency),
]


def run_all(seed: int) -> list[CheckResult]:
    out = []
    for i, (module, name, fn) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        try:
            passed, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not an aborted run
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(module, name, bool(passed), detail))
    return out
