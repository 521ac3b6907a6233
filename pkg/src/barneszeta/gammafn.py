"""Lanczos approximation of the Gamma function for real and complex arguments."""

import cmath
import math

# g = 7, n = 9; relative accuracy about 1e-15 on the right half-plane
_G = 7
_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _sinpi(z):
    # reduce by the nearest integer first so sin(pi z) keeps its digits near integers
    n = round(z.real)
    v = cmath.sin(math.pi * (z - n))
    return -v if n % 2 else v


def gamma(z):
    """Gamma function; returns a float for real input and a complex otherwise.

    Raises ``ZeroDivisionError`` at the poles ``0, -1, -2, ...``.
    """
    real_input = not isinstance(z, complex)
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
        raise ZeroDivisionError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        val = math.pi / (_sinpi(z) * gamma(1 - z))
    else:
        z1 = z - 1
        x = _COEFFS[0]
        for i in range(1, _G + 2):
            x += _COEFFS[i] / (z1 + i)
        t = z1 + _G + 0.5
        val = _SQRT_2PI * t ** (z1 + 0.5) * cmath.exp(-t) * x
    val = complex(val)
    return val.real if real_input else val
