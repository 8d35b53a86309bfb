"""Exact scalars, extended scalars and extended moduli.

Scalars are plain Python ``int`` (integer mode) or ``fractions.Fraction``
(rational mode).  Infinite bounds and the infinite modulus are represented by
``math.inf``: comparisons between ``inf`` and ints/Fractions are exact in
Python, and finite arithmetic never touches a float.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]
ExtScalar = Union[int, Fraction, float]  # float only ever means +/-inf
ExtModulus = Union[int, Fraction, float]  # positive scalar or inf

INF = math.inf
NEG_INF = -math.inf

INT = "int"
RAT = "rat"
MODES = (INT, RAT)


class ScalarError(ValueError):
    pass


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def normalize(x: Scalar, mode: str = RAT) -> Scalar:
    """Return ``x`` in the canonical Python type for ``mode``.

    Integer-valued Fractions collapse to ``int`` so that equal scalars have a
    single representation regardless of how they were produced.
    """
    if is_inf(x):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            x = x.numerator
        elif mode == INT:
            raise ScalarError(f"non-integer {x} in integer mode")
        return x
    if isinstance(x, int):
        return x
    raise ScalarError(f"not an exact scalar: {x!r}")


def ext_add(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    if is_inf(a) and is_inf(b) and a != b:
        raise ScalarError("-oo + +oo is undefined")
    if is_inf(a):
        return a
    if is_inf(b):
        return b
    return normalize(a + b)


def ext_neg(a: ExtScalar) -> ExtScalar:
    return -a


def ext_mul(k: Scalar, a: ExtScalar) -> ExtScalar:
    """Scalar times extended scalar; ``0 * inf`` is 0 (only used for bounds of
    non-empty sets, where scaling by zero collapses everything to 0)."""
    if k == 0:
        return 0
    if is_inf(a):
        return a if k > 0 else -a
    return normalize(k * a)


def floor_div(a: Scalar, b: Scalar) -> int:
    """``floor(a / b)`` exactly, for b > 0."""
    return math.floor(Fraction(a) / Fraction(b))


def ceil_div(a: Scalar, b: Scalar) -> int:
    return math.ceil(Fraction(a) / Fraction(b))


# -- moduli ---------------------------------------------------------------


def _as_ratio(x: Scalar) -> tuple[int, int]:
    f = Fraction(x)
    return f.numerator, f.denominator


def divides(y: ExtModulus, y2: ExtModulus) -> bool:
    """``y / y2``: there is an integer k >= 1 with ``y2 = k*y``, or y2 is inf."""
    if is_inf(y2):
        return True
    if is_inf(y):
        return False
    if type(y) is int and type(y2) is int:
        return y2 % y == 0 and y2 >= y
    q = Fraction(y2) / Fraction(y)
    return q.denominator == 1 and q >= 1


def congruent(x: Scalar, x2: Scalar, y: ExtModulus) -> bool:
    """``x = x2 [y]``."""
    if x == x2:
        return True
    if is_inf(y):
        return False
    if type(x) is int and type(x2) is int and type(y) is int:
        return (x - x2) % y == 0
    # (a/b - c/d) / (p/q) is an integer iff (a*d - c*b) * q is divisible by b*d*p
    a, b = x.numerator, x.denominator
    c, d = x2.numerator, x2.denominator
    p, q = y.numerator, y.denominator
    return ((a * d - c * b) * q) % (b * d * p) == 0


def gcd_ext(y: ExtModulus, y2: ExtModulus) -> ExtModulus:
    """Greatest common divisor on positive rationals extended with inf.

    ``gcd(inf, y) = y``.  A zero argument is treated as inf (0 is divisible by
    everything), which is what the congruence join needs for ``|b - b'| = 0``.
    """
    if is_inf(y) or y == 0:
        return y2 if not (y2 == 0) else INF
    if is_inf(y2) or y2 == 0:
        return y
    if type(y) is int and type(y2) is int:
        return math.gcd(y, y2)
    a, b = _as_ratio(y)
    c, d = _as_ratio(y2)
    return normalize(Fraction(math.gcd(a * d, c * b), b * d))


def lcm_ext(y: ExtModulus, y2: ExtModulus) -> ExtModulus:
    if is_inf(y) or is_inf(y2):
        return INF
    if type(y) is int and type(y2) is int:
        return math.lcm(y, y2)
    a, b = _as_ratio(y)
    c, d = _as_ratio(y2)
    return normalize(Fraction(math.lcm(a * d, c * b), b * d))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def bezout_combine(b: Scalar, a: ExtModulus, b2: Scalar, a2: ExtModulus) -> Scalar:
    """Solve ``x = b [a]`` and ``x = b2 [a2]`` (Chinese remaindering).

    The caller guarantees ``b = b2 [gcd(a, a2)]``.  An infinite modulus pins
    the solution to its residue.
    """
    if not congruent(b, b2, gcd_ext(a, a2)):
        raise ScalarError(f"incompatible congruences {b} [{a}] and {b2} [{a2}]")
    if is_inf(a):
        return normalize(b)
    if is_inf(a2):
        return normalize(b2)
    # Scale everything to integers by a common denominator.
    den = math.lcm(*(Fraction(v).denominator for v in (b, a, b2, a2)))
    ib, ia, ib2, ia2 = (int(Fraction(v) * den) for v in (b, a, b2, a2))
    g, p, _ = _egcd(ia, ia2)
    # x = ib + ia * t with ia * t = ib2 - ib (mod ia2)
    t = ((ib2 - ib) // g * p) % (ia2 // g)
    x = ib + ia * t
    return normalize(Fraction(x % (ia * ia2 // g), den))


# -- text -------------------------------------------------------------------

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def render(x: ExtScalar) -> str:
    if is_inf(x):
        return "+oo" if x > 0 else "-oo"
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def parse(text: str, mode: str = RAT) -> ExtScalar:
    t = text.strip()
    if t in ("+oo", "oo"):
        return INF
    if t == "-oo":
        return NEG_INF
    m = _SCALAR_RE.match(t)
    if not m:
        raise ScalarError(f"cannot parse scalar {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ScalarError("zero denominator")
    return normalize(Fraction(num, den), mode)
