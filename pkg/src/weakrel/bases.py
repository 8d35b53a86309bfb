"""The shipped acceptable bases: constants, intervals and congruences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import scalar as sc
from .basis import BOT, TOP, Basis, ProductBasis, Range, Reduction, Residues
from .scalar import INF, NEG_INF, ExtModulus, ExtScalar, Scalar


# -- constants ------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Scalar

    def __str__(self):
        return sc.render(self.value)


class ConstantBasis(Basis):
    """Flat lattice ``BOT < c < TOP``."""

    name = "constant"

    def top(self):
        return TOP

    def leq(self, x, y):
        return x is BOT or y is TOP or x == y

    def meet(self, x, y):
        if x is TOP:
            return y
        if y is TOP:
            return x
        if x is BOT or y is BOT or x != y:
            return BOT
        return x

    def join(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        return x if x == y else TOP

    def neg(self, x):
        if isinstance(x, Const):
            return Const(-x.value)
        return x

    def add(self, x, y):
        if x is BOT or y is BOT:
            return BOT
        if x is TOP or y is TOP:
            return TOP
        return Const(sc.normalize(x.value + y.value))

    def scale(self, k, x):
        if x is BOT:
            return BOT
        if k == 0:
            return Const(0)
        if x is TOP:
            return TOP
        return Const(sc.normalize(k * x.value))

    def singleton(self, c):
        return Const(self.coerce(c))

    def approx(self, s):
        if isinstance(s, Range):
            lo, hi = _int_range(s, self.mode)
            if lo > hi:
                return BOT
            if lo == hi:
                return Const(lo)
            return TOP
        if s.k == 0:
            return self.singleton(s.r)
        return TOP

    def member(self, x, c):
        if x is BOT:
            return False
        return x is TOP or x.value == c


def _int_range(s: Range, mode: str) -> tuple[ExtScalar, ExtScalar]:
    """Bounds of the scalars of ``s`` that exist in ``mode``."""
    lo, hi = s.lo, s.hi
    if mode == sc.INT:
        if not sc.is_inf(lo):
            lo = sc.ceil_div(lo, 1)
        if not sc.is_inf(hi):
            hi = sc.floor_div(hi, 1)
    return lo, hi


# -- intervals -------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: ExtScalar
    hi: ExtScalar

    def __str__(self):
        return f"[{sc.render(self.lo)},{sc.render(self.hi)}]"


class IntervalBasis(Basis):
    name = "interval"

    def make(self, lo, hi):
        if lo > hi or lo == INF or hi == NEG_INF:
            return BOT
        return Interval(lo, hi)

    def top(self):
        return Interval(NEG_INF, INF)

    def leq(self, x, y):
        if x is BOT:
            return True
        if y is BOT:
            return False
        return y.lo <= x.lo and x.hi <= y.hi

    def meet(self, x, y):
        if x is BOT or y is BOT:
            return BOT
        return self.make(max(x.lo, y.lo), min(x.hi, y.hi))

    def join(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        return Interval(min(x.lo, y.lo), max(x.hi, y.hi))

    def widen(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        lo = x.lo if x.lo <= y.lo else NEG_INF
        hi = x.hi if x.hi >= y.hi else INF
        return Interval(lo, hi)

    def neg(self, x):
        if x is BOT:
            return BOT
        return Interval(-x.hi, -x.lo)

    def add(self, x, y):
        if x is BOT or y is BOT:
            return BOT
        return Interval(sc.ext_add(x.lo, y.lo), sc.ext_add(x.hi, y.hi))

    def scale(self, k, x):
        if x is BOT:
            return BOT
        a, b = sc.ext_mul(k, x.lo), sc.ext_mul(k, x.hi)
        return Interval(min(a, b), max(a, b))

    def singleton(self, c):
        c = self.coerce(c)
        return Interval(c, c)

    def approx(self, s):
        if isinstance(s, Residues):
            if s.k == 0:
                return self.singleton(s.r)
            return self.top()
        lo, hi = _int_range(s, self.mode)
        return self.make(lo, hi)

    def member(self, x, c):
        return x is not BOT and x.lo <= c <= x.hi


# -- congruences ----------------------------------------------------------------


@dataclass(frozen=True)
class Cong:
    """``modulus * Z + residue``; an infinite modulus denotes ``{residue}``."""

    modulus: ExtModulus
    residue: Scalar

    def __str__(self):
        if sc.is_inf(self.modulus):
            return "{" + sc.render(self.residue) + "}"
        if self.modulus == 1 and self.residue == 0:
            return "Z"
        return f"{sc.render(self.modulus)}Z+{sc.render(self.residue)}"


def cong(a: ExtModulus, b: Scalar) -> Cong:
    """Canonical congruence: ``0 <= residue < modulus`` for finite moduli."""
    if sc.is_inf(a):
        return Cong(INF, sc.normalize(b))
    if a <= 0:
        raise ValueError(f"modulus must be positive, got {a}")
    a = sc.normalize(a)
    return Cong(a, sc.normalize(Fraction(b) % Fraction(a)))


class CongruenceBasis(Basis):
    """Congruences ``aZ + b``.

    In integer mode moduli are positive integers and ``1Z+0`` is the top
    element.  In rational mode moduli are positive rationals; no congruence
    covers all of Q, so an explicit :data:`TOP` is added, and widening bounds
    the denominators that may appear in an increasing chain.
    """

    name = "congruence"

    def top(self):
        return cong(1, 0) if self.mode == sc.INT else TOP

    def leq(self, x, y):
        if x is BOT or y is TOP:
            return True
        if y is BOT or x is TOP:
            return False
        return sc.divides(y.modulus, x.modulus) and sc.congruent(x.residue, y.residue, y.modulus)

    def meet(self, x, y):
        if x is BOT or y is BOT:
            return BOT
        if x is TOP:
            return y
        if y is TOP:
            return x
        a, b, a2, b2 = x.modulus, x.residue, y.modulus, y.residue
        if not sc.congruent(b, b2, sc.gcd_ext(a, a2)):
            return BOT
        return cong(sc.lcm_ext(a, a2), sc.bezout_combine(b, a, b2, a2))

    def join(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        if x is TOP or y is TOP:
            return TOP
        m = sc.gcd_ext(sc.gcd_ext(x.modulus, y.modulus), abs(x.residue - y.residue))
        return cong(m, min(x.residue, y.residue))

    def widen(self, x, y):
        j = self.join(x, y)
        if self.mode == sc.INT or x is BOT or j is TOP or j == x:
            return j
        if x is TOP or sc.is_inf(x.modulus):
            return j
        if Fraction(x.modulus).denominator % Fraction(j.modulus).denominator == 0:
            return j
        return TOP

    def neg(self, x):
        if x is BOT or x is TOP:
            return x
        return cong(x.modulus, -x.residue)

    def add(self, x, y):
        if x is BOT or y is BOT:
            return BOT
        if x is TOP or y is TOP:
            return TOP
        return cong(sc.gcd_ext(x.modulus, y.modulus), x.residue + y.residue)

    def scale(self, k, x):
        if x is BOT:
            return BOT
        if k == 0:
            return cong(INF, 0)
        if x is TOP:
            return TOP
        m = x.modulus if sc.is_inf(x.modulus) else abs(k) * x.modulus
        return cong(m, k * x.residue)

    def singleton(self, c):
        return cong(INF, self.coerce(c))

    def approx(self, s):
        if isinstance(s, Residues):
            if s.k == 0:
                return self.singleton(s.r)
            if self.mode == sc.INT and (Fraction(s.k).denominator != 1 or Fraction(s.r).denominator != 1):
                # k*Z + r with non-integral parts meets Z in a sub-lattice or nothing
                return self.approx_points(s)
            return cong(abs(s.k), s.r)
        lo, hi = _int_range(s, self.mode)
        if lo > hi:
            return BOT
        if lo == hi:
            return self.singleton(lo)
        return self.top()

    def approx_points(self, s: Residues):
        k, r = Fraction(s.k), Fraction(s.r)
        # integers of the form k*t + r: solve over t using one period of length den
        pts = [k * t + r for t in range(k.denominator * 2 + 2)]
        ints = [int(p) for p in pts if p.denominator == 1]
        if not ints:
            return BOT
        if len(ints) == 1:
            return self.singleton(ints[0])
        return cong(abs(ints[1] - ints[0]), ints[0])

    def member(self, x, c):
        if x is BOT:
            return False
        if x is TOP:
            return True
        if sc.is_inf(x.modulus):
            return c == x.residue
        return sc.congruent(c, x.residue, x.modulus)


# -- interval x congruence reduction ------------------------------------------


class IntervalCongruenceReduction(Reduction):
    """Shrink interval bounds onto the congruence lattice; a singleton interval
    pins the congruence to that point."""

    def __init__(self, congruences: CongruenceBasis):
        self.congruences = congruences

    def reduce_left(self, itv, cg):
        if itv is BOT or cg is BOT:
            return BOT
        if cg is TOP:
            return itv
        c, d = cg.modulus, cg.residue
        if sc.is_inf(c):
            return Interval(d, d) if itv.lo <= d <= itv.hi else BOT
        lo = itv.lo if sc.is_inf(itv.lo) else sc.normalize(d + c * sc.ceil_div(itv.lo - d, c))
        hi = itv.hi if sc.is_inf(itv.hi) else sc.normalize(d + c * sc.floor_div(itv.hi - d, c))
        if lo > hi:
            return BOT
        return Interval(lo, hi)

    def reduce_right(self, itv, cg):
        if itv is BOT or cg is BOT:
            return BOT
        if itv.lo == itv.hi:
            return self.congruences.meet(cg, self.congruences.singleton(itv.lo))
        return cg


def interval_congruence(mode: str = sc.INT) -> ProductBasis:
    cg = CongruenceBasis(mode)
    return ProductBasis(IntervalBasis(mode), cg, IntervalCongruenceReduction(cg))


def make_basis(name: str, mode: str = sc.INT) -> Basis:
    """Basis by name: ``constant``, ``interval``, ``congruence`` or ``product``."""
    if name == "constant":
        return ConstantBasis(mode)
    if name == "interval":
        return IntervalBasis(mode)
    if name == "congruence":
        return CongruenceBasis(mode)
    if name == "product":
        return interval_congruence(mode)
    raise ValueError(f"unknown basis {name!r}")
