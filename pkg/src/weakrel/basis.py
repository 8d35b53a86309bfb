"""Basis contract, set literals and the reduced-product combinator.

A *basis* is a non-relational abstraction of sets of scalars.  Bases are
stateless objects holding only their scalar mode; elements are immutable
values.  Every basis shares the canonical :data:`BOT` element, and bases whose
natural representation has no element for "everything" use :data:`TOP`.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from . import scalar as sc
from .scalar import ExtScalar, Scalar


class _Sentinel:
    __slots__ = ("_name", "_text")

    def __init__(self, name: str, text: str):
        self._name = name
        self._text = text

    def __repr__(self):
        return self._name

    def __str__(self):
        return self._text

    def __reduce__(self):
        return self._name


BOT = _Sentinel("BOT", "_|_")
TOP = _Sentinel("TOP", "T")


# -- set literals -------------------------------------------------------------


@dataclass(frozen=True)
class Range:
    """Closed range ``[lo, hi]``; infinite bounds are excluded from the set."""

    lo: ExtScalar
    hi: ExtScalar

    def __str__(self):
        return f"[{sc.render(self.lo)},{sc.render(self.hi)}]"

    def contains(self, c: Scalar) -> bool:
        return self.lo <= c <= self.hi


@dataclass(frozen=True)
class Residues:
    """The set ``k*Z + r``; ``k = 0`` is the singleton ``{r}``."""

    k: Scalar
    r: Scalar

    def __str__(self):
        return f"{sc.render(self.k)}Z+{sc.render(self.r)}"

    def contains(self, c: Scalar) -> bool:
        if self.k == 0:
            return c == self.r
        return sc.congruent(c, self.r, abs(self.k))


SetLiteral = Range | Residues

_RANGE_RE = re.compile(r"^\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]$")
_RES_RE = re.compile(r"^([+-]?[\d/]+)\s*Z\s*\+\s*([+-]?[\d/]+)$")


def parse_setlit(text: str, mode: str = sc.RAT) -> SetLiteral:
    t = text.strip()
    m = _RANGE_RE.match(t)
    if m:
        return Range(sc.parse(m.group(1), mode), sc.parse(m.group(2), mode))
    m = _RES_RE.match(t)
    if m:
        return Residues(sc.parse(m.group(1), mode), sc.parse(m.group(2), mode))
    raise ValueError(f"cannot parse set literal {text!r}")


# -- the contract ---------------------------------------------------------------


class Basis(ABC):
    """Operations every acceptable basis provides.

    ``meet``, ``add`` and ``neg`` must be exact; ``singleton`` must represent
    ``{c}`` exactly; ``join`` is an upper bound and ``widen`` a widening.
    """

    name = "basis"

    def __init__(self, mode: str = sc.INT):
        if mode not in sc.MODES:
            raise ValueError(f"unknown scalar mode {mode!r}")
        self.mode = mode

    def __repr__(self):
        return f"{type(self).__name__}({self.mode!r})"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self), self.mode))

    def bottom(self):
        return BOT

    @abstractmethod
    def top(self): ...

    def is_bottom(self, x) -> bool:
        return x is BOT

    def is_top(self, x) -> bool:
        return x == self.top()

    @abstractmethod
    def leq(self, x, y) -> bool: ...

    @abstractmethod
    def meet(self, x, y): ...

    @abstractmethod
    def join(self, x, y): ...

    def widen(self, x, y):
        return self.join(x, y)

    @abstractmethod
    def neg(self, x): ...

    @abstractmethod
    def add(self, x, y): ...

    @abstractmethod
    def scale(self, k: Scalar, x): ...

    @abstractmethod
    def singleton(self, c: Scalar): ...

    @abstractmethod
    def approx(self, s: SetLiteral): ...

    @abstractmethod
    def member(self, x, c: Scalar) -> bool: ...

    def contains_zero(self, x) -> bool:
        return self.member(x, 0)

    def sample(self, x, window: Iterable[Scalar]) -> list[Scalar]:
        """The part of ``gamma(x)`` that falls inside ``window``."""
        return [c for c in window if self.member(x, c)]

    def render(self, x) -> str:
        return str(x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def meet_all(self, xs: Sequence):
        return reduce(self.meet, xs, self.top())

    def coerce(self, c) -> Scalar:
        return sc.normalize(c, self.mode)


# -- reduced product ------------------------------------------------------------


@dataclass(frozen=True)
class Pair:
    first: object
    second: object

    def __str__(self):
        return f"({self.first}, {self.second})"


class Reduction(ABC):
    """A pair of reduction operators between two bases.

    ``reduce_left(c1, c2)`` tightens ``c1`` using ``c2`` and ``reduce_right``
    does the converse; neither may change the joint concretization.
    """

    @abstractmethod
    def reduce_left(self, c1, c2): ...

    @abstractmethod
    def reduce_right(self, c1, c2): ...


class IdentityReduction(Reduction):
    def reduce_left(self, c1, c2):
        return c1

    def reduce_right(self, c1, c2):
        return c2


class ProductBasis(Basis):
    """Reduced product of two bases over the same scalar mode.

    Every operation except widening is applied componentwise and followed by
    the reduction.  Widening is componentwise only: reducing its output could
    shrink a component again and defeat stabilization.
    """

    name = "product"

    def __init__(self, left: Basis, right: Basis, reduction: Reduction | None = None):
        if left.mode != right.mode:
            raise ValueError("product components must share a scalar mode")
        super().__init__(left.mode)
        self.left = left
        self.right = right
        self.reduction = reduction or IdentityReduction()

    def __hash__(self):
        return hash((type(self), self.left, self.right, type(self.reduction)))

    def make(self, c1, c2):
        if c1 is BOT or c2 is BOT:
            return BOT
        c1 = self.reduction.reduce_left(c1, c2)
        if c1 is BOT:
            return BOT
        c2 = self.reduction.reduce_right(c1, c2)
        if c2 is BOT:
            return BOT
        return Pair(c1, c2)

    def _raw(self, c1, c2):
        if c1 is BOT or c2 is BOT:
            return BOT
        return Pair(c1, c2)

    def top(self):
        return self.make(self.left.top(), self.right.top())

    def leq(self, x, y):
        if x is BOT:
            return True
        if y is BOT:
            return False
        return self.left.leq(x.first, y.first) and self.right.leq(x.second, y.second)

    def _lift2(self, op1, op2, x, y):
        if x is BOT or y is BOT:
            return BOT
        return self.make(op1(x.first, y.first), op2(x.second, y.second))

    def meet(self, x, y):
        return self._lift2(self.left.meet, self.right.meet, x, y)

    def add(self, x, y):
        return self._lift2(self.left.add, self.right.add, x, y)

    def join(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        return self.make(self.left.join(x.first, y.first), self.right.join(x.second, y.second))

    def widen(self, x, y):
        if x is BOT:
            return y
        if y is BOT:
            return x
        return self._raw(self.left.widen(x.first, y.first), self.right.widen(x.second, y.second))

    def neg(self, x):
        if x is BOT:
            return BOT
        return self.make(self.left.neg(x.first), self.right.neg(x.second))

    def scale(self, k, x):
        if x is BOT:
            return BOT
        return self.make(self.left.scale(k, x.first), self.right.scale(k, x.second))

    def singleton(self, c):
        return self.make(self.left.singleton(c), self.right.singleton(c))

    def approx(self, s):
        return self.make(self.left.approx(s), self.right.approx(s))

    def member(self, x, c):
        if x is BOT:
            return False
        return self.left.member(x.first, c) and self.right.member(x.second, c)

    def render(self, x):
        if x is BOT:
            return str(BOT)
        return f"({self.left.render(x.first)}, {self.right.render(x.second)})"
