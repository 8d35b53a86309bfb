"""Arithmetic expressions and guard atoms shared by every domain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from . import scalar as sc
from .basis import Range, Residues, SetLiteral
from .scalar import INF, NEG_INF, Scalar


@dataclass(frozen=True)
class Num:
    value: Scalar


@dataclass(frozen=True)
class Var:
    id: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    coef: Scalar
    arg: "Expr"


@dataclass(frozen=True)
class Random:
    pass


Expr = Union[Num, Var, Neg, Add, Sub, Mul, Random]


def linearize(e: Expr) -> tuple[dict[int, Scalar], Scalar] | None:
    """``(coefficients, constant)`` of a linear expression, or ``None`` when
    the expression contains ``Random``.  Zero coefficients are dropped."""
    if isinstance(e, Num):
        return {}, e.value
    if isinstance(e, Var):
        return {e.id: 1}, 0
    if isinstance(e, Random):
        return None
    if isinstance(e, Neg):
        return _scaled(linearize(e.arg), -1)
    if isinstance(e, Mul):
        return _scaled(linearize(e.arg), e.coef)
    if isinstance(e, (Add, Sub)):
        a = linearize(e.left)
        b = linearize(e.right)
        if a is None or b is None:
            return None
        if isinstance(e, Sub):
            b = _scaled(b, -1)
        coeffs = dict(a[0])
        for v, k in b[0].items():
            coeffs[v] = coeffs.get(v, 0) + k
        return {v: k for v, k in coeffs.items() if k != 0}, a[1] + b[1]
    raise TypeError(f"not an expression: {e!r}")


def _scaled(lin, k):
    if lin is None:
        return None
    if k == 0:
        return {}, 0
    return {v: c * k for v, c in lin[0].items()}, lin[1] * k


def evaluate(e: Expr, env: Sequence[Scalar], rand=None) -> Scalar:
    """Concrete value of ``e``; ``rand()`` supplies values for ``Random``."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return env[e.id]
    if isinstance(e, Neg):
        return -evaluate(e.arg, env, rand)
    if isinstance(e, Add):
        return evaluate(e.left, env, rand) + evaluate(e.right, env, rand)
    if isinstance(e, Sub):
        return evaluate(e.left, env, rand) - evaluate(e.right, env, rand)
    if isinstance(e, Mul):
        return e.coef * evaluate(e.arg, env, rand)
    if isinstance(e, Random):
        if rand is None:
            raise ValueError("random expression without a value source")
        return rand()
    raise TypeError(f"not an expression: {e!r}")


def variables(e: Expr) -> set[int]:
    if isinstance(e, Var):
        return {e.id}
    if isinstance(e, (Neg, Mul)):
        return variables(e.arg)
    if isinstance(e, (Add, Sub)):
        return variables(e.left) | variables(e.right)
    return set()


# -- guard atoms -------------------------------------------------------------------

CMP_OPS = ("<=", "<", ">=", ">", "==", "!=")


@dataclass(frozen=True)
class VarInSet:
    """``v_i in S``."""

    var: int
    set: SetLiteral


@dataclass(frozen=True)
class DiffInSet:
    """``v_i - v_j in S``."""

    var: int
    other: int
    set: SetLiteral


@dataclass(frozen=True)
class Cmp:
    """``v_i op c``."""

    var: int
    op: str
    value: Scalar


@dataclass(frozen=True)
class DiffCmp:
    """``v_i - v_j op c``."""

    var: int
    other: int
    op: str
    value: Scalar


@dataclass(frozen=True)
class Mod:
    """``v_i % k == r`` or ``(v_i - v_j) % k == r``, read as a congruence."""

    var: int
    other: int | None
    k: Scalar
    r: Scalar


@dataclass(frozen=True)
class NonDet:
    pass


GuardAtom = Union[VarInSet, DiffInSet, Cmp, DiffCmp, Mod, NonDet]


def cmp_range(op: str, c: Scalar, mode: str) -> Range | None:
    """The closed range over-approximating ``x op c``; ``None`` for ``!=``."""
    if op == "<=":
        return Range(NEG_INF, c)
    if op == ">=":
        return Range(c, INF)
    if op == "==":
        return Range(c, c)
    if op == "<":
        return Range(NEG_INF, c - 1 if mode == sc.INT else c)
    if op == ">":
        return Range(c + 1 if mode == sc.INT else c, INF)
    if op == "!=":
        return None
    raise ValueError(f"unknown comparison {op!r}")


def normalize_atom(atom: GuardAtom, mode: str) -> VarInSet | DiffInSet | NonDet:
    """Reduce an atom to a set-membership test (sound, exact when possible)."""
    if isinstance(atom, (VarInSet, DiffInSet, NonDet)):
        return atom
    if isinstance(atom, Cmp):
        r = cmp_range(atom.op, atom.value, mode)
        return NonDet() if r is None else VarInSet(atom.var, r)
    if isinstance(atom, DiffCmp):
        r = cmp_range(atom.op, atom.value, mode)
        return NonDet() if r is None else DiffInSet(atom.var, atom.other, r)
    if isinstance(atom, Mod):
        s = Residues(abs(atom.k), atom.r)
        if atom.other is None:
            return VarInSet(atom.var, s)
        return DiffInSet(atom.var, atom.other, s)
    raise TypeError(f"not a guard atom: {atom!r}")


def holds(atom: GuardAtom, env: Sequence[Scalar]) -> bool | None:
    """Concrete truth value; ``None`` for the non-deterministic atom."""
    if isinstance(atom, NonDet):
        return None
    if isinstance(atom, VarInSet):
        return atom.set.contains(env[atom.var])
    if isinstance(atom, DiffInSet):
        return atom.set.contains(env[atom.var] - env[atom.other])
    if isinstance(atom, (Cmp, DiffCmp)):
        x = env[atom.var]
        if isinstance(atom, DiffCmp):
            x -= env[atom.other]
        c = atom.value
        return {
            "<=": x <= c, "<": x < c, ">=": x >= c,
            ">": x > c, "==": x == c, "!=": x != c,
        }[atom.op]
    if isinstance(atom, Mod):
        x = env[atom.var]
        if atom.other is not None:
            x -= env[atom.other]
        if atom.k == 0:
            return x == atom.r
        return sc.congruent(x, atom.r, abs(atom.k))
    raise TypeError(f"not a guard atom: {atom!r}")


# -- rendering ---------------------------------------------------------------------


def show_expr(e: Expr, names: Sequence[str]) -> str:
    """Source-like text of ``e``."""
    if isinstance(e, Num):
        return sc.render(e.value)
    if isinstance(e, Var):
        return names[e.id]
    if isinstance(e, Random):
        return "?"
    if isinstance(e, Neg):
        return f"-{show_expr(e.arg, names)}"
    if isinstance(e, Mul):
        return f"{sc.render(e.coef)}*{show_expr(e.arg, names)}"
    op = "+" if isinstance(e, Add) else "-"
    return f"{show_expr(e.left, names)} {op} {show_expr(e.right, names)}"


def show_atom(a: GuardAtom, names: Sequence[str]) -> str:
    if isinstance(a, NonDet):
        return "?"
    lhs = names[a.var]
    other = getattr(a, "other", None)
    if other is not None:
        lhs = f"{lhs} - {names[other]}"
    if isinstance(a, (VarInSet, DiffInSet)):
        return f"{lhs} in {a.set}"
    if isinstance(a, (Cmp, DiffCmp)):
        return f"{lhs} {a.op} {sc.render(a.value)}"
    return f"{lhs} % {sc.render(a.k)} == {sc.render(a.r)}"
