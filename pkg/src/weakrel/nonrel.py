"""Non-relational domain built point-wise from a basis.

Environments are tuples of basis elements indexed by variable id.  Index 0 is
the zero variable shared with the relational domain; it always holds
``singleton(0)`` so that expressions and atoms use the same ids everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .basis import BOT, Basis
from .expr import (Add, DiffInSet, Expr, GuardAtom, Mul, Neg, NonDet, Num, Random,
                   Sub, Var, VarInSet, normalize_atom)


@dataclass(frozen=True)
class AbstractEnv:
    """``cells is None`` is the canonical empty environment."""

    cells: tuple | None

    @property
    def is_bottom(self) -> bool:
        return self.cells is None

    def __getitem__(self, i):
        return BOT if self.cells is None else self.cells[i]

    def __len__(self):
        return 0 if self.cells is None else len(self.cells)


BOTTOM_ENV = AbstractEnv(None)


class NonRelational:
    """The non-relational domain over ``basis`` for ``n`` variables
    (including the zero variable at index 0)."""

    def __init__(self, basis: Basis, n: int):
        if n < 1:
            raise ValueError("need at least the zero variable")
        self.basis = basis
        self.n = n

    def __repr__(self):
        return f"NonRelational({self.basis!r}, {self.n})"

    def make(self, cells: Sequence) -> AbstractEnv:
        cells = tuple(cells)
        if len(cells) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(cells)}")
        if any(self.basis.is_bottom(c) for c in cells):
            return BOTTOM_ENV
        return AbstractEnv(cells)

    def top(self) -> AbstractEnv:
        t = self.basis.top()
        return self.make([self.basis.singleton(0)] + [t] * (self.n - 1))

    def bottom(self) -> AbstractEnv:
        return BOTTOM_ENV

    def is_bottom(self, e: AbstractEnv) -> bool:
        return e.is_bottom

    def leq(self, e1: AbstractEnv, e2: AbstractEnv) -> bool:
        if e1.is_bottom:
            return True
        if e2.is_bottom:
            return False
        return all(self.basis.leq(a, b) for a, b in zip(e1.cells, e2.cells))

    def eq(self, e1: AbstractEnv, e2: AbstractEnv) -> bool:
        return e1 == e2

    def join(self, e1: AbstractEnv, e2: AbstractEnv) -> AbstractEnv:
        if e1.is_bottom:
            return e2
        if e2.is_bottom:
            return e1
        return self.make(self.basis.join(a, b) for a, b in zip(e1.cells, e2.cells))

    def widen(self, e1: AbstractEnv, e2: AbstractEnv) -> AbstractEnv:
        if e1.is_bottom:
            return e2
        if e2.is_bottom:
            return e1
        return self.make(self.basis.widen(a, b) for a, b in zip(e1.cells, e2.cells))

    def meet(self, e1: AbstractEnv, e2: AbstractEnv) -> AbstractEnv:
        if e1.is_bottom or e2.is_bottom:
            return BOTTOM_ENV
        return self.make(self.basis.meet(a, b) for a, b in zip(e1.cells, e2.cells))

    def eval(self, e: Expr, env: AbstractEnv):
        """Abstract value of ``e`` by structural recursion."""
        b = self.basis
        if env.is_bottom:
            return BOT
        if isinstance(e, Num):
            return b.singleton(e.value)
        if isinstance(e, Var):
            return env.cells[e.id]
        if isinstance(e, Random):
            return b.top()
        if isinstance(e, Neg):
            return b.neg(self.eval(e.arg, env))
        if isinstance(e, Add):
            return b.add(self.eval(e.left, env), self.eval(e.right, env))
        if isinstance(e, Sub):
            return b.add(self.eval(e.left, env), b.neg(self.eval(e.right, env)))
        if isinstance(e, Mul):
            return b.scale(e.coef, self.eval(e.arg, env))
        raise TypeError(f"not an expression: {e!r}")

    def assign(self, env: AbstractEnv, i: int, e: Expr) -> AbstractEnv:
        if env.is_bottom:
            return env
        cells = list(env.cells)
        cells[i] = self.eval(e, env)
        return self.make(cells)

    def forget(self, env: AbstractEnv, i: int) -> AbstractEnv:
        return self.assign(env, i, Random())

    def guard(self, env: AbstractEnv, atom: GuardAtom) -> AbstractEnv:
        if env.is_bottom:
            return env
        atom = normalize_atom(atom, self.basis.mode)
        if isinstance(atom, VarInSet):
            cells = list(env.cells)
            cells[atom.var] = self.basis.meet(cells[atom.var], self.basis.approx(atom.set))
            return self.make(cells)
        # relational and non-deterministic tests cannot filter anything here
        assert isinstance(atom, (DiffInSet, NonDet))
        return env

    def project(self, env: AbstractEnv, i: int):
        return env[i]

    def contains(self, env: AbstractEnv, point: Sequence) -> bool:
        if env.is_bottom or point[0] != 0:
            return False
        return all(self.basis.member(c, x) for c, x in zip(env.cells, point))

    def constraints(self, env: AbstractEnv, names: Sequence[str]) -> list[str]:
        """Rendered non-top facts, one per variable."""
        if env.is_bottom:
            return [str(BOT)]
        out = []
        for i in range(1, self.n):
            c = env.cells[i]
            if not self.basis.is_top(c):
                out.append(f"{names[i]} in {self.basis.render(c)}")
        return out
