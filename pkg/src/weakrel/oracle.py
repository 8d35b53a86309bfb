"""Deliberately naive reference implementations for differential testing.

Nothing here is used by the analyzer itself.  ``gamma_enum`` enumerates the
concretization of a matrix inside a finite window, ``closure_by_paths``
computes the closure as a meet over simple paths and ``concrete_run``
executes a program on explicit sets of states.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import scalar as sc
from .basis import Basis
from .expr import Add, Mul, Neg, NonDet, Random, Sub, evaluate, holds
from .lang import Assign, Block, If, Labeled, Program, Skip, While
from .weakrel import ConstraintMatrix, empty


@dataclass(frozen=True)
class Window:
    """Candidate values per variable; ``values[0]`` is forced to ``(0,)``."""

    values: tuple[tuple, ...]

    @classmethod
    def uniform(cls, n: int, candidates: Iterable) -> "Window":
        cand = tuple(sorted(set(candidates)))
        if 0 not in cand:
            raise ValueError("a window must contain 0")
        return cls(((0,),) + (cand,) * (n - 1))

    @classmethod
    def default(cls, n: int, mode: str = sc.INT, radius: int = 10) -> "Window":
        if mode == sc.INT:
            return cls.uniform(n, range(-radius, radius + 1))
        vals = {sc.normalize(Fraction(p, q)) for q in (1, 2, 3, 4)
                for p in range(-radius * q, radius * q + 1)}
        return cls.uniform(n, vals)

    @property
    def n(self) -> int:
        return len(self.values)


def gamma_enum(m: ConstraintMatrix, w: Window, limit: int | None = None,
               indices: bool = False) -> set[tuple]:
    """All window points ``x`` with ``x_0 = 0`` and every
    ``x_j - x_i`` in the concretization of cell ``(i, j)``.  With ``limit``
    the search stops after that many points.  With ``indices`` each point is
    given by the positions of its coordinates in the window, which is cheaper
    to compare when both sides use the same window."""
    if m.is_empty_state:
        return set()
    if w.n != m.n:
        raise ValueError("window and matrix sizes differ")
    mem, rows = m.basis.member, m.rows()
    vals = w.values
    out: set[tuple] = set()
    idx: list[int] = []
    memo: dict = {}

    def allowed(i, k, a):
        # indices b with x_k = vals[k][b] compatible with x_i = vals[i][a]
        # through cells (i, k) and (k, i); memoized on indices
        key = (i, k, a)
        r = memo.get(key)
        if r is None:
            xi, cik, cki = vals[i][a], rows[i][k], rows[k][i]
            r = memo[key] = frozenset(
                b for b, d in enumerate(v - xi for v in vals[k]) if mem(cik, d) and mem(cki, -d))
        return r

    def extend(k):
        if k == m.n:
            out.add(tuple(idx) if indices else tuple(vals[j][b] for j, b in enumerate(idx)))
            return
        if not mem(rows[k][k], 0):
            return
        cand = None
        for i in range(k):
            a = allowed(i, k, idx[i])
            cand = a if cand is None else cand & a
            if not cand:
                return
        for b in (range(len(vals[k])) if cand is None else sorted(cand)):
            if limit is not None and len(out) >= limit:
                return
            idx.append(b)
            extend(k + 1)
            idx.pop()

    extend(0)
    return out


def closure_by_paths(m: ConstraintMatrix, max_n: int = 4) -> ConstraintMatrix:
    """Cell ``(i, j)`` is the meet, over every simple path from ``i`` to
    ``j``, of the sum of the cells along it.  A simple cycle whose sum
    excludes 0, or a cell that becomes empty, yields the empty matrix."""
    if m.n > max_n:
        raise ValueError(f"path enumeration limited to n <= {max_n}")
    b: Basis = m.basis
    if m.is_empty_state:
        return empty(b, m.n)
    rows, n = m.rows(), m.n

    def path_sum(path):
        acc = rows[path[0]][path[1]]
        for a, c in zip(path[1:], path[2:]):
            acc = b.add(acc, rows[a][c])
        return acc

    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            others = [k for k in range(n) if k not in (i, j)]
            acc = rows[i][j]
            for r in range(len(others) + 1):
                for mids in itertools.permutations(others, r):
                    if i == j and not mids:
                        continue
                    acc = b.meet(acc, path_sum((i, *mids, j)))
            if b.is_bottom(acc):
                return empty(b, n)
            out[i][j] = acc
    return ConstraintMatrix(b, n, tuple(tuple(r) for r in out), frozenset())


# -- concrete execution -------------------------------------------------------------


class BudgetExhausted(RuntimeError):
    """Exploration exceeded its budget; callers should skip, not fail."""


@dataclass
class ConcreteResult:
    points: dict[str, set[tuple]]
    exit: set[tuple]


def concrete_run(p: Program, budget: int = 50, choices: Sequence = range(-3, 4),
                 max_states: int = 20_000) -> ConcreteResult:
    """Reachable states at every label, exploring ``?`` both ways.

    ``x = ?`` takes every value in ``choices``.  Each loop runs at most
    ``budget`` rounds: a non-deterministic loop is simply truncated there
    (every state it produced could already leave), whereas a deterministic
    loop that is still producing new states raises :class:`BudgetExhausted`.
    Variables read before any assignment hold 0.
    """
    points: dict[str, set[tuple]] = {name: set() for name in p.labels}
    choices = tuple(choices)

    def check(states):
        if len(states) > max_states:
            raise BudgetExhausted(f"more than {max_states} states")
        return states

    def assign(states, s: Assign):
        out = set()
        for st in states:
            vals = [None]

            def rand():
                return vals[0]

            if _has_random(s.expr):
                for c in choices:
                    vals[0] = c
                    new = list(st)
                    new[s.var] = evaluate(s.expr, st, rand)
                    out.add(tuple(new))
            else:
                new = list(st)
                new[s.var] = evaluate(s.expr, st)
                out.add(tuple(new))
        return check(out)

    def split(states, cond):
        yes, no = set(), set()
        for st in states:
            h = holds(cond, st)
            if h is None or h:
                yes.add(st)
            if h is None or not h:
                no.add(st)
        return yes, no

    def run(body, states):
        for s in body:
            states = stmt(s, states)
        return states

    def stmt(s, states):
        if isinstance(s, Labeled):
            points[s.label] |= states
            return stmt(s.stmt, states)
        if isinstance(s, Block):
            return run(s.stmts, states)
        if isinstance(s, Skip):
            return states
        if isinstance(s, Assign):
            return assign(states, s)
        if isinstance(s, If):
            yes, no = split(states, s.cond)
            return check(run(s.then, yes) | run(s.orelse, no))
        if isinstance(s, While):
            seen = set(states)
            cur, out = set(states), set()
            for _ in range(budget):
                yes, no = split(cur, s.cond)
                out |= no
                cur = run(s.body, yes) - seen
                if not cur:
                    return check(out)
                seen |= cur
                check(seen)
            if isinstance(s.cond, NonDet):
                return check(out | cur)
            raise BudgetExhausted("loop did not terminate within the budget")
        raise TypeError(f"unknown statement {s!r}")

    init = {tuple(0 for _ in range(p.nvars))}
    final = run(p.body, init)
    return ConcreteResult(points, final)


def _has_random(e) -> bool:
    if isinstance(e, Random):
        return True
    if isinstance(e, (Neg, Mul)):
        return _has_random(e.arg)
    if isinstance(e, (Add, Sub)):
        return _has_random(e.left) or _has_random(e.right)
    return False
