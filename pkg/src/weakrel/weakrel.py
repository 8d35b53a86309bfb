"""Weakly relational domain: coherent constraint matrices over a basis.

Cell ``(i, j)`` constrains ``v_j - v_i``.  Index 0 is the zero variable, so
``cell(0, i)`` holds the unary facts on ``v_i``.  Coherence
(``cell(j, i) == neg(cell(i, j))`` and ``{0}`` on the diagonal) is maintained
structurally: every write goes through :func:`_put`, which mirrors the cell.

Matrices are immutable.  Each one remembers how far it is from its closure:

* ``dirty is None``       -- closure state unknown, a full closure is needed;
* ``dirty == frozenset()`` -- the matrix is closed;
* ``dirty == {i, ...}``   -- it was closed before rows/columns ``i, ...``
  changed, so an incremental closure over those indices suffices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import kernel
from .basis import BOT, Basis, SetLiteral
from .bases import IntervalBasis, Interval
from .expr import (DiffInSet, Expr, GuardAtom, NonDet, Random, Var, VarInSet,
                   linearize, normalize_atom)
from .nonrel import AbstractEnv, NonRelational
from .scalar import INF, NEG_INF, Scalar


class ConstraintMatrix:
    __slots__ = ("basis", "n", "_rows", "_dirty", "_closure")

    def __init__(self, basis: Basis, n: int, rows, dirty=None):
        self.basis = basis
        self.n = n
        self._rows = rows  # tuple of tuples, or None for the empty state
        self._dirty = dirty
        self._closure = None

    @property
    def is_empty_state(self) -> bool:
        """True for the canonical empty value (not a full emptiness test)."""
        return self._rows is None

    @property
    def closed(self) -> str:
        if self._rows is None:
            return "empty"
        return "closed" if self._dirty == frozenset() else "unknown"

    @property
    def dirty(self):
        return self._dirty

    def cell(self, i: int, j: int):
        if self._rows is None:
            return BOT
        return self._rows[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        if not isinstance(other, ConstraintMatrix):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    def __hash__(self):
        return hash((self.n, self._rows))

    def __repr__(self):
        if self._rows is None:
            return f"<ConstraintMatrix n={self.n} empty>"
        return f"<ConstraintMatrix n={self.n} {self.closed}>"

    def __str__(self):
        return "\n".join(render_lines(self)) or "T"


def _freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def _put(basis: Basis, rows, i: int, j: int, c) -> None:
    rows[i][j] = c
    if i != j:
        rows[j][i] = basis.neg(c)


def empty(basis: Basis, n: int) -> ConstraintMatrix:
    return ConstraintMatrix(basis, n, None)


def top(basis: Basis, n: int) -> ConstraintMatrix:
    if n < 1:
        raise ValueError("a constraint matrix needs at least the zero variable")
    t, z = basis.top(), basis.singleton(0)
    rows = [[z if i == j else t for j in range(n)] for i in range(n)]
    return ConstraintMatrix(basis, n, _freeze(rows), frozenset())


bottom = empty


def from_cells(basis: Basis, n: int, cells: dict[tuple[int, int], object]) -> ConstraintMatrix:
    """Coherent matrix from explicit ``{(i, j): element}`` constraints, each
    met into ``top``; the mirrored cell is filled in automatically."""
    rows = top(basis, n).rows()
    for (i, j), c in cells.items():
        if i == j:
            c = basis.meet(rows[i][i], c)
            if basis.is_bottom(c):
                return empty(basis, n)
            continue
        _put(basis, rows, i, j, basis.meet(rows[i][j], c))
    return _finish(basis, n, rows, None)


def _finish(basis, n, rows, dirty) -> ConstraintMatrix:
    for r in rows:
        for c in r:
            if c is BOT:
                return empty(basis, n)
    return ConstraintMatrix(basis, n, _freeze(rows), dirty)


# -- closure --------------------------------------------------------------------


def _floyd_warshall(basis: Basis, rows, order: Sequence[int], changed=None):
    """In-place modified Floyd-Warshall; ``None`` when some cell becomes empty.

    With ``changed`` given, the update is skipped whenever ``i``, ``j`` and
    ``k`` all lie outside it (that block is already closed).
    """
    meet, add, neg = basis.meet, basis.add, basis.neg
    n = len(rows)
    for k in order:
        rk = rows[k]
        if rk[k] is BOT:
            return None
        k_fresh = changed is None or k in changed
        for i in range(n):
            ri = rows[i]
            mik = ri[k]
            ik_fresh = k_fresh or i in changed
            for j in range(i, n):
                if not ik_fresh and j not in changed:
                    continue
                old = ri[j]
                c = meet(old, add(mik, rk[j]))
                if c is BOT:
                    return None
                if c != old:
                    ri[j] = c
                    if i != j:
                        rows[j][i] = neg(c)
    for i in range(n):
        if rows[i][i] is BOT:
            return None
    return rows


def _close_intervals(m: ConstraintMatrix):
    """Closure of an interval matrix through the bound kernel."""
    n = m.n
    ub = []
    for r in m._rows:
        for c in r:
            ub.append(None if c.hi == INF else c.hi)
    w = kernel.floyd_warshall(ub, n)
    if w is None:
        return None
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            hi = w[i * n + j]
            lo = w[j * n + i]
            rows[i][j] = Interval(NEG_INF if lo is None else -lo, INF if hi is None else hi)
    return rows


def close(m: ConstraintMatrix) -> ConstraintMatrix:
    """The closure ``m*``, or the empty state when ``Gamma(m)`` is empty."""
    if m._rows is None or m._dirty == frozenset():
        return m
    if m._closure is not None:
        return m._closure
    if m._dirty is not None:
        res = close_incremental(m, m._dirty)
    else:
        if type(m.basis) is IntervalBasis:
            rows = _close_intervals(m)
        else:
            rows = _floyd_warshall(m.basis, m.rows(), range(m.n))
        res = empty(m.basis, m.n) if rows is None else ConstraintMatrix(
            m.basis, m.n, _freeze(rows), frozenset())
    m._closure = res
    return res


def close_full(m: ConstraintMatrix) -> ConstraintMatrix:
    """Full generic closure, ignoring any cached state (reference path)."""
    if m._rows is None:
        return m
    rows = _floyd_warshall(m.basis, m.rows(), range(m.n))
    if rows is None:
        return empty(m.basis, m.n)
    return ConstraintMatrix(m.basis, m.n, _freeze(rows), frozenset())


def close_incremental(m: ConstraintMatrix, changed: Iterable[int]) -> ConstraintMatrix:
    """Closure of ``m`` assuming it was closed before the rows and columns in
    ``changed`` were modified.  Costs O(n^2 * len(changed)) basis operations."""
    if m._rows is None:
        return m
    changed = frozenset(changed)
    if not changed:
        return ConstraintMatrix(m.basis, m.n, m._rows, frozenset())
    # unchanged pivots first: their updates only touch rows/columns in `changed`
    order = [k for k in range(m.n) if k not in changed] + sorted(changed)
    rows = _floyd_warshall(m.basis, m.rows(), order, changed)
    if rows is None:
        return empty(m.basis, m.n)
    return ConstraintMatrix(m.basis, m.n, _freeze(rows), frozenset())


def is_empty(m: ConstraintMatrix) -> bool:
    return close(m)._rows is None


# -- lattice operations ---------------------------------------------------------


def _check(m: ConstraintMatrix, o: ConstraintMatrix) -> None:
    if m.n != o.n:
        raise ValueError(f"dimension mismatch: {m.n} vs {o.n}")


def leq(m: ConstraintMatrix, o: ConstraintMatrix) -> bool:
    """``Gamma(m) <= Gamma(o)``; only the left argument is closed."""
    _check(m, o)
    mc = close(m)
    if mc._rows is None:
        return True
    if o._rows is None:
        return False
    lq = m.basis.leq
    return all(lq(a, b) for ra, rb in zip(mc._rows, o._rows) for a, b in zip(ra, rb))


def eq(m: ConstraintMatrix, o: ConstraintMatrix) -> bool:
    _check(m, o)
    return close(m)._rows == close(o)._rows


def meet(m: ConstraintMatrix, o: ConstraintMatrix) -> ConstraintMatrix:
    _check(m, o)
    if m._rows is None or o._rows is None:
        return empty(m.basis, m.n)
    mt = m.basis.meet
    rows = [[mt(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(m._rows, o._rows)]
    return _finish(m.basis, m.n, rows, None)


def join(m: ConstraintMatrix, o: ConstraintMatrix) -> ConstraintMatrix:
    """Cellwise join of the closures; the result is closed."""
    _check(m, o)
    mc, oc = close(m), close(o)
    if mc._rows is None:
        return oc
    if oc._rows is None:
        return mc
    jn = m.basis.join
    rows = [[jn(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(mc._rows, oc._rows)]
    return ConstraintMatrix(m.basis, m.n, _freeze(rows), frozenset())


def widen(m: ConstraintMatrix, o: ConstraintMatrix) -> ConstraintMatrix:
    """Cellwise widening.  The left argument is used exactly as stored:
    closing it would break stabilization of the iteration."""
    _check(m, o)
    if m._rows is None:
        return o
    if o._rows is None:
        return m
    wd = m.basis.widen
    rows = [[wd(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(m._rows, o._rows)]
    return _finish(m.basis, m.n, rows, None)


# -- transfer functions ---------------------------------------------------------


def _with_dirty(m: ConstraintMatrix, extra: Iterable[int]):
    if m._dirty is None:
        return None
    return m._dirty | frozenset(extra)


def guard_elem(m: ConstraintMatrix, i: int, j: int, c) -> ConstraintMatrix:
    """Add the constraint ``v_j - v_i in gamma(c)``."""
    if m._rows is None:
        return m
    if i == j:
        return m if m.basis.contains_zero(c) else empty(m.basis, m.n)
    rows = m.rows()
    new = m.basis.meet(rows[i][j], c)
    if new is BOT:
        return empty(m.basis, m.n)
    if new == rows[i][j]:
        return m
    _put(m.basis, rows, i, j, new)
    return ConstraintMatrix(m.basis, m.n, _freeze(rows), _with_dirty(m, (i, j)))


def guard(m: ConstraintMatrix, i: int, j: int, s: SetLiteral) -> ConstraintMatrix:
    """Test ``v_j - v_i in s``; unary tests use ``i = 0``."""
    return guard_elem(m, i, j, m.basis.approx(s))


def project(m: ConstraintMatrix, i: int):
    """Exact set of values of ``v_i``, as a basis element."""
    return close(m).cell(0, i)


def forget(m: ConstraintMatrix, i: int) -> ConstraintMatrix:
    """Drop every constraint on ``v_i`` after making implicit ones explicit."""
    if i == 0:
        raise ValueError("the zero variable cannot be forgotten")
    mc = close(m)
    if mc._rows is None:
        return mc
    t = m.basis.top()
    rows = mc.rows()
    for k in range(m.n):
        if k != i:
            rows[i][k] = t
            rows[k][i] = t
    return ConstraintMatrix(m.basis, m.n, _freeze(rows), frozenset())


def assign_translate(m: ConstraintMatrix, i: int, c: Scalar) -> ConstraintMatrix:
    """``v_i <- v_i + c``, exact; closure status is preserved."""
    if m._rows is None or c == 0:
        return m
    b = m.basis
    plus, minus = b.singleton(c), b.singleton(-c)
    rows = m.rows()
    for k in range(m.n):
        if k != i:
            rows[k][i] = b.add(rows[k][i], plus)  # v_i - v_k grows by c
            rows[i][k] = b.add(rows[i][k], minus)
    return ConstraintMatrix(b, m.n, _freeze(rows), m._dirty)


def assign_copy_offset(m: ConstraintMatrix, i: int, j: int, c: Scalar) -> ConstraintMatrix:
    """``v_i <- v_j + c`` for ``i != j``, exact."""
    if i == j:
        raise ValueError("use assign_translate for v_i <- v_i + c")
    return guard_elem(forget(m, i), j, i, m.basis.singleton(c))


def assign_sum(m: ConstraintMatrix, i: int, j: int, k: int) -> ConstraintMatrix:
    """``v_i <- v_j + v_k`` keeping the relations of ``v_i`` with both operands."""
    if i in (j, k):
        return assign_generic(m, i, _sum_expr(j, k))
    mc = close(m)
    if mc._rows is None:
        return mc
    b = m.basis
    pj, pk = mc.cell(0, j), mc.cell(0, k)
    r = forget(mc, i)
    r = guard_elem(r, 0, i, b.add(pj, pk))
    r = guard_elem(r, j, i, pk)
    r = guard_elem(r, k, i, pj)
    return r


def _sum_expr(j, k):
    from .expr import Add
    return Add(Var(j), Var(k))


def assign_generic(m: ConstraintMatrix, i: int, e: Expr) -> ConstraintMatrix:
    """Fallback: evaluate ``e`` on the projections, forget ``v_i``, then bound it."""
    if i == 0:
        raise ValueError("the zero variable cannot be assigned")
    mc = close(m)
    if mc._rows is None:
        return mc
    if isinstance(e, Random):
        return forget(mc, i)
    env = AbstractEnv(tuple(mc._rows[0]))
    value = NonRelational(m.basis, m.n).eval(e, env)
    return guard_elem(forget(mc, i), 0, i, value)


def gamma_contains(m: ConstraintMatrix, point: Sequence[Scalar]) -> bool:
    if m._rows is None or len(point) != m.n or point[0] != 0:
        return False
    mem = m.basis.member
    for i, r in enumerate(m._rows):
        xi = point[i]
        for j, c in enumerate(r):
            if not mem(c, point[j] - xi):
                return False
    return True


def render_lines(m: ConstraintMatrix, names: Sequence[str] | None = None) -> list[str]:
    """One line per non-top cell of the closure, ordered by ``(i, j)``."""
    mc = close(m)
    if mc._rows is None:
        return [str(BOT)]
    names = names or ["0"] + [f"v{i}" for i in range(1, m.n)]
    b = m.basis
    out = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            c = mc._rows[i][j]
            if b.is_top(c):
                continue
            lhs = names[j] if i == 0 else f"{names[j]} - {names[i]}"
            out.append(f"{lhs} in {b.render(c)}")
    return out


# -- domain adapter ---------------------------------------------------------------


class WeaklyRelational:
    """The weakly relational domain over ``basis`` for ``n`` indices (the
    zero variable included), with the expression-level transfer functions."""

    relational = True

    def __init__(self, basis: Basis, n: int):
        if n < 1:
            raise ValueError("need at least the zero variable")
        self.basis = basis
        self.n = n

    def __repr__(self):
        return f"WeaklyRelational({self.basis!r}, {self.n})"

    def top(self):
        return top(self.basis, self.n)

    def bottom(self):
        return empty(self.basis, self.n)

    def is_bottom(self, m):
        return is_empty(m)

    leq = staticmethod(leq)
    eq = staticmethod(eq)
    join = staticmethod(join)
    meet = staticmethod(meet)
    widen = staticmethod(widen)
    close = staticmethod(close)
    project = staticmethod(project)

    def assign(self, m: ConstraintMatrix, i: int, e: Expr) -> ConstraintMatrix:
        """Dispatch ``v_i <- e`` to the most precise applicable transfer."""
        lin = linearize(e)
        if lin is None:
            if isinstance(e, Random):
                return forget(m, i)
            return assign_generic(m, i, e)
        coeffs, c = lin
        if not coeffs:
            return assign_copy_offset(m, i, 0, c)
        if len(coeffs) == 1:
            (j, k), = coeffs.items()
            if k == 1:
                return assign_translate(m, i, c) if j == i else assign_copy_offset(m, i, j, c)
        if len(coeffs) == 2 and c == 0 and all(k == 1 for k in coeffs.values()):
            j, k = sorted(coeffs)
            if i not in (j, k):
                return assign_sum(m, i, j, k)
        return assign_generic(m, i, e)

    def forget(self, m, i):
        return forget(m, i)

    def guard(self, m: ConstraintMatrix, atom: GuardAtom) -> ConstraintMatrix:
        atom = normalize_atom(atom, self.basis.mode)
        if isinstance(atom, VarInSet):
            return guard(m, 0, atom.var, atom.set)
        if isinstance(atom, DiffInSet):
            return guard(m, atom.other, atom.var, atom.set)
        assert isinstance(atom, NonDet)
        return m

    def contains(self, m, point):
        return gamma_contains(m, point)

    def constraints(self, m, names):
        return render_lines(m, names)


# -- reduced product of two relational domains --------------------------------------


class ProductState:
    """A pair of constraint matrices over the same indices."""

    __slots__ = ("left", "right")

    def __init__(self, left: ConstraintMatrix, right: ConstraintMatrix):
        self.left = left
        self.right = right

    def __eq__(self, other):
        if not isinstance(other, ProductState):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"ProductState({self.left!r}, {self.right!r})"


class ProductDomain:
    """Reduced product of two weakly relational domains.

    Each component is closed on its own, so every closure guarantee holds per
    component.  After each operation except widening, the cells ``(i, j)`` of
    both closed matrices are reduced against each other with ``reduction``
    until nothing changes.
    """

    relational = True

    def __init__(self, left: WeaklyRelational, right: WeaklyRelational, reduction,
                 max_rounds: int = 8):
        if left.n != right.n or left.basis.mode != right.basis.mode:
            raise ValueError("product components must agree on size and scalar mode")
        self.left = left
        self.right = right
        self.reduction = reduction
        self.n = left.n
        self.max_rounds = max_rounds

    def __repr__(self):
        return f"ProductDomain({self.left!r}, {self.right!r})"

    def _pair(self, a, b) -> ProductState:
        return ProductState(a, b)

    def reduce(self, s: ProductState) -> ProductState:
        a, b = close(s.left), close(s.right)
        red = self.reduction
        for _ in range(self.max_rounds):
            if a._rows is None or b._rows is None:
                return self.bottom()
            changed = False
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    c1, c2 = a._rows[i][j], b._rows[i][j]
                    r1 = red.reduce_left(c1, c2)
                    r2 = BOT if r1 is BOT else red.reduce_right(r1, c2)
                    if r1 is BOT or r2 is BOT:
                        return self.bottom()
                    if r1 != c1:
                        a = guard_elem(a, i, j, r1)
                        changed = True
                    if r2 != c2:
                        b = guard_elem(b, i, j, r2)
                        changed = True
            if not changed:
                break
            a, b = close(a), close(b)
        if is_empty(a) or is_empty(b):
            return self.bottom()
        return ProductState(a, b)

    def top(self):
        return ProductState(self.left.top(), self.right.top())

    def bottom(self):
        return ProductState(self.left.bottom(), self.right.bottom())

    def is_bottom(self, s):
        return is_empty(s.left) or is_empty(s.right)

    def leq(self, s, t):
        if self.is_bottom(s):
            return True
        return leq(s.left, t.left) and leq(s.right, t.right)

    def eq(self, s, t):
        if self.is_bottom(s) or self.is_bottom(t):
            return self.is_bottom(s) and self.is_bottom(t)
        return eq(s.left, t.left) and eq(s.right, t.right)

    def join(self, s, t):
        if self.is_bottom(s):
            return t
        if self.is_bottom(t):
            return s
        return self.reduce(ProductState(join(s.left, t.left), join(s.right, t.right)))

    def meet(self, s, t):
        return self.reduce(ProductState(meet(s.left, t.left), meet(s.right, t.right)))

    def widen(self, s, t):
        """Componentwise, without reduction, so each component stabilizes."""
        if self.is_bottom(s):
            return t
        if self.is_bottom(t):
            return s
        return ProductState(widen(s.left, t.left), widen(s.right, t.right))

    def close(self, s):
        return self.reduce(s)

    def project(self, s, i):
        r = self.reduce(s)
        return project(r.left, i), project(r.right, i)

    def assign(self, s, i, e):
        return self.reduce(ProductState(self.left.assign(s.left, i, e),
                                        self.right.assign(s.right, i, e)))

    def forget(self, s, i):
        return ProductState(forget(s.left, i), forget(s.right, i))

    def guard(self, s, atom):
        return self.reduce(ProductState(self.left.guard(s.left, atom),
                                        self.right.guard(s.right, atom)))

    def contains(self, s, point):
        return gamma_contains(s.left, point) and gamma_contains(s.right, point)

    def constraints(self, s, names):
        """One line per index pair constrained by either component; a pair
        bounded by both is printed as ``(left, right)``."""
        r = self.reduce(s)
        if self.is_bottom(r):
            return [str(BOT)]
        lb, rb = self.left.basis, self.right.basis
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                c1, c2 = r.left._rows[i][j], r.right._rows[i][j]
                t1, t2 = lb.is_top(c1), rb.is_top(c2)
                if t1 and t2:
                    continue
                if t2 or _repeats_singleton(lb, rb, c1, c2):
                    text = lb.render(c1)
                elif t1:
                    text = rb.render(c2)
                else:
                    text = f"({lb.render(c1)}, {rb.render(c2)})"
                lhs = names[j] if i == 0 else f"{names[j]} - {names[i]}"
                out.append(f"{lhs} in {text}")
        return out


def _repeats_singleton(lb: Basis, rb: Basis, c1, c2) -> bool:
    """True when the interval ``c1`` is one value ``v`` and ``c2`` is ``{v}``."""
    return isinstance(c1, Interval) and c1.lo == c1.hi and c2 == rb.singleton(c1.lo)
