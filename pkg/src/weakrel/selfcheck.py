"""Seeded randomized property checks against the brute-force oracle.

Every check draws its cases from a ``random.Random(seed)`` so a run is
reproducible, and returns a :class:`CheckResult` listing the failing cases.
The acceptance tests call these with full case counts; ``weakrel selftest``
calls them with reduced ones.

Generators keep constants small (``|c| <= 3``, congruence moduli dividing 12,
rational denominators of 2) so that the enumeration windows below contain a
witness whenever a concretization is non-empty.  This makes the window-based
comparisons exact rather than approximate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import scalar as sc
from . import weakrel as wr
from .analyzer import DOMAINS, analyze, build_cfg, make_domain
from .basis import BOT, TOP, Basis
from .bases import Const, Interval, cong, make_basis
from .lang import parse
from .oracle import BudgetExhausted, Window, closure_by_paths, concrete_run, gamma_enum
from .scalar import INF, NEG_INF

# (basis name, scalar mode) pairs lifted to constraint matrices
SHIPPED = (
    ("constant", sc.INT),
    ("interval", sc.INT),
    ("congruence", sc.INT),
    ("interval", sc.RAT),
    ("congruence", sc.RAT),
)

# bases covered by the basis-law checks
LAW_BASES = SHIPPED + (("constant", sc.RAT), ("product", sc.INT), ("product", sc.RAT))


# The interval x congruence product basis has no exact sum (``[0,2] + 4Z`` has
# gaps) and its meets do not distribute over sums.  It is therefore never
# lifted to a matrix domain (the analyzer pairs two matrices instead), but its
# laws are still checked and these failures are expected.
PRODUCT_GAPS = frozenset({"law-add-exact", "law-pairwise-empty", "law-distributive"})


def expected_failure(name: str) -> bool:
    kind, _, rest = name.partition("[")
    return rest.startswith("product/") and kind in PRODUCT_GAPS


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def expected(self) -> bool:
        return expected_failure(self.name)

    def line(self) -> str:
        status = "PASS" if self.ok else ("XFAIL" if self.expected else "FAIL")
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures{extra}"


def _run(name: str, cases: int, seed: int, body: Callable, max_failures: int = 5) -> CheckResult:
    """Run ``body(rng)`` ``cases`` times; it returns ``None`` on success, a
    description on failure, or the string ``"skip"``."""
    res = CheckResult(name)
    rng = random.Random(f"{name}/{seed}")
    attempts = 0
    while res.cases < cases and attempts < cases * 10:
        attempts += 1
        out = body(rng)
        if out == "skip":
            res.skipped += 1
            continue
        res.cases += 1
        if out is not None and len(res.failures) < max_failures:
            res.failures.append(out)
    return res


# -- generators ---------------------------------------------------------------------


def _scalar(rng, mode: str, lo: int = -3, hi: int = 3):
    if mode == sc.INT:
        return rng.randint(lo, hi)
    return sc.normalize(Fraction(rng.randint(2 * lo, 2 * hi), 2))


def gen_elem(rng, b: Basis, allow_bot: bool = False):
    """A random element of ``b`` with small constants."""
    if allow_bot and rng.random() < 0.03:
        return BOT
    if rng.random() < 0.1:
        return b.top()
    kind, mode = b.name, b.mode
    if kind == "constant":
        return Const(_scalar(rng, mode))
    if kind == "interval":
        lo = NEG_INF if rng.random() < 0.2 else _scalar(rng, mode)
        if rng.random() < 0.2:
            hi = INF
        else:
            base = 0 if lo == NEG_INF else lo
            hi = sc.normalize(base + _scalar(rng, mode, 0, 3))
            if lo == NEG_INF:
                hi = _scalar(rng, mode)
        return b.make(lo, hi)
    if kind == "congruence":
        if rng.random() < 0.25:
            return b.singleton(_scalar(rng, mode))
        if mode == sc.INT:
            k = rng.choice((1, 2, 3, 4, 6))
        else:
            k = sc.normalize(rng.choice((Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))))
        return cong(k, _scalar(rng, mode))
    if kind == "product":
        return b.make(gen_elem(rng, b.left), gen_elem(rng, b.right))
    raise ValueError(f"no generator for basis {kind!r}")


def gen_matrix(rng, b: Basis, n: int, density: float = 0.5) -> wr.ConstraintMatrix:
    """A coherent matrix with each pair ``i < j`` constrained with
    probability ``density`` (the result is not closed)."""
    cells = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                cells[(i, j)] = gen_elem(rng, b)
    return wr.from_cells(b, n, cells)


def window_for(b: Basis, n: int) -> Window:
    """A window large enough to hold a witness of any generated matrix."""
    if b.mode == sc.RAT:
        # generated constants are halves, so halves always hold a witness;
        # congruence moduli are multiples of 1/2, and quarter points near the
        # origin tell such a congruence apart from T
        vals = [sc.normalize(Fraction(p, 2)) for p in range(-18, 19)]
        if b.name != "interval":
            vals += [sc.normalize(Fraction(p, 4)) for p in range(-16, 17)]
    elif b.name in ("congruence", "product"):
        vals = range(-14, 15)
    else:
        vals = range(-10, 11)
    return Window.uniform(n, vals)


def _dims(b: Basis, rng) -> int:
    return rng.randint(2, 3) if b.mode == sc.RAT else rng.randint(2, 4)


def _pin(m: wr.ConstraintMatrix, i: int, j: int, v) -> wr.ConstraintMatrix:
    """``m`` with ``v_j - v_i = v`` added (not closed)."""
    return wr.guard_elem(m, i, j, m.basis.singleton(v))


def _probe_values(w: Window) -> list:
    """Values near the origin whose witnesses are sure to fit in ``w``:
    quarter points only where the window has quarter room on every side."""
    return [v for v in w.values[1]
            if abs(v) <= 1 or (abs(v) <= 4 and Fraction(v).denominator <= 2)]


def _nonempty(m, w) -> bool:
    return bool(gamma_enum(m, w, limit=1))


def _describe(m) -> str:
    if m.is_empty_state:
        return "empty"
    return repr(m.rows())


# -- closure against the oracle --------------------------------------------------------


def check_closure_oracle(b: Basis, cases: int = 1000, seed: int = 0) -> CheckResult:
    """close(m) equals the path-based closure cellwise when non-empty, and
    emptiness agrees with window enumeration."""

    def body(rng):
        n = rng.randint(2, 4) if b.mode == sc.INT else rng.randint(2, 3)
        m = gen_matrix(rng, b, n)
        c, p = wr.close(m), closure_by_paths(m)
        enum_empty = not _nonempty(m, window_for(b, n))
        if wr.is_empty(m) != enum_empty:
            return f"emptiness: close says {wr.is_empty(m)}, window says {enum_empty}: {_describe(m)}"
        if not c.is_empty_state and c.rows() != p.rows():
            return f"closure differs from paths on {_describe(m)}"
        if c.is_empty_state and not p.is_empty_state:
            return f"paths found no contradiction on {_describe(m)}"
        return None

    return _run(f"closure-oracle[{b.name}/{b.mode}]", cases, seed, body)


def check_gamma_preserved(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    def body(rng):
        n = 3 if b.mode == sc.INT else 2
        m = gen_matrix(rng, b, n)
        w = window_for(b, n)
        if gamma_enum(m, w) != gamma_enum(wr.close(m), w):
            return f"Gamma changed by closure: {_describe(m)}"
        return None

    return _run(f"closure-preserves-gamma[{b.name}/{b.mode}]", cases, seed, body)


def check_idempotent(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    def body(rng):
        m = gen_matrix(rng, b, _dims(b, rng))
        c = wr.close(m)
        if wr.close_full(c) != c:
            return f"closure not idempotent on {_describe(m)}"
        return None

    return _run(f"closure-idempotent[{b.name}/{b.mode}]", cases, seed, body)


def check_coherent(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    def body(rng):
        m = gen_matrix(rng, b, _dims(b, rng))
        c = wr.close(m)
        if c.is_empty_state:
            return None
        z = b.singleton(0)
        for i in range(c.n):
            if c.cell(i, i) != z:
                return f"diagonal {i} is {c.cell(i, i)}"
            for j in range(c.n):
                if c.cell(j, i) != b.neg(c.cell(i, j)):
                    return f"cells ({i},{j}) and ({j},{i}) incoherent"
        return None

    return _run(f"closure-coherent[{b.name}/{b.mode}]", cases, seed, body)


def check_saturated(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    """Every value a closed cell allows (inside a small probe range) is
    realized by some point of the concretization."""

    def body(rng):
        n = _dims(b, rng)
        m = gen_matrix(rng, b, n)
        c = wr.close(m)
        if c.is_empty_state:
            return "skip"
        w = window_for(b, n)
        i, j = rng.sample(range(n), 2)
        probe = _probe_values(w)
        for v in rng.sample(probe, min(8, len(probe))):
            if b.member(c.cell(i, j), v) and not _nonempty(_pin(m, i, j, v), w):
                return f"value {v} of cell ({i},{j}) not realized in {_describe(m)}"
        return None

    return _run(f"closure-saturated[{b.name}/{b.mode}]", cases, seed, body)


def check_normal_form(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    """Matrices with the same concretization share one closure.  Equivalent
    matrices are sampled by meeting ``m`` with random cells of ``m*``."""

    def body(rng):
        n = _dims(b, rng)
        m = gen_matrix(rng, b, n)
        c = wr.close(m)
        if c.is_empty_state:
            return "skip"
        rows = m.rows()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    rows[i][j] = b.meet(rows[i][j], c.cell(i, j))
                    rows[j][i] = b.neg(rows[i][j])
        m2 = wr._finish(b, n, rows, None)
        if wr.close(m2) != c:
            return f"equivalent matrices close differently: {_describe(m)}"
        return None

    return _run(f"closure-normal-form[{b.name}/{b.mode}]", cases, seed, body)


# -- operator laws ------------------------------------------------------------------


def check_join(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    def body(rng):
        n = _dims(b, rng)
        m1, m2 = gen_matrix(rng, b, n), gen_matrix(rng, b, n)
        j = wr.join(m1, m2)
        if wr.close_full(j) != j:
            return "join is not closed"
        if j != wr.join(wr.close(m1), wr.close(m2)):
            return "join depends on argument representation"
        if not (wr.leq(m1, j) and wr.leq(m2, j)):
            return "join is not an upper bound"
        return None

    return _run(f"join-closed[{b.name}/{b.mode}]", cases, seed, body)


def check_leq_oracle(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    """Inclusion and equality tests match window enumeration."""

    def body(rng):
        n = rng.randint(2, 3)
        m1 = gen_matrix(rng, b, n)
        m2 = gen_matrix(rng, b, n, 0.3) if rng.random() < 0.5 else wr.join(m1, gen_matrix(rng, b, n))
        w = window_for(b, n)
        g1, g2 = gamma_enum(m1, w, indices=True), gamma_enum(m2, w, indices=True)
        if wr.leq(m1, m2) != (g1 <= g2):
            return f"leq={wr.leq(m1, m2)} but window inclusion={g1 <= g2}"
        if wr.eq(m1, m2) != (g1 == g2):
            return f"eq={wr.eq(m1, m2)} but window equality={g1 == g2}"
        return None

    return _run(f"leq-eq-oracle[{b.name}/{b.mode}]", cases, seed, body)


def check_incremental(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    def body(rng):
        n = rng.randint(2, 5)
        c = wr.close(gen_matrix(rng, b, n))
        if c.is_empty_state:
            return "skip"
        changed = set(rng.sample(range(n), rng.randint(1, min(2, n))))
        m = c
        for v in changed:
            for k in range(n):
                if k != v and rng.random() < 0.5:
                    m = wr.guard_elem(m, k, v, gen_elem(rng, b))
        if m.is_empty_state:
            return "skip"
        inc = wr.close_incremental(m, changed)
        full = wr.close_full(m)
        if inc != full:
            return f"incremental closure differs (changed={sorted(changed)}) on {_describe(m)}"
        return None

    return _run(f"incremental-closure[{b.name}/{b.mode}]", cases, seed, body)


def check_project(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    """project(m, i) holds exactly the values of v_i over Gamma(m)."""

    def body(rng):
        n = _dims(b, rng)
        m = gen_matrix(rng, b, n)
        if wr.is_empty(m):
            return "skip"
        w = window_for(b, n)
        i = rng.randrange(1, n)
        p = wr.project(m, i)
        for pt in gamma_enum(m, w, limit=50):
            if not b.member(p, pt[i]):
                return f"projection {b.render(p)} misses {pt[i]}"
        probe = _probe_values(w)
        for v in rng.sample(probe, min(8, len(probe))):
            if b.member(p, v) and not _nonempty(_pin(m, 0, i, v), w):
                return f"projection {b.render(p)} admits unrealizable {v}"
        return None

    return _run(f"project-exact[{b.name}/{b.mode}]", cases, seed, body)


def check_forget(b: Basis, cases: int = 500, seed: int = 0) -> CheckResult:
    """Gamma(forget(m, i)) is the cylinder of Gamma(m) along v_i."""

    def body(rng):
        n = _dims(b, rng)
        m = gen_matrix(rng, b, n)
        w = window_for(b, n)
        i = rng.randrange(1, n)
        f = wr.forget(m, i)
        base = gamma_enum(m, w, limit=30)
        for pt in base:
            for v in w.values[i][:: max(1, len(w.values[i]) // 7)]:
                q = pt[:i] + (v,) + pt[i + 1:]
                if not wr.gamma_contains(f, q):
                    return f"forget lost point {q}"
        # probe points of the cylinder near the origin, so that a witness
        # for v_i (if any) lies inside the window
        near = tuple(tuple(x for x in vals if abs(x) <= 3) for vals in w.values)
        far = sorted(_wide(b), key=abs)  # nearest witnesses first
        for q in gamma_enum(f, Window(near[:i] + (w.values[i],) + near[i + 1:]), limit=30):
            if not any(wr.gamma_contains(m, q[:i] + (v,) + q[i + 1:]) for v in far):
                return f"forget invented point {q}"
        return None

    return _run(f"forget-cylinder[{b.name}/{b.mode}]", cases, seed, body)


# -- basis laws ---------------------------------------------------------------------


def _probe(b: Basis):
    if b.mode == sc.INT:
        return list(range(-8, 9))
    return [sc.normalize(Fraction(p, 2)) for p in range(-16, 17)]


def _wide(b: Basis):
    if b.mode == sc.INT:
        return list(range(-24, 25))
    return [sc.normalize(Fraction(p, 4)) for p in range(-96, 97)]


def _law(name: str, b: Basis, cases: int, seed: int, body) -> CheckResult:
    return _run(f"law-{name}[{b.name}/{b.mode}]", cases, seed, body)


def check_meet_exact(b, cases=500, seed=0):
    def body(rng):
        x, y = gen_elem(rng, b, True), gen_elem(rng, b, True)
        r = b.meet(x, y)
        for v in _probe(b):
            if b.member(r, v) != (b.member(x, v) and b.member(y, v)):
                return f"meet({b.render(x)}, {b.render(y)}) wrong at {v}"
        return None
    return _law("meet-exact", b, cases, seed, body)


def check_add_exact(b, cases=500, seed=0):
    def body(rng):
        x, y = gen_elem(rng, b, True), gen_elem(rng, b, True)
        r = b.add(x, y)
        wide = _wide(b)
        xs = [a for a in wide if b.member(x, a)]
        ys = set(a for a in wide if b.member(y, a))
        for v in _probe(b):
            sums = any((v - a) in ys for a in xs)
            if b.member(r, v) != sums:
                return f"add({b.render(x)}, {b.render(y)}) wrong at {v}"
        return None
    return _law("add-exact", b, cases, seed, body)


def check_neg_exact(b, cases=500, seed=0):
    def body(rng):
        x = gen_elem(rng, b, True)
        r = b.neg(x)
        for v in _probe(b):
            if b.member(r, v) != b.member(x, -v):
                return f"neg({b.render(x)}) wrong at {v}"
        if b.neg(r) != x:
            return f"neg is not an involution on {b.render(x)}"
        return None
    return _law("neg-exact", b, cases, seed, body)


def check_singleton(b, cases=500, seed=0):
    def body(rng):
        c = _scalar(rng, b.mode, -8, 8)
        s = b.singleton(c)
        for v in _probe(b):
            if b.member(s, v) != (v == c):
                return f"singleton({c}) wrong at {v}"
        return None
    return _law("singleton", b, cases, seed, body)


def check_pairwise_empty(b, cases=500, seed=0):
    """Law: a family with empty meet has two members with empty meet."""
    def body(rng):
        fam = [gen_elem(rng, b) for _ in range(rng.randint(2, 4))]
        if b.meet_all(fam) is not BOT:
            return "skip"
        if any(b.meet(x, y) is BOT for k, x in enumerate(fam) for y in fam[k + 1:]):
            return None
        return "pairwise non-empty family with empty meet: " + ", ".join(b.render(x) for x in fam)
    return _law("pairwise-empty", b, cases, seed, body)


def check_distributive(b, cases=500, seed=0):
    """Law: x + (meet of a family) = meet of (x + member) when the
    family's meet is non-empty."""
    def body(rng):
        x = gen_elem(rng, b)
        fam = [gen_elem(rng, b) for _ in range(rng.randint(2, 3))]
        mt = b.meet_all(fam)
        if mt is BOT:
            return "skip"
        lhs = b.meet_all([b.add(x, y) for y in fam])
        if lhs != b.add(x, mt):
            return (f"distributivity fails: x={b.render(x)}, family="
                    + ", ".join(b.render(y) for y in fam))
        return None
    return _law("distributive", b, cases, seed, body)


def check_morphisms(b, cases=500, seed=0):
    def body(rng):
        x, y, z = (gen_elem(rng, b, True) for _ in range(3))
        if b.neg(b.add(x, y)) != b.add(b.neg(x), b.neg(y)):
            return "neg does not distribute over add"
        if b.neg(b.meet(x, y)) != b.meet(b.neg(x), b.neg(y)):
            return "neg does not distribute over meet"
        if b.add(x, y) != b.add(y, x) or b.meet(x, y) != b.meet(y, x):
            return "add or meet not commutative"
        if b.add(b.add(x, y), z) != b.add(x, b.add(y, z)):
            return "add not associative"
        if b.meet(b.meet(x, y), z) != b.meet(x, b.meet(y, z)):
            return "meet not associative"
        return None
    return _law("morphisms", b, cases, seed, body)


def check_order(b, cases=500, seed=0):
    """Join and widening are upper bounds; leq agrees with membership;
    equal concretizations imply equal representations."""
    def body(rng):
        x, y = gen_elem(rng, b, True), gen_elem(rng, b, True)
        for op in (b.join, b.widen):
            r = op(x, y)
            if not (b.leq(x, r) and b.leq(y, r)):
                return f"{op.__name__} not an upper bound"
        if b.leq(x, y):
            if any(b.member(x, v) and not b.member(y, v) for v in _wide(b)):
                return f"{b.render(x)} <= {b.render(y)} but not included"
        wide = _wide(b)
        if x != y and all(b.member(x, v) == b.member(y, v) for v in wide):
            return f"{b.render(x)} and {b.render(y)} agree on the window"
        return None
    return _law("order", b, cases, seed, body)


def check_widen_chain(b, cases=500, seed=0):
    """Widening sequences along random increasing chains stabilize."""
    def body(rng):
        acc = gen_elem(rng, b)
        x = acc
        for step in range(40):
            x = b.join(x, gen_elem(rng, b))
            nxt = b.widen(acc, x)
            if nxt == acc and step > 0:
                return None
            acc = nxt
        # an increasing chain of 40 distinct widened values cannot occur
        return f"no stabilization, last value {b.render(acc)}"
    return _law("widen-chain", b, cases, seed, body)


def scale_is_exact(b: Basis) -> bool:
    """Over Z, {k*c} is not an interval or a constant for |k| > 1, so only
    the congruence-carrying bases scale exactly there."""
    return b.mode == sc.RAT or b.name in ("congruence", "product")


def check_scale(b, cases=500, seed=0):
    """Scaling is sound, and exact where the basis can express the result."""
    exact = scale_is_exact(b)

    def body(rng):
        x = gen_elem(rng, b, True)
        k = rng.choice((-3, -2, -1, 0, 1, 2, 3))
        r = b.scale(k, x)
        for v in _probe(b):
            if k == 0:
                hit = v == 0 and x is not BOT
            else:
                q = sc.normalize(Fraction(v) / k)
                hit = (b.mode == sc.RAT or Fraction(q).denominator == 1) and b.member(x, q)
            got = b.member(r, v)
            if hit and not got:
                return f"scale({k}, {b.render(x)}) lost {v}"
            if exact and got and not hit:
                return f"scale({k}, {b.render(x)}) admits {v}"
        return None
    return _law("scale-exact" if exact else "scale-sound", b, cases, seed, body)


def check_reduction(b, cases=500, seed=0):
    """Reduction only tightens and keeps the joint concretization."""
    if b.name != "product":
        return CheckResult(f"law-reduction[{b.name}/{b.mode}]")

    def body(rng):
        c1, c2 = gen_elem(rng, b.left), gen_elem(rng, b.right)
        r = b.make(c1, c2)
        for v in _wide(b):
            joint = b.left.member(c1, v) and b.right.member(c2, v)
            if b.member(r, v) != joint:
                return f"reduction of ({b.left.render(c1)}, {b.right.render(c2)}) wrong at {v}"
        if r is not BOT and not (b.left.leq(r.first, c1) and b.right.leq(r.second, c2)):
            return "reduction enlarged a component"
        return None
    return _law("reduction", b, cases, seed, body)


BASIS_LAWS = (
    check_meet_exact, check_add_exact, check_neg_exact, check_singleton,
    check_pairwise_empty, check_distributive, check_morphisms, check_order,
    check_widen_chain, check_scale, check_reduction,
)

CLOSURE_CHECKS = (
    check_gamma_preserved, check_idempotent, check_saturated, check_coherent,
    check_normal_form,
)

OPERATOR_CHECKS = (
    check_join, check_leq_oracle, check_incremental, check_project, check_forget,
)


# -- widening termination -----------------------------------------------------------


def _random_body(rng, dom, n):
    """A random monotone loop body as a list of transfer closures."""
    from .expr import Add, Cmp, DiffCmp, Mul, Num, Var

    ops = []
    for _ in range(rng.randint(1, 4)):
        i = rng.randrange(1, n)
        j = rng.randrange(1, n)
        r = rng.random()
        if r < 0.35:
            e = Add(Var(i), Num(rng.randint(-2, 3)))
            ops.append(lambda s, i=i, e=e: dom.assign(s, i, e))
        elif r < 0.55:
            e = Add(Var(j), Num(rng.randint(-2, 2)))
            ops.append(lambda s, i=i, e=e: dom.assign(s, i, e))
        elif r < 0.65:
            k = rng.randrange(1, n)
            e = Add(Var(j), Var(k))
            ops.append(lambda s, i=i, e=e: dom.assign(s, i, e))
        elif r < 0.75:
            e = Add(Mul(2, Var(j)), Num(1))
            ops.append(lambda s, i=i, e=e: dom.assign(s, i, e))
        elif r < 0.9:
            a = Cmp(i, rng.choice(("<=", ">=")), rng.randint(-5, 20))
            ops.append(lambda s, a=a: dom.guard(s, a))
        elif i != j:
            a = DiffCmp(i, j, rng.choice(("<=", ">=")), rng.randint(-3, 3))
            ops.append(lambda s, a=a: dom.guard(s, a))
    return ops


def check_widening_termination(cases: int = 100, seed: int = 0, limit: int = 50) -> CheckResult:
    """X_{i+1} = X_i widen F(closure(X_i)) stabilizes within ``limit`` steps
    for random loop bodies in the zone domain."""

    def body(rng):
        n = rng.randint(2, 5)
        dom = make_domain("zone", sc.INT, n)
        init = dom.top()
        for v in range(1, n):
            init = wr.assign_copy_offset(init, v, 0, rng.randint(-3, 3))
        ops = _random_body(rng, dom, n)

        def F(x):
            for op in ops:
                x = op(x)
            return dom.join(init, x)

        x = init
        for step in range(limit):
            fx = F(wr.close(x))
            if dom.leq(fx, x):
                return None
            x = dom.widen(x, fx)
        return f"no stabilization after {limit} steps"

    return _run("widening-termination[zone]", cases, seed, body)


# -- end-to-end soundness -----------------------------------------------------------


def random_program(rng, mode: str = sc.INT, depth: int = 3) -> str:
    """A random structured program whose loops are bounded or guarded by
    ``?``; every statement carries a label."""
    names = ["a", "b", "c", "d"][: rng.randint(2, 4)]
    declared: list[str] = []
    counter = [0]
    lines: list[str] = []

    def label():
        counter[0] += 1
        return f"@p{counter[0]}: "

    def const():
        if mode == sc.RAT and rng.random() < 0.3:
            return f"{rng.randint(-5, 5)}/2"
        return str(rng.randint(-3, 3))

    def rhs():
        if not declared or rng.random() < 0.15:
            return const() if rng.random() < 0.8 else "?"
        x, y = rng.choice(declared), rng.choice(declared)
        r = rng.random()
        if r < 0.3:
            return f"{x} + {rng.randint(-2, 2)}"
        if r < 0.5:
            return f"{x} + {y}"
        if r < 0.6:
            return f"{x} - {y}"
        if r < 0.7:
            return f"2*{x} + 1"
        if r < 0.8:
            return "?"
        if r < 0.9:
            return f"-{x}"
        return const()

    def cond():
        if not declared or rng.random() < 0.25:
            return "?"
        x = rng.choice(declared)
        r = rng.random()
        if r < 0.5:
            return f"{x} {rng.choice(['<=', '<', '>=', '>', '==', '!='])} {const()}"
        if r < 0.75:
            y = rng.choice(declared)
            return f"{x} - {y} {rng.choice(['<=', '>=', '<', '>'])} {rng.randint(-2, 2)}"
        if r < 0.9:
            return f"{x} in [{rng.randint(-3, 0)}, {rng.randint(0, 3)}]"
        return f"{x} % 2 == {rng.randint(0, 1)}"

    def stmts(d, indent):
        for _ in range(rng.randint(1, 3)):
            stmt(d, indent)

    def stmt(d, indent):
        pad = "  " * indent
        r = rng.random()
        if d > 0 and r < 0.2:
            lines.append(f"{pad}{label()}if ({cond()}) {{")
            stmts(d - 1, indent + 1)
            lines.append(f"{pad}}} else {{")
            stmts(d - 1, indent + 1)
            lines.append(f"{pad}}}")
        elif d > 0 and r < 0.3:
            v = f"k{counter[0]}"
            lines.append(f"{pad}{label()}for {v} = 1 to {rng.randint(0, 3)} {{")
            stmts(d - 1, indent + 1)
            lines.append(f"{pad}}}")
        elif d > 0 and r < 0.38:
            lines.append(f"{pad}{label()}while (?) {{")
            stmts(d - 1, indent + 1)
            lines.append(f"{pad}}}")
        else:
            x = rng.choice(names)
            lines.append(f"{pad}{label()}{x} = {rhs()};")
            if x not in declared:
                declared.append(x)

    stmts(depth, 0)
    lines.append(f"{label()}skip;")
    return "\n".join(lines) + "\n"


def check_soundness(cases: int = 50, seed: int = 0, domains=DOMAINS, mode: str = sc.INT,
                    widen_delay: int = 0) -> CheckResult:
    """Every concrete state reached at a label lies in the computed invariant,
    for every domain."""

    def body(rng):
        text = random_program(rng, mode)
        prog = parse(text, mode)
        choices = [-2, -1, 0, 1, 2] if mode == sc.INT else [-1, Fraction(-1, 2), 0, Fraction(1, 2), 1]
        try:
            conc = concrete_run(prog, budget=6, choices=choices, max_states=5000)
        except BudgetExhausted:
            return "skip"
        cfg = build_cfg(prog)
        for d in domains:
            dom = make_domain(d, mode, prog.nvars)
            res = analyze(cfg, dom, widen_delay)
            for lab, states in conc.points.items():
                st = res.states[cfg.labels[lab]]
                for pt in states:
                    if not dom.contains(st, pt):
                        return f"{d}: state {pt} at @{lab} escapes the invariant in\n{text}"
        return None

    return _run(f"soundness[{mode}]", cases, seed, body)


# -- driver -------------------------------------------------------------------------


def all_checks(scale: float = 1.0, seed: int = 0):
    """Yield every check result; ``scale`` multiplies the case counts."""

    def k(base):
        return max(1, int(base * scale))

    for name, mode in SHIPPED:
        yield check_closure_oracle(make_basis(name, mode), k(1000), seed)
    for name, mode in SHIPPED:
        b = make_basis(name, mode)
        for chk in CLOSURE_CHECKS + OPERATOR_CHECKS:
            yield chk(b, k(500), seed)
    for name, mode in LAW_BASES:
        b = make_basis(name, mode)
        for chk in BASIS_LAWS:
            yield chk(b, k(500), seed)
    yield check_widening_termination(k(100), seed)
    yield check_soundness(k(50), seed)
