from weakrel import scalar as sc
from weakrel.basis import BOT
from weakrel.bases import CongruenceBasis, Interval, IntervalBasis, cong
from weakrel.expr import Add, Cmp, DiffCmp, Mod, Mul, Num, Random, Sub, Var
from weakrel.nonrel import NonRelational
from weakrel.scalar import INF, NEG_INF

I = IntervalBasis(sc.INT)
Z = CongruenceBasis(sc.INT)


def test_interval_eval_and_assign():
    d = NonRelational(I, 3)
    e = d.make([Interval(0, 0), Interval(1, 2), Interval(10, 20)])
    assert d.eval(Add(Var(1), Var(2)), e) == Interval(11, 22)
    assert d.eval(Sub(Var(1), Var(2)), e) == Interval(-19, -8)
    assert d.eval(Mul(-2, Var(1)), e) == Interval(-4, -2)
    r = d.assign(e, 1, Random())
    assert r[1] == Interval(NEG_INF, INF)


def test_interval_guard():
    d = NonRelational(I, 2)
    e = d.guard(d.top(), Cmp(1, "<", 5))
    assert e[1] == Interval(NEG_INF, 4)
    assert d.is_bottom(d.guard(e, Cmp(1, ">=", 5)))
    # a relational test cannot refine a non-relational state
    assert d.guard(e, DiffCmp(1, 0, "<=", 0)) == e


def test_congruence_guard_and_eval():
    d = NonRelational(Z, 2)
    e = d.guard(d.top(), Mod(1, None, 4, 1))
    assert e[1] == cong(4, 1)
    assert d.eval(Add(Mul(2, Var(1)), Num(1)), e) == cong(8, 3)


def test_lattice_and_render():
    d = NonRelational(I, 2)
    a = d.make([Interval(0, 0), Interval(0, 1)])
    b = d.make([Interval(0, 0), Interval(5, 6)])
    assert d.join(a, b)[1] == Interval(0, 6)
    assert d.widen(a, b)[1] == Interval(0, INF)
    assert d.is_bottom(d.meet(a, b))
    assert d.leq(a, d.join(a, b))
    assert d.constraints(a, ["0", "x"]) == ["x in [0,1]"]
    assert d.constraints(d.bottom(), ["0", "x"]) == [str(BOT)]
    assert d.contains(a, (0, 1)) and not d.contains(a, (0, 2))
