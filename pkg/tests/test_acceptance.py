"""Acceptance criteria 1-9, each at its full case count.

Every check is its own test; the verdicts are also collected per criterion
and printed as one PASS/FAIL line each in the terminal summary.
"""

from pathlib import Path

import pytest

from conftest import ACCEPTANCE
from weakrel import scalar as sc
from weakrel import selfcheck as chk
from weakrel.analyzer import build_cfg, analyze, make_domain
from weakrel.bases import CongruenceBasis, Interval, IntervalBasis, cong, make_basis
from weakrel.lang import parse
from weakrel.oracle import concrete_run
from weakrel.scalar import INF, NEG_INF

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"
WIDEN_DELAY = 5


def record(criterion: int, name: str, ok: bool, info: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((name, ok, info))


def run_check(criterion: int, result: chk.CheckResult) -> None:
    info = f"{result.cases} cases"
    if not result.ok:
        info = f"{len(result.failures)}+ counterexamples in {result.cases} cases"
        if result.expected:
            info += ", expected"
    record(criterion, result.name, result.ok, info)
    assert result.ok, result.name + "\n" + "\n".join(result.failures)


def analyze_file(name, domain, delay=0):
    p = parse((PROGRAMS / name).read_text())
    g = build_cfg(p)
    return p, analyze(g, make_domain(domain, sc.INT, p.nvars), delay)


# -- 1-3: reproduction of the random-walk invariants ---------------------------------


def test_criterion_1_interval_row():
    p, r = analyze_file("randomwalk", "interval")
    i, x = p.var("i"), p.var("x")
    star, bullet = r.at("star"), r.at("bullet")
    ok = star[i] == Interval(1, 5) and bullet[x] == Interval(NEG_INF, INF)
    record(1, "interval row", ok, f"i in {star[i]} at star, x in {bullet[x]} at bullet")
    assert ok


def test_criterion_2_parity_and_upper_bound():
    p, r = analyze_file("randomwalk", "zone-product", WIDEN_DELAY)
    x = p.var("x")
    itv, cg = r.domain.project(r.at("bullet"), x)
    concrete = {pt[x] for pt in concrete_run(p).points["bullet"]}
    I, Z = IntervalBasis(sc.INT), CongruenceBasis(sc.INT)
    below = I.leq(itv, Interval(NEG_INF, 5)) and Z.leq(cg, cong(2, 1))
    above = all(I.member(itv, v) and Z.member(cg, v) for v in concrete)
    ok = below and above and concrete == {-5, -3, -1, 1, 3, 5}
    record(2, "x at bullet", ok, f"x in ({itv}, {cg}), concrete {sorted(concrete)}")
    assert ok


def test_criterion_3_symbolic_bound():
    p, r = analyze_file("randomwalk_symbolic", "zone-product", WIDEN_DELAY)
    s = r.domain.close(r.at("bullet"))
    m, x = p.var("m"), p.var("x")
    c1, c2 = s.left.cell(m, x), s.right.cell(m, x)
    ok = c1 == Interval(NEG_INF, 0) and c2 == cong(2, 0)
    record(3, "x - m at bullet", ok, f"x - m in ({c1}, {c2})")
    assert ok


# -- 4-7: randomized oracle checks ---------------------------------------------------

SHIPPED = [pytest.param(make_basis(n, m), id=f"{n}-{m}") for n, m in chk.SHIPPED]


# product-basis laws that the seeded suite refutes; pairwise emptiness over Q
# also fails (see test_bases.py) but these generators do not hit a witness
PRODUCT_REFUTED = {
    ("check_add_exact", sc.INT), ("check_pairwise_empty", sc.INT),
    ("check_distributive", sc.INT), ("check_add_exact", sc.RAT), ("check_distributive", sc.RAT),
}


def _law_params():
    out = []
    for n, m in chk.LAW_BASES:
        b = make_basis(n, m)
        for law in chk.BASIS_LAWS:
            name = law.__name__.removeprefix("check_")
            marks = ()
            if n == "product" and (law.__name__, m) in PRODUCT_REFUTED:
                marks = pytest.mark.xfail(strict=True, reason="the interval x congruence "
                                          "product basis has no exact sum")
            out.append(pytest.param(b, law, id=f"{name}-{n}-{m}", marks=marks))
    return out


@pytest.mark.parametrize("basis", SHIPPED)
def test_criterion_4_closure_oracle(basis):
    run_check(4, chk.check_closure_oracle(basis, 1000))


@pytest.mark.parametrize("check", chk.CLOSURE_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize("basis", SHIPPED)
def test_criterion_5_closure_theorem(basis, check):
    run_check(5, check(basis, 500))


@pytest.mark.parametrize("check", chk.OPERATOR_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize("basis", SHIPPED)
def test_criterion_6_operators(basis, check):
    run_check(6, check(basis, 500))


@pytest.mark.parametrize("basis,law", _law_params())
def test_criterion_7_basis_laws(basis, law):
    run_check(7, law(basis, 500))


# -- 8-9 -------------------------------------------------------------------------------


def test_criterion_8_widening_terminates():
    run_check(8, chk.check_widening_termination(100, limit=50))


def test_criterion_9_soundness():
    run_check(9, chk.check_soundness(50))
