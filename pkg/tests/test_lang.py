from fractions import Fraction

import pytest

from weakrel import scalar as sc
from weakrel.basis import Range, Residues
from weakrel.expr import Add, Cmp, DiffCmp, DiffInSet, Mod, Mul, Neg, NonDet, Num, Random, Sub, Var, \
    VarInSet, holds
from weakrel.lang import Assign, Block, If, Labeled, ParseError, While, negate, parse
from weakrel.scalar import NEG_INF


def test_assignments_and_names():
    p = parse("x = 3; y = 2*x - 1; z = ?; w = -y;")
    assert p.names == ["0", "x", "y", "z", "w"]
    assert p.body[1] == Assign(2, Sub(Mul(2, Var(1)), Num(1)))
    assert p.body[2] == Assign(3, Random())


def test_for_desugars_to_while():
    p = parse("for i = 1 to 5 { skip; }")
    blk = p.body[0]
    assert isinstance(blk, Block)
    assert blk.stmts[0] == Assign(1, Num(1))
    loop = blk.stmts[1]
    assert isinstance(loop, While) and loop.cond == Cmp(1, "<=", 5)
    assert loop.body[-1] == Assign(1, Add(Var(1), Num(1)))


def test_conditions():
    p = parse("x = 0; y = 0; if (x - y in [-oo, 3]) { skip; } "
              "if (x % 4 == 1) { skip; } if (y in 2Z+1) { skip; } if (?) { skip; }")
    conds = [s.cond for s in p.body[2:]]
    assert conds[0] == DiffInSet(1, 2, Range(NEG_INF, 3))
    assert conds[1] == Mod(1, None, 4, 1)
    assert conds[2] == VarInSet(2, Residues(2, 1))
    assert conds[3] == NonDet()


def test_labels_and_comments():
    p = parse("# header\nx = 0; @a: x = x + 1; # trailing\n@b: skip;")
    assert p.labels == ["a", "b"]
    assert isinstance(p.body[1], Labeled)


def test_rational_constants():
    p = parse("x = 1/2;", sc.RAT)
    assert p.body[0].expr == Num(Fraction(1, 2))
    with pytest.raises(ParseError):
        parse("x = 1/2;", sc.INT)


@pytest.mark.parametrize("text,line,col", [
    ("x = ;", 1, 5),
    ("x = 0;\ny = z;", 2, 5),
    ("x = 0; @a: skip; @a: skip;", 1, 18),
    ("if (x <= 1) { skip; }", 1, 5),
    ("x = 0; while (x < 3) { x = x + 1;", 1, 34),
    ("x = $;", 1, 5),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_negate_integer_comparisons():
    # over Z, not (i <= 5) is exactly i >= 6
    assert negate(Cmp(1, "<=", 5), sc.INT) == Cmp(1, ">=", 6)
    assert negate(Cmp(1, ">=", 5), sc.INT) == Cmp(1, "<=", 4)
    assert negate(DiffCmp(1, 2, "<", 0), sc.INT) == DiffCmp(1, 2, ">=", 0)
    assert negate(Cmp(1, "!=", 3)) == Cmp(1, "==", 3)
    assert negate(Cmp(1, "==", 3)) == NonDet()


def test_negate_is_sound():
    # every point failing the guard satisfies its negation
    for mode in (sc.INT, sc.RAT):
        for op in ("<=", "<", ">=", ">", "==", "!="):
            g = Cmp(1, op, 2)
            ng = negate(g, mode)
            vals = range(-3, 8) if mode == sc.INT else [Fraction(k, 2) for k in range(-6, 16)]
            for v in vals:
                env = (0, v)
                if not holds(g, env):
                    assert holds(ng, env) in (True, None)
