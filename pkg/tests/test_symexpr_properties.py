"""Randomized property suite for the expression kernel.

Seeded generators rather than live randomness so failures replay.
"""

import random
from fractions import Fraction

from liesym.symexpr import (
    Add,
    Fn,
    Mul,
    Num,
    Op,
    Pow,
    Sym,
    is_zero,
    differentiate,
    parse_expr,
    to_canonical,
    to_text,
)
from liesym.symexpr.calculus import _sampled_zero
from liesym.symexpr.canonical import canonical_ratfunc

SYMBOLS = ["x", "y", "r", "t"]
ANGLES = ["theta", "phi"]


def random_expr(rng, depth=3):
    if depth == 0 or rng.random() < 0.3:
        kind = rng.randrange(4)
        if kind == 0:
            return Num(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        if kind == 1:
            return Sym(rng.choice(SYMBOLS))
        if kind == 2:
            return Fn(rng.choice(["sin", "cos"]), Sym(rng.choice(ANGLES)))
        return Op(rng.choice(["M", "Q"]), ("t",), (rng.randint(0, 2),))
    kind = rng.randrange(3)
    if kind == 0:
        return Add.of(*[random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    if kind == 1:
        return Mul.of(*[random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    return Pow(random_expr(rng, depth - 1), Fraction(rng.randint(1, 3)))


def test_canonical_idempotent_on_1000_trees():
    rng = random.Random(101)
    for _ in range(1000):
        e = random_expr(rng)
        once = to_canonical(e)
        assert to_canonical(once) == once


def test_differentiate_is_linear():
    rng = random.Random(202)
    for _ in range(60):
        e1 = random_expr(rng, 2)
        e2 = random_expr(rng, 2)
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        v = rng.choice(SYMBOLS + ANGLES)
        lhs = differentiate(Num(a) * e1 + Num(b) * e2, v)
        rhs = Num(a) * differentiate(e1, v) + Num(b) * differentiate(e2, v)
        assert is_zero(lhs - rhs)


def test_product_rule():
    rng = random.Random(303)
    for _ in range(60):
        e1 = random_expr(rng, 2)
        e2 = random_expr(rng, 2)
        v = rng.choice(SYMBOLS + ANGLES)
        lhs = differentiate(Mul.of(e1, e2), v)
        rhs = differentiate(e1, v) * e2 + e1 * differentiate(e2, v)
        assert is_zero(lhs - rhs)


def test_parse_print_round_trip():
    rng = random.Random(404)
    for _ in range(400):
        e = random_expr(rng)
        text = to_text(e)
        assert to_canonical(parse_expr(text)) == to_canonical(e)


def test_round_trip_of_canonical_forms():
    rng = random.Random(505)
    for _ in range(400):
        c = to_canonical(random_expr(rng))
        assert to_canonical(parse_expr(to_text(c))) == c


def test_zero_test_agrees_with_rational_sampling():
    rng = random.Random(606)
    for _ in range(300):
        e = random_expr(rng, 2)
        rf = canonical_ratfunc(e)
        sampled = _sampled_zero(rf)
        if sampled is None:
            continue
        assert sampled == rf.num.is_zero(), to_text(e)
