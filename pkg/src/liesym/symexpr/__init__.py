"""Exact symbolic expression kernel.

Expressions are immutable trees over arbitrary-precision rationals,
symbols, opaque functions such as M(t) and their derivatives, sums,
products, rational powers, and elementary functions.  to_canonical
reduces to a unique rational-function normal form with cot/csc/tan/sec
rewritten to sin/cos and cos^2 eliminated, which makes is_zero an exact
decision.
"""

from .calculus import (
    NonPolynomialError,
    collect,
    differentiate,
    equals,
    evaluate_rational,
    is_zero,
    substitute,
    substitute_function,
)
from .canonical import canonical_ratfunc, render_ratfunc, to_canonical
from .nodes import Add, ELEMENTARY_FUNCTIONS, Expr, Fn, Mul, Num, Op, Pow, Sym
from .parser import ExprSyntaxError, UnknownFunctionError, parse_expr
from .printer import to_text

__all__ = [
    "Add",
    "ELEMENTARY_FUNCTIONS",
    "Expr",
    "ExprSyntaxError",
    "Fn",
    "Mul",
    "NonPolynomialError",
    "Num",
    "Op",
    "Pow",
    "Sym",
    "UnknownFunctionError",
    "canonical_ratfunc",
    "collect",
    "differentiate",
    "equals",
    "evaluate_rational",
    "is_zero",
    "parse_expr",
    "render_ratfunc",
    "substitute",
    "substitute_function",
    "to_canonical",
    "to_text",
]
