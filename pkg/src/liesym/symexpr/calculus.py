"""Differentiation, substitution, zero-testing, and monomial collection."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .canonical import canonical_ratfunc, render_ratfunc, to_canonical
from .nodes import Add, Expr, Fn, Mul, Num, Op, Pow, Sym, ZERO, as_expr
from .poly import Poly, RatFunc

_ZERO = Num(0)
_ONE = Num(1)


class NonPolynomialError(ValueError):
    """Raised by collect when a variable occurs non-polynomially."""


def differentiate(e: Expr, v) -> Expr:
    """Exact partial derivative of e with respect to the symbol v."""
    name = v.name if isinstance(v, Sym) else str(v)
    return to_canonical(_diff(e, name))


def _diff(e: Expr, v: str) -> Expr:
    if isinstance(e, Num):
        return _ZERO
    if isinstance(e, Sym):
        return _ONE if e.name == v else _ZERO
    if isinstance(e, Add):
        return Add.of(*[_diff(t, v) for t in e.terms])
    if isinstance(e, Mul):
        terms = []
        for i, f in enumerate(e.factors):
            df = _diff(f, v)
            if df == _ZERO:
                continue
            rest = list(e.factors)
            rest[i] = df
            terms.append(Mul.of(*rest))
        if not terms:
            return _ZERO
        return Add.of(*terms)
    if isinstance(e, Pow):
        db = _diff(e.base, v)
        if db == _ZERO:
            return _ZERO
        return Mul.of(Num(e.exponent), Pow(e.base, e.exponent - 1), db)
    if isinstance(e, Fn):
        du = _diff(e.arg, v)
        if du == _ZERO:
            return _ZERO
        return Mul.of(_fn_derivative(e.name, e.arg), du)
    if isinstance(e, Op):
        # Chain rule over declared argument symbols; the argument list of
        # an opaque function is a list of plain symbols.
        if v not in e.args:
            return _ZERO
        i = e.args.index(v)
        orders = list(e.orders)
        orders[i] += 1
        return Op(e.name, e.args, orders)
    raise TypeError(f"unknown Expr node: {e!r}")


def _fn_derivative(name: str, u: Expr) -> Expr:
    if name == "sin":
        return Fn("cos", u)
    if name == "cos":
        return Mul.of(Num(-1), Fn("sin", u))
    if name == "tan":
        return Pow(Fn("cos", u), Fraction(-2))
    if name == "cot":
        return Mul.of(Num(-1), Pow(Fn("sin", u), Fraction(-2)))
    if name == "csc":
        return Mul.of(Num(-1), Fn("cos", u), Pow(Fn("sin", u), Fraction(-2)))
    if name == "sec":
        return Mul.of(Fn("sin", u), Pow(Fn("cos", u), Fraction(-2)))
    if name == "exp":
        return Fn("exp", u)
    if name == "ln":
        return Pow(u, Fraction(-1))
    if name == "arctan":
        return Pow(Add.of(_ONE, Pow(u, Fraction(2))), Fraction(-1))
    raise ValueError(f"no derivative rule for {name}")


def substitute(e: Expr, bindings: dict) -> Expr:
    """Simultaneous structural replacement followed by canonicalization.

    Keys may be symbols, opaque function applications, or elementary
    function applications (kernel-level bindings like sin(theta) -> 1).
    """
    table = {}
    for k, val in bindings.items():
        k = Sym(k) if isinstance(k, str) else k
        table[k] = as_expr(val)
    return to_canonical(_replace(e, table))


def _replace(e: Expr, table: dict) -> Expr:
    hit = table.get(e)
    if hit is not None:
        return hit
    if isinstance(e, (Num, Sym, Op)):
        return e
    if isinstance(e, Add):
        return Add.of(*[_replace(t, table) for t in e.terms])
    if isinstance(e, Mul):
        return Mul.of(*[_replace(f, table) for f in e.factors])
    if isinstance(e, Pow):
        return Pow(_replace(e.base, table), e.exponent)
    if isinstance(e, Fn):
        return Fn(e.name, _replace(e.arg, table))
    raise TypeError(f"unknown Expr node: {e!r}")


def substitute_function(e: Expr, replacements: dict) -> Expr:
    """Replace opaque functions by concrete expressions of their arguments.

    `replacements` maps a function name to an expression written in the
    declared argument symbols; every derivative order of the function is
    replaced by the corresponding derivative of the expression.
    """
    def walk(node):
        if isinstance(node, Op) and node.name in replacements:
            out = as_expr(replacements[node.name])
            for arg, order in zip(node.args, node.orders):
                for _ in range(order):
                    out = _diff(out, arg)
            return out
        if isinstance(node, Add):
            return Add.of(*[walk(t) for t in node.terms])
        if isinstance(node, Mul):
            return Mul.of(*[walk(f) for f in node.factors])
        if isinstance(node, Pow):
            return Pow(walk(node.base), node.exponent)
        if isinstance(node, Fn):
            return Fn(node.name, walk(node.arg))
        return node

    return to_canonical(walk(e))


def is_zero(e: Expr) -> bool:
    """Exact zero test on the canonical form.

    With LIESYM_DEBUG_SAMPLER=1 a randomized rational-evaluation check
    runs alongside and any disagreement raises, which would indicate a
    canonicalization bug.
    """
    rf = canonical_ratfunc(e)
    result = rf.num.is_zero()
    if os.environ.get("LIESYM_DEBUG_SAMPLER") == "1":
        sampled = _sampled_zero(rf)
        if sampled is not None and sampled != result:
            raise AssertionError(
                f"zero-test disagreement on {e}: canonical={result}, sampled={sampled}"
            )
    return result


def _sampled_zero(rf: RatFunc, samples: int = 8, seed: int = 20260808) -> bool | None:
    """Evaluate at random rational points with independent atom values."""
    atoms = sorted(rf.atoms())
    rng = random.Random(seed)
    seen_nonzero = False
    produced = 0
    for _ in range(64):
        if produced >= samples:
            break
        env = {a: Fraction(rng.randint(-19, 19), rng.randint(1, 7)) for a in atoms}
        den = _eval_poly(rf.den, env)
        if den == 0:
            continue
        produced += 1
        if _eval_poly(rf.num, env) != 0:
            seen_nonzero = True
            break
    if produced == 0 and not seen_nonzero:
        return None
    return not seen_nonzero


def _eval_poly(p: Poly, env: dict) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        v = c
        for a, e in m:
            v *= env[a] ** e
        total += v
    return total


def collect(e: Expr, variables) -> dict:
    """Coefficients of e as a polynomial in the given symbols.

    Returns {exponent tuple aligned with `variables`: coefficient Expr};
    the zero expression collects to an empty map.  Raises
    NonPolynomialError when a variable occurs in a denominator or inside
    a function kernel.
    """
    var_names = [v.name if isinstance(v, Sym) else str(v) for v in variables]
    if isinstance(variables, (set, frozenset)):
        var_names.sort()
    var_set = set(var_names)
    rf = canonical_ratfunc(e)
    for a in rf.den.atoms():
        if a.free_symbols() & var_set:
            raise NonPolynomialError(
                f"variable occurs in a denominator: {sorted(a.free_symbols() & var_set)}"
            )
    buckets = {}
    for mono, coeff in rf.num.terms.items():
        expvec = [0] * len(var_names)
        rest = []
        for a, k in mono:
            if a.kind == "sym" and a.payload in var_set:
                expvec[var_names.index(a.payload)] = k
            else:
                if a.free_symbols() & var_set:
                    raise NonPolynomialError(
                        f"variable occurs inside a kernel: {a!r}"
                    )
                rest.append((a, k))
        key = tuple(expvec)
        bucket = buckets.setdefault(key, {})
        rest = tuple(rest)
        bucket[rest] = bucket.get(rest, Fraction(0)) + coeff
    out = {}
    for key, terms in sorted(buckets.items()):
        num = Poly({m: c for m, c in terms.items() if c})
        if num.is_zero():
            continue
        out[key] = render_ratfunc(RatFunc(num, rf.den))
    return out


def equals(e1: Expr, e2: Expr) -> bool:
    """Canonical equality."""
    return is_zero(Add.of(e1, Mul.of(Num(-1), e2)))


def evaluate_rational(e: Expr, env: dict) -> Fraction:
    """Evaluate at exact rational symbol values; opaque functions and
    non-symbol kernels must have been substituted away."""
    rf = canonical_ratfunc(e)
    values = {}
    for a in rf.atoms():
        if a.kind == "sym":
            if a.payload not in env:
                raise KeyError(f"no value for symbol {a.payload}")
            values[a] = Fraction(env[a.payload])
        else:
            raise ValueError(f"cannot evaluate non-symbol kernel {a!r} rationally")
    den = _eval_poly(rf.den, values)
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the sample point")
    return _eval_poly(rf.num, values) / den
