"""Plain-text printer; output reparses to the same canonical form."""

from __future__ import annotations

from fractions import Fraction

from .nodes import Add, Expr, Fn, Mul, Num, Op, Pow, Sym

_ATOM, _POW, _MUL, _ADD = 4, 3, 2, 1


def to_text(e: Expr) -> str:
    return _print(e, _ADD)


def _print(e: Expr, context: int) -> str:
    text, prec = _render(e)
    if prec < context:
        return f"({text})"
    return text


def _render(e: Expr):
    if isinstance(e, Num):
        v = e.value
        if v.denominator == 1:
            return (str(v.numerator), _ATOM if v >= 0 else _MUL - 1)
        text = f"{v.numerator}/{v.denominator}"
        return (text, _MUL if v >= 0 else _MUL - 1)
    if isinstance(e, Sym):
        return (e.name, _ATOM)
    if isinstance(e, Op):
        if all(k == 0 for k in e.orders):
            return (f"{e.name}({', '.join(e.args)})", _ATOM)
        parts = [e.name]
        for a, k in zip(e.args, e.orders):
            if k:
                parts.append(f"{a}, {k}" if k != 1 else a)
        return (f"D({', '.join(parts)})", _ATOM)
    if isinstance(e, Fn):
        return (f"{e.name}({to_text(e.arg)})", _ATOM)
    if isinstance(e, Pow):
        return _render_pow(e)
    if isinstance(e, Add):
        out = _print(e.terms[0], _ADD)
        for t in e.terms[1:]:
            neg = _negated(t)
            if neg is not None:
                out += " - " + _print(neg, _ADD + 1)
            else:
                out += " + " + _print(t, _ADD + 1)
        return (out, _ADD)
    if isinstance(e, Mul):
        return _render_mul(e)
    raise TypeError(f"unknown Expr node: {e!r}")


def _negated(t: Expr):
    """If t == -u for a syntactically evident u, return u."""
    if isinstance(t, Num) and t.value < 0:
        return Num(-t.value)
    if isinstance(t, Mul) and isinstance(t.factors[0], Num):
        c = t.factors[0].value
        if c == -1 and len(t.factors) == 2:
            return t.factors[1]
        if c == -1:
            return Mul(t.factors[1:])
        if c < 0:
            return Mul((Num(-c),) + t.factors[1:])
    return None


def _render_pow(e: Pow):
    q = e.exponent
    base = _print(e.base, _ATOM)
    if isinstance(e.base, (Num,)) or isinstance(e.base, Pow):
        base = f"({to_text(e.base)})"
    if q.denominator == 1:
        return (f"{base}^{q.numerator}", _POW)
    sign = "-" if q < 0 else ""
    return (f"{base}^({sign}{abs(q.numerator)}/{q.denominator})", _POW)


def _render_mul(e: Mul):
    coeff = Fraction(1)
    num_parts = []
    den_parts = []
    for f in e.factors:
        if isinstance(f, Num):
            coeff *= f.value
        elif isinstance(f, Pow) and f.exponent < 0:
            inv = f.base if f.exponent == -1 else Pow(f.base, -f.exponent)
            den_parts.append(_print(inv, _MUL + 1))
        else:
            num_parts.append(_print(f, _MUL + 1))
    sign = ""
    if coeff < 0:
        sign = "-"
        coeff = -coeff
    if coeff.denominator != 1:
        den_parts.insert(0, str(coeff.denominator))
        coeff = Fraction(coeff.numerator)
    if coeff != 1 or not num_parts:
        num_parts.insert(0, str(coeff))
    num_text = "*".join(num_parts)
    if den_parts:
        den_text = "*".join(den_parts)
        if len(den_parts) > 1:
            den_text = f"({den_text})"
        text = f"{sign}{num_text}/{den_text}"
    else:
        text = f"{sign}{num_text}"
    return (text, _MUL if not sign else _MUL - 1)
