"""Recursive descent parser for the expression DSL.

Grammar:
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' exponent)?
    base   := number | ident | ident '(' args ')' | '(' expr ')' | '-' factor
    exponent := ['-'] digits | '(' ['-'] digits ['/' digits] ')'

A bare exponent is an integer; rational exponents take parentheses, so
x^2/3 parses as (x^2)/3.  The derivative marker D(f, x, k) denotes the
k-th derivative of the opaque function f in x (k defaults to 1) and
extends to mixed partials as D(f, x1, k1, x2, k2, ...).  sqrt(u) lowers
to u^(1/2).  Whitespace is insignificant.
"""

from __future__ import annotations

from fractions import Fraction

from .nodes import Add, ELEMENTARY_FUNCTIONS, Expr, Fn, Mul, Num, Op, Pow, Sym

_PARSED_FUNCTIONS = ELEMENTARY_FUNCTIONS + ("sqrt",)


class ExprSyntaxError(ValueError):
    """Syntax error with a 1-based column position."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.message = message
        self.column = column


class UnknownFunctionError(ExprSyntaxError):
    pass


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            col = i + 1
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("num", text[i:j], col))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("ident", text[i:j], col))
                i = j
            elif ch in "+-*/^(),":
                self.tokens.append((ch, ch, col))
                i += 1
            else:
                raise ExprSyntaxError(f"unexpected character {ch!r}", col)
        self.tokens.append(("eof", "", n + 1))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        if tok[0] != "eof":
            self.index += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1]!r}" if tok[0] != "eof"
                                  else f"unexpected end of input, expected {kind!r}", tok[2])
        return self.next()


class _Parser:
    def __init__(self, text: str, functions=None):
        self.toks = _Tokenizer(text)
        self.functions = functions

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.toks.peek()
        if tok[0] != "eof":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.toks.peek()[0] in ("+", "-"):
            op = self.toks.next()[0]
            t = self.term()
            terms.append(t if op == "+" else Mul.of(Num(-1), t))
        return Add.of(*terms) if len(terms) > 1 else terms[0]

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.toks.peek()[0] in ("*", "/"):
            op = self.toks.next()[0]
            f = self.factor()
            factors.append(f if op == "*" else Pow(f, Fraction(-1)))
        return Mul.of(*factors) if len(factors) > 1 else factors[0]

    def factor(self) -> Expr:
        b = self.base()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            return Pow(b, self.exponent())
        return b

    def exponent(self) -> Fraction:
        tok = self.toks.peek()
        if tok[0] == "(":
            self.toks.next()
            sign = 1
            if self.toks.peek()[0] == "-":
                self.toks.next()
                sign = -1
            num = int(self.toks.expect("num")[1])
            den = 1
            if self.toks.peek()[0] == "/":
                self.toks.next()
                den = int(self.toks.expect("num")[1])
                if den == 0:
                    raise ExprSyntaxError("zero denominator in exponent", tok[2])
            self.toks.expect(")")
            return Fraction(sign * num, den)
        sign = 1
        if tok[0] == "-":
            self.toks.next()
            sign = -1
        return Fraction(sign * int(self.toks.expect("num")[1]))

    def base(self) -> Expr:
        tok = self.toks.peek()
        if tok[0] == "num":
            self.toks.next()
            return Num(int(tok[1]))
        if tok[0] == "-":
            self.toks.next()
            return Mul.of(Num(-1), self.factor())
        if tok[0] == "(":
            self.toks.next()
            e = self.expr()
            self.toks.expect(")")
            return e
        if tok[0] == "ident":
            self.toks.next()
            if self.toks.peek()[0] != "(":
                return Sym(tok[1])
            return self.application(tok[1], tok[2])
        raise ExprSyntaxError(
            f"expected expression, found {tok[1]!r}" if tok[0] != "eof"
            else "unexpected end of input", tok[2])

    def application(self, name: str, col: int) -> Expr:
        self.toks.expect("(")
        if name == "D":
            return self.derivative_marker(col)
        args = [self.expr()]
        while self.toks.peek()[0] == ",":
            self.toks.next()
            args.append(self.expr())
        self.toks.expect(")")
        if name == "sqrt":
            if len(args) != 1:
                raise ExprSyntaxError("sqrt takes one argument", col)
            return Pow(args[0], Fraction(1, 2))
        if name in ELEMENTARY_FUNCTIONS:
            if len(args) != 1:
                raise ExprSyntaxError(f"{name} takes one argument", col)
            return Fn(name, args[0])
        return self.opaque(name, args, col)

    def opaque(self, name: str, args, col: int) -> Expr:
        argnames = []
        for a in args:
            if not isinstance(a, Sym):
                raise UnknownFunctionError(
                    f"unknown function {name!r} (opaque arguments must be symbols)", col)
            argnames.append(a.name)
        if self.functions is not None:
            declared = self.functions.get(name)
            if declared is None:
                raise UnknownFunctionError(f"unknown function {name!r}", col)
            if tuple(declared) != tuple(argnames):
                raise ExprSyntaxError(
                    f"{name} declared with arguments {tuple(declared)}", col)
        return Op(name, argnames)

    def derivative_marker(self, col: int) -> Expr:
        tok = self.toks.expect("ident")
        fname = tok[1]
        if fname in _PARSED_FUNCTIONS or fname == "D":
            raise ExprSyntaxError("D applies to opaque functions only", tok[2])
        pairs = []
        while self.toks.peek()[0] == ",":
            self.toks.next()
            var = self.toks.expect("ident")[1]
            order = 1
            if self.toks.peek()[0] == ",":
                # Lookahead: a number here is an order, an ident starts
                # the next (variable, order) pair.
                if self.toks.tokens[self.toks.index + 1][0] == "num":
                    self.toks.next()
                    order = int(self.toks.expect("num")[1])
            pairs.append((var, order))
        self.toks.expect(")")
        if not pairs:
            raise ExprSyntaxError("malformed derivative marker: D(f, x, k)", col)
        if self.functions is not None:
            declared = self.functions.get(fname)
            if declared is None:
                raise UnknownFunctionError(f"unknown function {fname!r}", col)
            args = tuple(declared)
        else:
            args = tuple(v for v, _ in pairs)
        orders = [0] * len(args)
        for var, order in pairs:
            if var not in args:
                raise ExprSyntaxError(
                    f"{fname} does not depend on {var!r}", col)
            orders[args.index(var)] += order
        return Op(fname, args, orders)


def parse_expr(text: str, functions=None) -> Expr:
    """Parse the DSL into an expression tree.

    `functions`, when given, maps declared opaque function names to
    their argument symbol tuples and makes undeclared applications an
    error; without it any ident(symbol, ...) application is accepted as
    opaque.
    """
    return _Parser(text, functions).parse()
