"""Second-order jet bookkeeping: total derivative and prolongations.

A bundle vector field xi d_s + eta^a d_a lives on (s, x); prolonging it
to velocities and accelerations uses the recursion

    eta_(1) = D eta - xdot D xi,     eta_(2) = D eta_(1) - xddot D xi,

with D the total derivative d_s + xdot d_x + xddot d_xdot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import CoordChart
from .errors import ChartError, JetOrderError
from .symexpr import Expr, Mul, Num, Sym, differentiate, is_zero, to_canonical
from .symexpr.nodes import Add, as_expr


@dataclass(frozen=True)
class BundleVectorField:
    """Candidate symmetry generator: xi on the parameter, eta per coordinate."""

    chart: CoordChart
    xi: Expr
    eta: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "xi", to_canonical(as_expr(self.xi)))
        object.__setattr__(self, "eta", tuple(to_canonical(as_expr(c)) for c in self.eta))
        if len(self.eta) != self.chart.dim:
            raise ChartError(
                f"field has {len(self.eta)} eta components for {self.chart.dim} coordinates"
            )
        jets = set(self.chart.jets1) | set(self.chart.jets2)
        for comp in (self.xi, *self.eta):
            if comp.free_symbols() & jets:
                raise ChartError("vector field components must not contain jet symbols")

    def components(self) -> tuple:
        return (self.xi, *self.eta)

    def is_zero_field(self) -> bool:
        return all(is_zero(c) for c in self.components())

    def scale(self, c) -> "BundleVectorField":
        c = Num(Fraction(c))
        return BundleVectorField(
            self.chart,
            to_canonical(Mul.of(c, self.xi)),
            tuple(to_canonical(Mul.of(c, comp)) for comp in self.eta),
            name=self.name,
        )

    def add(self, other: "BundleVectorField") -> "BundleVectorField":
        if other.chart != self.chart:
            raise ChartError("cannot add fields on different charts")
        return BundleVectorField(
            self.chart,
            to_canonical(Add.of(self.xi, other.xi)),
            tuple(
                to_canonical(Add.of(a, b)) for a, b in zip(self.eta, other.eta)
            ),
        )

    def apply_to(self, e: Expr) -> Expr:
        """Directional derivative xi d_s(e) + eta^a d_a(e) (no jet terms)."""
        out = Mul.of(self.xi, differentiate(e, self.chart.param))
        for c, comp in zip(self.chart.coords, self.eta):
            out = Add.of(out, Mul.of(comp, differentiate(e, c)))
        return to_canonical(out)


@dataclass(frozen=True)
class ProlongedField:
    """Base field plus first and second prolongation coefficients."""

    base: BundleVectorField
    eta1: tuple
    eta2: tuple  # empty when prolonged to order 1 only


def total_derivative(e: Expr, chart: CoordChart) -> Expr:
    """D e = d_s e + xdot^a d_a e + xddot^a d_{xdot^a} e.

    Input may depend on jets of order <= 1; raises when acceleration
    symbols are present, since order-3 jets are unsupported.
    """
    jets2 = set(chart.jets2)
    if e.free_symbols() & jets2:
        raise JetOrderError("total derivative of a second-order expression needs order-3 jets")
    terms = [differentiate(e, chart.param)]
    for c in chart.coords:
        terms.append(Mul.of(Sym(chart.jet1(c)), differentiate(e, c)))
        terms.append(Mul.of(Sym(chart.jet2(c)), differentiate(e, chart.jet1(c))))
    return to_canonical(Add.of(*terms))


def prolong(field: BundleVectorField, order: int = 2) -> ProlongedField:
    """Prolongation coefficients via the total-derivative recursion."""
    if order not in (1, 2):
        raise JetOrderError("prolongation order must be 1 or 2")
    chart = field.chart
    dxi = total_derivative(field.xi, chart)
    eta1 = []
    for c, comp in zip(chart.coords, field.eta):
        e1 = Add.of(total_derivative(comp, chart), Mul.of(Num(-1), Sym(chart.jet1(c)), dxi))
        eta1.append(to_canonical(e1))
    eta2 = []
    if order == 2:
        for c, e1 in zip(chart.coords, eta1):
            e2 = Add.of(total_derivative(e1, chart), Mul.of(Num(-1), Sym(chart.jet2(c)), dxi))
            eta2.append(to_canonical(e2))
    return ProlongedField(field, tuple(eta1), tuple(eta2))


def apply_prolonged(pf: ProlongedField, e: Expr) -> Expr:
    """Act with the prolonged field on an expression in (s, x, xdot, xddot)."""
    chart = pf.base.chart
    if not pf.eta2 and e.free_symbols() & set(chart.jets2):
        raise JetOrderError(
            "second-order expression needs a second-order prolongation")
    terms = [Mul.of(pf.base.xi, differentiate(e, chart.param))]
    for c, comp in zip(chart.coords, pf.base.eta):
        terms.append(Mul.of(comp, differentiate(e, c)))
    for c, comp in zip(chart.coords, pf.eta1):
        terms.append(Mul.of(comp, differentiate(e, chart.jet1(c))))
    for c, comp in zip(chart.coords, pf.eta2):
        terms.append(Mul.of(comp, differentiate(e, chart.jet2(c))))
    return to_canonical(Add.of(*terms))
