"""Total derivative and prolongation."""

import random
from fractions import Fraction

import pytest

from liesym.charts import CoordChart
from liesym.errors import ChartError, JetOrderError
from liesym.jets import BundleVectorField, prolong, total_derivative
from liesym.symexpr import Mul, Num, Pow, Sym, differentiate, is_zero, parse_expr

from conftest import make_field


class TestTotalDerivative:
    def test_coordinate(self, chart):
        assert is_zero(total_derivative(Sym("t"), chart) - Sym("tdot"))

    def test_square(self, chart):
        assert is_zero(total_derivative(parse_expr("r^2"), chart) - parse_expr("2*r*rdot"))

    def test_velocity(self, chart):
        assert is_zero(total_derivative(Sym("tdot"), chart) - Sym("tddot"))

    def test_order_cap(self, chart):
        with pytest.raises(JetOrderError):
            total_derivative(Sym("tddot"), chart)


class TestProlong:
    def test_rotation_generator_constant(self, chart):
        X = make_field(chart, "X", "0", ["0", "0", "0", "1"])
        pf = prolong(X, 2)
        assert all(is_zero(c) for c in pf.eta1)
        assert all(is_zero(c) for c in pf.eta2)

    def test_parameter_scaling(self, chart):
        X = make_field(chart, "X", "s", ["0", "0", "0", "0"])
        pf = prolong(X, 2)
        for c, e1, e2 in zip(chart.coords, pf.eta1, pf.eta2):
            assert is_zero(e1 + Sym(chart.jet1(c)))
            assert is_zero(e2 + Num(2) * Sym(chart.jet2(c)))

    def test_rotation_field_recursion_equals_direct_expansion(self, chart):
        X = make_field(chart, "X", "0",
                       ["0", "0", "-cos(phi)", "sin(phi)*cot(theta)"])
        pf = prolong(X, 1)
        assert is_zero(pf.eta1[2] - parse_expr("sin(phi)*phidot"))
        expected_phi = parse_expr(
            "-thetadot*sin(phi)/sin(theta)^2 + cot(theta)*cos(phi)*phidot"
        )
        assert is_zero(pf.eta1[3] - expected_phi)

    def test_zero_field_prolongs_to_zero(self, chart):
        X = make_field(chart, "Z", "0", ["0", "0", "0", "0"])
        pf = prolong(X, 2)
        assert all(is_zero(c) for c in pf.eta1 + pf.eta2)

    def test_order_validation(self, chart):
        X = make_field(chart, "X", "1", ["0", "0", "0", "0"])
        with pytest.raises(JetOrderError):
            prolong(X, 3)

    def test_jet_symbols_rejected_in_components(self, chart):
        with pytest.raises(ChartError):
            BundleVectorField(chart, Sym("tdot"), (Num(0),) * 4)


class TestChartValidation:
    def test_jet_name_collision(self):
        with pytest.raises(ChartError):
            CoordChart("s", ("t", "tdot"))

    def test_duplicate_names(self):
        with pytest.raises(ChartError):
            CoordChart("s", ("x", "x"))
        with pytest.raises(ChartError):
            CoordChart("x", ("x",))

    def test_angle_must_be_coordinate(self):
        with pytest.raises(ChartError):
            CoordChart("s", ("x",), ("theta",))

    def test_unknown_function_name_clash(self):
        from liesym.errors import AnsatzError
        from liesym.geometry import Metric
        from liesym.symmetry import determining_system

        chart = CoordChart("s", ("xi",))
        flat = Metric(chart, ((Num(1),),))
        with pytest.raises(AnsatzError):
            determining_system(flat, "liepoint")


def random_polynomial_field(chart, rng):
    """Random polynomial (s, x)-field of low degree."""
    vars_ = [chart.param, *chart.coords]

    def poly():
        terms = [Num(Fraction(rng.randint(-3, 3)))]
        for _ in range(rng.randint(1, 3)):
            factors = [Num(Fraction(rng.randint(-2, 2)))]
            for _ in range(rng.randint(1, 2)):
                factors.append(Sym(rng.choice(vars_)))
            terms.append(Mul.of(*factors))
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return total

    return BundleVectorField(chart, poly(), tuple(poly() for _ in chart.coords))


class TestRecursionConsistency:
    def test_first_prolongation_matches_expanded_form_on_200_fields(self, chart):
        # eta_(1)^a = eta^a_s + eta^a_b xdot^b - xi_s xdot^a
        #             - xi_b xdot^b xdot^a
        rng = random.Random(777)
        for _ in range(200):
            X = random_polynomial_field(chart, rng)
            pf = prolong(X, 1)
            for idx, c in enumerate(chart.coords):
                expected = differentiate(X.eta[idx], chart.param)
                for b in chart.coords:
                    expected = expected + differentiate(X.eta[idx], b) * Sym(chart.jet1(b))
                expected = expected - differentiate(X.xi, chart.param) * Sym(chart.jet1(c))
                for b in chart.coords:
                    expected = expected - (
                        differentiate(X.xi, b) * Sym(chart.jet1(b)) * Sym(chart.jet1(c))
                    )
                assert is_zero(pf.eta1[idx] - expected)

    def test_prolongation_degree_bounds(self, chart):
        from liesym.symexpr import collect

        rng = random.Random(999)
        for _ in range(25):
            X = random_polynomial_field(chart, rng)
            pf = prolong(X, 2)
            for e1 in pf.eta1:
                degrees = [sum(m) for m in collect(e1, chart.jets1)]
                assert all(d <= 2 for d in degrees)
            for e2 in pf.eta2:
                both = list(chart.jets1) + list(chart.jets2)
                for mono in collect(e2, both):
                    assert sum(mono[:4]) <= 3
                    assert sum(mono[4:]) <= 1

    def test_linearity_of_prolongation(self, chart):
        rng = random.Random(888)
        for _ in range(30):
            X = random_polynomial_field(chart, rng)
            Y = random_polynomial_field(chart, rng)
            a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            combo = X.scale(a).add(Y.scale(b))
            pc = prolong(combo, 2)
            px = prolong(X, 2)
            py = prolong(Y, 2)
            for i in range(chart.dim):
                assert is_zero(pc.eta1[i] - (Num(a) * px.eta1[i] + Num(b) * py.eta1[i]))
                assert is_zero(pc.eta2[i] - (Num(a) * px.eta2[i] + Num(b) * py.eta2[i]))
