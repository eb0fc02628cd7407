"""Shared fixtures: charts, metrics, and golden generator lists."""

import pytest

from liesym.charts import CoordChart
from liesym.geometry import Metric, geodesic_lagrangian, geodesic_system
from liesym.jets import BundleVectorField
from liesym.symexpr import Mul, Num, parse_expr


@pytest.fixture(scope="session")
def chart():
    return CoordChart("s", ("t", "r", "theta", "phi"), ("theta", "phi"))


def _radiating_metric(chart, f_text, functions, name):
    f = parse_expr(f_text, functions)
    zero = Num(0)
    comps = (
        (Mul.of(Num(-1), f), Num(-1), zero, zero),
        (Num(-1), zero, zero, zero),
        (zero, zero, parse_expr("r^2"), zero),
        (zero, zero, zero, parse_expr("r^2*sin(theta)^2")),
    )
    return Metric(chart, comps, functions, name=name)


@pytest.fixture(scope="session")
def vb_general(chart):
    return _radiating_metric(
        chart, "1 - M(t)/r + Q(t)/r^2", {"M": ("t",), "Q": ("t",)}, "vaidya_bonner"
    )


@pytest.fixture(scope="session")
def vb_m1_qt(chart):
    return _radiating_metric(chart, "1 - 1/r + t/r^2", {}, "vaidya_bonner_M1_Qt")


@pytest.fixture(scope="session")
def vb_mt_qt2(chart):
    return _radiating_metric(chart, "1 - t/r + t^2/r^2", {}, "vaidya_bonner_Mt_Qt2")


def make_field(chart, name, xi, eta):
    f = BundleVectorField(
        chart, parse_expr(xi), tuple(parse_expr(c) for c in eta), name=name
    )
    return f


@pytest.fixture(scope="session")
def general_fields(chart):
    """The five candidate generators of the opaque metric (cot variant)."""
    return [
        make_field(chart, "X1", "1", ["0", "0", "0", "0"]),
        make_field(chart, "X2", "0", ["1", "0", "0", "0"]),
        make_field(chart, "X3", "0", ["0", "0", "0", "1"]),
        make_field(chart, "X4", "0", ["0", "0", "-cos(phi)", "sin(phi)*cot(theta)"]),
        make_field(chart, "X5", "0", ["0", "0", "sin(phi)", "cos(phi)*cot(theta)"]),
    ]


@pytest.fixture(scope="session")
def scaling_fields(chart):
    """Point symmetries of the homothetic instance, led by the scaling field."""
    return [
        make_field(chart, "X1", "s", ["t", "r", "0", "0"]),
        make_field(chart, "X2", "1", ["0", "0", "0", "0"]),
        make_field(chart, "X3", "0", ["0", "0", "0", "1"]),
        make_field(chart, "X4", "0", ["0", "0", "-cos(phi)", "sin(phi)*cot(theta)"]),
        make_field(chart, "X5", "0", ["0", "0", "sin(phi)", "cos(phi)*cot(theta)"]),
    ]


@pytest.fixture(scope="session")
def rotation_fields(chart):
    """Invariant-action generators of the M = 1, Q = t instance."""
    return [
        make_field(chart, "X1", "1", ["0", "0", "0", "0"]),
        make_field(chart, "X2", "0", ["0", "0", "0", "1"]),
        make_field(chart, "X3", "0", ["0", "0", "-cos(phi)", "sin(phi)*cot(theta)"]),
        make_field(chart, "X4", "0", ["0", "0", "sin(phi)", "cos(phi)*cot(theta)"]),
    ]


@pytest.fixture(scope="session")
def vb_lagrangian(vb_general):
    return geodesic_lagrangian(vb_general)


@pytest.fixture(scope="session")
def vb_system(vb_general):
    return geodesic_system(vb_general)
