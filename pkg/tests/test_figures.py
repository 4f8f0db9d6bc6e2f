import math

import numpy as np
import pytest

from classicality.figures import FIGURES, Table, fig1_data, fig2_data, fig3_data, format_number, to_csv
from classicality.measures import fidelity_fn


def test_fig1_layout():
    t = fig1_data(samples=5, eta_max=0.8, alpha_sq_max=4.0)
    assert t.columns == ("eta", "alpha_sq", "f3")
    assert len(t.rows) == 25
    eta, r, f = t.rows[7]
    assert (eta, r) == (0.2, 2.0)
    assert f == fidelity_fn(3, 0.2, 2.0)


def test_default_sizes():
    assert len(fig2_data().rows) == 801
    t = fig3_data()
    assert len(t.rows) == 1001
    assert t.column("nbar")[-1] == 10.0
    assert set(FIGURES) == {"fig1", "fig2", "fig3"}


def test_fig2_values():
    t = fig2_data(samples=9)
    y = dict(zip(t.column("nbar"), t.column("A1_coherent")))
    assert y[1.0] == pytest.approx(math.exp(-1), rel=1e-15)
    assert y[3.0] == pytest.approx(math.exp(-3) * 27 / 6, rel=1e-14)


def test_fig3_values_at_two():
    t = fig3_data(samples=6)
    row = t.to_records()[1]
    assert row["nbar"] == 2.0
    assert row["A1_sqv"] == pytest.approx(1 / (3 * math.sqrt(3)), rel=1e-15)
    assert row["A1_phase"] == pytest.approx(2 / 9, rel=1e-15)
    assert row["Atilde1_thermal"] == pytest.approx(2 / 45, rel=1e-15)


@pytest.mark.parametrize("make", [fig1_data, fig2_data, fig3_data])
def test_too_few_samples(make):
    with pytest.raises(ValueError):
        make(samples=1)


@pytest.mark.parametrize(
    "value,text",
    [
        (0.1 + 0.2, "0.3"),
        (1 / 3, "0.333333333333"),
        (1e-20, "1e-20"),
        (12345678901234.0, "1.23456789012e+13"),
        (3, "3"),
        (np.float64(2.5), "2.5"),
        (None, ""),
        (True, "true"),
        (math.inf, "inf"),
    ],
)
def test_number_format(value, text):
    assert format_number(value) == text


def test_csv_text():
    t = Table(("a", "b"), [(1.0, 2 / 3), (0.5, None)])
    assert to_csv(t) == "a,b\n1,0.666666666667\n0.5,\n"
