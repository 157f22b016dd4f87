import pytest

import ffmink


def test_laurent_roundtrip():
    assert ffmink.parse_poly(3, "x^2+2") == "x^2+2"
    assert ffmink.product_value(3, ["x", "x^-1"]) == 0
    assert ffmink.product_value(3, ["0", "x"]) is None


def test_running_example():
    cl = ffmink.construct(3, 2, "1")
    assert cl["q"] == 3 and cl["d"] == 2
    red = ffmink.reduce(cl)
    assert red["minima"] == [0, 2]
    assert ffmink.mu(cl, prec=1)["mu_exponent"] == -2


def test_cassels_certificate():
    cert = ffmink.cassels(3, 2, "x+1")
    assert cert["pass"] is True


def test_sweep_reports():
    rep = ffmink.cassels_sweep(q=3, d=2, Q_range=[0, 1], Q_per_degree=1, mu_prec=1)
    assert all(r["status"] == "PASS" for r in rep["rows"])
    assert rep["csv"].startswith("row")
    cov = ffmink.covering(d_max=2, k_max=2, q=3, d=2, Q_range=[1, 1], Q_per_degree=1)
    assert cov["summary"]["c_max"] <= 3


def test_errors_surface():
    with pytest.raises(ffmink.FfminkError):
        ffmink.construct(6, 2, "1")
    with pytest.raises(ffmink.FfminkError):
        ffmink.escape_mass(q=3, bogus=1)
