from fractions import Fraction

import pytest

import drinfeld


def test_composition_golden():
    assert drinfeld.compose(2, ["T", "1"], ["1", "0", "T"]) == "T*x + x^q + T^2*x^q2 + T^2*x^q3"


def test_carlitz_phi_and_period():
    assert drinfeld.phi_a(2, ["1"], "T^2") == "T^2*x + (T^2+T)*x^q + x^q2"
    w = drinfeld.carlitz_period_power(3, 6)
    assert w["valuation"] == -3
    assert drinfeld.exp_coeffs(2, ["1"], 2)[0] == "1"


def test_torsion_and_j():
    assert drinfeld.torsion(2, "T^3+T+1", ["1"], "T") == ["T"]
    assert drinfeld.j_invariant(3, ["1", "1"]) == "1"


def test_level_ranks_and_eisenstein():
    lv = drinfeld.Level(2, "T^3+T+1")
    assert lv.genus == 2 and lv.cusps == 2
    assert lv.cuspidal_rank == lv.genus
    assert lv.full_rank == lv.genus + lv.cusps - 1
    g = lv.graph()
    assert (g["finite_vertices"], g["finite_edges"]) == (4, 5)
    E = lv.eisenstein()
    assert all(isinstance(x, Fraction) for x in E)
    f = lv.fourier("eisenstein", 4)
    assert f["f0"] == [Fraction(7), Fraction(7, 2), Fraction(7, 4), Fraction(7, 8)]
    assert f["fstar"]["1"] == Fraction(3, 2)


def test_hecke_commute():
    lv = drinfeld.Level(2, "T^3+T^2+1")
    a = lv.hecke_matrix("T")
    b = lv.hecke_matrix("T+1")

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]

    assert mul(a, b) == mul(b, a)


def test_cuspidal_order_and_index():
    assert drinfeld.cuspidal_order(5, "T^3+T+1") == 31
    r = drinfeld.eisenstein_index(2, "T^3+T+1")
    assert r["odd_part"] == 7 and r["all_in_scope_match"]


def test_errors():
    with pytest.raises(drinfeld.DomainError):
        drinfeld.eisenstein_index(2, "T")
    with pytest.raises(drinfeld.ParseError):
        drinfeld.Level(2, "T^^3")
    with pytest.raises(ValueError):
        drinfeld.cuspidal_order(2, "T^2")


def test_paper_examples():
    rows = drinfeld.paper_examples(2)
    assert rows and all(r["pass"] for r in rows)
