"""Smoke tests for the python bindings."""

from fractions import Fraction
import math

import pytest

import symq


def test_group_basics():
    s5 = symq.group("sym:5")
    assert s5.degree == 5
    assert s5.order() == 120
    assert s5.is_k_transitive(5)

    g4 = symq.group("graph:4")
    assert g4.degree == 6
    assert g4.order() == 24
    assert g4.is_k_transitive(1)
    assert not g4.is_k_transitive(2)

    z5 = symq.group("cyc:5")
    assert z5.orbit(2) == [1, 2, 3, 4, 5]
    assert z5.contains([2, 3, 4, 5, 1])
    assert not z5.contains([2, 1, 3, 4, 5])


def test_blockwise_sum_action():
    four = symq.group("sum(sym:4,sym:4,sym:4,sym:4)")
    assert four.degree == 16
    assert four.order() == 24**4
    rep = symq.is_symmetric_under(symq.fn("fortriv:16"), four)
    assert rep["symmetric"]


def test_tuple_map_prob_is_exact():
    s4 = symq.group("sym:4")
    assert s4.tuple_map_prob([1, 2], [3, 4]) == Fraction(1, 12)
    a4 = symq.group("alt:4")
    assert a4.tuple_map_prob([1, 2], [3, 4]) == Fraction(1, 12)


def test_fn_and_symcheck():
    t3 = symq.fn("triv:3")
    assert t3.n == 3
    assert t3.evaluate("111") == 1
    assert t3.evaluate("010") is None
    assert symq.is_symmetric_under(t3, symq.group("sym:3"))["symmetric"]

    report = symq.is_symmetric_under(
        symq.fn("dist(sym:3,1)"), symq.group("sym:3")
    )
    assert report["symmetric"]


def test_apply_perm_and_small_range():
    assert symq.apply_perm("abc", [2, 3, 1], 36) == "bca"
    assert symq.enumerate_small_range(3, 1) == ["000", "111", "222"]
    assert symq.small_range_count(4, 2) == 52


def test_shuffle_simulate_bijection_mode():
    res = symq.shuffle_simulate(
        symq.fn("triv:4"), symq.group("sym:4"), 2, "1111", mode="bijection", seed=1
    )
    assert not res["promise_violated"]
    assert res["value"] == 1
    assert res["queries_used"] <= 4

    res = symq.shuffle_simulate(
        symq.fn("triv:4"), symq.group("sym:4"), 1, "0000", seed=5
    )
    assert res["queries_used"] <= 1
    assert res["value"] == 0


def test_oracles():
    assert symq.det_query_complexity(symq.fn("triv:4")) == 1

    cert = symq.approx_degree(symq.fn("triv:3"), Fraction(1, 3))
    assert cert["degree"] == 1
    assert cert["mode"] == "exact"

    assert symq.cost_lower_proxy(symq.group("sym:3"), 3) == math.inf
    value = symq.cost_lower_proxy(symq.group("sym:3"), 1)
    assert value >= Fraction(1, 2)

    hd = symq.hard_distribution(symq.fn("triv:3"), 0, kind="poly")
    assert hd["certified_error"] == Fraction(1, 2)
    assert hd["dist"] == {"000": Fraction(1, 2), "111": Fraction(1, 2)}


def test_symmetrize_exact():
    out = symq.symmetrize({"001": Fraction(1)}, symq.group("sym:3"), 2)
    assert out == {
        "001": Fraction(1, 3),
        "010": Fraction(1, 3),
        "100": Fraction(1, 3),
    }


def test_errors_surface_as_exceptions():
    with pytest.raises(symq.SymqError):
        symq.group("nosuch:3")
    with pytest.raises(symq.SymqError):
        symq.fn("dist(sym:3,3)")  # needs r < n
