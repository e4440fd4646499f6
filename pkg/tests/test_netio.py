from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crnkit import load
from crnkit.errors import (
    DuplicateRateLabel,
    InputError,
    NetworkSyntaxError,
    NonpositiveRate,
    UnknownLabel,
)
from crnkit.netio import (
    dumps_network,
    network_from_json,
    network_to_json,
    parse_assignment,
    parse_network,
    parse_point,
    serialize_network,
)
from crnkit.network import stoichiometric_matrix

from netgen import random_network


def test_mckeithan_counts(mck):
    assert (mck.n, mck.m, mck.r) == (4, 3, 4)
    assert mck.labels == ("k1", "k2", "k3", "k4")


def test_reversible_shorthand():
    net = parse_network("A <-> B ; kf kr")
    assert net.r == 2
    assert [rx.label for rx in net.reactions] == ["kf", "kr"]
    assert stoichiometric_matrix(net) == [[-1, 1], [1, -1]]


def test_empty_complex(lv):
    rx = lv.reactions[0]
    assert lv.complexes[rx.source] == (0, 0)
    assert lv.complexes[rx.target] == (1, 0)


def test_rates_assignment(mck):
    rates = parse_assignment("k1=1, k2=1, k3=1, k4=1", mck)
    assert mck.rate_vector(rates) == [1, 1, 1, 1]
    assert parse_assignment("k1=3/2", mck)["k1"] == Fraction(3, 2)
    with pytest.raises(NonpositiveRate):
        parse_assignment("k1=0", mck)
    with pytest.raises(UnknownLabel):
        parse_assignment("k9=1", mck)


def test_totals_and_points(mck):
    assert parse_assignment("c1=1, c2=2", mck, "totals") == {0: 1, 1: 2}
    assert parse_point("1/2, 3/2, 1/4, 1/4", mck)[1] == Fraction(3, 2)
    assert parse_point("X3=1/4", mck) == [0, 0, Fraction(1, 4), 0]
    with pytest.raises(InputError):
        parse_point("1, 2", mck)


@pytest.mark.parametrize(
    "text, err",
    [
        ("A -> B", NetworkSyntaxError),
        ("A -> B ; k1\nB -> C ; k1", DuplicateRateLabel),
        ("A -> -2B ; k1", NetworkSyntaxError),
        ("A -> A ; k1", NetworkSyntaxError),
        ("A => B ; k1", NetworkSyntaxError),
        ("A + 2 -> B ; k1", NetworkSyntaxError),
        ("A -> 2000000B ; k1", NetworkSyntaxError),
        ("A <-> B ; k1", NetworkSyntaxError),
    ],
)
def test_located_errors(text, err):
    with pytest.raises(err) as info:
        parse_network(text)
    assert isinstance(info.value, InputError)


def test_error_carries_line():
    with pytest.raises(NetworkSyntaxError) as info:
        parse_network("A -> B ; k1\nB -> ; k2 k3")
    assert info.value.line == 2


def test_autolabel():
    net = parse_network("A -> B\nB -> A ; k1\nB -> C", autolabel=True)
    assert net.labels == ("k2", "k1", "k3")


@pytest.mark.parametrize("name", ["mckeithan", "extended_mckeithan", "g1", "g2", "lotka_volterra"])
def test_round_trip_bundled(name):
    net = load(name)
    again = parse_network(serialize_network(net))
    assert again == net
    assert serialize_network(again) == serialize_network(net)
    assert network_from_json(network_to_json(net)) == net
    assert dumps_network(net) == dumps_network(again)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_round_trip_random(rng):
    net = random_network(rng)
    text = serialize_network(net)
    assert serialize_network(parse_network(text)) == text


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="AB12 +-<>;k0#\n:species", max_size=40))
def test_parsing_is_total(text):
    try:
        parse_network(text)
    except InputError:
        pass
