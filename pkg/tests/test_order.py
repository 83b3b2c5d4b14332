import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvml.order import (
    InvalidInputError,
    abs_c,
    format_complex,
    join,
    leq,
    lt_strict,
    modulus,
    parse_complex,
    precneq,
    to_pair,
)

# quarter-integers so that component equalities actually occur
grid = st.integers(-16, 16).map(lambda k: k / 4)
cz = st.builds(complex, grid, grid)
floats = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
fz = st.builds(complex, floats, floats)


@pytest.mark.parametrize("z1, z2, expected", [
    (1 + 1j, 2 + 3j, True),
    (2 + 1j, 1 + 5j, False),
    (1 + 1j, 1 + 1j, True),
])
def test_leq_examples(z1, z2, expected):
    assert leq(z1, z2, eps=0) is expected


@pytest.mark.parametrize("z1, z2, expected", [
    (0, 1 + 1j, True),
    (0j, 2j, False),
    (1 + 1j, 1 + 1j, False),
])
def test_lt_strict_examples(z1, z2, expected):
    assert lt_strict(z1, z2, eps=0) is expected


@pytest.mark.parametrize("z1, z2, expected", [
    (1 + 1j, 1 + 2j, True),
    (1 + 1j, 1 + 1j, False),
    (2 + 0j, 1 + 0j, False),
])
def test_precneq_examples(z1, z2, expected):
    assert precneq(z1, z2, eps=0) is expected


@pytest.mark.parametrize("z, expected", [(-3 + 4j, 3 + 4j), (0, 0), (2 - 5j, 2 + 5j)])
def test_abs_c_examples(z, expected):
    assert abs_c(z) == expected


@pytest.mark.parametrize("z, expected", [(3 + 4j, 5.0), (0, 0.0), (1 + 1j, math.sqrt(2))])
def test_modulus_examples(z, expected):
    assert modulus(z) == pytest.approx(expected, abs=1e-15)


def test_join_examples():
    assert join(3 + 1j, 1 + 2j) == 3 + 2j
    assert join(2 - 1j, 2 - 1j) == 2 - 1j
    assert join(0, 2 + 2j) == 2 + 2j


@pytest.mark.parametrize("bad", [float("nan"), complex(1, float("inf")), [1, 2, 3], "x"])
def test_non_finite_rejected(bad):
    with pytest.raises(InvalidInputError):
        leq(bad, 1)


def test_negative_eps_rejected():
    with pytest.raises(InvalidInputError):
        leq(0, 1, eps=-1e-3)


def test_eps_loosens_leq_and_tightens_strict():
    assert not leq(1 + 1e-12, 1, eps=0)
    assert leq(1 + 1e-12, 1, eps=1e-9)
    assert lt_strict(0, 1e-12 * (1 + 1j), eps=0)
    assert not lt_strict(0, 1e-12 * (1 + 1j), eps=1e-9)


@given(cz)
def test_reflexive(z):
    assert leq(z, z, eps=0)


@given(cz, cz, cz)
def test_transitive(a, b, c):
    if leq(a, b, 0) and leq(b, c, 0):
        assert leq(a, c, 0)


@given(cz, cz)
def test_antisymmetric(a, b):
    if leq(a, b, 0) and leq(b, a, 0):
        assert a == b


@given(cz, cz)
def test_order_fact_modulus(z1, z2):
    if leq(0, z1, 0) and precneq(z1, z2, 0):
        assert modulus(z1) < modulus(z2)


@given(cz, cz, cz)
def test_order_fact_strict_absorption(z1, z2, z3):
    if leq(z1, z2, 0) and lt_strict(z2, z3, 0):
        assert lt_strict(z1, z3, 0)


@given(fz)
def test_abs_c_in_cone_and_bounded(z):
    assert leq(0, abs_c(z), 0)
    assert leq(abs_c(z), (1 + 1j) * modulus(z), 0)


@given(fz, fz, fz)
def test_join_is_least_upper_bound(a, b, u):
    j = join(a, b)
    assert leq(a, j, 0) and leq(b, j, 0)
    if leq(a, u, 0) and leq(b, u, 0):
        assert leq(j, u, 0)


@settings(max_examples=200)
@given(fz)
def test_text_round_trip(z):
    assert parse_complex(format_complex(z)) == pytest.approx(z, rel=1e-5, abs=1e-5)


def test_text_forms():
    assert format_complex(2j) == "2i"
    assert format_complex(0.5j) == "0.5i"
    assert format_complex(1 - 2j) == "1-2i"
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex(" 3 ") == 3
    assert to_pair(-0.0 + 1j) == [0.0, 1.0]
    with pytest.raises(InvalidInputError):
        parse_complex("abc")
