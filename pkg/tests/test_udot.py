import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from catsl2.qring import LaurentPoly, RatFun, g, qbin, qint, qpow
from catsl2.udot import (BasisLabel, UdotElement, apply_symmetry, canonical_label, canonical_labels,
                         form, form_alt, form_bilinear, indecomposable, mul, parse, structure_constants,
                         to_canonical, verify_nasty)

ONE = LaurentPoly.const(1)


def E(n, a=1):
    return UdotElement.ef(a, 0, n)


def F(n, b=1):
    return UdotElement.ef(0, b, n)


labels = st.builds(canonical_label, st.integers(0, 2), st.integers(0, 2), st.integers(-4, 4))
coeffs = st.dictionaries(st.integers(-3, 3), st.integers(-2, 2), min_size=1, max_size=2).map(LaurentPoly)


@st.composite
def elements(draw, n=None):
    """Random elements 1_m x 1_n with fixed weights."""
    lab = draw(labels)
    x = UdotElement.from_label(lab).scale(draw(coeffs))
    a2 = draw(st.integers(0, 2))
    if a2 <= lab.a and a2 <= lab.b:
        x = x + UdotElement.from_label(canonical_label(lab.a - a2, lab.b - a2, lab.n)).scale(draw(coeffs))
    return x


@pytest.mark.parametrize("n", range(-4, 5))
def test_ef_commutator(n):
    # EF1_n = FE1_n + [n]1_n
    assert mul(E(n - 2), F(n)) == UdotElement.fe(1, 1, n) + UdotElement.one(n).scale(qint(n))


@pytest.mark.parametrize("n", range(-3, 4))
def test_divided_power_merge(n):
    assert mul(E(n + 2, 2), E(n)) == E(n, 3).scale(qbin(3, 1))
    assert mul(UdotElement.one(n), UdotElement.one(n)) == UdotElement.one(n)
    assert mul(UdotElement.one(n), UdotElement.one(n + 2)).is_zero()


def test_to_canonical_examples():
    assert to_canonical(UdotElement.ef(1, 1, 0)) == {BasisLabel("EF", 1, 1, 0): ONE}
    assert to_canonical(UdotElement.ef(1, 1, 2)) == {BasisLabel("FE", 1, 1, 2): ONE,
                                                     canonical_label(0, 0, 2): qint(2)}
    # F^(b)E^(a)1_{b-a} is the same element as E^(a)F^(b)1_{b-a}
    for a, b in itertools.product(range(3), repeat=2):
        assert UdotElement.fe(a, b, b - a) == UdotElement.ef(a, b, b - a)


def test_structure_constants_examples():
    can, pos = structure_constants(BasisLabel("EF", 1, 0, -2), BasisLabel("EF", 0, 1, 0))
    assert pos and can
    can, pos = structure_constants(BasisLabel("EF", 0, 0, 3), BasisLabel("EF", 0, 0, 3))
    assert pos and can == {canonical_label(0, 0, 3): ONE}


def test_symmetry_examples():
    x = UdotElement.ef(1, 1, 0).scale(qpow(2))
    assert apply_symmetry("psi", x) == UdotElement.ef(1, 1, 0).scale(qpow(-2))
    for n in range(-3, 4):
        assert apply_symmetry("omega", UdotElement.one(n)) == UdotElement.one(-n)
        assert apply_symmetry("tau", E(n)) == F(n + 2).scale(qpow(-1 - n))


@settings(max_examples=80, deadline=None)
@given(elements())
def test_symmetries_are_involutive(x):
    for s in ("psi", "omega", "sigma", "rho"):
        assert apply_symmetry(s, apply_symmetry(s, x)) == x
    assert apply_symmetry("tau^-1", apply_symmetry("tau", x)) == x


@pytest.mark.parametrize("lab", canonical_labels(3, 3, range(-6, 7)))
def test_psi_fixes_canonical(lab):
    x = UdotElement.from_label(lab)
    assert apply_symmetry("psi", x) == x


@settings(max_examples=40, deadline=None)
@given(elements(), elements(), elements())
def test_mul_associative(x, y, z):
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


def test_form_examples():
    assert form(E(1), E(1)) == g(1)
    assert form_alt(E(1), E(1)) == g(1)
    for n in range(-4, 5):
        assert form(UdotElement.one(n), UdotElement.one(n)) == RatFun(ONE)
    x = UdotElement.ef(1, 1, 0)
    assert form(x, x) == form_alt(x, x)
    y = UdotElement.fe(2, 2, 0)
    assert form(y, y) == form_alt(y, y)
    assert form(E(0), F(0)).is_zero()
    assert form_alt(E(0), UdotElement.one(0)).is_zero()


def test_form_bilinear_example():
    for n in range(-3, 4):
        assert form_bilinear(E(n), E(n)) == RatFun(ONE, ONE - qpow(-2))


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), st.integers(-3, 3))
def test_form_semilinear(x, y, r):
    assert form(x.scale(qpow(r)), y) == form(x, y) * RatFun(qpow(-r))
    assert form(x, y.scale(qpow(r))) == form(x, y) * RatFun(qpow(r))


@settings(max_examples=60, deadline=None)
@given(elements(), elements())
def test_form_symmetries(x, y):
    psi = lambda z: apply_symmetry("psi", z)  # noqa: E731
    om = lambda z: apply_symmetry("omega", z)  # noqa: E731
    assert form(x, y) == form(psi(y), psi(x))
    assert form(om(x), om(y)) == form(x, y)
    assert form_bilinear(x, y) == form_bilinear(y, x)


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), st.sampled_from("EF"))
def test_form_adjoint(x, y, which):
    assume(not x.is_zero())
    m = x.dst_weight
    u = E(m) if which == "E" else F(m)
    assert form(mul(u, x), y) == form(x, mul(apply_symmetry("tau", u), y))


def test_indecomposable_examples():
    assert indecomposable(BasisLabel("EF", 2, 1, -1))
    for a, b in itertools.product(range(4), repeat=2):
        for n in range(-6, b - a + 1):
            assert indecomposable(BasisLabel("EF", a, b, n))
    assert not indecomposable(BasisLabel("EF", 1, 1, 2))
    assert indecomposable(BasisLabel("EF", 0, 0, 5))


def test_verify_nasty_examples():
    for b, c, n in itertools.product(range(4), range(4), range(-3, 4)):
        ok, lhs, rhs = verify_nasty(0, b, c, n)
        assert ok and lhs == qbin(b + c, b)
    assert verify_nasty(1, 1, 1, 0)[0]


@settings(max_examples=60, deadline=None)
@given(elements())
def test_parse_roundtrip(x):
    assert parse(str(x)) == x


def test_parse_errors():
    for bad in ["E(", "1_", "E(1)", "G1_{0}", ""]:
        with pytest.raises(ValueError):
            parse(bad)
