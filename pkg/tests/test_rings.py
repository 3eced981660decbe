import pytest

from floertoolkit.errors import UnsupportedRing
from floertoolkit.rings import BaseRing, QQ_RING, RingSpec, ZMOD2, ZZ_RING


@pytest.mark.parametrize("text, expected", [
    ("Zmod2", ZMOD2), ("F2", ZMOD2), ("Z", ZZ_RING), ("QQ", QQ_RING),
    ("Q[t,t^-1]", RingSpec(BaseRing.Q, True)), ("Zmod2 [t, t^-1]", RingSpec(BaseRing.ZMOD2, True)),
])
def test_parse_ring_aliases(text, expected):
    assert RingSpec.parse(text) == expected


def test_parse_unknown_ring():
    with pytest.raises(ValueError):
        RingSpec.parse("Z/3")


def test_ring_properties():
    assert ZMOD2.is_field and QQ_RING.is_field and not ZZ_RING.is_field
    assert str(RingSpec(BaseRing.Q, True)) == "Q[t,t^-1]"
    assert not RingSpec(BaseRing.Z, True).admits_snf
    assert RingSpec(BaseRing.ZMOD2, True).admits_snf
    with pytest.raises(UnsupportedRing):
        RingSpec(BaseRing.Z, True).require_snf("kernel_basis")


def test_binary_field_arithmetic():
    K = ZMOD2.arithmetic
    assert K.add(1, 1) == 0
    assert K.neg(1) == 1
    assert K.from_int(-3) == 1
    assert K.parse("2") == 0


def test_integer_ring_division():
    K = ZZ_RING.arithmetic
    assert K.divmod(7, 3) == (2, 1)
    assert K.normalize(-4) == (4, -1)
    assert K.divides(3, 12) and not K.divides(5, 12)
    with pytest.raises(ValueError):
        K.from_int(1.5)


def test_rational_parse_and_format():
    K = QQ_RING.arithmetic
    value = K.parse("6/8")
    assert K.format(value) == "3/4"
    assert K.format(K.from_int(5)) == "5"
    assert K.mul(value, K.unit_inverse(value)) == K.one
    with pytest.raises(ValueError):
        K.parse("tres")


def test_laurent_arithmetic_over_q():
    LK = RingSpec(BaseRing.Q, True).arithmetic
    t = LK.monomial(1, 1)
    one = LK.one
    t2_minus_1 = LK.sub(LK.mul(t, t), one)
    q, r = LK.divmod(t2_minus_1, LK.sub(t, one))
    assert LK.is_zero(r)
    assert q == LK.add(t, one)


def test_laurent_units_and_normalization():
    LK = RingSpec(BaseRing.Q, True).arithmetic
    t_inv = LK.monomial(1, -1)
    assert LK.is_unit(t_inv)
    assert LK.mul(t_inv, LK.unit_inverse(t_inv)) == LK.one
    canonical, unit = LK.normalize(LK.make({3: 2, 5: 4}))
    assert canonical.valuation == 0
    assert canonical.coeffs[-1] == 1
    assert LK.is_unit(unit)


def test_laurent_division_needs_field():
    LK = RingSpec(BaseRing.Z, True).arithmetic
    with pytest.raises(UnsupportedRing):
        LK.divmod(LK.monomial(2, 1), LK.monomial(1, 0))


def test_laurent_format():
    LK = RingSpec(BaseRing.Z, True).arithmetic
    assert LK.format(LK.monomial(1, 1)) == "t"
    assert LK.format(LK.make({0: 3, -2: -1})) == "-t^-2 + 3"
    assert LK.format(LK.zero) == "0"
