import pytest
from hypothesis import given, settings, strategies as st

from floertoolkit.complexes import homology
from floertoolkit.connect_sum import (e_to_s_label, explicit_null_homotopy, ladder_compare, product_ucomplex,
                                      s_otimes, s_otimes_ses, tensor_with_v, u_vs_t_action,
                                      verify_e_su_identity)
from floertoolkit.equivariant import MODULE_FLAVORS, jones_flavor, s_bundle
from floertoolkit.errors import FloerToolkitError, RingMismatch, WindowTooSmall
from floertoolkit.rings import ZMOD2, ZZ_RING
from floertoolkit.samples import cpn_ucomplex, random_product, random_ucomplex, unit_ucomplex

from conftest import WINDOW

FLAVORS = ['minus', 'infty', 'plus', 'hat']

seeds = st.integers(0, 10 ** 6)


@pytest.fixture
def cp1_product(cp1):
    return product_ucomplex(cp1, cpn_ucomplex(1, ZZ_RING))


def test_product_requires_same_ring(cp1):
    with pytest.raises(RingMismatch):
        product_ucomplex(cp1, unit_ucomplex(ZMOD2))


def test_product_u_is_sum(cp1_product):
    U = {(s, t): c for s, t, c in cp1_product.product.U.entries()}
    assert U[('e2*e2', 'e0*e2')] == 1
    assert U[('e2*e2', 'e2*e0')] == 1
    assert homology(cp1_product.product.base).ranks() == {0: 1, 2: 2, 4: 1}


def test_e_to_s_label():
    assert e_to_s_label('x@1*u^3') == 'x*u^3@1'
    assert e_to_s_label('e0*e2@y*u^-2') == 'e0*e2*u^-2@y'


def test_tensor_with_hat_has_no_u_shift(cp1):
    V = tensor_with_v(cp1, 'hat', -6, 6)
    assert V.base.ids == ['e0*u^0', 'e2*u^0']


@pytest.mark.parametrize("flavor", FLAVORS)
def test_identity_for_cp1_product(cp1_product, flavor):
    report = verify_e_su_identity(cp1_product.product, flavor, WINDOW)
    assert report.structural
    assert report.passed
    assert report.to_frame()['match'].all()


@pytest.mark.parametrize("flavor", FLAVORS)
def test_identity_with_unit_is_jones_flavor(cp1, flavor):
    product = product_ucomplex(cp1, unit_ucomplex(ZZ_RING)).product
    left = homology(jones_flavor(s_bundle(cp1), flavor, WINDOW), range(-10, 11))
    right = homology(s_otimes(product, flavor, WINDOW), range(-10, 11))
    assert left == right


@pytest.mark.slow
@settings(max_examples=100)
@given(seed=seeds)
def test_identity_for_random_ucomplexes(seed):
    C = random_ucomplex(seed, ZMOD2, max_gens=20)
    for flavor in MODULE_FLAVORS:
        report = verify_e_su_identity(C, flavor, (-16, 16))
        assert report.passed, (flavor, report.mismatches)


@pytest.mark.slow
@settings(max_examples=25)
@given(seed=seeds)
def test_identity_for_random_products(seed):
    C = random_product(seed, ZMOD2, max_gens=4).product
    for flavor in MODULE_FLAVORS:
        assert verify_e_su_identity(C, flavor, (-16, 16)).passed, flavor


def test_s_otimes_window_too_small(cp1):
    with pytest.raises(WindowTooSmall):
        s_otimes(cp1, 'plus', (0, 2))


@pytest.mark.parametrize("flavor", ['minus', 'infty', 'plus'])
def test_deck_transformation_matches_u(cp1_product, flavor):
    assert u_vs_t_action(cp1_product.product, flavor, (-8, 8)).passed


@pytest.mark.slow
@settings(max_examples=100)
@given(seed=seeds)
def test_deck_transformation_matches_u_on_random_products(seed):
    C = random_product(seed, ZMOD2, max_gens=4).product
    for flavor in MODULE_FLAVORS:
        report = u_vs_t_action(C, flavor, WINDOW)
        assert report.passed, (flavor, report.discrepancies)


def test_hat_has_no_t_action(cp1_product):
    with pytest.raises(FloerToolkitError):
        u_vs_t_action(cp1_product.product, 'hat', WINDOW)


def test_explicit_null_homotopy(cp1_product):
    report = explicit_null_homotopy(cp1_product)
    assert report.verified
    assert report.solver_verified
    assert report.passed


@pytest.mark.slow
@settings(max_examples=50)
@given(seed=seeds)
def test_explicit_null_homotopy_random(seed):
    report = explicit_null_homotopy(random_product(seed, ZMOD2, max_gens=4))
    assert report.verified
    assert report.solver_verified
    assert report.agree_on_homology


def test_s_otimes_sequence_is_exact(cp1_product):
    assert s_otimes_ses(cp1_product.product, WINDOW).is_exact


def test_ladder(cp1_product):
    report = ladder_compare(cp1_product.product, (-8, 8))
    assert report.structural
    assert report.passed
