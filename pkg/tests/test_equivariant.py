import pytest
from hypothesis import given, settings, strategies as st

from floertoolkit.complexes import compose, homology, identity_map, induced_map, is_chain_map, make_complex
from floertoolkit.equivariant import (DegreeWindow, Flavor, cone_compare, flavor_homology, flavor_recovery,
                                      fundamental_ses, jones_flavor, jones_naturality, lift_map_su, localize,
                                      make_jcomplex, make_ucomplex, make_umodule, s_bundle, su_triangle,
                                      umap_on_homology)
from floertoolkit.errors import DegreeViolation, NotADifferential, NotIntertwining, WindowTooSmall
from floertoolkit.linalg import SparseMatrix
from floertoolkit.rings import ZMOD2, ZZ_RING
from floertoolkit.samples import cpn_ucomplex, random_complex, random_quasi_isomorphism, random_ucomplex

from conftest import WINDOW

seeds = st.integers(0, 10 ** 6)


##### Ventanas y Sabores #####

def test_window_safe_range():
    window = DegreeWindow.of((-6, 6))
    assert window.safe_degrees() == list(range(-4, 5))
    assert DegreeWindow.of(window) is window


def test_window_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        DegreeWindow(3, 1)


def test_window_too_small(free_circle):
    with pytest.raises(WindowTooSmall):
        jones_flavor(free_circle, 'plus', (0, 3))


def test_flavor_exponents():
    assert Flavor.MINUS.exponents == (0, None)
    assert Flavor.HAT.exponents == (0, 0)
    assert Flavor('plus') is Flavor.PLUS


##### Fibrado S_U #####

def test_sbundle_of_cp1(cp1):
    assert homology(s_bundle(cp1).base).ranks() == {0: 1, 3: 1}


@given(seed=seeds)
def test_sbundle_with_zero_u_doubles_homology(seed):
    C = make_ucomplex(random_complex(seed, ZZ_RING))
    H, HS = homology(C.base), homology(s_bundle(C).base)
    for n in range(min(C.base.degrees, default=0), max(C.base.degrees, default=0) + 2):
        assert HS.rank(n) == H.rank(n) + H.rank(n - 1)


def test_sbundle_j_squares_to_zero(cp2):
    S = s_bundle(cp2)
    assert (S.J.matrix @ S.J.matrix).is_zero
    assert is_chain_map(S.J) == (True, None)


def test_make_jcomplex_rejects_nonzero_square():
    base = make_complex('Zmod2', [('a', 0), ('b', 1), ('c', 2)])
    with pytest.raises(NotADifferential):
        make_jcomplex(base, {('a', 'b'): 1, ('b', 'c'): 1})


def test_make_ucomplex_degree_violation(cp1):
    with pytest.raises(DegreeViolation):
        make_ucomplex(cp1.base, {('e2', 'e2'): 1})


def test_umap_on_homology(cp1):
    assert umap_on_homology(cp1)[2] == SparseMatrix.identity(1, ZZ_RING)


def test_cone_compare_cp1(cp1):
    comparison = cone_compare(cp1)
    assert comparison.passed
    assert comparison.sign in (1, -1)
    assert comparison.to_frame()['connecting_equals_U'].all()


@pytest.mark.slow
@settings(max_examples=100)
@given(seed=seeds)
def test_cone_compare_random(seed):
    assert cone_compare(random_ucomplex(seed, ZMOD2, max_gens=10)).passed


@settings(max_examples=25)
@given(seed=seeds)
def test_cone_compare_random_over_integers(seed):
    comparison = cone_compare(random_ucomplex(seed, ZZ_RING, max_gens=10))
    assert comparison.passed
    assert comparison.sign in (1, -1)


##### Levantamientos #####

def test_lift_identity(cp1):
    lifted = lift_map_su(identity_map(cp1.base), cp1, cp1)
    assert lifted.matrix == SparseMatrix.identity(lifted.source.size, ZZ_RING)


def test_lift_requires_intertwining(cp1):
    flat = make_ucomplex(cp1.base)
    with pytest.raises(NotIntertwining) as info:
        lift_map_su(identity_map(cp1.base), cp1, flat)
    assert info.value.witness == 'e2'


def test_su_triangle_of_identity(cp1):
    report = su_triangle(identity_map(cp1.base), cp1, cp1)
    assert report.cone_acyclic
    assert report.passed


##### Sabores de Jones #####

@pytest.mark.parametrize("flavor,expected", [
    ('minus', {1: 1}),
    ('infty', {}),
    ('plus', {0: 1}),
    ('hat', {0: 1, 1: 1}),
])
def test_free_circle_flavors(free_circle, flavor, expected):
    assert flavor_homology(free_circle, flavor, (-20, 4)).ranks() == expected


def test_fundamental_ses_is_exact(free_circle, cp2):
    assert fundamental_ses(free_circle, WINDOW).is_exact
    assert fundamental_ses(s_bundle(cp2), WINDOW).is_exact


@pytest.mark.slow
@settings(max_examples=100)
@given(seed=seeds)
def test_fundamental_ses_is_exact_on_random_bundles(seed):
    les = fundamental_ses(s_bundle(random_ucomplex(seed, ZMOD2, max_gens=8)), WINDOW)
    assert les.is_exact, [(n.degree, n.position) for n in les.failures()]


def test_flavor_recovery_cp1(cp1):
    assert flavor_recovery(cp1, WINDOW).passed


@pytest.mark.slow
@settings(max_examples=10)
@given(seed=seeds)
def test_flavor_recovery_random(seed):
    assert flavor_recovery(random_ucomplex(seed, ZMOD2, max_gens=8), (-10, 10)).passed


@pytest.mark.slow
@settings(max_examples=10)
@given(seed=seeds, flavor=st.sampled_from(['minus', 'infty', 'plus', 'hat']))
def test_jones_naturality(seed, flavor):
    C1, C2, F = random_quasi_isomorphism(seed, ZMOD2, max_gens=6)
    lifted = lift_map_su(F, C1, C2)
    report = jones_naturality(lifted, s_bundle(C1), s_bundle(C2), flavor, (-10, 10))
    assert report.quasi_isomorphism
    assert report.passed


##### Módulos sobre R[U] #####

def test_localize_kills_u_torsion():
    assert localize(make_umodule('Q', [('g', 0)], [{'g': {3: 1}}])).is_zero


def test_localize_free_module():
    assert localize(make_umodule('Q', [('g', -2)])).rank(0) == 1


def test_localize_keeps_integral_torsion():
    localized = localize(make_umodule('Z', [('g', 1)], [{'g': {1: 2}}]))
    assert localized.group(1).torsion == (2,)
    assert localized.rank(1) == 0


def test_make_umodule_rejects_inhomogeneous_relation():
    with pytest.raises(DegreeViolation):
        make_umodule('Q', [('g', 0), ('h', 1)], [{'g': {0: 1}, 'h': {0: 1}}])


##### Propiedades Adicionales #####

@pytest.mark.parametrize("ring", [ZMOD2, ZZ_RING], ids=str)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_hopf_bundle_is_sphere(n, ring):
    assert homology(s_bundle(cpn_ucomplex(n, ring)).base).ranks() == {0: 1, 2 * n + 1: 1}


def test_zero_u_induces_zero_maps(cp1):
    flat = make_ucomplex(cp1.base)
    assert all(M.is_zero for M in umap_on_homology(flat).values())


@given(seed=seeds)
def test_u_action_is_functorial(seed):
    C = random_ucomplex(seed, ZMOD2, max_gens=10)
    U2 = compose(C.U, C.U)
    for n in C.base.degrees:
        assert induced_map(C.U, n - 2) @ induced_map(C.U, n) == induced_map(U2, n)


@settings(max_examples=10)
@given(seed=seeds, flavor=st.sampled_from(['minus', 'infty', 'plus', 'hat']))
def test_window_stability(seed, flavor):
    S = s_bundle(random_ucomplex(seed, ZMOD2, max_gens=8))
    small = flavor_homology(S, flavor, (-8, 8))
    large = flavor_homology(S, flavor, (-14, 14))
    assert large.restrict(range(-6, 7)) == small


@pytest.mark.parametrize("power", [1, 2, 3, 4, 5])
def test_localize_truncated_polynomials(power):
    assert localize(make_umodule('Zmod2', [('g', 0)], [{'g': {power: 1}}])).is_zero


def test_localize_mixed_module():
    M = make_umodule('Q', [('f', 0), ('g', 2), ('h', 1)], [{'g': {2: 1}}])
    localized = localize(M)
    assert (localized.rank(0), localized.rank(1)) == (1, 1)
