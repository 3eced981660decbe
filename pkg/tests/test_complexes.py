from math import prod

import pytest
from hypothesis import given, strategies as st

from floertoolkit.complexes import (Generator, MapSign, change_of_basis, cone_sequence, find_chain_homotopy,
                                    homology, homotopy_defect, identity_map, induced_map, is_chain_map,
                                    les_of_ses, make_chain_map, make_complex, mapping_cone, maps_agree_on_homology,
                                    shift, tensor_product, zero_map)
from floertoolkit.errors import DegreeViolation, NotADifferential, NotChainMap, NotExact, RingMismatch
from floertoolkit.linalg import SparseMatrix
from floertoolkit.rings import QQ_RING, ZMOD2, ZZ_RING
from floertoolkit.samples import random_chain_map, random_complex, random_ses

from conftest import RINGS, sympy_rank

seeds = st.integers(0, 10 ** 6)


##### Construcción #####

def test_make_complex_canonical_order():
    C = make_complex('Z', [('b', 1), ('a', 1), ('c', 0)], {('a', 'c'): 1, ('b', 'c'): -1})
    assert C.ids == ['c', 'a', 'b']
    assert list(C.entries()) == [('a', 'c', 1), ('b', 'c', -1)]


def test_make_complex_rejects_degree_violation():
    with pytest.raises(DegreeViolation):
        make_complex('Z', [('a', 2), ('b', 0)], {('a', 'b'): 1})


def test_make_complex_rejects_nonzero_square():
    with pytest.raises(NotADifferential) as info:
        make_complex('Z', [('a', 2), ('b', 1), ('c', 0)], {('a', 'b'): 1, ('b', 'c'): 1})
    assert info.value.witness == 'a'


def test_repeated_entries_add_up():
    C = make_complex('Zmod2', [('a', 1), ('b', 0)], [('a', 'b', 1), ('a', 'b', 1)])
    assert list(C.entries()) == []


def test_moore_space_torsion():
    H = homology(make_complex('Z', [('a', 1), ('b', 0)], {('a', 'b'): 2}))
    assert H.torsion(0) == (2,)
    assert H.rank(0) == 0
    assert H.is_acyclic() is False


def test_homology_frame():
    frame = homology(make_complex('Z', [('v', 0), ('e', 1), ('f', 2)], {('f', 'e'): 2})).to_frame()
    assert list(frame.columns) == ['degree', 'rank', 'torsion']
    assert frame.set_index('degree').loc[1, 'torsion'] == "2"


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(seed=seeds)
def test_homology_rank_matches_sympy(ring, seed):
    C = random_complex(seed, ring)
    H = homology(C)
    for n in C.degrees:
        expected = C.dim(n) - sympy_rank(C.block(n), ring) - sympy_rank(C.block(n + 1), ring)
        assert H.rank(n) == expected


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(seed=seeds)
def test_homology_invariant_under_change_of_basis(ring, seed):
    C = random_complex(seed, ring)
    K = ring.arithmetic
    target = next((n for n in C.degrees if C.dim(n) >= 2), None)
    if target is None:
        return
    a, _ = C.span(target)
    identity = SparseMatrix.identity(C.size, ring).entries
    P = SparseMatrix(C.size, C.size, {**identity, (a, a + 1): K.one}, ring)
    P_inv = SparseMatrix(C.size, C.size, {**identity, (a, a + 1): K.neg(K.one)}, ring)
    assert homology(change_of_basis(C, P, P_inv)) == homology(C)


##### Mapas de cadenas #####

def test_identity_and_zero_are_chain_maps():
    C = random_complex(3, ZZ_RING)
    assert is_chain_map(identity_map(C)) == (True, None)
    assert is_chain_map(zero_map(C, C)) == (True, None)


def test_swap_map_is_not_a_chain_map():
    C = make_complex('Z', [('a', 1), ('b', 0), ('c', 1), ('d', 0)], {('a', 'b'): 1})
    swap = {('a', 'c'): 1, ('c', 'a'): 1, ('b', 'd'): 1, ('d', 'b'): 1}
    f = make_chain_map(C, C, 0, swap, check=False)
    assert is_chain_map(f) == (False, 'a')
    with pytest.raises(NotChainMap):
        make_chain_map(C, C, 0, swap)


def test_chain_map_degree_violation():
    C = make_complex('Z', [('a', 1), ('b', 0)])
    with pytest.raises(DegreeViolation):
        make_chain_map(C, C, 0, {('a', 'b'): 1})


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        tensor_product(make_complex('Z', [('a', 0)]), make_complex('Q', [('b', 0)]))


@given(seed=seeds)
def test_induced_identity_is_identity(seed):
    C = random_complex(seed, QQ_RING)
    for n in C.degrees:
        M = induced_map(identity_map(C), n)
        assert M == SparseMatrix.identity(C.homology_basis(n).size, QQ_RING)


##### Construcciones #####

@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(seed=seeds)
def test_cone_of_identity_is_acyclic(ring, seed):
    C = random_complex(seed, ring)
    assert homology(mapping_cone(identity_map(C))).is_acyclic()


@given(seed=seeds)
def test_cone_of_zero_splits(seed):
    C = random_complex(seed, ZZ_RING)
    cone = mapping_cone(zero_map(C, C))
    H, Hc = homology(C), homology(cone)
    for n in range(min(C.degrees, default=0) - 1, max(C.degrees, default=0) + 2):
        assert Hc.rank(n) == H.rank(n) + H.rank(n - 1)
        assert prod(Hc.torsion(n)) == prod(H.torsion(n)) * prod(H.torsion(n - 1))


def test_cone_of_multiplication_by_two():
    C = make_complex('Z', [('x', 0)])
    f = make_chain_map(C, C, 0, {('x', 'x'): 2})
    H = homology(mapping_cone(f))
    assert H.torsion(0) == (2,)
    assert H.rank(0) == 0 and H.rank(1) == 0


def test_cone_generator_names():
    C = make_complex('Zmod2', [('x', 0)])
    cone, i, p = cone_sequence(identity_map(C))
    assert cone.ids == ['t:x', 's:x']
    assert cone.generator('s:x').degree == 1


@given(seed=seeds, k=st.integers(-3, 3))
def test_shift_moves_homology(seed, k):
    C = random_complex(seed, ZZ_RING)
    H, Hs = homology(C), homology(shift(C, k))
    for n in C.degrees:
        assert Hs.group(n + k) == H.group(n)
    assert shift(shift(C, k), -k) == C
    assert shift(C, 0) == C


@pytest.mark.parametrize("ring", [ZMOD2, QQ_RING], ids=str)
@given(seed=seeds)
def test_kunneth_over_fields(ring, seed):
    C = random_complex(seed, ring, max_gens=5)
    D = random_complex(seed + 1, ring, max_gens=5)
    H, HC, HD = homology(tensor_product(C, D)), homology(C), homology(D)
    for n in range(-8, 9):
        expected = sum(HC.rank(a) * HD.rank(n - a) for a in range(-4, 5))
        assert H.rank(n) == expected


def test_tensor_product_koszul_sign():
    C = make_complex('Z', [('a', 1), ('b', 0)], {('a', 'b'): 1})
    T = tensor_product(C, C)
    assert ('a*a', 'a*b', -1) in list(T.entries())
    assert ('a*a', 'b*a', 1) in list(T.entries())


##### Homotopías #####

@given(seed=seeds)
def test_homotopy_of_equal_maps(seed):
    f = random_chain_map(seed, QQ_RING)
    H = find_chain_homotopy(f, f)
    assert H is not None
    assert homotopy_defect(f, f, H).is_zero


def test_no_homotopy_when_homology_differs():
    C = make_complex('Q', [('x', 0)])
    assert find_chain_homotopy(identity_map(C), zero_map(C, C)) is None


def test_homotopy_for_acyclic_identity():
    C = make_complex('Z', [('a', 1), ('b', 0)], {('a', 'b'): 1})
    H = find_chain_homotopy(identity_map(C), zero_map(C, C))
    assert H is not None
    assert homotopy_defect(identity_map(C), zero_map(C, C), H).is_zero


def test_integral_homotopy_respects_solvability():
    C = make_complex('Z', [('a', 1), ('b', 0)], {('a', 'b'): 2})
    assert find_chain_homotopy(identity_map(C), zero_map(C, C)) is None


##### Sucesión exacta larga #####

@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(seed=seeds)
def test_les_of_random_ses_is_exact(ring, seed):
    i, p = random_ses(seed, ring, max_gens=6)
    assert les_of_ses(i, p).is_exact


def test_les_of_split_sequence_has_zero_connecting_map():
    C = random_complex(11, ZZ_RING)
    _, i, p = cone_sequence(zero_map(C, C))
    les = les_of_ses(i, p)
    assert les.is_exact
    assert all(M.is_zero for M in les.delta.values())


def test_les_rejects_non_exact_sequence():
    A = make_complex('Z', [('x', 0)])
    B = make_complex('Z', [('y', 0)])
    i = make_chain_map(A, B, 0, {('x', 'y'): 2})
    p = make_chain_map(B, B, 0, {})
    with pytest.raises(NotExact):
        les_of_ses(i, p)


def test_les_frame():
    i, p = random_ses(5, ZMOD2, max_gens=4)
    frame = les_of_ses(i, p).to_frame()
    assert list(frame.columns) == ['degree', 'position', 'rank', 'torsion', 'exact']
    assert frame['exact'].all()


def test_generator_sort_key():
    assert Generator('a', 1).sort_key == (1, 'a')
    assert MapSign.COMMUTE.compose(MapSign.ANTICOMMUTE) == MapSign.ANTICOMMUTE


@given(seed=seeds)
def test_found_homotopy_implies_equal_induced_maps(seed):
    f = random_chain_map(seed, ZMOD2, max_gens=6)
    g = random_chain_map(seed + 1, ZMOD2, max_gens=6)
    if f.source != g.source or f.target != g.target:
        g = zero_map(f.source, f.target)
    if find_chain_homotopy(f, g) is not None:
        assert maps_agree_on_homology(f, g, f.source.degrees)
    else:
        assert not maps_agree_on_homology(f, g, f.source.degrees)
