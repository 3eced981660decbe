import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from floertoolkit.errors import ValidationError
from floertoolkit.heegaard import (HeegaardDiagram, analyze_diagram, count_matrix, enumerate_generators,
                                   first_homology, formal_cf_module, lens_space_diagram, permanent_count,
                                   s1xs2_diagram, signed_count, sphere_diagram)
from floertoolkit.novikov import laurent_homology
from floertoolkit.samples import point_laurent, random_diagram


##### Diagramas de Referencia #####

@pytest.mark.parametrize("p", range(1, 8))
def test_lens_space(p):
    report = analyze_diagram(lens_space_diagram(p))
    assert report.generators == p
    assert report.signed == p
    assert report.homology.b1 == 0
    assert report.homology.order == p
    assert report.passed


def test_s1xs2_with_cancelling_pair():
    report = analyze_diagram(s1xs2_diagram(1))
    assert (report.generators, report.signed) == (2, 0)
    assert report.homology.b1 == 1
    assert report.homology.order is None


def test_s1xs2_without_intersections():
    D = s1xs2_diagram()
    assert enumerate_generators(D) == []
    assert signed_count(D) == 0
    assert first_homology(D).b1 == 1


def test_sphere():
    report = analyze_diagram(sphere_diagram())
    assert report.generators == 1
    assert report.homology.order == 1


def test_transposition_sign():
    D = HeegaardDiagram(2, {(1, 2): (("x", 1),), (2, 1): (("y", 1),)})
    (gen,) = enumerate_generators(D)
    assert gen.permutation == (2, 1)
    assert gen.sign == -1
    assert gen.label == "x_y"
    assert signed_count(D) == -1


def test_diagram_is_hashable():
    D = HeegaardDiagram(2, {(2, 1): (("y", 1),), (1, 2): (("x", 1),)})
    same = HeegaardDiagram(2, {(1, 2): (("x", 1),), (2, 1): (("y", 1),)})
    assert D == same
    assert hash(D) == hash(same)
    assert len({D, same, lens_space_diagram(5)}) == 2
    with pytest.raises(TypeError):
        D.points[(1, 1)] = (("z", 1),)


def test_report_frame():
    frame = analyze_diagram(lens_space_diagram(5)).to_frame()
    row = frame.iloc[0]
    assert row['generators'] == 5
    assert row['order_H1'] == 5


##### Diagramas Aleatorios #####

@given(seed=st.integers(0, 10 ** 6), genus=st.integers(1, 4))
def test_random_diagram_counts(seed, genus):
    D = random_diagram(seed, genus=genus)
    signed = count_matrix(D, signed=True)
    unsigned = count_matrix(D, signed=False)
    assert signed_count(D) == int(Matrix(signed.tolist()).det())
    assert len(enumerate_generators(D)) == permanent_count(D)
    assert np.all(np.abs(signed) <= unsigned)


@pytest.mark.slow
@settings(max_examples=50)
@given(seed=st.integers(0, 10 ** 6))
def test_genus_four_counts(seed):
    D = random_diagram(seed, genus=4)
    report = analyze_diagram(D)
    assert report.signed == int(Matrix(count_matrix(D).tolist()).det())
    assert report.generators == permanent_count(D) == len(enumerate_generators(D))
    assert report.passed


##### Validación #####

@pytest.mark.parametrize("genus,points", [
    (0, {}),
    (1, {(1, 2): (("x", 1),)}),
    (1, {(1, 1): (("x", 2),)}),
    (2, {(1, 1): (("x", 1),), (2, 2): (("x", -1),)}),
])
def test_invalid_diagrams(genus, points):
    with pytest.raises(ValidationError):
        HeegaardDiagram(genus, points)


##### Módulo de Cadenas Formal #####

def test_formal_module_by_label():
    L = formal_cf_module(lens_space_diagram(3), {'p1': 0, 'p2': 0, 'p3': 0})
    assert L.size == 3
    assert laurent_homology(L).ranks() == {0: 3}


def test_formal_module_by_position():
    L = formal_cf_module(s1xs2_diagram(1), [0, 1])
    assert sorted(g.degree for g in L.gens) == [0, 1]


def test_formal_module_missing_degrees():
    with pytest.raises(ValidationError):
        formal_cf_module(lens_space_diagram(2), {'p1': 0})
    with pytest.raises(ValidationError):
        formal_cf_module(lens_space_diagram(2), [0])


def test_sphere_gives_single_orbit_model():
    assert formal_cf_module(sphere_diagram(), [0]) == point_laurent()


def test_empty_diagram_gives_empty_module():
    assert formal_cf_module(s1xs2_diagram(), []).size == 0
