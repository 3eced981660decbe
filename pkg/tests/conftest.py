import pytest
from hypothesis import settings
from sympy import GF, QQ, Matrix
from sympy.polys.matrices import DomainMatrix

from floertoolkit import FloerToolkit, AsyncFloerToolkit
from floertoolkit.rings import BaseRing, QQ_RING, ZMOD2, ZZ_RING
from floertoolkit.samples import cpn_ucomplex, free_circle_jcomplex, point_laurent, unit_ucomplex

settings.register_profile("default", max_examples=25, deadline=None)
settings.register_profile("thorough", max_examples=100, deadline=None)
settings.load_profile("default")

RINGS = [ZMOD2, ZZ_RING, QQ_RING]
FIELDS = [ZMOD2, QQ_RING]
WINDOW = (-12, 12)


def sympy_rank(block, ring):
    """Rango de un bloque con sympy como oráculo independiente (sobre Q o GF(2))."""
    dense = block.to_dense()
    if not dense or not dense[0]:
        return 0
    if ring.base == BaseRing.ZMOD2:
        F = GF(2)
        return DomainMatrix([[F(int(x)) for x in row] for row in dense], block.shape, F).rank()
    if ring.base == BaseRing.Q:
        dense = [[QQ.to_sympy(x) for x in row] for row in dense]
    return Matrix(dense).rank()


@pytest.fixture(params=RINGS, ids=str)
def ring(request):
    return request.param


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture
def cp1():
    return cpn_ucomplex(1, ZZ_RING)


@pytest.fixture
def cp2():
    return cpn_ucomplex(2, ZZ_RING)


@pytest.fixture
def unit():
    return unit_ucomplex(ZMOD2)


@pytest.fixture
def free_circle():
    return free_circle_jcomplex(ZMOD2)


@pytest.fixture
def point():
    return point_laurent(ZMOD2)


@pytest.fixture(scope="function")
def toolkit():
    return FloerToolkit(engine_config={'window': WINDOW, 'cut_offset': 1, 'max_workers': 2})


@pytest.fixture(scope="function")
def async_toolkit():
    return AsyncFloerToolkit(engine_config={'window': WINDOW, 'cut_offset': 1, 'max_workers': 2})
