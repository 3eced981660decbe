##### Diagramas de Heegaard #####

from dataclasses import dataclass, field
from itertools import permutations, product
from math import prod
from types import MappingProxyType
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from sympy import Matrix
from sympy.combinatorics import Permutation

from .errors import InternalMismatch, ValidationError
from .linalg import SparseMatrix, smith_normal_form
from .log import Log
from .novikov import LaurentComplex, make_laurent
from .rings import ZZ_RING, ZMOD2, RingSpec

logger = Log(__name__)

Point = Tuple[str, int]


@dataclass(frozen=True)
class HeegaardDiagram:
    """Diagrama de género g con los puntos de α_i ∩ β_j (índices desde 1) y su signo.

    Attributes:
        genus (int): Género g ≥ 1.
        points (Mapping): {(i, j): ((id, ±1), ...)} de sólo lectura; los pares ausentes no se cortan.
    """
    genus: int
    points: Mapping[Tuple[int, int], Tuple[Point, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.genus < 1:
            raise ValidationError(None, f"El género debe ser ≥ 1; se recibió {self.genus}.")
        seen = set()
        normalized = {}
        for (i, j), pts in sorted(self.points.items()):
            if not (1 <= i <= self.genus and 1 <= j <= self.genus):
                raise ValidationError(None, f"El par ({i}, {j}) está fuera de 1..{self.genus}.")
            clean = []
            for pid, sign in pts:
                if sign not in (1, -1):
                    raise ValidationError(None, f"El punto '{pid}' tiene signo {sign}; use +1 o -1.")
                if pid in seen:
                    raise ValidationError(None, f"Identificador de punto duplicado '{pid}'.")
                seen.add(pid)
                clean.append((pid, sign))
            if clean:
                normalized[(i, j)] = tuple(sorted(clean))
        object.__setattr__(self, 'points', MappingProxyType(normalized))

    def __hash__(self) -> int:
        return hash((self.genus, tuple(self.points.items())))

    def pair(self, i: int, j: int) -> Tuple[Point, ...]:
        return self.points.get((i, j), ())

    @property
    def point_count(self) -> int:
        return sum(len(pts) for pts in self.points.values())


@dataclass(frozen=True)
class HeegaardGenerator:
    """Emparejamiento σ con un punto de α_i ∩ β_σ(i) para cada i."""
    permutation: Tuple[int, ...]
    points: Tuple[Point, ...]

    @property
    def label(self) -> str:
        return "_".join(pid for pid, _ in self.points)

    @property
    def sign(self) -> int:
        """sign(σ)·∏ signos de los puntos."""
        perm_sign = Permutation([s - 1 for s in self.permutation]).signature()
        return perm_sign * prod(s for _, s in self.points)


def enumerate_generators(D: HeegaardDiagram) -> List[HeegaardGenerator]:
    """Todos los emparejamientos, en orden lexicográfico de σ y luego de los puntos."""
    out = []
    for sigma in permutations(range(1, D.genus + 1)):
        choices = [D.pair(i, sigma[i - 1]) for i in range(1, D.genus + 1)]
        if not all(choices):
            continue
        for pts in product(*choices):
            out.append(HeegaardGenerator(tuple(sigma), tuple(pts)))
    logger.debug(f"Enumerated {len(out)} generators for a genus {D.genus} diagram")
    return out


def count_matrix(D: HeegaardDiagram, signed: bool = True) -> np.ndarray:
    """Matriz g×g de #(α_i ∩ β_j), algebraica si ``signed``."""
    M = np.zeros((D.genus, D.genus), dtype=np.int64)
    for (i, j), pts in D.points.items():
        M[i - 1, j - 1] = sum(s for _, s in pts) if signed else len(pts)
    return M


def _determinant(M: np.ndarray) -> int:
    return int(Matrix(M.tolist()).det())


def signed_count(D: HeegaardDiagram) -> int:
    """#(T_α ∩ T_β) con signo, comparado con det de la matriz de conteo.

    Raises:
        InternalMismatch: Si la enumeración y el determinante difieren.
    """
    by_enumeration = sum(g.sign for g in enumerate_generators(D))
    by_det = _determinant(count_matrix(D, signed=True))
    if by_enumeration != by_det:
        logger.error(f"Signed count {by_enumeration} differs from determinant {by_det}")
        raise InternalMismatch(f"La enumeración da {by_enumeration} y el determinante {by_det}.")
    return by_enumeration


def permanent_count(D: HeegaardDiagram) -> int:
    """Permanente de la matriz sin signo, por fuerza bruta sobre permutaciones."""
    M = count_matrix(D, signed=False)
    g = D.genus
    return int(sum(prod(int(M[i, sigma[i]]) for i in range(g)) for sigma in permutations(range(g))))


@dataclass(frozen=True)
class FirstHomology:
    """H₁(Y; Z) como conúcleo de la matriz de conteo con signo."""
    invariant_factors: Tuple[int, ...]

    @property
    def b1(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def order(self) -> Optional[int]:
        """|H₁|, o None si b₁ > 0."""
        return prod(self.torsion) if self.b1 == 0 else None


def first_homology(D: HeegaardDiagram) -> FirstHomology:
    M = count_matrix(D, signed=True)
    snf = smith_normal_form(SparseMatrix.from_dense(M.tolist(), ZZ_RING), ZZ_RING, transforms=False)
    return FirstHomology(tuple(abs(int(d)) for d in snf.invariant_factors))


def formal_cf_module(D: HeegaardDiagram, degrees: Union[Mapping[str, int], Sequence[int]], deg_t: int = -2,
                     ring: RingSpec = ZMOD2) -> LaurentComplex:
    """Grupo de cadenas formal: una t-órbita por generador, diferencial nulo.

    Args:
        D (HeegaardDiagram): Diagrama.
        degrees (dict | list): Grado de cada generador, por etiqueta o en orden de enumeración.
        deg_t (int): Grado de t (par, ≤ 0).
        ring (RingSpec): Anillo base.

    Raises:
        ValidationError: Si falta el grado de algún generador.
    """
    gens = enumerate_generators(D)
    if isinstance(degrees, Mapping):
        missing = [g.label for g in gens if g.label not in degrees]
        if missing:
            raise ValidationError(None, f"Faltan grados para los generadores {missing}.")
        assigned = [(g.label, int(degrees[g.label])) for g in gens]
    else:
        degrees = list(degrees)
        if len(degrees) != len(gens):
            raise ValidationError(None, f"Se esperaban {len(gens)} grados y se recibieron {len(degrees)}.")
        assigned = [(g.label, int(d)) for g, d in zip(gens, degrees)]
    return make_laurent(ring, assigned, (), deg_t=deg_t)


@dataclass(frozen=True)
class DiagramReport:
    genus: int
    generators: int
    signed: int
    determinant: int
    permanent: int
    homology: FirstHomology

    @property
    def passed(self) -> bool:
        return self.signed == self.determinant and self.generators == self.permanent

    def to_frame(self) -> pd.DataFrame:
        h = self.homology
        return pd.DataFrame([{
            'genus': self.genus, 'generators': self.generators, 'signed_count': self.signed,
            'determinant': self.determinant, 'permanent': self.permanent, 'b1': h.b1,
            'torsion': ",".join(str(d) for d in h.torsion), 'order_H1': h.order,
        }])


def analyze_diagram(D: HeegaardDiagram) -> DiagramReport:
    """Conteos, determinante, permanente y H₁ de un diagrama."""
    generators = len(enumerate_generators(D))
    report = DiagramReport(D.genus, generators, signed_count(D), _determinant(count_matrix(D, True)),
                           permanent_count(D), first_homology(D))
    logger.info(f"Diagram of genus {D.genus}: {generators} generators, signed count {report.signed}")
    return report


##### Diagramas de Referencia #####

def lens_space_diagram(p: int) -> HeegaardDiagram:
    """L(p,1) de género 1: α ∩ β consta de p puntos positivos."""
    return HeegaardDiagram(1, {(1, 1): tuple((f"p{k}", 1) for k in range(1, p + 1))})


def s1xs2_diagram(pairs: int = 0) -> HeegaardDiagram:
    """S¹×S² de género 1: α ∩ β vacío o formado por pares de puntos de signo opuesto."""
    pts = []
    for k in range(1, pairs + 1):
        pts += [(f"a{k}", 1), (f"b{k}", -1)]
    return HeegaardDiagram(1, {(1, 1): tuple(pts)} if pts else {})


def sphere_diagram() -> HeegaardDiagram:
    return HeegaardDiagram(1, {(1, 1): (("x", 1),)})
