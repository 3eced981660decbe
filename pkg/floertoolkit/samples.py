##### Generadores Aleatorios Deterministas y Modelos de Referencia #####

import random
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .complexes import (ChainMap, Generator, GradedComplex, _assemble, chain_map_from_matrix,
                        cone_sequence, make_chain_map)
from .connect_sum import ProductUComplex, product_ucomplex
from .equivariant import JComplex, UComplex, make_jcomplex, make_ucomplex, s_bundle
from .heegaard import HeegaardDiagram
from .linalg import SparseMatrix
from .log import Log
from .novikov import LaurentComplex, make_laurent
from .rings import ZMOD2, BaseRing, RingSpec

logger = Log(__name__)


@dataclass
class _Elementary:
    """Suma de piezas elementales: singletes (ciclos no triviales) y pares a → λ·b."""
    ring: RingSpec
    gens: List[Generator] = field(default_factory=list)
    singletons: Dict[int, List[str]] = field(default_factory=dict)
    pairs: Dict[int, List[Tuple[str, str, object]]] = field(default_factory=dict)
    diff: Dict[Tuple[str, str], object] = field(default_factory=dict)

    def cycles(self, n: int) -> List[str]:
        """Ciclos de la base en grado n (singletes y fondos de pares)."""
        return self.singletons.get(n, []) + [b for _, b, _ in self.pairs.get(n + 1, [])]

    def complex(self) -> GradedComplex:
        return _assemble(self.ring, self.gens, self.diff)


def _coefficient(rng: random.Random, ring: RingSpec, nonzero: bool = True):
    K = ring.arithmetic
    if ring.base == BaseRing.ZMOD2:
        return K.one
    value = rng.choice([-2, -1, 1, 2, 3]) if nonzero else rng.randint(-2, 2)
    if ring.base == BaseRing.Q and rng.random() < 0.3:
        return K.coerce(f"{value}/{rng.choice([2, 3])}")
    return K.from_int(value)


def _torsion_coefficient(rng: random.Random, ring: RingSpec):
    K = ring.arithmetic
    if ring.base == BaseRing.Z:
        return K.from_int(rng.choice([1, 1, 2, 3]))
    return _coefficient(rng, ring)


def _elementary(rng: random.Random, ring: RingSpec, max_gens: int, degrees: Tuple[int, int],
                prefix: str = "") -> _Elementary:
    E = _Elementary(ring)
    lo, hi = degrees
    budget = rng.randint(1, max_gens)
    count = 0
    while count < budget:
        n = rng.randint(lo, hi)
        if budget - count >= 2 and n > lo and rng.random() < 0.5:
            a, b = f"{prefix}a{count}", f"{prefix}b{count}"
            lam = _torsion_coefficient(rng, ring)
            E.gens += [Generator(a, n), Generator(b, n - 1)]
            E.pairs.setdefault(n, []).append((a, b, lam))
            E.diff[(a, b)] = lam
            count += 2
        else:
            s = f"{prefix}s{count}"
            E.gens.append(Generator(s, n))
            E.singletons.setdefault(n, []).append(s)
            count += 1
    return E


def _random_morphism(rng: random.Random, src: _Elementary, tgt: _Elementary, degree: int,
                     density: float = 0.4) -> Dict[Tuple[str, str], object]:
    """Mapa de cadenas src → tgt de grado fijo: ciclos a ciclos, pares a pares del mismo λ, más ∂h + h∂."""
    ring = src.ring
    K = ring.arithmetic
    entries: Dict[Tuple[str, str], object] = {}

    def add(key, value):
        entries[key] = K.add(entries[key], value) if key in entries else value

    for n, ids in src.singletons.items():
        for s in ids:
            for y in tgt.cycles(n + degree):
                if rng.random() < density:
                    add((s, y), _coefficient(rng, ring))
    for n, pieces in src.pairs.items():
        for a, b, lam in pieces:
            matches = [(a2, b2) for a2, b2, lam2 in tgt.pairs.get(n + degree, []) if lam2 == lam]
            if matches and rng.random() < density:
                a2, b2 = rng.choice(matches)
                c = _coefficient(rng, ring)
                add((a, a2), c)
                add((b, b2), c)
    # ∂h + h∂ con h de grado degree + 1
    h: Dict[str, List[Tuple[str, object]]] = {}
    by_degree: Dict[int, List[str]] = {}
    for g in tgt.gens:
        by_degree.setdefault(g.degree, []).append(g.id)
    for g in src.gens:
        h[g.id] = [(y, _coefficient(rng, ring)) for y in by_degree.get(g.degree + degree + 1, [])
                   if rng.random() < density / 2]
    tgt_diff: Dict[str, List[Tuple[str, object]]] = {}
    for (x, y), c in tgt.diff.items():
        tgt_diff.setdefault(x, []).append((y, c))
    for x, images in h.items():
        for y, c in images:
            for z, d in tgt_diff.get(y, []):
                add((x, z), K.mul(d, c))
    for (x, y), c in src.diff.items():
        for z, d in h.get(y, []):
            add((x, z), K.mul(d, c))
    return entries


def _transvections(rng: random.Random, C: GradedComplex, count: int) -> Tuple[SparseMatrix, SparseMatrix]:
    """P y P⁻¹ como productos de transvecciones I + c·E_ij entre generadores del mismo grado."""
    ring = C.ring
    K = ring.arithmetic
    P = SparseMatrix.identity(C.size, ring)
    P_inv = SparseMatrix.identity(C.size, ring)
    for _ in range(count):
        n = rng.choice(C.degrees) if C.degrees else None
        if n is None or C.dim(n) < 2:
            continue
        a, b = C.span(n)
        i, j = rng.sample(range(a, b), 2)
        c = K.one if ring.base == BaseRing.ZMOD2 else K.from_int(rng.choice([-1, 1]))
        identity = SparseMatrix.identity(C.size, ring).entries
        T = SparseMatrix(C.size, C.size, {**identity, (i, j): c}, ring)
        T_inv = SparseMatrix(C.size, C.size, {**identity, (i, j): K.neg(c)}, ring)
        P = T @ P
        P_inv = P_inv @ T_inv
    return P, P_inv


def _conjugate(C: GradedComplex, P: SparseMatrix, P_inv: SparseMatrix) -> GradedComplex:
    return GradedComplex(C.ring, C.gens, P @ C.diff @ P_inv)


def random_complex(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 12,
                   degrees: Tuple[int, int] = (-3, 3)) -> GradedComplex:
    """Complejo aleatorio: piezas elementales conjugadas por un cambio de base aleatorio."""
    rng = random.Random(seed)
    C = _elementary(rng, ring, max_gens, degrees).complex()
    P, P_inv = _transvections(rng, C, 2 * C.size)
    out = _conjugate(C, P, P_inv)
    out.validate()
    return out


def random_ucomplex(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 20,
                    degrees: Tuple[int, int] = (-4, 4)) -> UComplex:
    """UComplex aleatorio con a lo sumo ``max_gens`` generadores.

    U lleva ciclos a ciclos y pares a pares, más un término ∂h + h∂; después se conjuga
    todo por el mismo cambio de base.
    """
    rng = random.Random(seed)
    E = _elementary(rng, ring, max_gens, degrees)
    base = E.complex()
    U = make_chain_map(base, base, -2, _random_morphism(rng, E, E, -2))
    P, P_inv = _transvections(rng, base, 2 * base.size)
    conj = _conjugate(base, P, P_inv)
    U_conj = chain_map_from_matrix(conj, conj, -2, P @ U.matrix @ P_inv)
    logger.debug(f"Random UComplex (seed {seed}) with {conj.size} generators")
    return UComplex(conj, U_conj)


def random_jcomplex(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 10) -> JComplex:
    return s_bundle(random_ucomplex(seed, ring, max_gens))


def random_chain_map(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 10, degree: int = 0) -> ChainMap:
    """Mapa de cadenas aleatorio entre dos complejos aleatorios conjugados."""
    rng = random.Random(seed)
    A = _elementary(rng, ring, max_gens, (-3, 3), prefix="x")
    B = _elementary(rng, ring, max_gens, (-3, 3), prefix="y")
    CA, CB = A.complex(), B.complex()
    f = make_chain_map(CA, CB, degree, _random_morphism(rng, A, B, degree))
    PA, PA_inv = _transvections(rng, CA, CA.size)
    PB, PB_inv = _transvections(rng, CB, CB.size)
    return chain_map_from_matrix(_conjugate(CA, PA, PA_inv), _conjugate(CB, PB, PB_inv), degree,
                                 PB @ f.matrix @ PA_inv)


def random_ses(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 10) -> Tuple[ChainMap, ChainMap]:
    """Sucesión corta exacta B → Cone(f) → A[1] a partir de un mapa de cadenas aleatorio."""
    _, i, p = cone_sequence(random_chain_map(seed, ring, max_gens))
    return i, p


def random_quasi_isomorphism(seed: int, ring: RingSpec = ZMOD2,
                             max_gens: int = 10) -> Tuple[UComplex, UComplex, ChainMap]:
    """(C₁, C₂, F) con C₂ = C₁ ⊕ acíclico conjugado y F la inclusión que entrelaza los U."""
    rng = random.Random(seed)
    C1 = random_ucomplex(rng.randrange(2 ** 31), ring, max_gens)
    K = ring.arithmetic
    gens = list(C1.base.gens)
    diff = {(s, t): c for s, t, c in C1.base.entries()}
    for k in range(rng.randint(1, 3)):
        n = rng.randint(-3, 3)
        gens += [Generator(f"za{k}", n), Generator(f"zb{k}", n - 1)]
        diff[(f"za{k}", f"zb{k}")] = K.one
    C2 = _assemble(ring, gens, diff)
    U2 = make_chain_map(C2, C2, -2, {(s, t): c for s, t, c in C1.U.entries()})
    F = make_chain_map(C1.base, C2, 0, {(x, x): K.one for x in C1.base.ids})
    P, P_inv = _transvections(rng, C2, 2 * C2.size)
    conj = _conjugate(C2, P, P_inv)
    U_conj = chain_map_from_matrix(conj, conj, -2, P @ U2.matrix @ P_inv)
    F_conj = chain_map_from_matrix(C1.base, conj, 0, P @ F.matrix)
    return C1, UComplex(conj, U_conj), F_conj


def random_product(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 5) -> ProductUComplex:
    rng = random.Random(seed)
    C1 = random_ucomplex(rng.randrange(2 ** 31), ring, max_gens, (-2, 2))
    C2 = random_ucomplex(rng.randrange(2 ** 31), ring, max_gens, (-2, 2))
    return product_ucomplex(C1, C2)


def random_laurent(seed: int, ring: RingSpec = ZMOD2, max_gens: int = 8, deg_t: int = -2,
                   degrees: Tuple[int, int] = (-3, 3)) -> LaurentComplex:
    """Complejo de Laurent semi-positivo aleatorio.

    Con deg_t < 0 las piezas son pares a → t^j·b (j ≥ 0); con deg_t = 0 los pares usan
    polinomios con exponentes no negativos, lo que produce t-torsión. El cambio de base usa
    transvecciones c·t^j homogéneas con j ≥ 0, que preservan la semi-positividad.
    """
    rng = random.Random(seed)
    LK = ring.laurent_spec.arithmetic
    K = ring.arithmetic
    p = -deg_t
    gens: List[Tuple[str, int]] = []
    entries: Dict[Tuple[str, str], object] = {}
    budget = rng.randint(1, max_gens)
    count = 0
    lo, hi = degrees
    while count < budget:
        n = rng.randint(lo, hi)
        if budget - count >= 2 and rng.random() < 0.5:
            a, b = f"a{count}", f"b{count}"
            if p:
                j = rng.randint(0, 2)
                gens += [(a, n + 1), (b, n + j * p)]
                entries[(a, b)] = LK.monomial(_coefficient(rng, ring), j)
            else:
                gens += [(a, n + 1), (b, n)]
                terms = {k: _coefficient(rng, ring) for k in range(rng.randint(0, 2) + 1)}
                entries[(a, b)] = LK.make(terms)
            count += 2
        else:
            gens.append((f"s{count}", n))
            count += 1
    L = make_laurent(ring, gens, entries, deg_t=deg_t)
    # transvecciones homogéneas e_i + c·t^j·e_k
    size = L.size
    P = SparseMatrix.identity(size, L.laurent_ring)
    P_inv = SparseMatrix.identity(size, L.laurent_ring)
    for _ in range(size):
        i, k = rng.randrange(size), rng.randrange(size)
        if i == k:
            continue
        gap = L.gens[k].degree - L.gens[i].degree
        if p == 0:
            if gap != 0:
                continue
            j = rng.randint(0, 1)
        else:
            if gap % p or gap // p < 0:
                continue
            j = gap // p
        c = K.one if ring.base == BaseRing.ZMOD2 else K.from_int(rng.choice([-1, 1]))
        identity = SparseMatrix.identity(size, L.laurent_ring).entries
        T = SparseMatrix(size, size, {**identity, (k, i): LK.monomial(c, j)}, L.laurent_ring)
        T_inv = SparseMatrix(size, size, {**identity, (k, i): LK.monomial(K.neg(c), j)}, L.laurent_ring)
        P = T @ P
        P_inv = P_inv @ T_inv
    return L.change_of_basis(P, P_inv)


def random_diagram(seed: int, genus: int = 4, max_points: int = 2) -> HeegaardDiagram:
    rng = random.Random(seed)
    points = {}
    counter = 0
    for i in range(1, genus + 1):
        for j in range(1, genus + 1):
            pts = []
            for _ in range(rng.randint(0, max_points)):
                pts.append((f"q{counter}", rng.choice([1, -1])))
                counter += 1
            if pts:
                points[(i, j)] = tuple(pts)
    return HeegaardDiagram(genus, points)


##### Modelos de Referencia #####

def unit_ucomplex(ring: RingSpec = ZMOD2) -> UComplex:
    """Un generador en grado 0 con U = 0 (unidad del producto tensorial)."""
    base = _assemble(ring, [Generator("1", 0)], {})
    return make_ucomplex(base)


def cpn_ucomplex(n: int, ring: RingSpec = ZMOD2) -> UComplex:
    """Complejo celular de CPⁿ (diferencial nulo) con U = cap con la clase del hiperplano."""
    K = ring.arithmetic
    base = _assemble(ring, [Generator(f"e{2 * k}", 2 * k) for k in range(n + 1)], {})
    return make_ucomplex(base, {(f"e{2 * k}", f"e{2 * k - 2}"): K.one for k in range(1, n + 1)})


def free_circle_jcomplex(ring: RingSpec = ZMOD2) -> JComplex:
    """Cadenas de S¹ con la acción libre por rotación: J(pt) = [S¹]."""
    K = ring.arithmetic
    base = _assemble(ring, [Generator("pt", 0), Generator("S1", 1)], {})
    return make_jcomplex(base, {("pt", "S1"): K.one})


def point_laurent(ring: RingSpec = ZMOD2, deg_t: int = -2) -> LaurentComplex:
    """Modelo de un generador sin diferencial (una sola órbita de t en grado 0)."""
    return make_laurent(ring, [("x", 0)], (), deg_t=deg_t)
