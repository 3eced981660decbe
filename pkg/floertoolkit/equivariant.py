##### Fibrado S¹ Algebraico y Sabores de Jones #####

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from .complexes import (ChainMap, Generator, GradedComplex, GradedMap, HomologyGroup,
                        HomologyReport, LESReport, MapSign, _assemble, _require_chain_map, compose,
                        cone_sequence, homology, homotopy_defect, induced_map, is_homology_isomorphism,
                        les_of_ses, make_chain_map, matrices_agree, shift)
from .errors import DegreeViolation, NotADifferential, NotIntertwining, UnsupportedRing, WindowTooSmall
from .linalg import SparseMatrix, smith_normal_form
from .log import Log
from .rings import RingSpec

logger = Log(__name__)


##### Tipos #####

@dataclass(frozen=True)
class DegreeWindow:
    """Ventana de grados [lo, hi]; la homología sólo se informa en el rango seguro [lo+2, hi-2]."""
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Ventana inválida [{self.lo}, {self.hi}]: lo debe ser ≤ hi.")

    @classmethod
    def of(cls, value) -> 'DegreeWindow':
        if isinstance(value, DegreeWindow):
            return value
        lo, hi = value
        return cls(int(lo), int(hi))

    @property
    def safe_range(self) -> Tuple[int, int]:
        return self.lo + 2, self.hi - 2

    def safe_degrees(self) -> List[int]:
        lo, hi = self.safe_range
        return list(range(lo, hi + 1))

    def contains(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def require_safe(self) -> None:
        lo, hi = self.safe_range
        if lo > hi:
            logger.warning(f"Window [{self.lo}, {self.hi}] has an empty safe range")
            raise WindowTooSmall((self.lo, self.hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class Flavor(str, Enum):
    """Sabores V^•: R[u] (minus), R[u,u^-1] (infty), R[u,u^-1]/uR[u] (plus) y R (hat)."""
    MINUS = "minus"
    INFTY = "infty"
    PLUS = "plus"
    HAT = "hat"

    @property
    def exponents(self) -> Tuple[Optional[int], Optional[int]]:
        """Rango (kmin, kmax) de exponentes de u; None es no acotado."""
        return {
            Flavor.MINUS: (0, None),
            Flavor.INFTY: (None, None),
            Flavor.PLUS: (None, 0),
            Flavor.HAT: (0, 0),
        }[self]


MODULE_FLAVORS = (Flavor.MINUS, Flavor.INFTY, Flavor.PLUS)


@dataclass(frozen=True, eq=False)
class UComplex:
    """Complejo con un mapa de cadenas U de grado −2 que conmuta con ∂."""
    base: GradedComplex
    U: ChainMap

    @property
    def ring(self) -> RingSpec:
        return self.base.ring


@dataclass(frozen=True, eq=False)
class JComplex:
    """Complejo con un mapa J de grado +1 tal que ∂J + J∂ = 0 y J² = 0."""
    base: GradedComplex
    J: ChainMap

    @property
    def ring(self) -> RingSpec:
        return self.base.ring


def make_ucomplex(base: GradedComplex, u_entries=()) -> UComplex:
    """Valida un UComplex.

    Raises:
        DegreeViolation: Si U no tiene grado −2.
        NotChainMap: Si ∂U ≠ U∂.
    """
    U = make_chain_map(base, base, -2, u_entries, MapSign.COMMUTE)
    return UComplex(base, U)


def make_jcomplex(base: GradedComplex, j_entries=()) -> JComplex:
    """Valida un JComplex.

    Raises:
        NotChainMap: Si ∂J + J∂ ≠ 0.
        NotADifferential: Si J² ≠ 0.
    """
    J = make_chain_map(base, base, 1, j_entries, MapSign.ANTICOMMUTE)
    square = J.matrix @ J.matrix
    if not square.is_zero:
        witness = min(j for _, j in square.entries)
        raise NotADifferential(base.gens[witness].id, f"J² no se anula sobre '{base.gens[witness].id}'.")
    return JComplex(base, J)


def relabel_ucomplex(C: UComplex, rename) -> UComplex:
    base = C.base.relabel(rename)
    return UComplex(base, make_chain_map(base, base, -2, {(rename(s), rename(t)): c for s, t, c in C.U.entries()},
                                         check=False))


##### Fibrado S_U #####

def s_bundle(C: UComplex) -> JComplex:
    """Fibrado S¹ algebraico S_U(C) = (C⊗R[y], ∂⊗σ + U⊗y) con J = multiplicación por y.

    Generadores ``x@1`` (grado |x|) y ``x@y`` (grado |x|+1):
    ∂(x@1) = ∂x@1 + Ux@y, ∂(x@y) = −∂x@y, J(x@1) = x@y, J(x@y) = 0.

    Example:
        >>> homology(s_bundle(cp1).base).ranks()
        {0: 1, 3: 1}
    """
    base = C.base
    K = C.ring.arithmetic
    gens = [Generator(f"{g.id}@1", g.degree) for g in base.gens]
    gens += [Generator(f"{g.id}@y", g.degree + 1) for g in base.gens]
    entries: Dict[Tuple[str, str], object] = {}
    for s, t, c in base.entries():
        entries[(f"{s}@1", f"{t}@1")] = c
        entries[(f"{s}@y", f"{t}@y")] = K.neg(c)
    for s, t, c in C.U.entries():
        entries[(f"{s}@1", f"{t}@y")] = c
    S = _assemble(C.ring, gens, entries)
    J = make_chain_map(S, S, 1, {(f"{g.id}@1", f"{g.id}@y"): K.one for g in base.gens}, MapSign.ANTICOMMUTE)
    logger.debug(f"S_U bundle with {S.size} generators")
    return JComplex(S, J)


@dataclass(frozen=True, eq=False)
class ConeComparison:
    """Comparación del conector de 0 → C·y → S_U(C) → C → 0 con U_*."""
    les: LESReport
    agreement: Dict[int, bool]
    sign: Optional[int]

    @property
    def passed(self) -> bool:
        return self.les.is_exact and self.sign is not None

    def to_frame(self) -> pd.DataFrame:
        rows = [{'degree': n, 'rank_H': self.les.homology_c.rank(n), 'connecting_equals_U': ok}
                for n, ok in sorted(self.agreement.items())]
        return pd.DataFrame(rows, columns=['degree', 'rank_H', 'connecting_equals_U'])


def cone_compare(C: UComplex, degrees: Optional[Iterable[int]] = None) -> ConeComparison:
    """Verifica que el homomorfismo de conexión de la sucesión del cono coincide con ±U_*.

    Returns:
        ConeComparison: LES, acuerdo por grado y signo global (+1, −1 o None si falla).
    """
    base = C.base
    K = C.ring.arithmetic
    S = s_bundle(C).base
    fiber = shift(base, 1).relabel(lambda x: f"{x}@y")
    i = make_chain_map(fiber, S, 0, {(f"{g.id}@y", f"{g.id}@y"): K.one for g in base.gens})
    p = make_chain_map(S, base, 0, {(f"{g.id}@1", g.id): K.one for g in base.gens})
    if degrees is None:
        degrees = range(min(base.degrees, default=0) - 1, max(base.degrees, default=0) + 3)
    degrees = list(degrees)
    les = les_of_ses(i, p, degrees)
    phi = make_chain_map(base, fiber, 1, {(g.id, f"{g.id}@y"): K.one for g in base.gens}, MapSign.ANTICOMMUTE)
    phi_u = compose(phi, C.U)
    plus, minus = {}, {}
    for n in degrees:
        expected = induced_map(phi_u, n)
        target = fiber.homology_basis(n - 1)
        plus[n] = matrices_agree(les.delta[n], expected, target)
        minus[n] = matrices_agree(les.delta[n], -expected, target)
    sign = 1 if all(plus.values()) else (-1 if all(minus.values()) else None)
    agreement = plus if sign != -1 else minus
    if sign is None:
        logger.error("Connecting homomorphism differs from the induced U map")
    else:
        logger.info(f"Cone comparison passed with sign {sign:+d}")
    return ConeComparison(les, agreement, sign)


def lift_map_su(f: ChainMap, source: UComplex, target: UComplex, h: Optional[GradedMap] = None) -> ChainMap:
    """Levanta f: C₁ → C₂ a S_U(C₁) → S_U(C₂).

    Con f U₁ − U₂ f = ∂h + h∂: x@1 ↦ f(x)@1 − h(x)@y, x@y ↦ f(x)@y. El levantamiento siempre
    preserva J.

    Raises:
        NotIntertwining: Si h (o cero) no realiza la relación de entrelazamiento.
    """
    if f.sign != MapSign.COMMUTE:
        raise NotIntertwining(None, "lift_map_su requiere un mapa de cadenas conmutante.")
    _require_chain_map(f)
    h = h or GradedMap(source.base, target.base, f.degree - 1,
                       SparseMatrix.zeros(target.base.size, source.base.size, f.ring))
    intertwine = compose(f, source.U).matrix - compose(target.U, f).matrix
    defect = homotopy_defect(GradedMap(source.base, target.base, f.degree - 2, intertwine),
                             GradedMap(source.base, target.base, f.degree - 2,
                                       SparseMatrix.zeros(target.base.size, source.base.size, f.ring)), h)
    if not defect.is_zero:
        witness = source.base.gens[min(j for _, j in defect.entries)].id
        logger.error(f"Map does not intertwine the U maps; witness '{witness}'")
        raise NotIntertwining(witness)
    K = f.ring.arithmetic
    S1, S2 = s_bundle(source).base, s_bundle(target).base
    entries: Dict[Tuple[str, str], object] = {}
    for s, t, c in f.entries():
        entries[(f"{s}@1", f"{t}@1")] = c
        entries[(f"{s}@y", f"{t}@y")] = c
    for s, t, c in h.entries():
        entries[(f"{s}@1", f"{t}@y")] = K.neg(c)
    return make_chain_map(S1, S2, f.degree, entries, MapSign.COMMUTE)


##### Sabores de Jones #####

def _ceil_half(a: int) -> int:
    return -((-a) // 2)


def _exponent_range(degree: int, kmin, kmax, window: DegreeWindow) -> range:
    lo = _ceil_half(degree - window.hi)
    hi = (degree - window.lo) // 2
    if kmin is not None:
        lo = max(lo, kmin)
    if kmax is not None:
        hi = min(hi, kmax)
    return range(lo, hi + 1)


def _materialize(S: JComplex, kmin, kmax, window: DegreeWindow) -> GradedComplex:
    """Materializa S⊗u^k en la ventana con D(x u^k) = ∂x u^k + Jx u^{k+1} (término fuera de rango omitido)."""
    base = S.base
    present = {}
    gens = []
    for g in base.gens:
        ks = _exponent_range(g.degree, kmin, kmax, window)
        present[g.id] = ks
        gens.extend(Generator(f"{g.id}*u^{k}", g.degree - 2 * k) for k in ks)
    entries: Dict[Tuple[str, str], object] = {}
    for s, t, c in base.entries():
        for k in present[s]:
            if k in present[t]:
                entries[(f"{s}*u^{k}", f"{t}*u^{k}")] = c
    for s, t, c in S.J.entries():
        for k in present[s]:
            if k + 1 in present[t]:
                entries[(f"{s}*u^{k}", f"{t}*u^{k + 1}")] = c
    return _assemble(S.ring, gens, entries)


def jones_flavor(S: JComplex, flavor, window) -> GradedComplex:
    """E^•(S) = (S⊗V^•, ∂⊗1 + J⊗u) materializado en la ventana (deg u = −2).

    Args:
        S (JComplex): Complejo con J.
        flavor (Flavor | str): 'minus', 'infty', 'plus' o 'hat'.
        window (DegreeWindow | tuple): Ventana de grados.

    Raises:
        WindowTooSmall: Si el rango seguro es vacío.
    """
    flavor = Flavor(flavor)
    window = DegreeWindow.of(window)
    window.require_safe()
    kmin, kmax = flavor.exponents
    E = _materialize(S, kmin, kmax, window)
    logger.debug(f"Jones flavor {flavor.value} materialized with {E.size} generators in {window}")
    return E


def flavor_homology(S: JComplex, flavor, window) -> HomologyReport:
    """Homología de E^•(S) restringida al rango seguro."""
    window = DegreeWindow.of(window)
    return homology(jones_flavor(S, flavor, window), window.safe_degrees())


def fundamental_complexes(S: JComplex, window) -> Tuple[GradedComplex, GradedComplex, GradedComplex]:
    """(uE⁻(S), E^∞(S), E⁺(S)) materializados en la ventana."""
    window = DegreeWindow.of(window)
    window.require_safe()
    return _materialize(S, 1, None, window), _materialize(S, None, None, window), _materialize(S, None, 0, window)


def fundamental_ses(S: JComplex, window) -> LESReport:
    """Sucesión 0 → uE⁻(S) → E^∞(S) → E⁺(S) → 0 y su sucesión larga en el rango seguro.

    Raises:
        WindowTooSmall: Si el rango seguro es vacío.
        NotExact: Si la sucesión corta falla (nunca se acepta en silencio).
    """
    window = DegreeWindow.of(window)
    A, B, C = fundamental_complexes(S, window)
    K = S.ring.arithmetic
    i = make_chain_map(A, B, 0, {(g.id, g.id): K.one for g in A.gens})
    p = make_chain_map(B, C, 0, {(g.id, g.id): K.one for g in C.gens})
    les = les_of_ses(i, p, window.safe_degrees())
    logger.info(f"Fundamental exact sequence in {window}: exact={les.is_exact}")
    return les


def jones_map(F: ChainMap, S1: JComplex, S2: JComplex, flavor, window) -> ChainMap:
    """E^•(F): x u^k ↦ F(x) u^k para un mapa F que preserva J."""
    flavor = Flavor(flavor)
    window = DegreeWindow.of(window)
    if not (compose(F, S1.J).matrix == compose(S2.J, F).matrix):
        raise NotIntertwining(None, "El mapa no preserva J.")
    kmin, kmax = flavor.exponents
    E1 = _materialize(S1, kmin, kmax, window)
    E2 = _materialize(S2, kmin, kmax, window)
    present = {g.id: _exponent_range(g.degree, kmin, kmax, window) for g in S2.base.gens}
    entries = {}
    for s, t, c in F.entries():
        deg = S1.base.generator(s).degree
        for k in _exponent_range(deg, kmin, kmax, window):
            if k in present[t]:
                entries[(f"{s}*u^{k}", f"{t}*u^{k}")] = c
    return make_chain_map(E1, E2, F.degree, entries, F.sign)


@dataclass(frozen=True)
class NaturalityReport:
    flavor: Flavor
    quasi_isomorphism: bool
    isomorphisms: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return not self.quasi_isomorphism or all(self.isomorphisms.values())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'degree': n, 'isomorphism': ok} for n, ok in sorted(self.isomorphisms.items())],
                            columns=['degree', 'isomorphism'])


def jones_naturality(F: ChainMap, S1: JComplex, S2: JComplex, flavor, window) -> NaturalityReport:
    """Comprueba que un cuasi-isomorfismo que preserva J induce isomorfismos en H(E^•)."""
    window = DegreeWindow.of(window)
    window.require_safe()
    quasi = all(is_homology_isomorphism(induced_map(F, n), S1.base.homology_basis(n),
                                        S2.base.homology_basis(n))
                for n in sorted(set(S1.base.degrees) | set(S2.base.degrees)))
    EF = jones_map(F, S1, S2, flavor, window)
    isos = {n: is_homology_isomorphism(induced_map(EF, n), EF.source.homology_basis(n),
                                       EF.target.homology_basis(n))
            for n in window.safe_degrees()}
    return NaturalityReport(Flavor(flavor), quasi, isos)


##### Módulos Graduados sobre R[U] #####

@dataclass(frozen=True)
class GradedUModule:
    """Presentación de un R[U]-módulo graduado (deg U = −2).

    Attributes:
        ring (RingSpec): Anillo base.
        gens (tuple): Pares (nombre, grado).
        relations (tuple): Cada relación es {índice de generador: {potencia de U: coeficiente}}.
    """
    ring: RingSpec
    gens: Tuple[Tuple[str, int], ...]
    relations: Tuple[Dict[int, Dict[int, object]], ...] = ()

    def relation_degree(self, r: int) -> Optional[int]:
        degrees = {self.gens[j][1] - 2 * m for j, terms in self.relations[r].items() for m in terms}
        return degrees.pop() if degrees else None


def make_umodule(ring, gens, relations=()) -> GradedUModule:
    """Construye una presentación validando la homogeneidad de cada relación.

    Args:
        ring (str | RingSpec): Anillo base.
        gens (Iterable): Pares (nombre, grado).
        relations (Iterable[dict]): {nombre: {potencia: coeficiente}} por relación.

    Raises:
        DegreeViolation: Si una relación no es homogénea.

    Example:
        >>> make_umodule('Q', [('g', 0)], [{'g': {3: 1}}])   # R[U]/U³
    """
    ring = RingSpec.parse(ring)
    if ring.laurent:
        raise UnsupportedRing("Los R[U]-módulos se definen sobre un anillo base.")
    K = ring.arithmetic
    gens = tuple((str(name), int(deg)) for name, deg in gens)
    index = {name: j for j, (name, _) in enumerate(gens)}
    rels = []
    for r, relation in enumerate(relations):
        terms = {}
        for name, powers in relation.items():
            j = index[name] if name in index else int(name)
            clean = {int(m): K.coerce(c) for m, c in powers.items() if not K.is_zero(K.coerce(c))}
            if clean:
                terms[j] = clean
        degrees = {gens[j][1] - 2 * m for j, powers in terms.items() for m in powers}
        if len(degrees) > 1:
            raise DegreeViolation(r, f"La relación {r} no es homogénea: grados {sorted(degrees)}.")
        rels.append(terms)
    return GradedUModule(ring, gens, tuple(rels))


@dataclass(frozen=True)
class LocalizedModule:
    """Módulo sobre R[U,U^-1]: por paridad de grado, rango libre y torsión sobre R."""
    ring: RingSpec
    parts: Dict[int, HomologyGroup]

    def group(self, n: int) -> HomologyGroup:
        return self.parts.get(n % 2, HomologyGroup())

    def rank(self, parity: int) -> int:
        return self.group(parity).rank

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.parts.values())

    def to_frame(self) -> pd.DataFrame:
        K = self.ring.arithmetic
        rows = [{'parity': p, 'rank': self.group(p).rank,
                 'torsion': ", ".join(K.format(d) for d in self.group(p).torsion)} for p in (0, 1)]
        return pd.DataFrame(rows, columns=['parity', 'rank', 'torsion'])


def localize(M: GradedUModule) -> LocalizedModule:
    """Invierte U en la presentación: los sumandos de U-torsión desaparecen.

    Cada generador se reescala por una potencia (unidad) de U hasta grado 0 o 1; las relaciones
    quedan con coeficientes en R separadas por paridad y se reducen con la forma de Smith.

    Raises:
        UnsupportedRing: Sobre anillos de Laurent.

    Example:
        >>> localize(make_umodule('Q', [('g', -2)])).rank(0)
        1
    """
    ring = M.ring
    if ring.laurent:
        raise UnsupportedRing("localize requiere un anillo base Zmod2, Z o Q.")
    K = ring.arithmetic
    parts = {}
    for parity in (0, 1):
        gens = [j for j, (_, deg) in enumerate(M.gens) if deg % 2 == parity]
        position = {j: a for a, j in enumerate(gens)}
        columns = []
        for r, relation in enumerate(M.relations):
            degree = M.relation_degree(r)
            if degree is None or degree % 2 != parity:
                continue
            col = [K.zero] * len(gens)
            for j, powers in relation.items():
                for _, c in powers.items():
                    col[position[j]] = K.add(col[position[j]], c)
            columns.append(col)
        if not gens:
            parts[parity] = HomologyGroup()
            continue
        if not columns:
            parts[parity] = HomologyGroup(len(gens), ())
            continue
        matrix = SparseMatrix.from_columns(columns, len(gens), ring)
        snf = smith_normal_form(matrix, ring, transforms=False)
        torsion = tuple(d for d in snf.invariant_factors if not K.is_zero(d) and not K.is_unit(d))
        parts[parity] = HomologyGroup(len(gens) - snf.rank, torsion)
    logger.info(f"Localized module: even rank {parts[0].rank}, odd rank {parts[1].rank}")
    return LocalizedModule(ring, parts)


def umap_on_homology(C: UComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, SparseMatrix]:
    """U_*: H_n → H_{n−2} por grado en las bases canónicas de homología.

    Raises:
        UnsupportedRing: Sobre anillos de Laurent.
    """
    degrees = C.base.degrees if degrees is None else degrees
    return {n: induced_map(C.U, n) for n in degrees}


def umodule_of_homology(C: UComplex) -> GradedUModule:
    """Presentación de H(C) como R[U]-módulo: torsión d·g y relaciones U·g − U_*(g)."""
    K = C.ring.arithmetic
    names: Dict[Tuple[int, int], str] = {}
    gens = []
    for n in C.base.degrees:
        for a in range(C.base.homology_basis(n).size):
            names[(n, a)] = f"h{n}.{a}"
            gens.append((names[(n, a)], n))
    relations = []
    for n in C.base.degrees:
        dh = C.base.homology_basis(n)
        for a, d in enumerate(dh.orders):
            if not K.is_zero(d):
                relations.append({names[(n, a)]: {0: d}})
        if not dh.size:
            continue
        U_star = induced_map(C.U, n)
        for a in range(dh.size):
            relation = {names[(n, a)]: {1: K.one}}
            for b, coef in enumerate(U_star.column(a)):
                if not K.is_zero(coef):
                    relation[names[(n - 2, b)]] = {0: K.neg(coef)}
            relations.append(relation)
    return make_umodule(C.ring, gens, relations)


##### Comprobaciones Estructurales #####

@dataclass(frozen=True)
class RecoveryReport:
    """Comparación de H(E^•(S_U C)) con H(C) por grado en el rango seguro."""
    rows: Tuple[dict, ...]

    @property
    def passed(self) -> bool:
        return all(row['match'] for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=['degree', 'flavor', 'flavored', 'expected', 'match'])


def flavor_recovery(C: UComplex, window) -> RecoveryReport:
    """H_n(E⁺ S_U C) ≅ H_n(C), H_n(E⁻ S_U C) ≅ H_{n−1}(C), H_n(E^∞ S_U C) ≅ localize(H(C)) por paridad."""
    window = DegreeWindow.of(window)
    window.require_safe()
    S = s_bundle(C)
    H = homology(C.base, range(window.lo - 1, window.hi + 1))
    localized = localize(umodule_of_homology(C))
    expected = {
        Flavor.PLUS: lambda n: H.group(n),
        Flavor.MINUS: lambda n: H.group(n - 1),
        Flavor.INFTY: lambda n: localized.group(n),
    }
    rows = []
    for flavor in MODULE_FLAVORS:
        report = flavor_homology(S, flavor, window)
        for n in window.safe_degrees():
            got, want = report.group(n), expected[flavor](n)
            rows.append({'degree': n, 'flavor': flavor.value, 'flavored': got.rank, 'expected': want.rank,
                         'match': got == want})
    return RecoveryReport(tuple(rows))


@dataclass(frozen=True, eq=False)
class TriangleReport:
    """Triángulo H(S_U C₁) → H(S_U C₂) → H(S_U Cone j) → … inducido por j."""
    les: LESReport
    cone_acyclic: bool
    isomorphisms: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return self.les.is_exact and (not self.cone_acyclic or all(self.isomorphisms.values()))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'degree': n, 'S_U(j)_iso': ok} for n, ok in sorted(self.isomorphisms.items())],
                            columns=['degree', 'S_U(j)_iso'])


def cone_ucomplex(j: ChainMap, source: UComplex, target: UComplex, h: Optional[GradedMap] = None):
    """Cone(j) como UComplex con U(t:b) = t:U₂b y U(s:a) = s:U₁a − t:h(a).

    Returns:
        tuple: (UComplex del cono, sub-UComplex C₂, cociente UComplex C₁ desplazado, i, p).
    """
    cone, i, p = cone_sequence(j)
    K = j.ring.arithmetic
    entries: Dict[Tuple[str, str], object] = {}
    for s, t, c in target.U.entries():
        entries[(f"t:{s}", f"t:{t}")] = c
    for s, t, c in source.U.entries():
        entries[(f"s:{s}", f"s:{t}")] = c
    if h is not None:
        for s, t, c in h.entries():
            entries[(f"s:{s}", f"t:{t}")] = K.neg(c)
    coneU = make_ucomplex(cone, entries)
    sub = UComplex(i.source, make_chain_map(i.source, i.source, -2,
                                            {(f"t:{s}", f"t:{t}"): c for s, t, c in target.U.entries()}))
    quotient = UComplex(p.target, make_chain_map(p.target, p.target, -2,
                                                 {(f"s:{s}", f"s:{t}"): c for s, t, c in source.U.entries()}))
    return coneU, sub, quotient, i, p


def su_triangle(j: ChainMap, source: UComplex, target: UComplex, h: Optional[GradedMap] = None,
                degrees: Optional[Iterable[int]] = None) -> TriangleReport:
    """Sucesión exacta de S_U aplicada al triángulo del cono de j.

    Comprueba la exactitud de la sucesión larga y que S_U(j)_* es isomorfismo siempre que
    H(S_U(Cone j)) = 0.
    """
    coneU, sub, quotient, i, p = cone_ucomplex(j, source, target, h)
    Si = lift_map_su(i, sub, coneU)
    Sp = lift_map_su(p, coneU, quotient)
    all_degrees = set(Si.target.degrees)
    if degrees is None:
        degrees = range(min(all_degrees, default=0) - 1, max(all_degrees, default=0) + 2)
    degrees = list(degrees)
    les = les_of_ses(Si, Sp, degrees)
    cone_acyclic = homology(Si.target, degrees).is_acyclic()
    Sj = lift_map_su(j, source, target, h)
    isos = {n: is_homology_isomorphism(induced_map(Sj, n), Sj.source.homology_basis(n),
                                       Sj.target.homology_basis(n))
            for n in degrees}
    return TriangleReport(les, cone_acyclic, isos)
