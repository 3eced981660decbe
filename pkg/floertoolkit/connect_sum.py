##### Sumas Conexas: Productos Fibrados S_{U₁+U₂} #####

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import pandas as pd

from .complexes import (ChainMap, Generator, GradedComplex, GradedMap, HomologyGroup, LESReport, MapSign,
                        _assemble, add_maps, find_chain_homotopy, homology, homotopy_defect, identity_map,
                        induced_map, les_of_ses, make_chain_map, maps_agree_on_homology, matrices_agree,
                        negate_map, tensor_maps, tensor_product)
from .equivariant import (MODULE_FLAVORS, DegreeWindow, Flavor, UComplex, _exponent_range,
                          fundamental_complexes, fundamental_ses, jones_flavor, lift_map_su, s_bundle)
from .errors import FloerToolkitError, RingMismatch
from .linalg import SparseMatrix
from .log import Log

logger = Log(__name__)


@dataclass(frozen=True, eq=False)
class ProductUComplex:
    """Producto C₁⊗C₂ con U = U₁⊗1 + 1⊗U₂."""
    first: UComplex
    second: UComplex
    product: UComplex
    u_first: ChainMap
    u_second: ChainMap


def product_ucomplex(C1: UComplex, C2: UComplex) -> ProductUComplex:
    """Construye el producto de dos UComplex y valida ∂U = U∂ con signos de Koszul.

    Raises:
        RingMismatch: Si los anillos difieren.
    """
    if C1.ring != C2.ring:
        raise RingMismatch(f"Producto entre {C1.ring} y {C2.ring}.")
    base = tensor_product(C1.base, C2.base)
    u_first = tensor_maps(C1.U, identity_map(C2.base), base, base)
    u_second = tensor_maps(identity_map(C1.base), C2.U, base, base)
    total = add_maps(u_first, u_second)
    U = make_chain_map(base, base, -2, {(s, t): c for s, t, c in total.entries()}, MapSign.COMMUTE)
    logger.info(f"Product UComplex with {base.size} generators")
    return ProductUComplex(C1, C2, UComplex(base, U), u_first, u_second)


##### Sabores S_⊗^• #####

def _tensor_with_range(C: UComplex, kmin, kmax, lo: int, hi: int) -> UComplex:
    """C⊗u^k (k en [kmin, kmax], grados en [lo, hi]) con U⊗1 + 1⊗u."""
    window = DegreeWindow(lo, hi)
    present = {g.id: _exponent_range(g.degree, kmin, kmax, window) for g in C.base.gens}
    gens = [Generator(f"{g.id}*u^{k}", g.degree - 2 * k) for g in C.base.gens for k in present[g.id]]
    diff = {}
    for s, t, c in C.base.entries():
        for k in present[s]:
            if k in present[t]:
                diff[(f"{s}*u^{k}", f"{t}*u^{k}")] = c
    base = _assemble(C.ring, gens, diff)
    K = C.ring.arithmetic
    umap = {}
    for s, t, c in C.U.entries():
        for k in present[s]:
            if k in present[t]:
                umap[(f"{s}*u^{k}", f"{t}*u^{k}")] = c
    for g in C.base.gens:
        for k in present[g.id]:
            if k + 1 in present[g.id]:
                umap[(f"{g.id}*u^{k}", f"{g.id}*u^{k + 1}")] = K.one
    return UComplex(base, make_chain_map(base, base, -2, umap))


def tensor_with_v(C: UComplex, flavor, lo: int, hi: int) -> UComplex:
    """C⊗V^• truncado a los grados [lo, hi]; en V^∧ = R la variable u actúa por cero."""
    kmin, kmax = Flavor(flavor).exponents
    return _tensor_with_range(C, kmin, kmax, lo, hi)


def s_otimes(C: UComplex, flavor, window) -> GradedComplex:
    """S_⊗^•(C) = S_{U+u}(C⊗V^•) materializado en la ventana.

    Generadores ``x*u^k@1`` y ``x*u^k@y``.

    Raises:
        WindowTooSmall: Si el rango seguro es vacío.
    """
    window = DegreeWindow.of(window)
    window.require_safe()
    V = tensor_with_v(C, flavor, window.lo - 1, window.hi)
    return s_bundle(V).base.truncate(window.lo, window.hi)


def s_otimes_complexes(C: UComplex, window) -> Tuple[GradedComplex, GradedComplex, GradedComplex]:
    """(S⊗(u·V⁻), S⊗V^∞, S⊗V⁺) en la ventana."""
    window = DegreeWindow.of(window)
    window.require_safe()
    out = []
    for kmin, kmax in ((1, None), (None, None), (None, 0)):
        V = _tensor_with_range(C, kmin, kmax, window.lo - 1, window.hi)
        out.append(s_bundle(V).base.truncate(window.lo, window.hi))
    return tuple(out)


def s_otimes_ses(C: UComplex, window) -> LESReport:
    """Sucesión 0 → S⊗(u·V⁻) → S⊗V^∞ → S⊗V⁺ → 0 y su sucesión larga en el rango seguro."""
    window = DegreeWindow.of(window)
    A, B, Cq = s_otimes_complexes(C, window)
    K = C.ring.arithmetic
    i = make_chain_map(A, B, 0, {(x, x): K.one for x in A.ids})
    p = make_chain_map(B, Cq, 0, {(x, x): K.one for x in Cq.ids})
    return les_of_ses(i, p, window.safe_degrees())


def e_to_s_label(gen_id: str) -> str:
    """Renombra ``x@tag*u^k`` (E^•S_U) como ``x*u^k@tag`` (S_{U+u}(C⊗V^•))."""
    head, k = gen_id.rsplit("*u^", 1)
    base, tag = head.rsplit("@", 1)
    return f"{base}*u^{k}@{tag}"


##### Identidades #####

@dataclass(frozen=True)
class IdentityReport:
    """Comparación de H(E^•(S_U C)) con H(S_⊗^•(C)) en el rango seguro."""
    flavor: Flavor
    rows: Tuple[Tuple[int, HomologyGroup, HomologyGroup], ...]
    structural: bool

    @property
    def mismatches(self) -> List[Tuple[int, HomologyGroup, HomologyGroup]]:
        return [row for row in self.rows if row[1] != row[2]]

    @property
    def passed(self) -> bool:
        return self.structural and not self.mismatches

    def to_frame(self) -> pd.DataFrame:
        data = [{'degree': n, 'E_S_U': left.rank, 'S_otimes': right.rank, 'match': left == right}
                for n, left, right in self.rows]
        return pd.DataFrame(data, columns=['degree', 'E_S_U', 'S_otimes', 'match'])


def verify_e_su_identity(C: UComplex, flavor, window) -> IdentityReport:
    """E^•S_U(C) = S_{U+u}(C⊗V^•): compara homologías y la igualdad de complejos tras renombrar."""
    flavor = Flavor(flavor)
    window = DegreeWindow.of(window)
    left = jones_flavor(s_bundle(C), flavor, window)
    right = s_otimes(C, flavor, window)
    safe = window.safe_degrees()
    HL, HR = homology(left, safe), homology(right, safe)
    rows = tuple((n, HL.group(n), HR.group(n)) for n in safe)
    report = IdentityReport(flavor, rows, left.relabel(e_to_s_label) == right)
    for n, a, b in report.mismatches:
        logger.error(f"E-S_U identity fails for {flavor.value} in degree {n}: {a} vs {b}")
    return report


@dataclass(frozen=True)
class ActionReport:
    """Acción de t = 1⊗u frente a −(U⊗1) en la homología de S_⊗^•."""
    flavor: Flavor
    agreement: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return all(self.agreement.values())

    @property
    def discrepancies(self) -> List[int]:
        return [n for n, ok in sorted(self.agreement.items()) if not ok]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'degree': n, 't_equals_minus_U': ok} for n, ok in sorted(self.agreement.items())],
                            columns=['degree', 't_equals_minus_U'])


def u_vs_t_action(C: UComplex, flavor, window) -> ActionReport:
    """Compara el mapa inducido por la transformación de cubierta t = 1⊗u con −(U⊗1)_*.

    Sólo los sabores minus, infty y plus son módulos sobre R[t]; hat no tiene acción de t.

    Raises:
        FloerToolkitError: Con el sabor hat.
        WindowTooSmall: Si el rango seguro es vacío.
    """
    flavor = Flavor(flavor)
    if flavor not in MODULE_FLAVORS:
        raise FloerToolkitError("El sabor hat no tiene acción de t; sólo se compara a nivel de rangos.")
    window = DegreeWindow.of(window)
    window.require_safe()
    V = tensor_with_v(C, flavor, window.lo - 1, window.hi)
    deck = make_chain_map(V.base, V.base, -2,
                          {(s, t): c for s, t, c in V.U.entries() if s.rsplit("*u^", 1)[0] == t.rsplit("*u^", 1)[0]
                           and int(t.rsplit("*u^", 1)[1]) == int(s.rsplit("*u^", 1)[1]) + 1})
    u_action = make_chain_map(V.base, V.base, -2,
                              {(s, t): c for s, t, c in V.U.entries()
                               if s.rsplit("*u^", 1)[1] == t.rsplit("*u^", 1)[1]})
    T = lift_map_su(deck, V, V)
    Ulift = lift_map_su(u_action, V, V)
    safe = set(window.safe_degrees())
    agreement = {}
    for n in sorted(safe):
        if n - 2 not in safe:
            continue
        target = T.target.homology_basis(n - 2)
        agreement[n] = matrices_agree(induced_map(T, n), -induced_map(Ulift, n), target)
    report = ActionReport(flavor, agreement)
    if report.discrepancies:
        logger.error(f"Deck transformation differs from the U action in degrees {report.discrepancies}")
    return report


@dataclass(frozen=True, eq=False)
class NullHomotopyReport:
    """Homotopía explícita H(ξ@1) = 0, H(ξ@y) = ξ@1 entre U₁⊗1 y −(1⊗U₂) en S_{U₁+U₂}."""
    homotopy: GradedMap
    verified: bool
    solver_homotopy: Optional[GradedMap]
    solver_verified: Optional[bool]
    agree_on_homology: bool

    @property
    def passed(self) -> bool:
        return self.verified and self.agree_on_homology and self.solver_verified is not False


def explicit_null_homotopy(P: ProductUComplex, use_solver: bool = True) -> NullHomotopyReport:
    """Verifica simbólicamente ∂H + H∂ = (U₁⊗1) − (−(1⊗U₂)) y lo contrasta con el resolvedor."""
    bundle = s_bundle(P.product).base
    K = P.product.ring.arithmetic
    f = lift_map_su(P.u_first, P.product, P.product)
    g = negate_map(lift_map_su(P.u_second, P.product, P.product))
    H = GradedMap(bundle, bundle, -1, SparseMatrix(bundle.size, bundle.size, {
        (bundle.index_of(f"{x.id}@1"), bundle.index_of(f"{x.id}@y")): K.one for x in P.product.base.gens
    }, bundle.ring))
    verified = homotopy_defect(f, g, H).is_zero
    solver_h, solver_ok = None, None
    if use_solver:
        solver_h = find_chain_homotopy(f, g)
        solver_ok = solver_h is not None and homotopy_defect(f, g, solver_h).is_zero
    agree = maps_agree_on_homology(f, g, bundle.degrees)
    if not verified:
        logger.error("Closed-form null homotopy failed symbolic verification")
    return NullHomotopyReport(H, verified, solver_h, solver_ok, agree)


@dataclass(frozen=True)
class LadderReport:
    """Comparación nodo a nodo de las sucesiones de S_⊗^• y de E^•(S_U C)."""
    rows: Tuple[dict, ...]
    structural: bool

    @property
    def passed(self) -> bool:
        return self.structural and all(row['match'] for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=['degree', 'position', 'rank_s_otimes', 'rank_jones',
                                                      'exact', 'match'])


def ladder_compare(C: UComplex, window) -> LadderReport:
    """Escalera conmutativa entre la sucesión de S_⊗^• y la sucesión fundamental de S_U(C)."""
    window = DegreeWindow.of(window)
    ours = s_otimes_complexes(C, window)
    theirs = fundamental_complexes(s_bundle(C), window)
    structural = all(E.relabel(e_to_s_label) == X for E, X in zip(theirs, ours))
    les_s = s_otimes_ses(C, window)
    les_e = fundamental_ses(s_bundle(C), window)
    exact_s = {(node.degree, node.position): node.exact for node in les_s.nodes}
    exact_e = {(node.degree, node.position): node.exact for node in les_e.nodes}
    rows = []
    for (n, pos), ok in sorted(exact_s.items(), key=lambda item: (-item[0][0], item[0][1])):
        rs = {'A': les_s.homology_a, 'B': les_s.homology_b, 'C': les_s.homology_c}[pos].group(n)
        re = {'A': les_e.homology_a, 'B': les_e.homology_b, 'C': les_e.homology_c}[pos].group(n)
        rows.append({'degree': n, 'position': pos, 'rank_s_otimes': rs.rank, 'rank_jones': re.rank,
                     'exact': ok and exact_e[(n, pos)], 'match': rs == re and ok and exact_e[(n, pos)]})
    return LadderReport(tuple(rows), structural)
