##### Complejos de Novikov Filtrados #####

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .complexes import (Generator, GradedComplex, HomologyGroup, HomologyReport, LESReport, _assemble,
                        homology, les_of_ses, make_chain_map)
from .equivariant import DegreeWindow
from .errors import (DegreeViolation, DimensionMismatch, InternalMismatch, NotADifferential,
                     NotDegreewiseFinite, SemiPositivityRequired, UnsupportedRing, ValidationError)
from .linalg import SparseMatrix, rank, smith_normal_form
from .log import Log
from .rings import LaurentPolynomial, RingSpec

logger = Log(__name__)


@dataclass(frozen=True)
class CutLevel:
    """Potencia de t inmediatamente por debajo del corte (uniforme para todos los generadores)."""
    offset: int = 1

    @classmethod
    def of(cls, value) -> 'CutLevel':
        return value if isinstance(value, CutLevel) else cls(int(value))


class LaurentComplex:
    """Complejo libre finitamente generado sobre R[t,t^-1] con diferencial t-equivariante.

    Cada generador representa una órbita de t; su grado es el del levantamiento t⁰x y
    el grado de t^k·x es |x| + k·deg_t.
    """

    def __init__(self, ring: RingSpec, gens, deg_t: int, diff: SparseMatrix):
        self.ring = ring.base_spec
        self.gens = tuple(gens)
        self.deg_t = deg_t
        self.diff = diff
        self._index = {g.id: i for i, g in enumerate(self.gens)}

    @property
    def laurent_ring(self) -> RingSpec:
        return self.ring.laurent_spec

    @property
    def size(self) -> int:
        return len(self.gens)

    @property
    def period(self) -> int:
        return -self.deg_t

    def index_of(self, gen_id: str) -> int:
        return self._index[gen_id]

    def entries(self) -> Iterable[Tuple[str, str, LaurentPolynomial]]:
        """Entradas (origen, destino, polinomio) en orden canónico."""
        cols = self.diff.col_map()
        for j in range(self.size):
            for i in sorted(cols.get(j, {})):
                yield self.gens[j].id, self.gens[i].id, cols[j][i]

    def validate(self) -> None:
        square = self.diff @ self.diff
        if not square.is_zero:
            witness = min(j for _, j in square.entries)
            logger.error(f"Laurent differential does not square to zero on '{self.gens[witness].id}'")
            raise NotADifferential(self.gens[witness].id)

    def as_graded(self) -> GradedComplex:
        """Complejo graduado ordinario sobre R[t,t^-1]; sólo tiene sentido con deg_t = 0."""
        if self.deg_t != 0:
            raise NotDegreewiseFinite("as_graded requiere deg_t = 0.")
        return GradedComplex(self.laurent_ring, self.gens, self.diff)

    def change_of_basis(self, P: SparseMatrix, P_inv: SparseMatrix) -> 'LaurentComplex':
        """∂' = P ∂ P⁻¹ con P invertible sobre R[t,t^-1]."""
        if (P @ P_inv) != SparseMatrix.identity(self.size, self.laurent_ring):
            raise DimensionMismatch("P·P⁻¹ no es la identidad.")
        new = LaurentComplex(self.ring, self.gens, self.deg_t, P @ self.diff @ P_inv)
        _check_degrees(new)
        new.validate()
        return new

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentComplex):
            return NotImplemented
        return (self.ring == other.ring and self.deg_t == other.deg_t and self.gens == other.gens
                and self.diff == other.diff)

    __hash__ = None

    def __repr__(self) -> str:
        return f"LaurentComplex(ring={self.laurent_ring}, gens={self.size}, deg_t={self.deg_t})"


def _check_degrees(L: LaurentComplex) -> None:
    for src, tgt, poly in L.entries():
        s_deg = L.gens[L.index_of(src)].degree
        t_deg = L.gens[L.index_of(tgt)].degree
        for k, _ in poly.terms():
            if t_deg + k * L.deg_t != s_deg - 1:
                raise DegreeViolation((src, tgt, k))


def _laurent_assemble(ring: RingSpec, gens, deg_t: int, entries: Dict[Tuple[str, str], LaurentPolynomial],
                      check: bool = True) -> LaurentComplex:
    if deg_t > 0 or deg_t % 2:
        raise DegreeViolation('deg_t', f"deg_t debe ser par y no positivo; se recibió {deg_t}.")
    gens = sorted(gens, key=lambda g: (g.degree, g.id))
    index = {}
    for i, g in enumerate(gens):
        if g.id in index:
            raise ValidationError(None, f"Identificador de generador duplicado '{g.id}'.")
        index[g.id] = i
    lring = ring.laurent_spec
    LK = lring.arithmetic
    matrix = {}
    for (src, tgt), poly in entries.items():
        if src not in index or tgt not in index:
            missing = src if src not in index else tgt
            raise ValidationError(None, f"La entrada ({src}, {tgt}) referencia el generador inexistente '{missing}'.")
        key = (index[tgt], index[src])
        matrix[key] = LK.add(matrix[key], poly) if key in matrix else poly
    n = len(gens)
    L = LaurentComplex(ring, gens, deg_t, SparseMatrix(n, n, matrix, lring))
    _check_degrees(L)
    if check:
        L.validate()
    return L


def make_laurent(ring, gens, diff_entries=(), deg_t: int = -2, check: bool = True) -> LaurentComplex:
    """Construye y valida un LaurentComplex.

    Args:
        ring (str | RingSpec): Anillo base (Zmod2, Z o Q).
        gens (Iterable): Generadores de órbita como pares (id, grado).
        diff_entries: dict {(x, y): polinomio} o tuplas (x, y, coef) / (x, y, coef, exponente de t).
        deg_t (int): Grado de t, par y ≤ 0.

    Raises:
        DegreeViolation: Si algún término no es coherente con un diferencial de grado −1.
        NotADifferential: Si ∂² ≠ 0 sobre R[t,t^-1].

    Example:
        >>> make_laurent('Zmod2', [('a', 1), ('b', 0)], [('a', 'b', 1, 0), ('a', 'b', 1, 1)], deg_t=0)
    """
    ring = RingSpec.parse(ring).base_spec
    LK = ring.laurent_spec.arithmetic
    norm_gens = [g if isinstance(g, Generator) else Generator(str(g[0]), int(g[1])) for g in gens]
    entries: Dict[Tuple[str, str], LaurentPolynomial] = {}
    if isinstance(diff_entries, dict):
        items = [(s, t, LK.coerce(v)) for (s, t), v in diff_entries.items()]
    else:
        items = []
        for entry in diff_entries:
            if len(entry) == 4:
                s, t, c, k = entry
                items.append((s, t, LK.monomial(LK.base.coerce(c), int(k))))
            else:
                s, t, c = entry
                items.append((s, t, LK.coerce(c)))
    for s, t, poly in items:
        key = (str(s), str(t))
        entries[key] = LK.add(entries[key], poly) if key in entries else poly
    return _laurent_assemble(ring, norm_gens, deg_t, entries, check)


def check_semipositive(L: LaurentComplex) -> Tuple[bool, List[Tuple[Tuple[str, str], int]]]:
    """True si todas las entradas del diferencial usan sólo potencias no negativas de t.

    Returns:
        tuple: (veredicto, lista de ((origen, destino), exponente) infractores).
    """
    violations = [((src, tgt), k) for src, tgt, poly in L.entries() for k in poly.exponents() if k < 0]
    return not violations, violations


def _require_semipositive(L: LaurentComplex) -> None:
    ok, violations = check_semipositive(L)
    if not ok:
        logger.error(f"Differential is not semi-positive: {violations}")
        raise SemiPositivityRequired(violations)


def _require_finite(L: LaurentComplex) -> None:
    if L.deg_t >= 0:
        raise NotDegreewiseFinite(f"Con deg_t = {L.deg_t} cada grado tendría infinitos generadores.")


def _slice_range(degree: int, p: int, kmin, kmax, window: Optional[DegreeWindow]) -> range:
    if window is None:
        return range(kmin, kmax + 1)
    lo = -((window.hi - degree) // p)
    hi = (degree - window.lo) // p
    if kmin is not None:
        lo = max(lo, kmin)
    if kmax is not None:
        hi = min(hi, kmax)
    return range(lo, hi + 1)


def _materialize(L: LaurentComplex, kmin, kmax, window: Optional[DegreeWindow]) -> GradedComplex:
    """Levantamientos t^k·x con k en [kmin, kmax] (y grados en la ventana); términos fuera de rango se omiten."""
    p = L.period
    present = {}
    gens = []
    for g in L.gens:
        ks = _slice_range(g.degree, p, kmin, kmax, window)
        present[g.id] = ks
        gens.extend(Generator(f"{g.id}@t^{k}", g.degree - k * p) for k in ks)
    entries = {}
    for src, tgt, poly in L.entries():
        for k in present[src]:
            for j, c in poly.terms():
                if k + j in present[tgt]:
                    entries[(f"{src}@t^{k}", f"{tgt}@t^{k + j}")] = c
                elif kmin is not None and k + j < kmin:
                    raise InternalMismatch(f"El subcomplejo no es cerrado: {src}→{tgt} con t^{j}.")
    return _assemble(L.ring, gens, entries)


def minus_complex(L: LaurentComplex, cut=CutLevel(), window=(-12, 12)) -> GradedComplex:
    """Subcomplejo span{t^k·x : k ≥ offset} materializado en la ventana.

    Raises:
        SemiPositivityRequired: Si el diferencial tiene potencias negativas de t.
        NotDegreewiseFinite: Si deg_t = 0.
        WindowTooSmall: Si el rango seguro es vacío.
    """
    cut, window = CutLevel.of(cut), DegreeWindow.of(window)
    _require_semipositive(L)
    _require_finite(L)
    window.require_safe()
    return _materialize(L, cut.offset, None, window)


def plus_complex(L: LaurentComplex, cut=CutLevel(), window=(-12, 12)) -> GradedComplex:
    """Cociente span{t^k·x : k < offset} con el diferencial truncado."""
    cut, window = CutLevel.of(cut), DegreeWindow.of(window)
    _require_semipositive(L)
    _require_finite(L)
    window.require_safe()
    return _materialize(L, None, cut.offset - 1, window)


def full_complex(L: LaurentComplex, window=(-12, 12)) -> GradedComplex:
    """Todas las potencias de t en la ventana (el sabor ∞)."""
    window = DegreeWindow.of(window)
    _require_finite(L)
    window.require_safe()
    return _materialize(L, None, None, window)


def hat_complex(L: LaurentComplex, cut=CutLevel()) -> GradedComplex:
    """Rebanada k = offset con la parte t⁰ del diferencial (≅ minus / t·minus)."""
    cut = CutLevel.of(cut)
    _require_semipositive(L)
    p = L.period
    gens = [Generator(f"{g.id}@t^{cut.offset}", g.degree - cut.offset * p) for g in L.gens]
    entries = {}
    for src, tgt, poly in L.entries():
        for j, c in poly.terms():
            if j == 0:
                entries[(f"{src}@t^{cut.offset}", f"{tgt}@t^{cut.offset}")] = c
    return _assemble(L.ring, gens, entries)


def _identity_on_ids(A: GradedComplex, B: GradedComplex, ids: Iterable[str]):
    K = A.ring.arithmetic
    return make_chain_map(A, B, 0, {(x, x): K.one for x in ids})


def pair_les(L: LaurentComplex, cut=CutLevel(), window=(-12, 12)) -> LESReport:
    """Sucesión del par 0 → minus → full → plus → 0 evaluada en el rango seguro."""
    cut, window = CutLevel.of(cut), DegreeWindow.of(window)
    A = minus_complex(L, cut, window)
    B = full_complex(L, window)
    C = plus_complex(L, cut, window)
    les = les_of_ses(_identity_on_ids(A, B, A.ids), _identity_on_ids(B, C, C.ids), window.safe_degrees())
    logger.info(f"Pair exact sequence at cut {cut.offset} in {window}: exact={les.is_exact}")
    return les


def hat_les(L: LaurentComplex, cut=CutLevel(), window=(-12, 12)) -> LESReport:
    """Sucesión 0 → t·minus → minus → hat → 0 (cortes offset+1 y offset)."""
    cut, window = CutLevel.of(cut), DegreeWindow.of(window)
    A = minus_complex(L, CutLevel(cut.offset + 1), window)
    B = minus_complex(L, cut, window)
    C = _materialize(L, cut.offset, cut.offset, window)
    return les_of_ses(_identity_on_ids(A, B, A.ids), _identity_on_ids(B, C, C.ids), window.safe_degrees())


def filtered_flavors(L: LaurentComplex, cut=CutLevel(), window=(-12, 12)) -> Dict[str, HomologyReport]:
    """Homología de minus, infty (full), plus y hat en el rango seguro."""
    cut, window = CutLevel.of(cut), DegreeWindow.of(window)
    safe = window.safe_degrees()
    return {
        'minus': homology(minus_complex(L, cut, window), safe),
        'infty': homology(full_complex(L, window), safe),
        'plus': homology(plus_complex(L, cut, window), safe),
        'hat': homology(hat_complex(L, cut)),
    }


def laurent_homology(L: LaurentComplex) -> HomologyReport:
    """Homología sobre F[t,t^-1] con torsión mónica de término constante no nulo.

    Con deg_t < 0 el complejo es periódico y se informa un grupo por grado residual
    r ∈ [0, −deg_t − 1]; con deg_t = 0 uno por grado ordinario.

    Raises:
        UnsupportedRing: Si la base es Z (Z[t,t^-1] no es un DIP).
    """
    if not L.ring.base_is_field:
        raise UnsupportedRing(f"laurent_homology requiere un cuerpo base; {L.laurent_ring} no es un DIP.")
    if L.deg_t == 0:
        return homology(L.as_graded())
    p = L.period
    lring = L.laurent_ring
    LK = lring.arithmetic
    residues: Dict[int, List[int]] = {r: [] for r in range(p)}
    shifts = {}
    for idx, g in enumerate(L.gens):
        r = g.degree % p
        residues[r].append(idx)
        shifts[idx] = (g.degree - r) // p
    position = {idx: a for r in residues for a, idx in enumerate(residues[r])}
    blocks: Dict[int, Dict[Tuple[int, int], LaurentPolynomial]] = {r: {} for r in range(p)}
    for (i, j), poly in L.diff.items():
        r = L.gens[j].degree % p
        blocks[r][(position[i], position[j])] = LK.mul(poly, LK.monomial(LK.base.one, shifts[j] - shifts[i]))

    def block(r: int) -> SparseMatrix:
        return SparseMatrix(len(residues[(r - 1) % p]), len(residues[r]), blocks[r], lring)

    groups = {}
    for r in range(p):
        dim = len(residues[r])
        if dim == 0:
            groups[r] = HomologyGroup()
            continue
        out_rank = rank(block(r), lring) if residues[(r - 1) % p] else 0
        incoming = block((r + 1) % p)
        torsion, in_rank = (), 0
        if incoming.cols:
            snf = smith_normal_form(incoming, lring, transforms=False)
            in_rank = snf.rank
            torsion = tuple(d for d in snf.invariant_factors if not LK.is_zero(d) and not LK.is_unit(d))
        groups[r] = HomologyGroup(dim - out_rank - in_rank, torsion)
    return HomologyReport(lring, groups)


def su_of_laurent(L: LaurentComplex) -> LaurentComplex:
    """S_U con U = multiplicación por t: ∂(x@1) = ∂x@1 + t·x@y, ∂(x@y) = −∂x@y.

    El resultado es el cono de una unidad y por tanto acíclico sobre F[t,t^-1].

    Raises:
        DegreeViolation: Si deg_t ≠ −2.
    """
    if L.deg_t != -2:
        raise DegreeViolation('deg_t', f"su_of_laurent requiere deg_t = −2; se recibió {L.deg_t}.")
    LK = L.laurent_ring.arithmetic
    gens = [Generator(f"{g.id}@1", g.degree) for g in L.gens]
    gens += [Generator(f"{g.id}@y", g.degree + 1) for g in L.gens]
    entries = {}
    for src, tgt, poly in L.entries():
        entries[(f"{src}@1", f"{tgt}@1")] = poly
        entries[(f"{src}@y", f"{tgt}@y")] = LK.neg(poly)
    t = LK.monomial(LK.base.one, 1)
    for g in L.gens:
        entries[(f"{g.id}@1", f"{g.id}@y")] = t
    return _laurent_assemble(L.ring, gens, L.deg_t, entries)
