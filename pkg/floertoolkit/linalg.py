##### Álgebra Lineal Exacta y Dispersa #####

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch
from .log import Log
from .rings import RingSpec

logger = Log(__name__)


##### Matrices Dispersas #####

class SparseMatrix:
    """Matriz dispersa inmutable sobre un anillo exacto.

    Las entradas nulas nunca se almacenan y los índices se validan al construir.
    """

    __slots__ = ('rows', 'cols', 'ring', '_entries', '_row_map')

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], object]] = None,
                 ring: RingSpec = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"Dimensiones negativas {rows}x{cols}.")
        if ring is None:
            raise ValueError("Se requiere el anillo de la matriz.")
        K = ring.arithmetic
        clean = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"Índice ({i}, {j}) fuera de una matriz {rows}x{cols}.")
            if not K.is_zero(value):
                clean[(i, j)] = value
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self._entries = clean
        self._row_map = None

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: RingSpec) -> 'SparseMatrix':
        return cls(rows, cols, {}, ring)

    @classmethod
    def identity(cls, n: int, ring: RingSpec) -> 'SparseMatrix':
        one = ring.arithmetic.one
        return cls(n, n, {(i, i): one for i in range(n)}, ring)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]], ring: RingSpec, cols: Optional[int] = None) -> 'SparseMatrix':
        K = ring.arithmetic
        rows = len(dense)
        cols = len(dense[0]) if rows else (cols or 0)
        entries = {}
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise DimensionMismatch("Filas de longitud distinta.")
            for j, value in enumerate(row):
                value = K.coerce(value) if isinstance(value, (int, str)) else value
                if not K.is_zero(value):
                    entries[(i, j)] = value
        return cls(rows, cols, entries, ring)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], rows: int, ring: RingSpec) -> 'SparseMatrix':
        entries = {}
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionMismatch("Columna de longitud incorrecta.")
            for i, value in enumerate(column):
                entries[(i, j)] = value
        return cls(rows, len(columns), entries, ring)

    @property
    def entries(self) -> Dict[Tuple[int, int], object]:
        return dict(self._entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def get(self, i: int, j: int):
        return self._entries.get((i, j), self.ring.arithmetic.zero)

    def __getitem__(self, key):
        return self.get(*key)

    def items(self):
        return self._entries.items()

    def row_map(self) -> Dict[int, Dict[int, object]]:
        if self._row_map is None:
            rm = {}
            for (i, j), v in self._entries.items():
                rm.setdefault(i, {})[j] = v
            self._row_map = rm
        return self._row_map

    def col_map(self) -> Dict[int, Dict[int, object]]:
        cm = {}
        for (i, j), v in self._entries.items():
            cm.setdefault(j, {})[i] = v
        return cm

    def to_dense(self) -> List[List[object]]:
        zero = self.ring.arithmetic.zero
        dense = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            dense[i][j] = v
        return dense

    def column(self, j: int) -> List[object]:
        return [self.get(i, j) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def nnz(self) -> int:
        return len(self._entries)

    def transpose(self) -> 'SparseMatrix':
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()}, self.ring)

    def _check_ring(self, other: 'SparseMatrix') -> None:
        if other.ring != self.ring:
            raise DimensionMismatch(f"Anillos distintos: {self.ring} y {other.ring}.")

    def __matmul__(self, other: 'SparseMatrix') -> 'SparseMatrix':
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"No se pueden multiplicar {self.shape} y {other.shape}.")
        K = self.ring.arithmetic
        other_rows = other.row_map()
        acc = {}
        for (i, k), a in self._entries.items():
            for j, b in other_rows.get(k, {}).items():
                prod = K.mul(a, b)
                acc[(i, j)] = K.add(acc[(i, j)], prod) if (i, j) in acc else prod
        return SparseMatrix(self.rows, other.cols, acc, self.ring)

    def __add__(self, other: 'SparseMatrix') -> 'SparseMatrix':
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"No se pueden sumar {self.shape} y {other.shape}.")
        K = self.ring.arithmetic
        acc = dict(self._entries)
        for key, v in other._entries.items():
            acc[key] = K.add(acc[key], v) if key in acc else v
        return SparseMatrix(self.rows, self.cols, acc, self.ring)

    def __neg__(self) -> 'SparseMatrix':
        K = self.ring.arithmetic
        return SparseMatrix(self.rows, self.cols, {k: K.neg(v) for k, v in self._entries.items()}, self.ring)

    def __sub__(self, other: 'SparseMatrix') -> 'SparseMatrix':
        return self + (-other)

    def scale(self, c) -> 'SparseMatrix':
        K = self.ring.arithmetic
        return SparseMatrix(self.rows, self.cols, {k: K.mul(c, v) for k, v in self._entries.items()}, self.ring)

    def apply(self, vector: Sequence[object]) -> List[object]:
        """Producto matriz-vector denso."""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"Vector de longitud {len(vector)} para una matriz {self.shape}.")
        K = self.ring.arithmetic
        out = [K.zero] * self.rows
        for (i, j), v in self._entries.items():
            if not K.is_zero(vector[j]):
                out[i] = K.add(out[i], K.mul(v, vector[j]))
        return out

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> 'SparseMatrix':
        rpos = {r: a for a, r in enumerate(row_idx)}
        cpos = {c: b for b, c in enumerate(col_idx)}
        entries = {(rpos[i], cpos[j]): v for (i, j), v in self._entries.items() if i in rpos and j in cpos}
        return SparseMatrix(len(row_idx), len(col_idx), entries, self.ring)

    def hstack(self, other: 'SparseMatrix') -> 'SparseMatrix':
        self._check_ring(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack requiere el mismo número de filas.")
        entries = dict(self._entries)
        entries.update({(i, j + self.cols): v for (i, j), v in other._entries.items()})
        return SparseMatrix(self.rows, self.cols + other.cols, entries, self.ring)

    def vstack(self, other: 'SparseMatrix') -> 'SparseMatrix':
        self._check_ring(other)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack requiere el mismo número de columnas.")
        entries = dict(self._entries)
        entries.update({(i + self.rows, j): v for (i, j), v in other._entries.items()})
        return SparseMatrix(self.rows + other.rows, self.cols, entries, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self._entries)}, ring={self.ring})"


##### Forma Normal de Smith #####

@dataclass(frozen=True)
class SmithForm:
    """Resultado de la forma normal de Smith: U·M·V = D.

    Attributes:
        D (SparseMatrix): Matriz diagonal con factores invariantes d₁ | d₂ | ...
        U, V (SparseMatrix): Transformaciones invertibles (None si no se pidieron).
        U_inv, V_inv (SparseMatrix): Sus inversas.
        invariant_factors (tuple): Diagonal de D (longitud min(filas, columnas)).
        rank (int): Número de factores no nulos.
    """
    D: SparseMatrix
    U: Optional[SparseMatrix]
    V: Optional[SparseMatrix]
    U_inv: Optional[SparseMatrix]
    V_inv: Optional[SparseMatrix]
    invariant_factors: tuple
    rank: int


class _SmithReducer:
    """Reducción densa con seguimiento opcional de U, V y sus inversas."""

    def __init__(self, A, K, m, n, transforms):
        self.A, self.K, self.m, self.n = A, K, m, n
        self.transforms = transforms
        if transforms:
            zero, one = K.zero, K.one
            self.U = [[one if i == j else zero for j in range(m)] for i in range(m)]
            self.U_inv = [[one if i == j else zero for j in range(m)] for i in range(m)]
            self.V = [[one if i == j else zero for j in range(n)] for i in range(n)]
            self.V_inv = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def swap_rows(self, i, j):
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.transforms:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.U_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.transforms:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.V_inv[i], self.V_inv[j] = self.V_inv[j], self.V_inv[i]

    def row_add(self, i, j, c):
        """Fila i += c · fila j."""
        K = self.K
        Ai, Aj = self.A[i], self.A[j]
        for k in range(self.n):
            if not K.is_zero(Aj[k]):
                Ai[k] = K.add(Ai[k], K.mul(c, Aj[k]))
        if self.transforms:
            Ui, Uj = self.U[i], self.U[j]
            for k in range(self.m):
                if not K.is_zero(Uj[k]):
                    Ui[k] = K.add(Ui[k], K.mul(c, Uj[k]))
            for row in self.U_inv:
                if not K.is_zero(row[i]):
                    row[j] = K.sub(row[j], K.mul(row[i], c))

    def col_add(self, i, j, c):
        """Columna i += c · columna j."""
        K = self.K
        for row in self.A:
            if not K.is_zero(row[j]):
                row[i] = K.add(row[i], K.mul(row[j], c))
        if self.transforms:
            for row in self.V:
                if not K.is_zero(row[j]):
                    row[i] = K.add(row[i], K.mul(row[j], c))
            Vj, Vi = self.V_inv[j], self.V_inv[i]
            for k in range(self.n):
                if not K.is_zero(Vi[k]):
                    Vj[k] = K.sub(Vj[k], K.mul(c, Vi[k]))

    def scale_row(self, i, u):
        K = self.K
        self.A[i] = [K.mul(u, x) for x in self.A[i]]
        if self.transforms:
            self.U[i] = [K.mul(u, x) for x in self.U[i]]
            inv = K.unit_inverse(u)
            for row in self.U_inv:
                row[i] = K.mul(row[i], inv)

    def find_pivot(self, t):
        K, A = self.K, self.A
        best, best_norm = None, None
        for i in range(t, self.m):
            row = A[i]
            for j in range(t, self.n):
                if not K.is_zero(row[j]):
                    nrm = K.norm(row[j])
                    if best is None or nrm < best_norm:
                        best, best_norm = (i, j), nrm
                        if K.is_field:
                            return best
        return best

    def clear_column(self, t):
        K, A = self.K, self.A
        for i in range(t + 1, self.m):
            while not K.is_zero(A[i][t]):
                q, _ = K.divmod(A[i][t], A[t][t])
                self.row_add(i, t, K.neg(q))
                if not K.is_zero(A[i][t]):
                    self.swap_rows(t, i)

    def clear_row(self, t):
        K, A = self.K, self.A
        for j in range(t + 1, self.n):
            while not K.is_zero(A[t][j]):
                q, _ = K.divmod(A[t][j], A[t][t])
                self.col_add(j, t, K.neg(q))
                if not K.is_zero(A[t][j]):
                    self.swap_cols(t, j)

    def is_clean(self, t) -> bool:
        K, A = self.K, self.A
        return (all(K.is_zero(A[i][t]) for i in range(t + 1, self.m))
                and all(K.is_zero(A[t][j]) for j in range(t + 1, self.n)))

    def find_nondivisible(self, t):
        K, A = self.K, self.A
        pivot = A[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if not K.divides(pivot, A[i][j]):
                    return i
        return None


def smith_normal_form(M: SparseMatrix, ring: RingSpec = None, transforms: bool = True) -> SmithForm:
    """Calcula la forma normal de Smith U·M·V = D sobre un DIP euclídeo.

    El pivote elegido es siempre el de norma mínima (valor absoluto sobre Z, amplitud de grados
    sobre F[t,t^-1]) para acotar el crecimiento de coeficientes. Los factores invariantes quedan
    normalizados: positivos sobre Z, 1 sobre un cuerpo, mónicos con término constante no nulo
    sobre F[t,t^-1].

    Args:
        M (SparseMatrix): Matriz de entrada.
        ring (RingSpec, opcional): Anillo; por defecto el de la matriz.
        transforms (bool): Si se calculan U, V y sus inversas.

    Returns:
        SmithForm: Forma normal y transformaciones.

    Raises:
        UnsupportedRing: Si el anillo no admite forma normal de Smith.

    Example:
        >>> smith_normal_form(SparseMatrix.from_dense([[2, 0], [0, 3]], ZZ_RING)).invariant_factors
        (1, 6)
    """
    ring = ring or M.ring
    ring.require_snf("smith_normal_form")
    K = ring.arithmetic
    m, n = M.rows, M.cols
    red = _SmithReducer(M.to_dense(), K, m, n, transforms)
    t = 0
    while t < min(m, n):
        pivot = red.find_pivot(t)
        if pivot is None:
            break
        red.swap_rows(t, pivot[0])
        red.swap_cols(t, pivot[1])
        while True:
            red.clear_column(t)
            red.clear_row(t)
            if not red.is_clean(t):
                continue
            if K.is_field:
                break
            bad = red.find_nondivisible(t)
            if bad is None:
                break
            red.row_add(t, bad, K.one)
        _, unit = K.normalize(red.A[t][t])
        if unit != K.one:
            red.scale_row(t, unit)
        t += 1

    factors = tuple(red.A[i][i] for i in range(min(m, n)))
    rank = sum(1 for d in factors if not K.is_zero(d))
    D = SparseMatrix.from_dense(red.A, ring, cols=n)
    logger.debug(f"Smith normal form of a {m}x{n} matrix over {ring}: rank {rank}")
    if not transforms:
        return SmithForm(D, None, None, None, None, factors, rank)
    return SmithForm(
        D,
        SparseMatrix.from_dense(red.U, ring, cols=m),
        SparseMatrix.from_dense(red.V, ring, cols=n),
        SparseMatrix.from_dense(red.U_inv, ring, cols=m),
        SparseMatrix.from_dense(red.V_inv, ring, cols=n),
        factors,
        rank,
    )


##### Eliminación sobre Cuerpos #####

def _rref(rows: Iterable[Dict[int, object]], K) -> Dict[int, Dict[int, object]]:
    """Forma escalonada reducida incremental; devuelve {columna pivote: fila con pivote 1}."""
    pivots: Dict[int, Dict[int, object]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if not K.is_zero(v)}
        for c in [c for c in r if c in pivots]:
            coef = r.get(c)
            if coef is None or K.is_zero(coef):
                continue
            for k, v in pivots[c].items():
                new = K.sub(r.get(k, K.zero), K.mul(coef, v))
                if K.is_zero(new):
                    r.pop(k, None)
                else:
                    r[k] = new
        if not r:
            continue
        p = min(r)
        inv = K.unit_inverse(r[p])
        r = {k: K.mul(inv, v) for k, v in r.items()}
        for prow in pivots.values():
            coef = prow.get(p)
            if coef is None:
                continue
            for k, v in r.items():
                new = K.sub(prow.get(k, K.zero), K.mul(coef, v))
                if K.is_zero(new):
                    prow.pop(k, None)
                else:
                    prow[k] = new
        pivots[p] = r
    return pivots


def rank(M: SparseMatrix, ring: RingSpec = None) -> int:
    """Rango de M: eliminación gaussiana sobre cuerpos, forma de Smith en otro caso."""
    ring = ring or M.ring
    if ring.is_field:
        return len(_rref(M.row_map().values(), ring.arithmetic))
    return smith_normal_form(M, ring, transforms=False).rank


def solve_linear(M: SparseMatrix, b: Sequence[object], ring: RingSpec = None) -> Optional[List[object]]:
    """Resuelve M·x = b sobre el anillo (solubilidad entera sobre Z, no sólo racional).

    Args:
        M (SparseMatrix): Matriz del sistema.
        b (Sequence): Término independiente de longitud M.rows.
        ring (RingSpec, opcional): Anillo; por defecto el de la matriz.

    Returns:
        list | None: Una solución x, o None si el sistema no tiene solución en el anillo.

    Raises:
        DimensionMismatch: Si len(b) != M.rows.
    """
    ring = ring or M.ring
    if len(b) != M.rows:
        raise DimensionMismatch(f"Término independiente de longitud {len(b)} para {M.rows} ecuaciones.")
    K = ring.arithmetic
    n = M.cols
    if ring.is_field:
        row_map = M.row_map()
        rows = []
        for i in range(M.rows):
            row = dict(row_map.get(i, {}))
            if not K.is_zero(b[i]):
                row[n] = b[i]
            rows.append(row)
        pivots = _rref(rows, K)
        if n in pivots:
            return None
        x = [K.zero] * n
        for p, row in pivots.items():
            x[p] = row.get(n, K.zero)
        return x

    snf = smith_normal_form(M, ring)
    c = snf.U.apply(list(b))
    z = [K.zero] * n
    for i, ci in enumerate(c):
        d = snf.invariant_factors[i] if i < len(snf.invariant_factors) else K.zero
        if K.is_zero(d):
            if not K.is_zero(ci):
                return None
            continue
        q, r = K.divmod(ci, d)
        if not K.is_zero(r):
            return None
        z[i] = q
    return snf.V.apply(z)


def kernel_basis(M: SparseMatrix, ring: RingSpec = None) -> List[List[object]]:
    """Base del núcleo de M como módulo libre (vacía si M es inyectiva).

    Raises:
        UnsupportedRing: Si el anillo no admite forma normal de Smith.
    """
    return kernel_with_retraction(M, ring)[0]


def kernel_with_retraction(M: SparseMatrix, ring: RingSpec = None) -> Tuple[List[List[object]], SparseMatrix]:
    """Base K del núcleo junto con una retracción L (L·K = I) definida en todo el dominio.

    La retracción permite leer las coordenadas de un ciclo en la base del núcleo con un
    producto matriz-vector.
    """
    ring = ring or M.ring
    ring.require_snf("kernel_basis")
    K = ring.arithmetic
    n = M.cols
    if ring.is_field:
        pivots = _rref(M.row_map().values(), K)
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for f in free:
            vec = [K.zero] * n
            vec[f] = K.one
            for p, row in pivots.items():
                if f in row:
                    vec[p] = K.neg(row[f])
            basis.append(vec)
        retraction = SparseMatrix(len(free), n, {(a, f): K.one for a, f in enumerate(free)}, ring)
        return basis, retraction

    snf = smith_normal_form(M, ring)
    V = snf.V.to_dense()
    basis = [[V[i][j] for i in range(n)] for j in range(snf.rank, n)]
    retraction = snf.V_inv.submatrix(list(range(snf.rank, n)), list(range(n)))
    return basis, retraction


def submodule_equal(gens_a: Sequence[Sequence[object]], gens_b: Sequence[Sequence[object]],
                    dim: int, ring: RingSpec) -> bool:
    """True si los submódulos de R^dim generados por ambas familias coinciden."""
    return submodule_contains(gens_b, gens_a, dim, ring) and submodule_contains(gens_a, gens_b, dim, ring)


def submodule_contains(gens: Sequence[Sequence[object]], vectors: Sequence[Sequence[object]],
                       dim: int, ring: RingSpec) -> bool:
    """True si cada vector pertenece al submódulo generado por gens."""
    G = SparseMatrix.from_columns(gens, dim, ring) if gens else SparseMatrix.zeros(dim, 0, ring)
    return all(solve_linear(G, list(v), ring) is not None for v in vectors)
