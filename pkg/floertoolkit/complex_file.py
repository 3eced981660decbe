##### Archivos de Complejos y Diagramas #####

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .complexes import GradedComplex, make_complex
from .equivariant import JComplex, UComplex, make_jcomplex, make_ucomplex
from .errors import DegreeViolation, FloerToolkitError, ParseError, ValidationError
from .heegaard import HeegaardDiagram
from .log import Log
from .novikov import LaurentComplex, make_laurent
from .rings import RingSpec

logger = Log(__name__)

GOLDEN_DIR = Path(__file__).parent / "golden"

Entry = Tuple[str, str, str, int, int]
ComplexLike = Union[GradedComplex, UComplex, JComplex, LaurentComplex]


@dataclass
class ComplexFile:
    """Contenido sintáctico de un archivo de complejo.

    Las entradas son (origen, destino, coeficiente como texto, exponente de t, línea).
    """
    ring: Optional[str] = None
    ring_line: int = 0
    deg_t: Optional[int] = None
    gens: List[Tuple[str, int, int]] = field(default_factory=list)
    diff: List[Entry] = field(default_factory=list)
    umap: List[Entry] = field(default_factory=list)
    jmap: List[Entry] = field(default_factory=list)

    @property
    def kind(self) -> str:
        if self.deg_t is not None:
            return 'laurent'
        if self.umap:
            return 'ucomplex'
        if self.jmap:
            return 'jcomplex'
        return 'complex'

    def _lines(self) -> Dict[Tuple[str, str], int]:
        lines = {}
        for src, tgt, _, _, line in self.diff + self.umap + self.jmap:
            lines.setdefault((src, tgt), line)
        return lines

    def _coefficients(self, entries: List[Entry], spec: RingSpec, laurent: bool):
        K = spec.arithmetic
        out = []
        for src, tgt, text, k, line in entries:
            try:
                c = K.parse(text)
            except ValueError as e:
                raise ParseError(line, f"coeficiente inválido '{text}' para {spec}.") from e
            if k and not laurent:
                raise ParseError(line, "los exponentes de t sólo se admiten con deg_t.")
            out.append((src, tgt, c, k) if laurent else (src, tgt, c))
        return out

    def build(self) -> ComplexLike:
        """Construye y valida el objeto descrito.

        Raises:
            ParseError: Si falta el anillo o un coeficiente no es válido.
            ValidationError: Si el objeto no es válido (con la línea de la entrada culpable si se conoce).
        """
        if self.ring is None:
            raise ParseError(1, "falta la línea 'ring'.")
        try:
            spec = RingSpec.parse(self.ring)
        except ValueError as e:
            raise ParseError(self.ring_line, str(e)) from e
        laurent = self.deg_t is not None
        if laurent and (self.umap or self.jmap):
            line = (self.umap or self.jmap)[0][4]
            raise ParseError(line, "un complejo de Laurent no admite umap ni jmap.")
        if self.umap and self.jmap:
            raise ParseError(self.jmap[0][4], "un archivo no puede declarar umap y jmap a la vez.")
        gens = [(gid, deg) for gid, deg, _ in self.gens]
        diff = self._coefficients(self.diff, spec, laurent)
        try:
            if laurent:
                return make_laurent(spec, gens, diff, deg_t=self.deg_t)
            base = make_complex(spec, gens, diff)
            if self.umap:
                return make_ucomplex(base, self._coefficients(self.umap, spec, False))
            if self.jmap:
                return make_jcomplex(base, self._coefficients(self.jmap, spec, False))
            return base
        except ParseError:
            raise
        except FloerToolkitError as e:
            line = None
            if isinstance(e, DegreeViolation) and isinstance(e.entry, tuple) and len(e.entry) >= 2:
                line = self._lines().get((e.entry[0], e.entry[1]))
            logger.error(f"Invalid complex file: {e}")
            raise ValidationError(line, str(e)) from e


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} debe ser un entero; se leyó '{token}'.") from None


def read_complex_file(text: str) -> ComplexFile:
    """Análisis sintáctico de un archivo de complejo (sin validar el objeto)."""
    doc = ComplexFile()
    seen = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == 'ring':
            if len(tokens) != 2:
                raise ParseError(number, "se esperaba 'ring NOMBRE'.")
            doc.ring, doc.ring_line = tokens[1], number
        elif head == 'deg_t':
            if len(tokens) != 2:
                raise ParseError(number, "se esperaba 'deg_t ENTERO'.")
            doc.deg_t = _int(tokens[1], number, "deg_t")
        elif head == 'gen':
            if len(tokens) != 3:
                raise ParseError(number, "se esperaba 'gen ID GRADO'.")
            if tokens[1] in seen:
                raise ParseError(number, f"generador '{tokens[1]}' ya declarado en la línea {seen[tokens[1]]}.")
            seen[tokens[1]] = number
            doc.gens.append((tokens[1], _int(tokens[2], number, "el grado"), number))
        elif head in ('diff', 'umap', 'jmap'):
            if len(tokens) not in (4, 5):
                raise ParseError(number, f"se esperaba '{head} ORIGEN DESTINO COEF [t^K]'.")
            k = 0
            if len(tokens) == 5:
                if not tokens[4].startswith('t^'):
                    raise ParseError(number, f"factor de t inválido '{tokens[4]}'.")
                k = _int(tokens[4][2:], number, "el exponente de t")
            for gid in tokens[1:3]:
                if gid not in seen:
                    raise ParseError(number, f"generador '{gid}' no declarado.")
            getattr(doc, head).append((tokens[1], tokens[2], tokens[3], k, number))
        else:
            raise ParseError(number, f"palabra clave desconocida '{head}'.")
    return doc


def parse_complex_file(text: str) -> ComplexLike:
    """Lee un archivo de complejo y devuelve el objeto validado.

    Raises:
        ParseError: Error de sintaxis con número de línea.
        ValidationError: Objeto inválido.
    """
    return read_complex_file(text).build()


def load_complex(path) -> ComplexLike:
    """Lee un archivo de complejo desde disco (admite nombres del corpus dorado)."""
    path = resolve_path(path)
    logger.debug(f"Loading complex file {path}")
    return parse_complex_file(path.read_text(encoding='utf-8'))


def resolve_path(path) -> Path:
    """Ruta tal cual si existe; si no, un nombre del corpus dorado (con o sin extensión)."""
    p = Path(path)
    if p.exists():
        return p
    for candidate in (GOLDEN_DIR / p.name, GOLDEN_DIR / f"{p.name}.cx", GOLDEN_DIR / f"{p.name}.hd"):
        if candidate.exists():
            return candidate
    raise FileNotFoundError(f"No existe el archivo '{path}'.")


##### Emisión Canónica #####

def _emit_entries(keyword: str, triples, K) -> List[str]:
    return [f"{keyword} {s} {t} {K.format(c)}" for s, t, c in triples]


def emit_complex_file(obj: ComplexLike) -> str:
    """Texto canónico: anillo, deg_t, generadores en orden (grado, id) y entradas en orden de origen."""
    if isinstance(obj, LaurentComplex):
        K = obj.ring.arithmetic
        lines = [f"ring {obj.ring}", f"deg_t {obj.deg_t}"]
        lines += [f"gen {g.id} {g.degree}" for g in obj.gens]
        for s, t, poly in obj.entries():
            for k, c in poly.terms():
                suffix = f" t^{k}" if k else ""
                lines.append(f"diff {s} {t} {K.format(c)}{suffix}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, (UComplex, JComplex)):
        base = obj.base
    else:
        base = obj
    K = base.ring.arithmetic
    lines = [f"ring {base.ring}"]
    lines += [f"gen {g.id} {g.degree}" for g in base.gens]
    lines += _emit_entries('diff', base.entries(), K)
    if isinstance(obj, UComplex):
        lines += _emit_entries('umap', obj.U.entries(), K)
    elif isinstance(obj, JComplex):
        lines += _emit_entries('jmap', obj.J.entries(), K)
    return "\n".join(lines) + "\n"


def canonicalize(text: str) -> str:
    return emit_complex_file(parse_complex_file(text))


##### Diagramas #####

def parse_diagram_file(text: str) -> HeegaardDiagram:
    """Lee ``genus G`` y líneas ``point I J ID +|-``.

    Raises:
        ParseError: Error de sintaxis con número de línea.
        ValidationError: Diagrama inválido.
    """
    genus = None
    points: Dict[Tuple[int, int], List[Tuple[str, int]]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == 'genus' and len(tokens) == 2:
            genus = _int(tokens[1], number, "el género")
        elif tokens[0] == 'point' and len(tokens) == 5:
            if tokens[4] not in ('+', '-'):
                raise ParseError(number, f"signo inválido '{tokens[4]}'; use + o -.")
            i, j = _int(tokens[1], number, "i"), _int(tokens[2], number, "j")
            points.setdefault((i, j), []).append((tokens[3], 1 if tokens[4] == '+' else -1))
        else:
            raise ParseError(number, f"línea de diagrama inválida '{line}'.")
    if genus is None:
        raise ParseError(1, "falta la línea 'genus'.")
    return HeegaardDiagram(genus, {key: tuple(pts) for key, pts in points.items()})


def emit_diagram_file(D: HeegaardDiagram) -> str:
    lines = [f"genus {D.genus}"]
    for (i, j), pts in sorted(D.points.items()):
        lines += [f"point {i} {j} {pid} {'+' if s > 0 else '-'}" for pid, s in pts]
    return "\n".join(lines) + "\n"


def load_diagram(path) -> HeegaardDiagram:
    path = resolve_path(path)
    return parse_diagram_file(path.read_text(encoding='utf-8'))
