##### Anillos de Coeficientes Exactos #####

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

from sympy import QQ, Rational

from .errors import UnsupportedRing


class BaseRing(str, Enum):
    """Anillos base admitidos: Z/2, Z y Q."""
    ZMOD2 = "Zmod2"
    Z = "Z"
    Q = "Q"


_ALIASES = {
    'zmod2': BaseRing.ZMOD2, 'z/2': BaseRing.ZMOD2, 'z/2z': BaseRing.ZMOD2, 'f2': BaseRing.ZMOD2,
    'gf2': BaseRing.ZMOD2, 'gf(2)': BaseRing.ZMOD2,
    'z': BaseRing.Z, 'zz': BaseRing.Z,
    'q': BaseRing.Q, 'qq': BaseRing.Q,
}

_LAURENT_SUFFIX = "[t,t^-1]"


@dataclass(frozen=True)
class RingSpec:
    """Elección del anillo de coeficientes exacto.

    Attributes:
        base (BaseRing): Anillo base.
        laurent (bool): Si se trabaja sobre base[t, t^-1].
    """
    base: BaseRing
    laurent: bool = False

    @classmethod
    def parse(cls, text: str) -> 'RingSpec':
        """Interpreta textos como 'Z', 'Zmod2', 'Q[t,t^-1]'.

        Raises:
            ValueError: Si el anillo no es reconocido.
        """
        if isinstance(text, RingSpec):
            return text
        raw = str(text).strip()
        laurent = raw.replace(' ', '').endswith(_LAURENT_SUFFIX)
        if laurent:
            raw = raw.replace(' ', '')[:-len(_LAURENT_SUFFIX)]
        base = _ALIASES.get(raw.lower())
        if base is None:
            raise ValueError(f"Anillo desconocido '{text}'. Use Zmod2, Z o Q.")
        return cls(base, laurent)

    def __str__(self) -> str:
        return self.base.value + (_LAURENT_SUFFIX if self.laurent else "")

    @property
    def is_field(self) -> bool:
        return not self.laurent and self.base in (BaseRing.ZMOD2, BaseRing.Q)

    @property
    def base_is_field(self) -> bool:
        return self.base in (BaseRing.ZMOD2, BaseRing.Q)

    @property
    def admits_snf(self) -> bool:
        """Z, cualquier cuerpo y F[t,t^-1] son DIP euclídeos; Z[t,t^-1] no lo es."""
        return not (self.laurent and self.base == BaseRing.Z)

    @property
    def base_spec(self) -> 'RingSpec':
        return RingSpec(self.base, False)

    @property
    def laurent_spec(self) -> 'RingSpec':
        return RingSpec(self.base, True)

    @property
    def arithmetic(self) -> 'Ring':
        return _arithmetic(self)

    def require_snf(self, operation: str) -> None:
        """Lanza UnsupportedRing si la operación necesita forma normal de Smith."""
        if not self.admits_snf:
            raise UnsupportedRing(f"{operation} requiere un DIP euclídeo; {self} no lo es.")


##### Aritmética #####

class Ring:
    """Interfaz de aritmética exacta sobre los elementos de un anillo."""

    spec: RingSpec
    zero = 0
    one = 1

    @property
    def is_field(self) -> bool:
        return self.spec.is_field

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, value):
        """Convierte enteros, cadenas u otros números al tipo de elemento del anillo."""
        if isinstance(value, str):
            return self.parse(value)
        return self.from_int(value)

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_inverse(self, u):
        raise NotImplementedError

    def normalize(self, a) -> tuple:
        """Devuelve (forma canónica, unidad) con forma canónica = a * unidad."""
        raise NotImplementedError

    def divmod(self, a, b) -> tuple:
        """División euclídea: a = q*b + r con norm(r) < norm(b) o r = 0."""
        raise NotImplementedError

    def divides(self, b, a) -> bool:
        """True si b divide a a."""
        if self.is_zero(b):
            return self.is_zero(a)
        return self.is_zero(self.divmod(a, b)[1])

    def norm(self, a) -> int:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)


class IntegerRing(Ring):
    """Enteros de precisión arbitraria (int de Python)."""

    def __init__(self):
        self.spec = RingSpec(BaseRing.Z)

    def from_int(self, n):
        value = int(n)
        if value != n:
            raise ValueError(f"{n} no es entero.")
        return value

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def unit_inverse(self, u):
        return u

    def normalize(self, a) -> tuple:
        return (a, 1) if a >= 0 else (-a, -1)

    def divmod(self, a, b) -> tuple:
        return divmod(a, b)

    def norm(self, a) -> int:
        return abs(a)

    def parse(self, text: str):
        return int(text.strip())


class RationalField(Ring):
    """Racionales exactos con el dominio QQ de sympy."""

    def __init__(self):
        self.spec = RingSpec(BaseRing.Q)
        self.zero = QQ.zero
        self.one = QQ.one

    def from_int(self, n):
        if isinstance(n, str):
            return self.parse(n)
        return QQ.convert(n)

    def is_unit(self, a) -> bool:
        return a != 0

    def unit_inverse(self, u):
        return self.one / u

    def normalize(self, a) -> tuple:
        if a == 0:
            return a, self.one
        return self.one, self.one / a

    def divmod(self, a, b) -> tuple:
        return a / b, self.zero

    def norm(self, a) -> int:
        return int(abs(a.numerator)) + int(a.denominator)

    def parse(self, text: str):
        try:
            return QQ.from_sympy(Rational(text.strip()))
        except (TypeError, ValueError) as e:
            raise ValueError(f"Coeficiente racional inválido '{text}'.") from e

    def format(self, a) -> str:
        num, den = int(a.numerator), int(a.denominator)
        return str(num) if den == 1 else f"{num}/{den}"


class BinaryField(Ring):
    """Cuerpo Z/2 con elementos 0 y 1."""

    def __init__(self):
        self.spec = RingSpec(BaseRing.ZMOD2)

    def add(self, a, b):
        return a ^ b

    sub = add

    def mul(self, a, b):
        return a & b

    def neg(self, a):
        return a

    def from_int(self, n):
        if isinstance(n, str):
            return self.parse(n)
        value = int(n)
        if value != n:
            raise ValueError(f"{n} no es entero.")
        return value & 1

    def is_unit(self, a) -> bool:
        return a == 1

    def unit_inverse(self, u):
        return 1

    def normalize(self, a) -> tuple:
        return a, 1

    def divmod(self, a, b) -> tuple:
        return a, 0

    def norm(self, a) -> int:
        return 1

    def parse(self, text: str):
        return int(text.strip()) & 1


##### Polinomios de Laurent #####

@dataclass(frozen=True)
class LaurentPolynomial:
    """Polinomio de Laurent en t con coeficientes densos desde la valuación.

    El cero es ``coeffs == ()``; en otro caso el primer y el último coeficiente no son nulos.
    """
    valuation: int = 0
    coeffs: Tuple = ()

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def top(self) -> int:
        return self.valuation + len(self.coeffs) - 1

    def terms(self) -> Iterable[Tuple[int, object]]:
        """Pares (exponente, coeficiente) con coeficiente no nulo, en orden creciente."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.valuation + i, c

    def exponents(self) -> list:
        return [k for k, _ in self.terms()]


class LaurentRing(Ring):
    """Anillo base[t, t^-1]; euclídeo (norma = amplitud de grados) cuando la base es un cuerpo."""

    def __init__(self, base: Ring):
        self.base = base
        self.spec = base.spec.laurent_spec
        self.zero = LaurentPolynomial()
        self.one = LaurentPolynomial(0, (base.one,))

    def make(self, terms: Union[Dict[int, object], Iterable[Tuple[int, object]]]) -> LaurentPolynomial:
        """Construye un polinomio a partir de {exponente: coeficiente}."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for k, c in items:
            c = self.base.coerce(c)
            acc[k] = self.base.add(acc[k], c) if k in acc else c
        acc = {k: c for k, c in acc.items() if not self.base.is_zero(c)}
        if not acc:
            return self.zero
        lo, hi = min(acc), max(acc)
        return LaurentPolynomial(lo, tuple(acc.get(k, self.base.zero) for k in range(lo, hi + 1)))

    def monomial(self, c, k: int) -> LaurentPolynomial:
        return self.make({k: c})

    def from_int(self, n):
        return self.make({0: self.base.from_int(n)})

    def coerce(self, value):
        if isinstance(value, LaurentPolynomial):
            return value
        if isinstance(value, dict):
            return self.make(value)
        return self.make({0: self.base.coerce(value)})

    def add(self, a, b):
        acc = dict(a.terms())
        for k, c in b.terms():
            acc[k] = self.base.add(acc[k], c) if k in acc else c
        return self.make(acc)

    def neg(self, a):
        return LaurentPolynomial(a.valuation, tuple(self.base.neg(c) for c in a.coeffs))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a.is_zero or b.is_zero:
            return self.zero
        out = [self.base.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if self.base.is_zero(x):
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] = self.base.add(out[i + j], self.base.mul(x, y))
        return self.make({a.valuation + b.valuation + i: c for i, c in enumerate(out)})

    def is_zero(self, a) -> bool:
        return a.is_zero

    def is_unit(self, a) -> bool:
        return len(a.coeffs) == 1 and self.base.is_unit(a.coeffs[0])

    def unit_inverse(self, u):
        return self.monomial(self.base.unit_inverse(u.coeffs[0]), -u.valuation)

    def normalize(self, a) -> tuple:
        """Forma canónica: potencia de t eliminada y coeficiente principal normalizado (mónico sobre un cuerpo)."""
        if a.is_zero:
            return a, self.one
        _, c_unit = self.base.normalize(a.coeffs[-1])
        unit = self.monomial(c_unit, -a.valuation)
        return self.mul(a, unit), unit

    def norm(self, a) -> int:
        return max(len(a.coeffs) - 1, 0)

    def divmod(self, a, b) -> tuple:
        if not self.base.is_field:
            raise UnsupportedRing(f"La división euclídea no existe en {self.spec}.")
        if a.is_zero:
            return self.zero, self.zero
        p, q = list(a.coeffs), list(b.coeffs)
        n, m = len(p) - 1, len(q) - 1
        if n < m:
            return self.zero, a
        inv = self.base.unit_inverse(q[-1])
        s = [self.base.zero] * (n - m + 1)
        for i in range(n - m, -1, -1):
            c = self.base.mul(p[i + m], inv)
            s[i] = c
            if not self.base.is_zero(c):
                for j in range(m + 1):
                    p[i + j] = self.base.sub(p[i + j], self.base.mul(c, q[j]))
        quotient = self.make({a.valuation - b.valuation + i: c for i, c in enumerate(s)})
        remainder = self.make({a.valuation + i: c for i, c in enumerate(p[:m])})
        return quotient, remainder

    def parse(self, text: str):
        return self.make({0: self.base.parse(text)})

    def format(self, a) -> str:
        if a.is_zero:
            return "0"
        parts = []
        for k, c in a.terms():
            coef = self.base.format(c)
            if k == 0:
                parts.append(coef)
                continue
            power = "t" if k == 1 else f"t^{k}"
            if coef == "1":
                parts.append(power)
            elif coef == "-1":
                parts.append(f"-{power}")
            else:
                parts.append(f"{coef}*{power}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _arithmetic(spec: RingSpec) -> Ring:
    base = {BaseRing.Z: IntegerRing, BaseRing.Q: RationalField, BaseRing.ZMOD2: BinaryField}[spec.base]()
    return LaurentRing(base) if spec.laurent else base


ZMOD2 = RingSpec(BaseRing.ZMOD2)
ZZ_RING = RingSpec(BaseRing.Z)
QQ_RING = RingSpec(BaseRing.Q)
