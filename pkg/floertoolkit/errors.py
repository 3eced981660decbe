##### Excepciones del Toolkit #####


class FloerToolkitError(ValueError):
    """Clase base para todos los errores de validación y cálculo del toolkit."""


class UnsupportedRing(FloerToolkitError):
    """El anillo de coeficientes no admite la operación solicitada (p. ej. SNF sobre Z[t,t^-1])."""


class RingMismatch(FloerToolkitError):
    """Dos objetos que deben compartir anillo de coeficientes no lo hacen."""


class DimensionMismatch(FloerToolkitError):
    """Dimensiones incompatibles entre matrices o vectores."""


class DegreeViolation(FloerToolkitError):
    """Una entrada de un mapa no respeta el grado declarado."""

    def __init__(self, entry, message=None):
        self.entry = entry
        super().__init__(message or f"La entrada {entry} viola la graduación.")


class NotADifferential(FloerToolkitError):
    """El cuadrado del diferencial no es cero."""

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"∂² no se anula sobre el generador '{witness}'.")


class NotChainMap(FloerToolkitError):
    """El mapa no conmuta (o anticonmuta) con los diferenciales."""

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"El mapa no es de cadenas; testigo '{witness}'.")


class NotExact(FloerToolkitError):
    """Una sucesión que debía ser exacta falla en un grado y posición concretos."""

    def __init__(self, degree, position, message=None):
        self.degree = degree
        self.position = position
        super().__init__(message or f"La sucesión no es exacta en grado {degree}, posición {position}.")


class NotIntertwining(FloerToolkitError):
    """f U₁ − U₂ f no coincide con ∂h + h∂ para la homotopía suministrada."""

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"El mapa no entrelaza los mapas U; testigo '{witness}'.")


class WindowTooSmall(FloerToolkitError):
    """La ventana de grados no deja ningún grado seguro."""

    def __init__(self, window, message=None):
        self.window = window
        super().__init__(message or f"La ventana {window} no tiene rango seguro.")


class SemiPositivityRequired(FloerToolkitError):
    """El diferencial contiene potencias negativas de t."""

    def __init__(self, violations, message=None):
        self.violations = violations
        super().__init__(message or f"El diferencial no es semi-positivo: {violations}.")


class NotDegreewiseFinite(FloerToolkitError):
    """El complejo materializado tendría infinitos generadores en un mismo grado."""


class InternalMismatch(FloerToolkitError):
    """Dos cálculos independientes del mismo valor no coinciden."""


class ParseError(FloerToolkitError):
    """Error de sintaxis en un archivo de complejo o diagrama."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"Línea {line}: {message}")


class ValidationError(FloerToolkitError):
    """El archivo es sintácticamente correcto pero describe un objeto inválido."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"Línea {line}: {message}" if line else message)
