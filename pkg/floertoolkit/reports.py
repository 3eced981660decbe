##### Resultados de Verificación #####

from dataclasses import dataclass
from typing import Iterable

import pandas as pd


@dataclass(frozen=True)
class CheckResult:
    """Resultado de una comprobación con nombre, veredicto y detalle legible."""
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def trailer(self) -> str:
        """Línea resumen legible por máquina: ``CHECK nombre PASS|FAIL``."""
        return f"CHECK {self.name} {self.status}"


def checks_frame(results: Iterable[CheckResult]) -> pd.DataFrame:
    rows = [{'check': r.name, 'status': r.status, 'detail': r.detail} for r in results]
    return pd.DataFrame(rows, columns=['check', 'status', 'detail'])


def rank_table(reports: dict, degrees: Iterable[int]) -> pd.DataFrame:
    """Tabla de rangos con una columna por informe de homología (p. ej. un sabor)."""
    degrees = list(degrees)
    data = {'degree': degrees}
    for name, report in reports.items():
        data[name] = [report.rank(n) for n in degrees]
    return pd.DataFrame(data)
