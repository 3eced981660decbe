##### Clase Sincrónica del Toolkit #####

from pathlib import Path
from typing import Dict, List, Union

import pandas as pd

from .base import BaseFloerToolkit
from .complex_file import ComplexLike, load_complex, load_diagram, resolve_path
from .complexes import GradedComplex, homology
from .connect_sum import product_ucomplex, s_otimes, verify_e_su_identity
from .equivariant import DegreeWindow, Flavor, JComplex, UComplex, jones_flavor, s_bundle
from .errors import FloerToolkitError
from .harness import flavor_table, golden_tasks, run_task, verify_tasks
from .heegaard import HeegaardDiagram, analyze_diagram
from .log import Log
from .novikov import CutLevel, LaurentComplex, filtered_flavors, laurent_homology, pair_les
from .reports import CheckResult, checks_frame, rank_table

logger = Log(__name__)

##### Clase para Cálculos Sincrónicos #####

class FloerToolkit(BaseFloerToolkit):
    """
    Fachada sincrónica: carga complejos y diagramas, calcula homologías y sabores y ejecuta
    las comprobaciones del corpus. Las tablas se devuelven como ``pandas.DataFrame``.
    """

    ###### Carga ######

    def load(self, path) -> Union[ComplexLike, HeegaardDiagram]:
        """
        Carga un archivo de complejo (.cx) o de diagrama (.hd).

        Args:
            path (str | Path): Ruta o nombre de un archivo del corpus dorado.

        Returns:
            GradedComplex | UComplex | JComplex | LaurentComplex | HeegaardDiagram: Objeto validado.

        Raises:
            FileNotFoundError: Si el archivo no existe.
            ParseError: Si el archivo tiene errores de sintaxis.
            ValidationError: Si el objeto descrito no es válido.

        Example:
            >>> toolkit.load('cp1_hopf')
        """
        try:
            resolved = resolve_path(path)
            if resolved.suffix == '.hd':
                obj = load_diagram(resolved)
            else:
                obj = load_complex(resolved)
            logger.info(f"Loaded {type(obj).__name__} from {resolved}")
            return obj
        except (FileNotFoundError, FloerToolkitError) as e:
            logger.error(f"Error loading {path}: {e}")
            raise

    def _coerce(self, obj):
        return self.load(obj) if isinstance(obj, (str, Path)) else obj

    ###### Homología ######

    def homology_table(self, obj) -> pd.DataFrame:
        """
        Homología grado a grado (rango y torsión).

        Para un UComplex o JComplex se usa el complejo subyacente; para un LaurentComplex,
        la homología sobre F[t,t^-1] por grado residual.

        Args:
            obj: Objeto o ruta a un archivo.

        Returns:
            pd.DataFrame: Columnas degree, rank y torsion.
        """
        try:
            obj = self._coerce(obj)
            if isinstance(obj, LaurentComplex):
                return laurent_homology(obj).to_frame()
            base = obj.base if isinstance(obj, (UComplex, JComplex)) else obj
            if not isinstance(base, GradedComplex):
                raise FloerToolkitError(f"No se puede calcular homología de {type(obj).__name__}.")
            return homology(base).to_frame()
        except FloerToolkitError as e:
            logger.error(f"Error computing homology: {e}")
            raise

    def sbundle(self, obj) -> pd.DataFrame:
        """
        Homología del fibrado S_U(C) de un UComplex.

        Raises:
            FloerToolkitError: Si el objeto no es un UComplex.
        """
        try:
            obj = self._coerce(obj)
            if not isinstance(obj, UComplex):
                raise FloerToolkitError("sbundle requiere un archivo con umap.")
            return homology(s_bundle(obj).base).to_frame()
        except FloerToolkitError as e:
            logger.error(f"Error computing S_U bundle: {e}")
            raise

    def jones(self, obj, flavor='plus', window=None) -> pd.DataFrame:
        """
        Homología de un sabor de Jones E^•(S) en el rango seguro.

        Args:
            obj: JComplex o UComplex (se usa S_U(C)), u otra ruta.
            flavor (str): 'minus', 'infty', 'plus' o 'hat'.
            window (tuple, opcional): Ventana de grados; por defecto la de la configuración.

        Raises:
            WindowTooSmall: Si la ventana no tiene rango seguro.
        """
        try:
            obj = self._coerce(obj)
            window = DegreeWindow.of(window or self.window)
            S = s_bundle(obj) if isinstance(obj, UComplex) else obj
            if not isinstance(S, JComplex):
                raise FloerToolkitError("jones requiere un archivo con jmap o umap.")
            E = jones_flavor(S, flavor, window)
            return homology(E, window.safe_degrees()).to_frame()
        except FloerToolkitError as e:
            logger.error(f"Error computing Jones flavor {flavor}: {e}")
            raise

    def flavors(self, obj, cut=None, window=None) -> Dict[str, pd.DataFrame]:
        """
        Sabores filtrados minus/infty/plus/hat y la sucesión del par de un LaurentComplex.

        Returns:
            dict: {'ranks': tabla de rangos por sabor, 'pair_les': nodos de la sucesión del par}.
        """
        try:
            obj = self._coerce(obj)
            if not isinstance(obj, LaurentComplex):
                raise FloerToolkitError("flavors requiere un archivo con deg_t.")
            cut = CutLevel(self.engine_config['cut_offset'] if cut is None else cut)
            window = DegreeWindow.of(window or self.window)
            reports = filtered_flavors(obj, cut, window)
            degrees = sorted(set(window.safe_degrees()) | set(reports['hat'].ranks()))
            return {'ranks': rank_table(reports, degrees), 'pair_les': pair_les(obj, cut, window).to_frame()}
        except FloerToolkitError as e:
            logger.error(f"Error computing filtered flavors: {e}")
            raise

    def consum(self, first, second, flavor='plus', window=None) -> Dict[str, pd.DataFrame]:
        """
        S_⊗^• del producto de dos UComplex y comprobación de E^•S_U = S_{U+u}(C⊗V^•).

        Returns:
            dict: {'homology': homología de S_⊗^•, 'identity': tabla de la comparación}.
        """
        try:
            C1, C2 = self._coerce(first), self._coerce(second)
            if not (isinstance(C1, UComplex) and isinstance(C2, UComplex)):
                raise FloerToolkitError("consum requiere dos archivos con umap.")
            window = DegreeWindow.of(window or self.window)
            product = product_ucomplex(C1, C2).product
            S = s_otimes(product, Flavor(flavor), window)
            identity = verify_e_su_identity(product, flavor, window)
            logger.info(f"Connected sum flavor {flavor}: identity passed={identity.passed}")
            return {'homology': homology(S, window.safe_degrees()).to_frame(), 'identity': identity.to_frame(),
                    'passed': identity.passed}
        except FloerToolkitError as e:
            logger.error(f"Error computing connected sum: {e}")
            raise

    def heegaard(self, diagram) -> pd.DataFrame:
        """
        Generadores, conteo con signo, determinante, permanente y H₁ de un diagrama.

        Example:
            >>> toolkit.heegaard('lens5')
        """
        try:
            D = self._coerce(diagram)
            if not isinstance(D, HeegaardDiagram):
                raise FloerToolkitError("heegaard requiere un archivo de diagrama.")
            return analyze_diagram(D).to_frame()
        except FloerToolkitError as e:
            logger.error(f"Error analyzing diagram: {e}")
            raise

    ###### Comprobaciones ######

    def verify(self, obj) -> List[CheckResult]:
        """
        Ejecuta todas las comprobaciones aplicables al objeto, en orden canónico.

        Returns:
            list[CheckResult]: Un resultado por invariante.
        """
        obj = self._coerce(obj)
        results = [run_task(task) for task in verify_tasks(obj, self.window, self.engine_config['cut_offset'])]
        failed = [r.name for r in results if not r.passed]
        if failed:
            logger.warning(f"Verification failures: {failed}")
        return results

    def golden(self) -> List[CheckResult]:
        """Recalcula el corpus dorado y lo compara con expected.json."""
        results = [run_task(task) for task in golden_tasks()]
        logger.info(f"Golden corpus: {sum(r.passed for r in results)}/{len(results)} passed")
        return results

    def golden_table(self) -> pd.DataFrame:
        return flavor_table()

    ###### Exportación ######

    def export_report(self, table: Union[pd.DataFrame, List[CheckResult]], path) -> Path:
        """
        Exporta una tabla a CSV o XLSX según la extensión.

        Args:
            table (pd.DataFrame | list[CheckResult]): Tabla o resultados de comprobaciones.
            path (str | Path): Archivo destino (.csv o .xlsx).

        Raises:
            ValueError: Si la extensión no es .csv ni .xlsx.
        """
        path = Path(path)
        frame = table if isinstance(table, pd.DataFrame) else checks_frame(table)
        try:
            if path.suffix == '.csv':
                frame.to_csv(path, index=False)
            elif path.suffix == '.xlsx':
                frame.to_excel(path, index=False, engine='openpyxl')
            else:
                raise ValueError(f"Extensión no soportada '{path.suffix}'. Use .csv o .xlsx.")
            logger.info(f"Report exported to {path}")
            return path
        except (OSError, ValueError) as e:
            logger.error(f"Error exporting report to {path}: {e}")
            raise
