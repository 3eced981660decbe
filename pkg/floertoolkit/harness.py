##### Comprobaciones por Lotes: verify y golden #####

import json
from typing import Callable, Dict, List, Tuple

import pandas as pd

from .complex_file import GOLDEN_DIR, load_complex, load_diagram
from .complexes import GradedComplex, homology
from .connect_sum import ladder_compare, u_vs_t_action, verify_e_su_identity
from .equivariant import (MODULE_FLAVORS, DegreeWindow, Flavor, JComplex, UComplex, cone_compare,
                          flavor_homology, flavor_recovery, fundamental_ses, s_bundle)
from .errors import FloerToolkitError
from .heegaard import HeegaardDiagram, analyze_diagram
from .log import Log
from .novikov import (CutLevel, LaurentComplex, check_semipositive, filtered_flavors, hat_les,
                      laurent_homology, pair_les, su_of_laurent)
from .reports import CheckResult, rank_table

logger = Log(__name__)

Task = Tuple[str, Callable[[], CheckResult]]


def run_task(task: Task) -> CheckResult:
    """Ejecuta una comprobación; un error del dominio se convierte en FAIL con su mensaje."""
    name, fn = task
    try:
        return fn()
    except FloerToolkitError as e:
        logger.error(f"Check {name} raised {type(e).__name__}: {e}")
        return CheckResult(name, False, f"{type(e).__name__}: {e}")


def _nonzero(report) -> Dict[str, int]:
    return {str(n): r for n, r in report.ranks().items()}


def _torsion(report) -> Dict[str, list]:
    return {str(n): [int(d) for d in g.torsion] for n, g in report.nonzero().items() if g.torsion}


##### verify #####

def verify_tasks(obj, window=(-12, 12), cut: int = 1) -> List[Task]:
    """Invariantes aplicables al objeto, en orden canónico."""
    window = DegreeWindow.of(window)
    tasks: List[Task] = []

    def check(name):
        def register(fn):
            tasks.append((name, fn))
            return fn
        return register

    if isinstance(obj, UComplex):
        C = obj

        @check("cone_les")
        def _():
            report = cone_compare(C)
            return CheckResult("cone_les", report.passed, f"sign={report.sign}")

        @check("flavor_recovery")
        def _():
            return CheckResult("flavor_recovery", flavor_recovery(C, window).passed)

        for flavor in Flavor:
            @check(f"e_su_identity_{flavor.value}")
            def _(flavor=flavor):
                report = verify_e_su_identity(C, flavor, window)
                detail = ", ".join(f"degree {n}: {a.rank} vs {b.rank}" for n, a, b in report.mismatches)
                return CheckResult(f"e_su_identity_{flavor.value}", report.passed, detail)

        for flavor in MODULE_FLAVORS:
            @check(f"u_vs_t_{flavor.value}")
            def _(flavor=flavor):
                report = u_vs_t_action(C, flavor, window)
                return CheckResult(f"u_vs_t_{flavor.value}", report.passed,
                                   f"degrees {report.discrepancies}" if report.discrepancies else "")

        @check("ladder")
        def _():
            return CheckResult("ladder", ladder_compare(C, window).passed)

    elif isinstance(obj, JComplex):
        S = obj

        @check("fundamental_ses")
        def _():
            les = fundamental_ses(S, window)
            return CheckResult("fundamental_ses", les.is_exact,
                               "; ".join(f"{n.degree}{n.position}" for n in les.failures()))

        # La homología en el rango seguro no cambia al ensanchar la ventana.
        wide = DegreeWindow(window.lo - 4, window.hi + 4)
        for flavor in Flavor:
            @check(f"window_stability_{flavor.value}")
            def _(flavor=flavor):
                narrow = flavor_homology(S, flavor, window)
                grown = flavor_homology(S, flavor, wide).restrict(window.safe_degrees())
                moved = [n for n in window.safe_degrees() if narrow.group(n) != grown.group(n)]
                return CheckResult(f"window_stability_{flavor.value}", not moved,
                                   f"degrees {moved}" if moved else "")

    elif isinstance(obj, LaurentComplex):
        L = obj

        @check("semipositive")
        def _():
            ok, violations = check_semipositive(L)
            return CheckResult("semipositive", ok, str(violations) if violations else "")

        if L.deg_t < 0:
            @check("pair_les")
            def _():
                les = pair_les(L, CutLevel(cut), window)
                return CheckResult("pair_les", les.is_exact)

            @check("hat_les")
            def _():
                les = hat_les(L, CutLevel(cut), window)
                return CheckResult("hat_les", les.is_exact)

        if L.deg_t == -2 and L.ring.base_is_field:
            @check("su_acyclic")
            def _():
                return CheckResult("su_acyclic", laurent_homology(su_of_laurent(L)).is_acyclic())

    elif isinstance(obj, GradedComplex):
        C = obj

        @check("differential")
        def _():
            C.validate()
            return CheckResult("differential", True)

    elif isinstance(obj, HeegaardDiagram):
        D = obj

        @check("determinant_formula")
        def _():
            report = analyze_diagram(D)
            return CheckResult("determinant_formula", report.signed == report.determinant,
                               f"signed={report.signed} det={report.determinant}")

        @check("permanent")
        def _():
            report = analyze_diagram(D)
            return CheckResult("permanent", report.generators == report.permanent,
                               f"generators={report.generators} permanent={report.permanent}")
    return tasks


##### golden #####

def load_expected() -> dict:
    with open(GOLDEN_DIR / "expected.json", encoding='utf-8') as f:
        return json.load(f)


def compute_tables(name: str, spec: dict) -> dict:
    """Recalcula la entrada ``name`` del corpus con los mismos campos que expected.json."""
    kind = spec['kind']
    if kind == 'diagram':
        report = analyze_diagram(load_diagram(GOLDEN_DIR / name))
        return {'kind': kind, 'generators': report.generators, 'signed_count': report.signed,
                'b1': report.homology.b1, 'order': report.homology.order}
    obj = load_complex(GOLDEN_DIR / name)
    out = {key: spec[key] for key in ('kind', 'window', 'cut') if key in spec}
    if kind == 'laurent':
        flavors = filtered_flavors(obj, CutLevel(spec.get('cut', 1)), spec['window'])
        out['ranks'] = {flavor: _nonzero(report) for flavor, report in flavors.items()}
    elif kind == 'jcomplex':
        out['ranks'] = {f.value: _nonzero(flavor_homology(obj, f, spec['window'])) for f in Flavor}
    elif kind == 'ucomplex':
        out['ranks'] = {'homology': _nonzero(homology(obj.base)), 'sbundle': _nonzero(homology(s_bundle(obj).base))}
    else:
        H = homology(obj)
        out['ranks'] = {'homology': _nonzero(H)}
        out['torsion'] = {'homology': _torsion(H)}
    return out


def golden_tasks() -> List[Task]:
    expected = load_expected()
    tasks: List[Task] = []
    for name in sorted(expected):
        def fn(name=name):
            got = compute_tables(name, expected[name])
            want = expected[name]
            diffs = [key for key in sorted(set(want) | set(got)) if want.get(key) != got.get(key)]
            return CheckResult(f"golden_{name.rsplit('.', 1)[0]}", not diffs,
                               f"differs in {diffs}" if diffs else "")
        tasks.append((f"golden_{name.rsplit('.', 1)[0]}", fn))
    return tasks


def flavor_table(name: str = "s1xs2_sK.cx") -> pd.DataFrame:
    """Tabla de rangos de los cuatro sabores filtrados de un archivo de Laurent del corpus."""
    spec = load_expected()[name]
    window = DegreeWindow.of(spec['window'])
    flavors = filtered_flavors(load_complex(GOLDEN_DIR / name), CutLevel(spec.get('cut', 1)), window)
    degrees = sorted(set(window.safe_degrees()) | set(flavors["hat"].ranks()))
    return rank_table(flavors, degrees)
