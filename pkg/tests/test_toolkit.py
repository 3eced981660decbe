import pandas as pd
import pytest

from floertoolkit.equivariant import UComplex
from floertoolkit.errors import FloerToolkitError, WindowTooSmall
from floertoolkit.heegaard import HeegaardDiagram
from floertoolkit.rings import QQ_RING
from floertoolkit.reports import CheckResult


def nonzero_degrees(frame):
    return sorted(frame.loc[frame['rank'] > 0, 'degree'])


##### Carga y Homología #####

def test_load(toolkit):
    assert isinstance(toolkit.load('cp1_hopf'), UComplex)
    assert isinstance(toolkit.load('lens5'), HeegaardDiagram)


def test_load_missing_file(toolkit):
    with pytest.raises(FileNotFoundError):
        toolkit.load('missing.cx')


def test_homology_table(toolkit):
    frame = toolkit.homology_table('z2_moore')
    assert frame.set_index('degree').loc[1, 'torsion'] == "2"
    assert nonzero_degrees(frame) == [0]


def test_homology_table_of_ucomplex_uses_base(toolkit, cp1):
    assert nonzero_degrees(toolkit.homology_table(cp1)) == [0, 2]


def test_homology_table_of_laurent(toolkit):
    assert nonzero_degrees(toolkit.homology_table('s1xs2_sK')) == [0]


def test_sbundle(toolkit):
    assert nonzero_degrees(toolkit.sbundle('cp1_hopf')) == [0, 3]
    assert nonzero_degrees(toolkit.sbundle('cp2_hopf')) == [0, 5]


def test_sbundle_requires_ucomplex(toolkit):
    with pytest.raises(FloerToolkitError):
        toolkit.sbundle('z2_moore')


def test_jones(toolkit):
    assert nonzero_degrees(toolkit.jones('free_circle', 'hat', (-20, 4))) == [0, 1]
    assert nonzero_degrees(toolkit.jones('cp1_hopf', 'plus')) == [0, 2]


def test_jones_window_too_small(toolkit):
    with pytest.raises(WindowTooSmall):
        toolkit.jones('free_circle', 'plus', (0, 3))


def test_flavors(toolkit):
    out = toolkit.flavors('s1xs2_sK')
    ranks = out['ranks'].set_index('degree')
    assert list(ranks.columns) == ['minus', 'infty', 'plus', 'hat']
    assert ranks.loc[-2, 'hat'] == 1 and ranks['hat'].sum() == 1
    assert ranks.loc[4, 'plus'] == 1 and ranks.loc[4, 'minus'] == 0
    assert out['pair_les']['exact'].all()


def test_flavors_requires_laurent(toolkit):
    with pytest.raises(FloerToolkitError):
        toolkit.flavors('cp1_hopf')


def test_consum(toolkit):
    out = toolkit.consum('cp1_hopf', 'cp1_hopf', 'plus', (-8, 8))
    assert out['passed']
    assert out['identity']['match'].all()


def test_heegaard(toolkit):
    row = toolkit.heegaard('lens5').iloc[0]
    assert (row['generators'], row['signed_count'], row['order_H1']) == (5, 5, 5)


##### Comprobaciones #####

def test_verify_ucomplex(toolkit):
    results = toolkit.verify('cp1_hopf')
    assert [r.name for r in results][:2] == ['cone_les', 'flavor_recovery']
    assert len(results) == 10
    assert all(r.passed for r in results)


def test_verify_laurent(toolkit):
    results = toolkit.verify('s1xs2_sK')
    assert [r.name for r in results] == ['semipositive', 'pair_les', 'hat_les', 'su_acyclic']
    assert all(r.passed for r in results)


def test_verify_jcomplex(toolkit):
    results = toolkit.verify('free_circle')
    assert [r.name for r in results] == ['fundamental_ses'] + [f'window_stability_{f}' for f in
                                                             ('minus', 'infty', 'plus', 'hat')]
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_verify_diagram(toolkit):
    assert [r.status for r in toolkit.verify('s1xs2')] == ['PASS', 'PASS']


def test_golden(toolkit):
    results = toolkit.golden()
    assert [r.name for r in results] == sorted(r.name for r in results)
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_golden_table(toolkit):
    table = toolkit.golden_table()
    assert table.loc[table['degree'] == -2, 'hat'].item() == 1


def test_check_result_trailer():
    assert CheckResult('ladder', True).trailer() == "CHECK ladder PASS"
    assert CheckResult('ladder', False, "x").status == "FAIL"


##### Exportación y Configuración #####

def test_export_csv(toolkit, tmp_path):
    path = toolkit.export_report(toolkit.homology_table('z2_moore'), tmp_path / "moore.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ['degree', 'rank', 'torsion']


def test_export_xlsx(toolkit, tmp_path):
    results = [CheckResult('a', True), CheckResult('b', False, "grado 2")]
    path = toolkit.export_report(results, tmp_path / "checks.xlsx")
    frame = pd.read_excel(path, engine='openpyxl')
    assert list(frame['status']) == ['PASS', 'FAIL']


def test_export_unknown_suffix(toolkit, tmp_path):
    with pytest.raises(ValueError):
        toolkit.export_report(pd.DataFrame(), tmp_path / "table.json")


def test_change_ring(toolkit):
    toolkit.change_ring('QQ')
    assert toolkit.ring == QQ_RING
    assert toolkit.window == (-12, 12)
