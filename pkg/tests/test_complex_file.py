import pytest

from floertoolkit.complex_file import (GOLDEN_DIR, canonicalize, emit_complex_file, emit_diagram_file,
                                       load_complex, load_diagram, parse_complex_file, parse_diagram_file,
                                       read_complex_file, resolve_path)
from floertoolkit.complexes import GradedComplex, homology
from floertoolkit.equivariant import JComplex, UComplex
from floertoolkit.errors import ParseError, ValidationError
from floertoolkit.heegaard import lens_space_diagram
from floertoolkit.novikov import LaurentComplex


##### Corpus Dorado #####

@pytest.mark.parametrize("name,kind", [
    ('cp1_hopf', UComplex),
    ('cp2_hopf', UComplex),
    ('free_circle', JComplex),
    ('s1xs2_sK', LaurentComplex),
    ('z2_moore', GradedComplex),
])
def test_load_golden_complexes(name, kind):
    assert isinstance(load_complex(name), kind)


def test_golden_moore_space():
    H = homology(load_complex('z2_moore.cx'))
    assert H.ranks() == {0: 1}
    assert H.torsion(1) == (2,)


def test_golden_diagrams():
    assert load_diagram('lens5') == lens_space_diagram(5)
    assert load_diagram('s1xs2').point_count == 2


def test_file_kind():
    assert read_complex_file("ring Z\ngen a 0\n").kind == 'complex'
    assert read_complex_file("ring Zmod2\ndeg_t 0\ngen a 0\n").kind == 'laurent'


##### Errores de Sintaxis #####

@pytest.mark.parametrize("text,line", [
    ("ring Z\ngen a 0\nfoo a\n", 3),
    ("ring Z\ngen a x\n", 2),
    ("ring Z\ngen a 0\ngen a 1\n", 3),
    ("ring Z\ngen a 1\n\ndiff a b 1\n", 4),
    ("ring Z\ngen a 1\ngen b 0\ndiff a b 1/2\n", 4),
    ("ring Z\ngen a 1\ngen b 0\ndiff a b 1 t^1\n", 4),
    ("ring Z\ngen a 1\ngen b 0\ndiff a b 1 s^1\n", 4),
    ("ring Q[t,t^-1]\n# comentario\nring Foo\n", 3),
    ("gen a 0\n", 1),
    ("ring Zmod2\ndeg_t -2\ngen a 0\numap a a 1\n", 4),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_complex_file(text)
    assert info.value.line == line


def test_validation_error_points_at_entry():
    with pytest.raises(ValidationError) as info:
        parse_complex_file("ring Z\ngen a 2\ngen b 0\ndiff a b 1\n")
    assert info.value.line == 4


def test_validation_error_for_nonzero_square():
    with pytest.raises(ValidationError):
        parse_complex_file("ring Z\ngen a 2\ngen b 1\ngen c 0\ndiff a b 1\ndiff b c 1\n")


##### Emisión Canónica #####

def test_canonical_order():
    text = "ring Z\ngen e2 2   # celda superior\ngen e0 0\numap e2 e0 1\n"
    assert canonicalize(text) == "ring Z\ngen e0 0\ngen e2 2\numap e2 e0 1\n"


def test_canonicalize_is_idempotent():
    for path in sorted(GOLDEN_DIR.glob('*.cx')):
        once = canonicalize(path.read_text(encoding='utf-8'))
        assert canonicalize(once) == once


def test_emit_laurent_terms():
    L = parse_complex_file("ring Zmod2\ndeg_t 0\ngen a 1\ngen b 0\ndiff a b 1\ndiff a b 1 t^1\n")
    assert emit_complex_file(L) == "ring Zmod2\ndeg_t 0\ngen b 0\ngen a 1\ndiff a b 1\ndiff a b 1 t^1\n"


def test_diagram_round_trip():
    D = lens_space_diagram(3)
    assert parse_diagram_file(emit_diagram_file(D)) == D


@pytest.mark.parametrize("text", ["point 1 1 x +\n", "genus 1\npoint 1 1 x *\n", "genus 1\npoint a 1 x +\n"])
def test_diagram_parse_errors(text):
    with pytest.raises(ParseError):
        parse_diagram_file(text)


def test_diagram_validation_error():
    with pytest.raises(ValidationError):
        parse_diagram_file("genus 1\npoint 2 1 x +\n")


##### Rutas #####

def test_resolve_path(tmp_path):
    target = tmp_path / "mine.cx"
    target.write_text("ring Q\ngen a 0\n", encoding='utf-8')
    assert resolve_path(target) == target
    assert resolve_path('lens5') == GOLDEN_DIR / 'lens5.hd'
    assert resolve_path('cp1_hopf.cx') == GOLDEN_DIR / 'cp1_hopf.cx'


def test_resolve_missing_path():
    with pytest.raises(FileNotFoundError):
        resolve_path('no_such_complex')
