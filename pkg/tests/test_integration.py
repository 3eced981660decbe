import pandas as pd
import pytest

from floertoolkit.cli import main


def test_golden_command(capsys):
    assert main(['golden']) == 0
    out = capsys.readouterr().out
    assert "CHECK golden_lens5 PASS" in out
    assert "CHECK golden_s1xs2_sK PASS" in out


def test_verify_command(capsys):
    assert main(['--workers', '2', 'verify', 'cp1_hopf']) == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith("CHECK ")]
    assert lines[0] == "CHECK cone_les PASS"
    assert len(lines) == 10


def test_verify_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "negative.cx"
    path.write_text("ring Zmod2\ndeg_t -2\ngen a 1\ngen b -2\ndiff a b 1 t^-1\n", encoding='utf-8')
    assert main(['verify', str(path)]) == 1
    out = capsys.readouterr().out
    assert "CHECK semipositive FAIL" in out
    assert "CHECK pair_les FAIL" in out


@pytest.mark.parametrize("argv", [
    ['homology', 'cp1_hopf'],
    ['sbundle', 'cp2_hopf'],
    ['jones', 'free_circle', '--flavor', 'minus', '--window', '-20', '4'],
    ['flavors', 's1xs2_sK', '--cut', '0'],
    ['consum', 'cp1_hopf', 'cp1_hopf', '--window', '-8', '8'],
    ['heegaard', 'lens5'],
])
def test_table_commands(argv, capsys):
    assert main(argv) == 0
    assert "degree" in capsys.readouterr().out or argv[0] == 'heegaard'


def test_missing_file(capsys):
    assert main(['homology', 'nonexistent.cx']) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.cx"
    path.write_text("ring Z\ngen a\n", encoding='utf-8')
    assert main(['homology', str(path)]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_window_too_small(capsys):
    assert main(['jones', 'free_circle', '--window', '0', '3']) == 2
    assert "WindowTooSmall" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(['jones', 'free_circle', '--flavor', 'sideways']) == 2
    assert main(['--help']) == 0


def test_export(tmp_path, capsys):
    target = tmp_path / "moore.csv"
    assert main(['homology', 'z2_moore', '--export', str(target)]) == 0
    assert pd.read_csv(target)['rank'].tolist() == [1, 0, 0]


def test_export_unknown_suffix(tmp_path, capsys):
    assert main(['heegaard', 'lens5', '--export', str(tmp_path / "lens.txt")]) == 2
