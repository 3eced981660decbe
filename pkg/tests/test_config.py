import pytest

from floertoolkit import load_engine_config

ENV = ('FLOER_RING', 'FLOER_DEG_T', 'FLOER_CUT_OFFSET', 'FLOER_WINDOW_LO', 'FLOER_WINDOW_HI', 'FLOER_MAX_WORKERS')


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    config = load_engine_config()
    assert config == {'ring': 'Zmod2', 'deg_t': -2, 'cut_offset': 1, 'window': (-12, 12), 'max_workers': 4}


def test_load_engine_config_from_env(clean_env):
    clean_env.setenv('FLOER_RING', 'Q')
    clean_env.setenv('FLOER_DEG_T', '-4')
    clean_env.setenv('FLOER_CUT_OFFSET', '0')
    clean_env.setenv('FLOER_WINDOW_LO', '-20')
    clean_env.setenv('FLOER_WINDOW_HI', '6')
    clean_env.setenv('FLOER_MAX_WORKERS', '8')

    config = load_engine_config()

    assert config['ring'] == 'Q'
    assert config['deg_t'] == -4
    assert config['cut_offset'] == 0
    assert config['window'] == (-20, 6)
    assert config['max_workers'] == 8


def test_load_engine_config_custom(clean_env):
    clean_env.setenv('FLOER_MAX_WORKERS', '8')
    config = load_engine_config({'ring': 'Z', 'window': [-4, 4]})
    assert config['ring'] == 'Z'
    assert config['window'] == (-4, 4)
    assert config['max_workers'] == 8


def test_non_integer_variable(clean_env):
    clean_env.setenv('FLOER_WINDOW_HI', 'doce')
    with pytest.raises(ValueError, match="FLOER_WINDOW_HI"):
        load_engine_config()


@pytest.mark.parametrize("custom", [{'window': (5, 1)}, {'max_workers': 0}])
def test_invalid_custom_values(clean_env, custom):
    with pytest.raises(ValueError):
        load_engine_config(custom)
