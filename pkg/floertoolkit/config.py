import os
from dotenv import load_dotenv

load_dotenv(override=True)

DEFAULTS = {
    'ring': 'Zmod2',
    'deg_t': -2,
    'cut_offset': 1,
    'window': (-12, 12),
    'max_workers': 4,
}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"La variable {name} debe ser un entero; se leyó '{raw}'.") from None


def load_engine_config(custom_config=None):
    """Carga la configuración del motor desde un diccionario o el archivo .env.

    Los valores del diccionario personalizado tienen prioridad; las claves ausentes se
    completan con las variables FLOER_* del entorno o con sus valores por defecto.

    Args:
        custom_config (dict, opcional): Diccionario con parámetros del motor.

    Returns:
        dict: Configuración con las claves 'ring', 'deg_t', 'cut_offset', 'window' y 'max_workers'.

    Raises:
        ValueError: Si una variable no es entera, la ventana está invertida o max_workers < 1.
    """
    lo, hi = DEFAULTS['window']
    config = {
        'ring': os.getenv('FLOER_RING') or DEFAULTS['ring'],
        'deg_t': _env_int('FLOER_DEG_T', DEFAULTS['deg_t']),
        'cut_offset': _env_int('FLOER_CUT_OFFSET', DEFAULTS['cut_offset']),
        'window': (_env_int('FLOER_WINDOW_LO', lo), _env_int('FLOER_WINDOW_HI', hi)),
        'max_workers': _env_int('FLOER_MAX_WORKERS', DEFAULTS['max_workers']),
    }
    if custom_config:
        config.update(custom_config)
    config['window'] = tuple(int(x) for x in config['window'])
    if config['window'][0] > config['window'][1]:
        raise ValueError(f"Ventana inválida {config['window']}: lo debe ser ≤ hi.")
    if int(config['max_workers']) < 1:
        raise ValueError("max_workers debe ser al menos 1.")
    return config
