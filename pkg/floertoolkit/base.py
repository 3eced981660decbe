from .config import load_engine_config
from .rings import RingSpec

class BaseFloerToolkit:
    """Clase base que proporciona la configuración común a las clases del toolkit."""

    def __init__(self, engine_config=None, ring=None):
        """Inicializa la clase base con la configuración del motor.

        Args:
            engine_config (dict, opcional): Diccionario con parámetros del motor.
            ring (str | RingSpec, opcional): Anillo de coeficientes por defecto.
        """
        self.engine_config = load_engine_config(engine_config)
        if ring:
            self.engine_config['ring'] = str(ring)

    @property
    def ring(self) -> RingSpec:
        """Anillo de coeficientes por defecto de la configuración."""
        return RingSpec.parse(self.engine_config['ring'])

    @property
    def window(self) -> tuple:
        return tuple(self.engine_config['window'])

    def change_ring(self, ring) -> None:
        """Cambia el anillo de coeficientes por defecto.

        Args:
            ring (str | RingSpec): Nuevo anillo ('Zmod2', 'Z', 'Q').
        """
        self.engine_config['ring'] = str(RingSpec.parse(str(ring)))
