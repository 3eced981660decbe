from .__version__ import __version__

from .sync_toolkit import FloerToolkit
from .async_toolkit import AsyncFloerToolkit
from .log import Log, log
from .config import load_engine_config
from .rings import RingSpec, ZMOD2, ZZ_RING, QQ_RING
from .complexes import make_complex, homology, mapping_cone, tensor_product, find_chain_homotopy, les_of_ses
from .equivariant import DegreeWindow, Flavor, make_ucomplex, make_jcomplex, s_bundle, jones_flavor
from .novikov import CutLevel, make_laurent, filtered_flavors
from .connect_sum import product_ucomplex, s_otimes, verify_e_su_identity
from .heegaard import HeegaardDiagram, analyze_diagram
from .complex_file import parse_complex_file, emit_complex_file, load_complex


__all__ = [
    'FloerToolkit',
    'AsyncFloerToolkit',
    'Log',
    'log',
    'load_engine_config',
    'RingSpec',
    'ZMOD2',
    'ZZ_RING',
    'QQ_RING',
    'make_complex',
    'homology',
    'mapping_cone',
    'tensor_product',
    'find_chain_homotopy',
    'les_of_ses',
    'DegreeWindow',
    'Flavor',
    'make_ucomplex',
    'make_jcomplex',
    's_bundle',
    'jones_flavor',
    'CutLevel',
    'make_laurent',
    'filtered_flavors',
    'product_ucomplex',
    's_otimes',
    'verify_e_su_identity',
    'HeegaardDiagram',
    'analyze_diagram',
    'parse_complex_file',
    'emit_complex_file',
    'load_complex',
]
