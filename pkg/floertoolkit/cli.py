##### Interfaz de Línea de Comandos #####

import argparse
import asyncio
import sys
from typing import List, Optional

import pandas as pd

from .async_toolkit import AsyncFloerToolkit
from .errors import FloerToolkitError
from .log import Log, set_package_level
from .reports import CheckResult, checks_frame
from .sync_toolkit import FloerToolkit

logger = Log(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FLAVORS = ('minus', 'infty', 'plus', 'hat')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='floertoolkit',
                                     description="Homología de Floer algebraica: complejos, sabores y comprobaciones.")
    parser.add_argument('--workers', type=int, default=None,
                        help="Hilos para verify y golden (por defecto FLOER_MAX_WORKERS).")
    parser.add_argument('--log-level', default=None, metavar='LEVEL',
                        help="Nivel de los logs en stderr (por defecto LOG_LEVEL o WARNING).")
    sub = parser.add_subparsers(dest='command', required=True)

    def table_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--export', metavar='PATH', default=None, help="Exporta la tabla a .csv o .xlsx.")
        return p

    def window_option(p):
        p.add_argument('--window', nargs=2, type=int, metavar=('LO', 'HI'), default=None)

    table_command('homology', "Homología grado a grado.").add_argument('file')
    table_command('sbundle', "Homología del fibrado S_U(C).").add_argument('file')

    p = table_command('jones', "Sabor de Jones E^•(S).")
    p.add_argument('file')
    p.add_argument('--flavor', choices=FLAVORS, default='plus')
    window_option(p)

    p = table_command('flavors', "Sabores filtrados de un complejo de Laurent.")
    p.add_argument('file')
    p.add_argument('--cut', type=int, default=None)
    window_option(p)

    p = table_command('consum', "S_⊗^• de la suma conexa y su identidad con E^•S_U.")
    p.add_argument('file1')
    p.add_argument('file2')
    p.add_argument('--flavor', choices=FLAVORS, default='plus')
    window_option(p)

    table_command('heegaard', "Generadores y conteos de un diagrama de Heegaard.").add_argument('file')
    table_command('verify', "Ejecuta todas las comprobaciones aplicables.").add_argument('file')
    table_command('golden', "Recalcula el corpus dorado y lo compara con expected.json.")
    return parser


def _print_table(frame: pd.DataFrame) -> None:
    print(frame.to_string(index=False) if not frame.empty else "(vacío)")


def _print_trailer(results: List[CheckResult]) -> None:
    for r in results:
        print(r.trailer())


def _finish(toolkit: FloerToolkit, frame: pd.DataFrame, export: Optional[str]) -> None:
    _print_table(frame)
    if export:
        toolkit.export_report(frame, export)


def _checks(args, config) -> List[CheckResult]:
    runner = AsyncFloerToolkit(config)
    if args.command == 'golden':
        return asyncio.run(runner.golden())
    return asyncio.run(runner.verify(args.file))


def dispatch(args) -> int:
    logger.debug(f"Running command {args.command}")
    config = {'max_workers': args.workers} if args.workers else None
    toolkit = FloerToolkit(config)
    window = tuple(args.window) if getattr(args, 'window', None) else None

    if args.command == 'homology':
        _finish(toolkit, toolkit.homology_table(args.file), args.export)
    elif args.command == 'sbundle':
        _finish(toolkit, toolkit.sbundle(args.file), args.export)
    elif args.command == 'jones':
        _finish(toolkit, toolkit.jones(args.file, args.flavor, window), args.export)
    elif args.command == 'flavors':
        out = toolkit.flavors(args.file, args.cut, window)
        _finish(toolkit, out['ranks'], args.export)
        print()
        _print_table(out['pair_les'])
    elif args.command == 'consum':
        out = toolkit.consum(args.file1, args.file2, args.flavor, window)
        _finish(toolkit, out['homology'], args.export)
        print()
        _print_table(out['identity'])
        result = CheckResult(f"e_su_identity_{args.flavor}", out['passed'])
        _print_trailer([result])
        return EXIT_OK if result.passed else EXIT_FAILED
    elif args.command == 'heegaard':
        _finish(toolkit, toolkit.heegaard(args.file), args.export)
    else:
        if args.command == 'golden':
            _print_table(toolkit.golden_table())
            print()
        results = _checks(args, config)
        _finish(toolkit, checks_frame(results), args.export)
        _print_trailer(results)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de ``floertoolkit``.

    Returns:
        int: 0 si todo fue bien, 1 si falló alguna comprobación, 2 ante errores de uso o de lectura.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.log_level:
            set_package_level(args.log_level)
        return dispatch(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (FloerToolkitError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
