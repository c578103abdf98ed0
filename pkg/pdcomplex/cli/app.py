import sys
from argparse import ArgumentParser, Namespace
from typing import List, Optional
from pdcomplex.cli.handler import CommandHandler
from pdcomplex.utils import get_full_path, parse_config


CONFIG_DIR = 'scripts/config'
CONFIG_FILE = 'pdc_config.yaml'
COMMANDS = [
    'homology',
    'verify-pd',
    'triple',
    'compare',
    'degree-one',
    'pt-chain',
    'diagonal',
    'obstruction-targets'
]


def parse_arguments(argv: Optional[List[str]] = None) -> Namespace:
    parser = ArgumentParser(
        description='Exact computations with Poincare duality chain'
                    ' complexes over finite groups'
    )
    parser.add_argument(
        'command', choices=COMMANDS,
        help='Computation to run.'
    )
    parser.add_argument(
        'paths', nargs='+',
        help='Input documents; verify-pd also accepts directories.'
    )
    parser.add_argument(
        '--bound-group-order', type=int, default=None,
        help='Largest group order accepted (default 24).'
    )
    parser.add_argument(
        '--bound-rank', type=int, default=None,
        help='Largest total Z-rank of a complex (default 512).'
    )
    parser.add_argument(
        '--witnesses', action='store_true',
        help='Include witness matrices in the report.'
    )
    parser.add_argument(
        '--format', choices=['json', 'text'], default=None,
        help='Report format.'
    )
    parser.add_argument(
        '--images', type=int, nargs='+', default=None,
        help='degree-one: images of the generators of the source group.'
    )
    parser.add_argument(
        '--resolution', choices=['killing', 'bar'], default=None,
        help='Resolution used for 3-dimensional triples.'
    )
    parser.add_argument(
        '--progress', action='store_true',
        help='Show progress bars of long enumerations.'
    )
    parser.add_argument(
        '--config', type=str, default=None,
        help=f'Path to the yaml config (default {CONFIG_DIR}/{CONFIG_FILE}).'
    )
    return parser.parse_args(argv)


def build_config(arguments: Namespace):
    path = arguments.config or get_full_path(CONFIG_DIR, CONFIG_FILE)
    config = parse_config(path, 'cli')
    config['commands'] = parse_config(path, 'commands')
    overrides = {
        'bound_group_order': arguments.bound_group_order,
        'bound_rank': arguments.bound_rank,
        'format': arguments.format,
        'resolution': arguments.resolution
    }
    config.update({k: v for k, v in overrides.items() if v is not None})
    if arguments.progress:
        config['progress'] = True
    return config


def main(argv: Optional[List[str]] = None) -> int:
    arguments = parse_arguments(argv)
    handler = CommandHandler(build_config(arguments))
    handler.context.witnesses = arguments.witnesses
    if arguments.images is not None:
        handler.context.options['images'] = arguments.images
    report = handler.handle(arguments.command, arguments.paths)
    output, exit_code = handler.render(report)
    sys.stdout.write(output)
    return exit_code


if __name__ == '__main__':
    sys.exit(main())
