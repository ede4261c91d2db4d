"""
The ``tpc`` command.

    tpc check FILE...
    tpc flatten FILE NAME [--base]
    tpc graph FILE [--format dot|json]
    tpc compat FILE

Results go to standard output and diagnostics, as ``file:line:col: error:
message``, to standard error. The exit status is 0 on success, 1 when a
library has errors and 2 on usage or I/O errors. ``TPC_COLOR=never``
disables colored diagnostics; the default, ``auto``, colors them only on a
terminal.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional, Sequence, TextIO, Tuple

from theory_combinators.combinators import (
    Compatibility,
    TheoryEnv,
    check_compatibility,
    diagnostics,
    flatten,
    load_library,
)
from theory_combinators.errors import TpcError, UnknownNameError
from theory_combinators.graph import build_graph, to_dot, to_json

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_ERRORS, EXIT_USAGE = 0, 1, 2

COLOR_MODES = ('never', 'auto')
_RED, _RESET = '\x1b[31m', '\x1b[0m'


class Output:
    """Where a command writes, and whether diagnostics are colored."""

    def __init__(self, out: TextIO, err: TextIO, color: bool = False) -> None:
        self.out = out
        self.err = err
        self.color = color

    def result(self, text: str) -> None:
        print(text, file=self.out)

    def diagnose(self, errors: List[TpcError]) -> None:
        for line in diagnostics(errors):
            if self.color:
                line = line.replace('error:', f'{_RED}error:{_RESET}', 1)
            print(line, file=self.err)


def color_enabled(setting: Optional[str], stream: TextIO) -> bool:
    """
    Read ``TPC_COLOR``. Unknown values are reported and treated as ``auto``:

    >>> import io
    >>> color_enabled('never', io.StringIO()), color_enabled(None, io.StringIO())
    (False, False)
    """
    mode = (setting or 'auto').strip().lower()
    if mode not in COLOR_MODES:
        logger.warning('TPC_COLOR should be one of %s, not %r; using auto',
                       ', '.join(COLOR_MODES), setting)
        mode = 'auto'
    return mode == 'auto' and stream.isatty()


def _load(path: str, output: Output) -> Optional[Tuple[TheoryEnv, List[TpcError]]]:
    try:
        with open(path, encoding='utf-8') as source:
            text = source.read()
    except OSError as error:
        print(f'{path}: error: {error.strerror or error}', file=output.err)
        return None
    env, errors = load_library(text, path)
    output.diagnose(errors)
    return env, errors


def run_check(files: Sequence[str], output: Output) -> int:
    status = EXIT_OK
    for path in files:
        loaded = _load(path, output)
        if loaded is None:
            status = EXIT_USAGE
            continue
        env, errors = loaded
        if errors:
            status = max(status, EXIT_ERRORS)
        output.result(f'{path}: {len(env)} theories, {len(errors)} errors')
    return status


def run_flatten(path: str, name: str, base: bool, output: Output) -> int:
    loaded = _load(path, output)
    if loaded is None:
        return EXIT_USAGE
    env, errors = loaded
    if name not in env:
        if name not in env.failed:
            output.diagnose([UnknownNameError(name)])
        return EXIT_ERRORS
    output.result(flatten(name, env, base=base))
    return EXIT_ERRORS if errors else EXIT_OK


def run_graph(path: str, fmt: str, output: Output) -> int:
    loaded = _load(path, output)
    if loaded is None:
        return EXIT_USAGE
    env, errors = loaded
    if errors:
        return EXIT_ERRORS
    graph = build_graph(env)
    output.result(to_json(graph) if fmt == 'json' else to_dot(graph))
    return EXIT_OK


def run_compat(path: str, output: Output) -> int:
    loaded = _load(path, output)
    if loaded is None:
        return EXIT_USAGE
    env, errors = loaded
    status = EXIT_ERRORS if errors else EXIT_OK
    for name in env:
        report = check_compatibility(env.definition(name).term, env, name)
        output.result(str(report))
        if report.status is Compatibility.VIOLATION:
            status = EXIT_ERRORS
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tpc', description='Check, flatten and draw libraries of theory presentations.')
    parser.add_argument('-v', '--verbose', action='store_true', help='log evaluation details')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)

    check = commands.add_parser('check', help='check library files')
    check.add_argument('files', nargs='+', metavar='FILE')

    flat = commands.add_parser('flatten', help='print a theory as a flat Theory { ... }')
    flat.add_argument('file', metavar='FILE')
    flat.add_argument('name', metavar='NAME')
    flat.add_argument('--base', action='store_true',
                      help='print the theory NAME is built on instead')

    graph = commands.add_parser('graph', help='export the theory graph')
    graph.add_argument('file', metavar='FILE')
    graph.add_argument('--format', choices=('dot', 'json'), default='dot')

    compat = commands.add_parser('compat', help='compare the two meanings of every theory')
    compat.add_argument('file', metavar='FILE')
    return parser


def main(argv: Optional[Sequence[str]] = None,
         out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s:%(name)s:%(message)s')
    output = Output(out, err, color_enabled(os.environ.get('TPC_COLOR'), err))

    if args.command == 'check':
        return run_check(args.files, output)
    if args.command == 'flatten':
        return run_flatten(args.file, args.name, args.base, output)
    if args.command == 'graph':
        return run_graph(args.file, args.format, output)
    return run_compat(args.file, output)


if __name__ == '__main__':
    sys.exit(main())
