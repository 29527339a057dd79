"""
hard: слова дизъюнктности в S₃ ≀ G и слова Григорчука.
"""
import argparse
import itertools
import sys

import pandas as pd

from dsl.builder import RunConfig, build
from dsl.parser import parse_group_spec
from groups.finite import symmetric_group_s3
from groups.grigorchuk import GrigorchukGroup
from groups.wreath import WreathGroup
from handlers.common import EXIT_FAIL, EXIT_OK, UsageError, add_output_arguments, emit
from harness.hard import disjointness_for, grigorchuk_instance
from streaming.words import format_word
from utils.messages import get_message

KINDS = ('disjointness', 'grigorchuk')


def register(subparsers) -> None:
    parser = subparsers.add_parser('hard', help='трудные входы нижних оценок')
    parser.add_argument('--kind', choices=KINDS, required=True)
    parser.add_argument('--base', default='Z', help='база G сплетения S₃ ≀ G (выражение группы)')
    parser.add_argument('--x', default=None, help='первая битовая строка')
    parser.add_argument('--y', default=None, help='вторая битовая строка')
    parser.add_argument('--all', type=int, default=None, metavar='LEN',
                        help='перебрать все пары строк длины LEN и сверить с дизъюнктностью')
    parser.add_argument('--words', action='store_true', help='включить слова в отчёт')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def _pairs(args: argparse.Namespace) -> list[tuple[str, str]]:
    if args.all is not None:
        if args.all < 1:
            raise UsageError("--all: длина должна быть ≥ 1")
        strings = [''.join(bits) for bits in itertools.product('01', repeat=args.all)]
        return [(x, y) for x in strings for y in strings]
    if args.x is None or args.y is None:
        raise UsageError("Нужны --x и --y или --all")
    return [(args.x, args.y)]


def _disjoint(x: str, y: str) -> bool:
    return not any(a == b == '1' for a, b in zip(x, y))


def run(args: argparse.Namespace) -> int:
    pairs = _pairs(args)
    config = RunConfig(n=1, output=args.output, fmt='csv' if args.csv else 'json')
    if args.kind == 'disjointness':
        base = build(parse_group_spec(args.base), config).oracle
        oracle = WreathGroup(symmetric_group_s3(), base)

        def instance(x, y):
            return disjointness_for(oracle, x, y)
    else:
        oracle = GrigorchukGroup()

        def instance(x, y):
            return grigorchuk_instance(x, y)

    rows = []
    violations = 0
    for x, y in pairs:
        w = instance(x, y)
        truth = oracle.evaluate(w).is_identity()
        disjoint = _disjoint(x, y)
        violations += truth != disjoint
        row = {'kind': args.kind, 'x': x, 'y': y, 'length': len(w), 'identity': truth, 'disjoint': disjoint}
        if args.words:
            row['word'] = format_word(w)
        rows.append(row)
        if len(pairs) == 1:
            print(get_message('hard_truth', truth=get_message('identity' if truth else 'non_identity')),
                  file=sys.stderr)
    emit(pd.DataFrame(rows), config, args)
    return EXIT_FAIL if violations else EXIT_OK
