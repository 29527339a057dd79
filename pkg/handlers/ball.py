"""
ball: детерминированный автомат шара радиуса ⌊n/2⌋.
"""
import argparse
import sys

import pandas as pd

from handlers.common import EXIT_FAIL, EXIT_OK, add_group_arguments, add_output_arguments, emit, load_group, \
    require_n, run_config
from growth.ball import build_ball_automaton, verify_exhaustive
from streaming.words import format_word
from utils.messages import get_message


def register(subparsers) -> None:
    parser = subparsers.add_parser('ball', help='построить автомат шара')
    add_group_arguments(parser)
    parser.add_argument('--verify', action='store_true', help='сверить с оракулом все слова длины ≤ n')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config(args, n=require_n(args))
    group = load_group(args, config)
    automaton = build_ball_automaton(group.oracle, config.n, config.memory_cap)
    print(get_message('ball_summary', radius=config.n // 2, states=automaton.state_count, bits=automaton.bits),
          file=sys.stderr)
    row = {
        'group': group.spec,
        'n': config.n,
        'radius': config.n // 2,
        'ball_size': automaton.ball_size,
        'states': automaton.state_count,
        'bits': automaton.bits,
        'sink': automaton.sink is not None,
    }
    code = EXIT_OK
    if args.verify:
        result = verify_exhaustive(automaton, group.oracle)
        print(get_message('ball_verified', words=result.words_checked, mismatches=len(result.mismatches)),
              file=sys.stderr)
        for w in result.mismatches:
            print(f"  {format_word(w) or '(пустое слово)'}", file=sys.stderr)
        row['words_checked'] = result.words_checked
        row['mismatches'] = len(result.mismatches)
        code = EXIT_OK if result.ok else EXIT_FAIL
    emit(pd.DataFrame([row]), config, args)
    return code
