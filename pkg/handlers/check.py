"""
check: решение проблемы равенства единице для слов из файла или stdin.
"""
import argparse
import logging
import sys

import pandas as pd

from handlers.common import EXIT_FAIL, EXIT_OK, add_group_arguments, add_output_arguments, emit, load_group, \
    require_n, run_config
from streaming.automaton import decide_identity
from streaming.rng import spawn
from streaming.words import format_word
from utils.file_formats import parse_words, read_words
from utils.messages import get_message


def register(subparsers) -> None:
    parser = subparsers.add_parser('check', help='решить w = 1 для каждого слова')
    add_group_arguments(parser)
    parser.add_argument('--word', '-w', default='-', help='файл слов, "-" — stdin')
    parser.add_argument('--oracle', action='store_true', help='сравнить с точным оракулом')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = run_config(args, n=require_n(args))
    group = load_group(args, config)
    words = parse_words(sys.stdin) if args.word == '-' else read_words(args.word)
    logging.info("Слов: %d", len(words))

    rows = []
    mismatches = 0
    for i, w in enumerate(words):
        # у каждого слова свой подсид: решения не зависят от порядка в файле
        result = decide_identity(group.recipe, config.n, spawn(config.seed, i), w)
        row = {'index': i, 'word': format_word(w), 'accept': result.accept, 'bits': result.bits_used}
        if args.oracle:
            truth = group.oracle.evaluate(w).is_identity()
            row['oracle'] = truth
            mismatches += truth != result.accept
            print(get_message(
                'verdict_oracle', index=i,
                machine=get_message('identity' if result.accept else 'non_identity'),
                oracle=get_message('identity' if truth else 'non_identity'),
                mark=get_message('verdict_mismatch') if truth != result.accept else '',
            ), file=sys.stderr)
        else:
            key = 'verdict_accept' if result.accept else 'verdict_reject'
            print(get_message(key, index=i, bits=result.bits_used), file=sys.stderr)
        rows.append(row)

    if args.oracle:
        print(get_message('check_summary', words=len(words), mismatches=mismatches), file=sys.stderr)
    emit(pd.DataFrame(rows, columns=['index', 'word', 'accept', 'bits'] + (['oracle'] if args.oracle else [])),
         config, args)
    return EXIT_FAIL if mismatches else EXIT_OK
