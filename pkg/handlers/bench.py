"""
bench: скорость чтения букв и объём состояния для нескольких конструкций.
"""
import argparse
import logging
import time

import pandas as pd

from handlers.common import EXIT_OK, add_group_arguments, add_output_arguments, emit, load_group, require_n, \
    run_config
from harness.pairs import random_word
from streaming.rng import generator, spawn


def register(subparsers) -> None:
    parser = subparsers.add_parser('bench', help='букв в секунду и бит состояния')
    add_group_arguments(parser)
    parser.add_argument('--also', action='append', default=[], metavar='GROUP',
                        help='ещё одно выражение группы (можно повторять)')
    parser.add_argument('--repeat', type=int, default=3, help='число прогонов на конструкцию')
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def _measure(recipe, n: int, seed: int, repeat: int) -> tuple[float, float]:
    """(букв в секунду, время построения автомата)"""
    letters = sorted(a for a in recipe.alphabet if not a.is_identity)
    build_time = feed_time = 0.0
    for i in range(repeat):
        w = random_word(letters, n, generator(spawn(seed, 1, i)))
        started = time.perf_counter()
        machine = recipe.build(n, spawn(seed, 0, i))
        built = time.perf_counter()
        machine.feed(w)
        finished = time.perf_counter()
        build_time += built - started
        feed_time += finished - built
    rate = n * repeat / feed_time if feed_time > 0 else float('inf')
    return rate, build_time / repeat


def run(args: argparse.Namespace) -> int:
    config = run_config(args, n=require_n(args))
    rows = []
    for spec in [args.group] + args.also:
        args.group = spec
        group = load_group(args, config)
        rate, build_time = _measure(group.recipe, config.n, config.seed, max(1, args.repeat))
        logging.info("%s: %.0f букв/с, %d бит", group.spec, rate, group.recipe.space_bits(config.n))
        rows.append({
            'group': group.spec,
            'recipe': group.recipe.describe(),
            'n': config.n,
            'bits': group.recipe.space_bits(config.n),
            'epsilon_bound': group.recipe.epsilon_bound(config.n),
            'letters_per_second': rate,
            'build_seconds': build_time,
        })
    emit(pd.DataFrame(rows), config, args)
    return EXIT_OK
