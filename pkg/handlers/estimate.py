"""
estimate: оценка ошибки инъективности методом Монте-Карло.
"""
import argparse
import asyncio
import logging
import sys
import time

from config import DEFAULTS, WORDSTREAM_WORKERS
from dsl.parser import format_group_spec, parse_group_spec
from handlers.common import EXIT_FAIL, EXIT_OK, UsageError, add_group_arguments, add_output_arguments, emit, load_group, \
    require_n, run_config
from harness.estimate import DEFAULT_PAIRS, estimate_error, estimate_error_async
from harness.pairs import PairKind
from utils.history import list_runs, save_run
from utils.messages import get_message


def register(subparsers) -> None:
    parser = subparsers.add_parser('estimate', help='оценить ε-инъективность')
    add_group_arguments(parser, group_required=False)
    parser.add_argument('--kind', choices=[k.value for k in PairKind], default=PairKind.UNEQUAL.value)
    parser.add_argument('--trials', type=int, default=DEFAULTS['trials'])
    parser.add_argument('--pairs', type=int, default=DEFAULT_PAIRS, help='размер пула пар')
    parser.add_argument('--max-len', type=int, default=None, help='наибольшая длина слов пары (≤ n)')
    parser.add_argument('--workers', type=int, default=WORDSTREAM_WORKERS, help='1 — без потоков')
    parser.add_argument('--history', action='store_true', help='показать сохранённые прогоны')
    add_output_arguments(parser, save=True)
    parser.set_defaults(handler=run)


def _history(args: argparse.Namespace) -> int:
    spec = format_group_spec(parse_group_spec(args.group)) if args.group else None
    frame = list_runs(spec)
    if frame.empty:
        print(get_message('history_empty'), file=sys.stderr)
    config = run_config(args, n=args.n or 1)
    emit(frame, config, args)
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    if args.history:
        return _history(args)
    if args.group is None:
        raise UsageError("Нужно указать --group")
    config = run_config(args, n=require_n(args), trials=args.trials)
    group = load_group(args, config)

    started = time.perf_counter()
    if args.workers > 1:
        report = asyncio.run(estimate_error_async(
            group.recipe, group.oracle, args.kind, config.n, config.trials, config.seed,
            pairs=args.pairs, max_len=args.max_len, workers=args.workers, spec=group.spec,
        ))
    else:
        report = estimate_error(
            group.recipe, group.oracle, args.kind, config.n, config.trials, config.seed,
            pairs=args.pairs, max_len=args.max_len, spec=group.spec,
        )
    duration = time.perf_counter() - started
    logging.info("Ошибок %d из %d, граница %.3g, %s", report.failures, report.trials, report.bound,
                 "в пределах" if report.passed else "ВЫШЕ границы")

    if args.save:
        save_run(report, config.seed, duration)
    emit(report.to_frame(), config, args)
    return EXIT_OK if report.passed else EXIT_FAIL
