"""
growth: таблица функции роста γ(r) = |B(r)|.
"""
import argparse
import logging

from handlers.common import EXIT_OK, add_group_arguments, add_output_arguments, emit, load_group, run_config
from growth.ball import growth_table
from growth.fit import exponential_slope, polynomial_constant
from utils.history import save_growth


def register(subparsers) -> None:
    parser = subparsers.add_parser('growth', help='таблица роста γ(r)')
    add_group_arguments(parser)
    parser.add_argument('--radius', '-r', type=int, required=True)
    parser.add_argument('--degree', type=int, default=None, help='оценить C в γ(r) ≤ C·r^degree')
    add_output_arguments(parser, save=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    # n здесь не влияет на таблицу, но нужен для сборки рецепта
    config = run_config(args, n=args.n or max(1, 2 * args.radius))
    group = load_group(args, config)
    table = growth_table(group.oracle, args.radius, config.memory_cap)
    if table.radius >= 2:
        logging.info("Наклон log₂ γ(r): %.4f", exponential_slope(table))
    if args.degree is not None and table.radius >= 1:
        logging.info("γ(r) ≤ C·r^%d при C = %.4f", args.degree, polynomial_constant(table, args.degree))
    if args.save:
        save_growth(table, group.spec)
    frame = table.to_frame()
    frame.insert(0, 'group', group.spec)
    emit(frame, config, args)
    return EXIT_OK
