"""
Общие аргументы подкоманд, сборка группы и коды выхода.
"""
import argparse
import logging
from pathlib import Path

import pandas as pd

from config import DEFAULTS, WORDSTREAM_MEMORY_CAP, WORDSTREAM_SAVE_RUNS, WORDSTREAM_SEED
from dsl.builder import ABELIAN_MACHINES, BuiltGroup, RunConfig, build
from dsl.parser import parse_group_spec
from streaming.errors import (
    DataFormatError,
    GroupSpecError,
    ResourceLimitError,
    StreamOverflowError,
    WordstreamError,
)
from streaming.nilpotent import PRIME_POLICIES
from utils.messages import get_message
from utils.reports import write_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(WordstreamError):
    """Неверная комбинация аргументов командной строки"""


def add_group_arguments(parser: argparse.ArgumentParser, group_required: bool = True) -> None:
    parser.add_argument('--group', '-g', required=group_required, help='выражение группы, например "wr(Z, fp(Z, Z))"')
    parser.add_argument('--n', type=int, default=None, help='граница длины слова')
    parser.add_argument('--seed', type=int, default=WORDSTREAM_SEED)
    parser.add_argument('--c', type=int, default=DEFAULTS['c'], help='ε = 1/n^c линейного отпечатка')
    parser.add_argument('--c-inner', type=int, default=DEFAULTS['c_inner'])
    parser.add_argument('--c-f2', type=int, default=DEFAULTS['c_f2'])
    parser.add_argument('--c-nilpotent', type=int, default=DEFAULTS['c_nilpotent'])
    parser.add_argument('--d', type=int, default=DEFAULTS['d'], help='ε ламп = 1/n^d')
    parser.add_argument('--eps-prime', type=float, default=DEFAULTS['eps_prime'])
    parser.add_argument('--memory-cap', type=int, default=WORDSTREAM_MEMORY_CAP)
    parser.add_argument('--abelian-machine', choices=ABELIAN_MACHINES, default='poly')
    parser.add_argument('--prime-policy', choices=PRIME_POLICIES, default='polylog')
    parser.add_argument('--data-dir', default=None, help='каталог файлов данных из выражения')


def add_output_arguments(parser: argparse.ArgumentParser, save: bool = False) -> None:
    parser.add_argument('--csv', action='store_true', help='CSV вместо JSON')
    parser.add_argument('--output', '-o', default=None, help='файл отчёта (по умолчанию stdout)')
    parser.add_argument('--xlsx', default=None, help='дополнительно записать книгу Excel')
    if save:
        parser.add_argument('--save', action='store_true', default=WORDSTREAM_SAVE_RUNS,
                            help='сохранить результат в базе данных')


def run_config(args: argparse.Namespace, n: int | None = None, trials: int | None = None) -> RunConfig:
    return RunConfig(
        n=n if n is not None else args.n,
        seed=args.seed,
        c=args.c,
        c_inner=args.c_inner,
        c_f2=args.c_f2,
        c_nilpotent=args.c_nilpotent,
        d=args.d,
        eps_prime=args.eps_prime,
        trials=trials if trials is not None else DEFAULTS['trials'],
        memory_cap=args.memory_cap,
        abelian_machine=args.abelian_machine,
        prime_policy=args.prime_policy,
        output=getattr(args, 'output', None),
        fmt='csv' if getattr(args, 'csv', False) else 'json',
    )


def require_n(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("Нужно указать --n")
    return args.n


def load_group(args: argparse.Namespace, config: RunConfig) -> BuiltGroup:
    ast = parse_group_spec(args.group)
    base_dir = Path(args.data_dir) if args.data_dir else None
    return build(ast, config, base_dir)


def emit(frame: pd.DataFrame, config: RunConfig, args: argparse.Namespace) -> None:
    write_report(frame, config.fmt, config.output, getattr(args, 'xlsx', None))


def exit_code_for(error: Exception) -> int:
    """Печатает диагностику и возвращает код выхода"""
    if isinstance(error, ResourceLimitError):
        logging.error(get_message('error_resource', error=error))
        return EXIT_RESOURCE
    if isinstance(error, GroupSpecError):
        logging.error(get_message('error_spec', error=error))
    elif isinstance(error, DataFormatError):
        logging.error(get_message('error_data', error=error))
    elif isinstance(error, StreamOverflowError):
        logging.error(get_message('error_overflow', error=error))
    else:
        logging.error(get_message('error_usage', error=error))
    return EXIT_USAGE
