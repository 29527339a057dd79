import argparse
import logging
import sys

from database.session import init_db
from handlers import ball, bench, check, estimate, growth, hard
from handlers.common import EXIT_USAGE, exit_code_for
from streaming.errors import WordstreamError

COMMANDS = (check, estimate, growth, ball, hard, bench)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='wordstream',
        description='Потоковые автоматы для проблемы равенства в группах',
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='подробный журнал')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def setup_logging(verbose: bool = False) -> None:
    # Сторонние логгеры оставляем только с предупреждениями
    logging.getLogger("sqlalchemy").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format='%(message)s', force=True)


def run_command(argv: list[str] | None = None) -> int:
    """
    Разобрать аргументы и выполнить подкоманду.

    Returns:
        0 — успех, 1 — проверка не пройдена, 2 — ошибка использования
        или данных, 3 — превышен лимит ресурсов
    """
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    setup_logging(args.verbose)
    try:
        init_db()
        return args.handler(args)
    except (WordstreamError, OSError) as e:
        return exit_code_for(e)


if __name__ == "__main__":
    try:
        sys.exit(run_command())
    except KeyboardInterrupt:
        sys.exit(130)
