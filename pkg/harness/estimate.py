"""
Монте-Карло оценка ошибки инъективности.

Пул пар с известным ответом оракула фиксируется заранее; испытание i
берёт пару i mod |пул| и собственный подсид. Ошибка — равные элементы
в разных состояниях или разные элементы в одном состоянии.
"""
import asyncio
import logging
import math
from dataclasses import asdict, dataclass
from statistics import NormalDist

import pandas as pd

from groups.base import ExactGroup
from harness.pairs import PairKind, gen_word_pair
from streaming.automaton import Recipe
from streaming.errors import InvalidArgumentError
from streaming.rng import SeedLike, spawn
from streaming.words import Word

MIN_TRIALS = 100
DEFAULT_PAIRS = 50
CONFIDENCE = 0.99
SLACK = 2.0

Z_99 = NormalDist().inv_cdf(0.5 + CONFIDENCE / 2)


def wilson_interval(failures: int, trials: int, z: float = Z_99) -> tuple[float, float]:
    if trials <= 0:
        raise InvalidArgumentError("Число испытаний должно быть положительным")
    p = failures / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # на краях границы точные, без ошибки округления
    low = 0.0 if failures == 0 else max(0.0, center - half)
    high = 1.0 if failures == trials else min(1.0, center + half)
    return low, high


@dataclass
class ErrorReport:
    spec: str
    n: int
    kind: str
    trials: int
    failures: int
    estimate: float
    ci: float
    ci_low: float
    ci_high: float
    bound: float
    passed: bool

    @classmethod
    def from_counts(cls, spec: str, n: int, kind: str, trials: int, failures: int, bound: float) -> "ErrorReport":
        low, high = wilson_interval(failures, trials)
        return cls(
            spec=spec, n=n, kind=kind, trials=trials, failures=failures,
            estimate=failures / trials, ci=(high - low) / 2, ci_low=low, ci_high=high,
            bound=bound, passed=low <= SLACK * bound,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([self.to_dict()])


@dataclass(frozen=True)
class LabeledPair:
    u: Word
    v: Word
    equal: bool


def build_pairs(oracle: ExactGroup, kind: PairKind | str, max_len: int, count: int,
                seed: SeedLike) -> list[LabeledPair]:
    return [LabeledPair(*gen_word_pair(oracle, kind, max_len, spawn(seed, 0, j))) for j in range(count)]


def run_trial(recipe: Recipe, pair: LabeledPair, n: int, seed: SeedLike) -> bool:
    """True, если автомат ошибся на паре"""
    left = recipe.build(n, seed).feed(pair.u)
    right = recipe.build(n, seed).feed(pair.v)
    same = left.state_index() == right.state_index()
    return same != pair.equal


def _run_chunk(recipe: Recipe, pairs: list[LabeledPair], n: int, seed: SeedLike, start: int, stop: int) -> int:
    failures = 0
    for i in range(start, stop):
        if run_trial(recipe, pairs[i % len(pairs)], n, spawn(seed, 1, i)):
            failures += 1
    return failures


def _chunks(trials: int, count: int) -> list[tuple[int, int]]:
    size = math.ceil(trials / count)
    return [(i, min(i + size, trials)) for i in range(0, trials, size)]


def _prepare(recipe: Recipe, oracle: ExactGroup, kind: PairKind | str, n: int, trials: int, seed: SeedLike,
             pairs: int, max_len: int | None) -> list[LabeledPair]:
    if trials < MIN_TRIALS:
        raise InvalidArgumentError(f"Нужно не меньше {MIN_TRIALS} испытаний, получено {trials}")
    if n < 1:
        raise InvalidArgumentError(f"n должно быть ≥ 1, получено {n}")
    max_len = min(max_len or n, n)
    pool = build_pairs(oracle, kind, max_len, min(pairs, trials), seed)
    logging.info("Оценка %s: %d пар вида %s, n = %d", recipe.describe(), len(pool), PairKind(kind).value, n)
    return pool


def estimate_error(recipe: Recipe, oracle: ExactGroup, kind: PairKind | str, n: int, trials: int,
                   seed: SeedLike, pairs: int = DEFAULT_PAIRS, max_len: int | None = None,
                   chunks: int = 10, spec: str | None = None) -> ErrorReport:
    """
    Доля ошибок инъективности и сравнение с ε(n) рецепта.

    Raises:
        InvalidArgumentError: trials < 100
    """
    pool = _prepare(recipe, oracle, kind, n, trials, seed, pairs, max_len)
    failures = 0
    for start, stop in _chunks(trials, chunks):
        failures += _run_chunk(recipe, pool, n, seed, start, stop)
        logging.info("Испытания %d/%d: ошибок %d", stop, trials, failures)
    return ErrorReport.from_counts(spec or recipe.describe(), n, PairKind(kind).value, trials, failures,
                                   recipe.epsilon_bound(n))


async def estimate_error_async(recipe: Recipe, oracle: ExactGroup, kind: PairKind | str, n: int, trials: int,
                               seed: SeedLike, pairs: int = DEFAULT_PAIRS, max_len: int | None = None,
                               workers: int = 4, spec: str | None = None) -> ErrorReport:
    """То же, что estimate_error, но куски испытаний выполняются в потоках"""
    pool = _prepare(recipe, oracle, kind, n, trials, seed, pairs, max_len)
    tasks = [
        asyncio.to_thread(_run_chunk, recipe, pool, n, seed, start, stop)
        for start, stop in _chunks(trials, max(1, workers))
    ]
    counts = await asyncio.gather(*tasks)
    failures = sum(counts)
    logging.info("Испытания %d/%d: ошибок %d", trials, trials, failures)
    return ErrorReport.from_counts(spec or recipe.describe(), n, PairKind(kind).value, trials, failures,
                                   recipe.epsilon_bound(n))
