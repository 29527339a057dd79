"""
Случайные простые числа для отпечатков.
"""
import logging
import math
from fractions import Fraction

import gmpy2

from streaming.errors import ConstructionError, EmptyPrimeRangeError
from streaming.rng import SeedLike, generator, randint

# 40 раундов Миллера–Рабина: вероятность ошибки < 4^-40 = 2^-80
PRIMALITY_ROUNDS = 40


def is_probable_prime(x: int) -> bool:
    return bool(gmpy2.is_prime(x, PRIMALITY_ROUNDS))


def sample_prime(lo: int, hi: int, seed: SeedLike) -> int:
    """
    Простое число, равномерно распределённое среди простых из [lo, hi].

    Выборка с отклонением: равномерное целое из интервала принимается,
    если проходит вероятностный тест простоты.

    Raises:
        EmptyPrimeRangeError: в интервале нет простых
    """
    if lo < 2 or hi < lo:
        raise ConstructionError(f"Некорректный интервал для простого: [{lo}, {hi}]")
    if int(gmpy2.next_prime(lo - 1)) > hi:
        raise EmptyPrimeRangeError(f"В интервале [{lo}, {hi}] нет простых чисел")
    gen = generator(seed)
    attempts = 0
    while True:
        attempts += 1
        x = randint(gen, lo, hi)
        if is_probable_prime(x):
            logging.debug("Простое %d-бит найдено за %d попыток", x.bit_length(), attempts)
            return x


def ceil_product(base: int, exponent: int, factor: float) -> int:
    """⌈base^exponent · factor⌉ без переполнения float"""
    return math.ceil(Fraction(base) ** exponent * Fraction(factor))


def linear_prime_base(n: int, c: int) -> int:
    """N = max(64, ⌈n^{c+1}·ln(n+2)⌉) — простые берутся из [N, 2N]"""
    return max(64, ceil_product(n, c + 1, math.log(n + 2)))


def polylog_prime_base(n: int, c: int) -> int:
    """N = max(64, ⌈(log₂ n)^{c+1}·log₂ log₂ n⌉)"""
    if n < 4:
        raise ConstructionError("Нильпотентный отпечаток требует n ≥ 4")
    log_n = math.log2(n)
    return max(64, math.ceil(log_n ** (c + 1) * math.log2(log_n)))


def residue_width(base: int) -> int:
    """Ширина поля остатка для простого из [N, 2N]: наибольшее простое ≤ 2N − 1"""
    return (2 * base - 1).bit_length()
