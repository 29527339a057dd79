"""
Воспроизводимая случайность: счётчиковый генератор Philox с деревом подсидов.

Каждая конструкция берёт случайность только при инициализации. Дочерние
компоненты получают собственные ветви через spawn(seed, *path), поэтому
результат зависит лишь от (рецепт, n, seed).
"""
import numpy as np

SeedLike = int | np.random.SeedSequence


def seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if seed < 0:
        raise ValueError(f"seed должен быть неотрицательным, получено {seed}")
    return np.random.SeedSequence(seed)


def spawn(seed: SeedLike, *path: int) -> np.random.SeedSequence:
    """Детерминированная ветвь дерева подсидов"""
    base = seed_sequence(seed)
    return np.random.SeedSequence(entropy=base.entropy, spawn_key=tuple(base.spawn_key) + tuple(path))


def generator(seed: SeedLike) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed_sequence(seed)))


def randbelow(gen: np.random.Generator, upper: int) -> int:
    """Равномерное целое из [0, upper) для чисел любой длины"""
    if upper < 1:
        raise ValueError("upper должен быть положительным")
    if upper <= 2 ** 62:
        return int(gen.integers(0, upper))
    bits = (upper - 1).bit_length()
    nbytes = (bits + 7) // 8
    excess = nbytes * 8 - bits
    while True:
        x = int.from_bytes(gen.bytes(nbytes), 'little') >> excess
        if x < upper:
            return x


def randint(gen: np.random.Generator, lo: int, hi: int) -> int:
    """Равномерное целое из [lo, hi] включительно"""
    return lo + randbelow(gen, hi - lo + 1)
