"""
Пары слов с известным ответом оракула.
"""
import logging
from enum import Enum

import numpy as np

from groups.base import ExactGroup, equal_words
from groups.grigorchuk import GrigorchukGroup
from groups.wreath import WreathGroup
from streaming.errors import ConstructionError, GenerationTimeout, InvalidArgumentError
from streaming.rng import SeedLike, generator
from streaming.words import Letter, Word, inverse_word

DEFAULT_ATTEMPTS = 1000


class PairKind(str, Enum):
    EQUAL = 'equal'
    UNEQUAL = 'unequal'
    DISJOINTNESS = 'adversarial-disjointness'
    GRIGORCHUK = 'adversarial-grigorchuk'


def random_word(letters: list[Letter], length: int, gen: np.random.Generator) -> Word:
    if not letters:
        return ()
    picks = gen.integers(0, len(letters), size=length)
    return tuple(letters[i] for i in picks)


def _letters(G: ExactGroup) -> list[Letter]:
    return sorted(a for a in G.alphabet if not a.is_identity)


def _identity_pieces(G: ExactGroup) -> list[Word]:
    """Вставки, равные единице: a a⁻¹ и известные соотношения с обратными"""
    pieces = [(a, a.inverse()) for a in _letters(G)]
    for r in G.relators():
        pieces.append(tuple(r))
        pieces.append(inverse_word(r))
    return [p for p in pieces if p]


def _equal_pair(G: ExactGroup, max_len: int, gen: np.random.Generator) -> tuple[Word, Word]:
    letters = _letters(G)
    pieces = _identity_pieces(G)
    u = random_word(letters, int(gen.integers(0, max_len - 1)), gen)
    v = list(u)
    for _ in range(int(gen.integers(1, 4))):
        fitting = [p for p in pieces if len(v) + len(p) <= max_len]
        if not fitting:
            break
        piece = fitting[int(gen.integers(0, len(fitting)))]
        at = int(gen.integers(0, len(v) + 1))
        v[at:at] = piece
    return u, tuple(v)


def _unequal_pair(G: ExactGroup, max_len: int, gen: np.random.Generator) -> tuple[Word, Word]:
    letters = _letters(G)
    u = random_word(letters, int(gen.integers(0, max_len + 1)), gen)
    v = random_word(letters, int(gen.integers(0, max_len + 1)), gen)
    return u, v


def _disjointness_pair(G: ExactGroup, max_len: int, gen: np.random.Generator) -> tuple[Word, Word]:
    from harness.hard import disjointness_for

    if not isinstance(G, WreathGroup):
        raise ConstructionError(f"Пары дизъюнктности строятся только в сплетениях, получено {G.describe()}")
    n = (max_len + 8) // 12
    if n < 1:
        raise InvalidArgumentError(f"Для пары дизъюнктности нужно max_len ≥ 4, получено {max_len}")
    x = ''.join(str(b) for b in gen.integers(0, 2, size=n))
    y = ''.join(str(b) for b in gen.integers(0, 2, size=n))
    return disjointness_for(G, x, y), ()


def _grigorchuk_pair(G: ExactGroup, max_len: int, gen: np.random.Generator) -> tuple[Word, Word]:
    from harness.hard import grigorchuk_instance

    if not isinstance(G, GrigorchukGroup):
        raise ConstructionError(f"Пары Григорчука строятся только в группе Григорчука, получено {G.describe()}")
    k = 0
    while 8 * 4 ** (k + 2) <= max_len:
        k += 1
    n = 2 ** k
    x = ''.join(str(b) for b in gen.integers(0, 2, size=n))
    y = ''.join(str(b) for b in gen.integers(0, 2, size=n))
    w = grigorchuk_instance(x, y)
    if len(w) > max_len:
        raise InvalidArgumentError(f"Слово Григорчука длины {len(w)} не помещается в max_len = {max_len}")
    return w, ()


_MAKERS = {
    PairKind.EQUAL: _equal_pair,
    PairKind.UNEQUAL: _unequal_pair,
    PairKind.DISJOINTNESS: _disjointness_pair,
    PairKind.GRIGORCHUK: _grigorchuk_pair,
}


def gen_word_pair(G: ExactGroup, kind: PairKind | str, max_len: int, seed: SeedLike,
                  max_attempts: int = DEFAULT_ATTEMPTS) -> tuple[Word, Word, bool]:
    """
    Пара (u, v) и ответ оракула u ≡ v.

    Для EQUAL пара отличается как строка и равна в группе, для UNEQUAL
    не равна в группе; адверсарные пары сравнивают трудное слово с пустым.

    Raises:
        GenerationTimeout: нужная пара не найдена за max_attempts попыток
    """
    kind = PairKind(kind)
    if max_len < 2:
        raise InvalidArgumentError(f"max_len должен быть ≥ 2, получено {max_len}")
    gen = generator(seed)
    make = _MAKERS[kind]
    for attempt in range(max_attempts):
        u, v = make(G, max_len, gen)
        truth = equal_words(G, u, v)
        if kind is PairKind.EQUAL and (not truth or u == v):
            continue
        if kind is PairKind.UNEQUAL and truth:
            continue
        if attempt:
            logging.debug("Пара %s найдена с попытки %d", kind.value, attempt + 1)
        return u, v, truth
    raise GenerationTimeout(
        f"За {max_attempts} попыток не найдена пара вида {kind.value} в группе {G.describe()}"
    )
