"""
Группа Григорчука: автоморфизмы бинарного корневого дерева,
порождённые a, b, c, d.

a меняет местами поддеревья корня; b = (a, c), c = (a, d), d = (1, b).
Слова действуют справа: сначала первая буква. Равенство единице проверяется
спуском к сечениям: после сокращения длина каждого сечения не больше
(|w| + 1)/2, поэтому спуск конечен.
"""
from functools import lru_cache
from typing import Iterable

import numpy as np

from groups.base import CanonicalKey, ExactGroup
from streaming.errors import AlphabetError, RecursionDepthError
from streaming.words import Letter, Word, symmetric

GENERATORS = 'abcd'
MAX_DEPTH = 64

SECTIONS = {'b': ('a', 'c'), 'c': ('a', 'd'), 'd': ('', 'b')}

_BCD = {
    ('b', 'c'): 'd', ('c', 'b'): 'd',
    ('b', 'd'): 'c', ('d', 'b'): 'c',
    ('c', 'd'): 'b', ('d', 'c'): 'b',
}

# портреты ядра: (перестановка в корне, левое сечение, правое сечение) → имя
NUCLEUS = {
    (0, '1', '1'): '1',
    (1, '1', '1'): 'a',
    (0, 'a', 'c'): 'b',
    (0, 'a', 'd'): 'c',
    (0, '1', 'b'): 'd',
}


def to_text(w: Iterable[Letter] | str) -> str:
    if isinstance(w, str):
        letters = w
    else:
        letters = []
        for a in w:
            if a.is_identity:
                continue
            letters.append(a.symbol)
    text = ''.join(letters)
    bad = set(text) - set(GENERATORS)
    if bad:
        raise AlphabetError(f"Буквы {sorted(bad)} не входят в алфавит группы Григорчука {{a, b, c, d}}")
    return text


def reduce_word(text: str) -> str:
    """
    Сокращение по a² = b² = c² = d² = 1 и bc = cb = d, bd = db = c, cd = dc = b.
    Результат чередует a и буквы из {b, c, d}.
    """
    stack: list[str] = []
    for ch in text:
        if stack and stack[-1] == ch:
            stack.pop()
        elif stack and ch != 'a' and stack[-1] != 'a':
            stack[-1] = _BCD[(stack[-1], ch)]
        else:
            stack.append(ch)
    return ''.join(stack)


def abelian_image(text: str) -> tuple[int, int, int]:
    """Образ в абелианизации (Z₂)³ с базисом a, b, c (d = b + c)"""
    counts = {ch: text.count(ch) for ch in GENERATORS}
    return counts['a'] % 2, (counts['b'] + counts['d']) % 2, (counts['c'] + counts['d']) % 2


def sections(text: str) -> tuple[int, str, str]:
    """(перестановка в корне, сечение в левой вершине, сечение в правой), сечения сокращены"""
    pos = 0
    left, right = [], []
    for ch in text:
        if ch == 'a':
            pos ^= 1
        else:
            pair = SECTIONS[ch]
            left.append(pair[pos])
            right.append(pair[pos ^ 1])
    return pos, reduce_word(''.join(left)), reduce_word(''.join(right))


def grigorchuk_is_trivial(w: Iterable[Letter] | str) -> bool:
    stack = [(reduce_word(to_text(w)), 0)]
    while stack:
        word, depth = stack.pop()
        if len(word) <= 1:
            if word:
                return False
            continue
        if any(abelian_image(word)):
            return False
        if depth >= MAX_DEPTH:
            raise RecursionDepthError(f"Спуск по сечениям глубже {MAX_DEPTH} уровней")
        swap, left, right = sections(word)
        if swap:
            return False
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return True


@lru_cache(maxsize=1 << 16)
def portrait(text: str, depth: int = 0) -> str:
    """Канонический портрет сокращённого слова до ядра {1, a, b, c, d}"""
    if len(text) <= 1:
        return text or '1'
    if depth >= MAX_DEPTH:
        raise RecursionDepthError(f"Портрет глубже {MAX_DEPTH} уровней")
    swap, left, right = sections(text)
    triple = (swap, portrait(left, depth + 1), portrait(right, depth + 1))
    return NUCLEUS.get(triple) or f"{swap}({triple[1]})({triple[2]})"


class GrigorchukGroup(ExactGroup):
    """Элемент — сокращённое слово; ключ — портрет"""

    kind = 'grigorchuk'

    def __init__(self):
        super().__init__(symmetric(GENERATORS))

    def describe(self) -> str:
        return 'grigorchuk'

    def _identity_value(self) -> str:
        return ''

    def _generator_value(self, a: Letter) -> str:
        return a.symbol

    def _mul(self, u: str, v: str) -> str:
        return reduce_word(u + v)

    def _inv(self, u: str) -> str:
        return reduce_word(u[::-1])

    def _key(self, u: str) -> CanonicalKey:
        return portrait(u).encode()

    def _word_of(self, u: str) -> Word:
        return tuple(Letter(ch) for ch in u)

    def evaluate(self, w: Iterable[Letter]):
        return self.element(reduce_word(to_text(w)))

    def relators(self) -> list[Word]:
        texts = ['aa', 'bb', 'cc', 'dd', 'bcd', 'adad' * 2, 'acac' * 4, 'abab' * 8]
        return [tuple(Letter(ch) for ch in t) for t in texts]


# --- Действие на уровне дерева (независимая проверка) ---

@lru_cache(maxsize=None)
def tree_permutations(depth: int) -> dict[str, np.ndarray]:
    """
    Перестановки листьев уровня depth. Лист — число, старший бит —
    выбор в корне.
    """
    if depth == 0:
        identity = np.zeros(1, dtype=np.int64)
        return {ch: identity for ch in GENERATORS}
    lower = tree_permutations(depth - 1)
    half = 1 << (depth - 1)
    rest = np.arange(half, dtype=np.int64)
    return {
        'a': np.concatenate([rest + half, rest]),
        'b': np.concatenate([lower['a'], lower['c'] + half]),
        'c': np.concatenate([lower['a'], lower['d'] + half]),
        'd': np.concatenate([rest, lower['b'] + half]),
    }


def tree_action(w: Iterable[Letter] | str, depth: int) -> np.ndarray:
    """Образ каждого листа уровня depth под действием слова"""
    perms = tree_permutations(depth)
    image = np.arange(1 << depth, dtype=np.int64)
    for ch in to_text(w):
        image = perms[ch][image]
    return image


def tree_depth_for(length: int) -> int:
    """Уровень, на котором неединичное слово такой длины заведомо действует нетривиально"""
    return max(1, length).bit_length() + 5


def tree_is_trivial(w: Iterable[Letter] | str, depth: int | None = None) -> bool:
    text = to_text(w)
    if depth is None:
        depth = tree_depth_for(len(text))
    image = tree_action(text, depth)
    return bool(np.array_equal(image, np.arange(1 << depth)))
