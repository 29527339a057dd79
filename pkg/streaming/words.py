"""
Буквы, слова и теги алфавитов.

Буква — имя образующей плюс флаг обращения. Составные группы помечают буквы
сомножителей префиксом через точку: "1.a", "g.t", "h1.a".
Буква "1" (и "<тег>.1") — формальная единица: читается как пустой шаг, но
учитывается в длине слова.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

from streaming.errors import DataFormatError, RoutingError

TAG_SEPARATOR = '.'
IDENTITY_SYMBOL = '1'


@dataclass(frozen=True, order=True)
class Letter:
    symbol: str
    inverted: bool = False

    def __post_init__(self):
        if not self.symbol or any(ch.isspace() for ch in self.symbol):
            raise ValueError(f"Недопустимое имя буквы: {self.symbol!r}")
        if self.inverted and self.is_identity:
            object.__setattr__(self, 'inverted', False)

    @property
    def is_identity(self) -> bool:
        return self.symbol.rsplit(TAG_SEPARATOR, 1)[-1] == IDENTITY_SYMBOL

    def inverse(self) -> "Letter":
        if self.is_identity:
            return self
        return Letter(self.symbol, not self.inverted)

    def __str__(self):
        return self.symbol + ('-' if self.inverted else '')


IDENTITY = Letter(IDENTITY_SYMBOL)

Word = tuple[Letter, ...]


def letter(text: str) -> Letter:
    """Буква из записи вида "a" или "a-" """
    text = text.strip()
    if text.endswith('-'):
        return Letter(text[:-1], True)
    return Letter(text)


def parse_word(text: str) -> Word:
    """Слово из строки: буквы через пробел, обращение — завершающий '-'"""
    try:
        return tuple(letter(token) for token in text.split())
    except ValueError as e:
        raise DataFormatError(str(e)) from e


def format_word(word: Iterable[Letter]) -> str:
    return ' '.join(str(a) for a in word)


def word(*tokens: str) -> Word:
    """Короткая запись для тестов и фабрик: word("a", "b-")"""
    return tuple(letter(t) for t in tokens)


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple(a.inverse() for a in reversed(w))


def power(w: Sequence[Letter], k: int) -> Word:
    if k < 0:
        return tuple(inverse_word(w)) * (-k)
    return tuple(w) * k


def symmetric(symbols: Iterable[str]) -> frozenset[Letter]:
    """Симметричный алфавит: каждая образующая и её формальный обратный"""
    letters = set()
    for s in symbols:
        letters.add(Letter(s))
        letters.add(Letter(s, True))
    return frozenset(letters)


def positive(alphabet: Iterable[Letter]) -> list[Letter]:
    return sorted(a for a in alphabet if not a.inverted)


def tag(a: Letter, prefix: str) -> Letter:
    return Letter(f"{prefix}{TAG_SEPARATOR}{a.symbol}", a.inverted)


def tag_word(w: Iterable[Letter], prefix: str) -> Word:
    return tuple(tag(a, prefix) for a in w)


def tag_alphabet(alphabet: Iterable[Letter], prefix: str) -> frozenset[Letter]:
    return frozenset(tag(a, prefix) for a in alphabet)


def split_tag(a: Letter) -> tuple[str, Letter]:
    """Разделяет букву на тег сомножителя и внутреннюю букву"""
    if TAG_SEPARATOR not in a.symbol:
        raise RoutingError(f"Буква {a} не содержит тега сомножителя")
    prefix, inner = a.symbol.split(TAG_SEPARATOR, 1)
    return prefix, Letter(inner, a.inverted)
