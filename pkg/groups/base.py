"""
Точные группы: общий интерфейс оракула.

Каждая группа хранит значения элементов в своём каноническом виде и умеет
выдавать канонический ключ (bytes), который совпадает у равных элементов
и различается у разных.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterable

from streaming.errors import AlphabetError, GroupMismatchError
from streaming.words import Letter, Word

CanonicalKey = bytes


def pack_key(parts: Iterable[bytes]) -> CanonicalKey:
    """Склейка ключей с префиксом длины — однозначна для вложенных структур"""
    out = bytearray()
    for part in parts:
        out += len(part).to_bytes(4, 'little')
        out += part
    return bytes(out)


def int_key(values: Iterable[int]) -> CanonicalKey:
    return ','.join(str(v) for v in values).encode()


@dataclass(frozen=True, eq=False)
class ExactElement:
    group: "ExactGroup"
    value: Any
    _key: CanonicalKey | None = field(default=None, repr=False, compare=False)

    @property
    def key(self) -> CanonicalKey:
        if self._key is None:
            object.__setattr__(self, '_key', self.group._key(self.value))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ExactElement):
            return NotImplemented
        return self.group is other.group and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "ExactElement") -> "ExactElement":
        return mul(self, other)

    def inverse(self) -> "ExactElement":
        return inv(self)

    def is_identity(self) -> bool:
        return self.key == self.group.identity().key


class ExactGroup(ABC):
    """Базовый класс оракула"""

    kind = 'group'

    def __init__(self, alphabet: frozenset[Letter]):
        self.alphabet = alphabet
        self._identity: ExactElement | None = None
        self._generators: dict[Letter, ExactElement] = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"

    def describe(self) -> str:
        return self.kind

    # --- хуки конкретных групп ---

    @abstractmethod
    def _identity_value(self) -> Any:
        ...

    @abstractmethod
    def _generator_value(self, a: Letter) -> Any:
        ...

    @abstractmethod
    def _mul(self, u: Any, v: Any) -> Any:
        ...

    @abstractmethod
    def _inv(self, u: Any) -> Any:
        ...

    @abstractmethod
    def _key(self, u: Any) -> CanonicalKey:
        ...

    def _word_of(self, u: Any) -> Word:
        raise NotImplementedError(f"{self.describe()}: обратное чтение слова не поддерживается")

    def relators(self) -> list[Word]:
        """Известные соотношения — для генерации равных пар"""
        return []

    # --- общий интерфейс ---

    def element(self, value: Any) -> ExactElement:
        return ExactElement(self, value)

    def identity(self) -> ExactElement:
        if self._identity is None:
            self._identity = self.element(self._identity_value())
        return self._identity

    def generator(self, a: Letter) -> ExactElement:
        cached = self._generators.get(a)
        if cached is not None:
            return cached
        if a.is_identity:
            return self.identity()
        if a not in self.alphabet:
            raise AlphabetError(f"Буква {a} не входит в алфавит группы {self.describe()}")
        element = self.element(self._generator_value(a))
        self._generators[a] = element
        return element

    def mul(self, x: ExactElement, y: ExactElement) -> ExactElement:
        return self.element(self._mul(x.value, y.value))

    def inv(self, x: ExactElement) -> ExactElement:
        return self.element(self._inv(x.value))

    def evaluate(self, w: Iterable[Letter]) -> ExactElement:
        value = self._identity_value()
        for a in w:
            value = self._mul(value, self.generator(a).value)
        return self.element(value)

    def word_of(self, x: ExactElement) -> Word:
        return tuple(self._word_of(x.value))

    def positive_letters(self) -> list[Letter]:
        return sorted(a for a in self.alphabet if not a.inverted)


def _same_group(x: ExactElement, y: ExactElement) -> None:
    if x.group is not y.group:
        raise GroupMismatchError(f"Элементы из разных групп: {x.group.describe()} и {y.group.describe()}")


def evaluate(G: ExactGroup, w: Iterable[Letter]) -> ExactElement:
    return G.evaluate(w)


def mul(x: ExactElement, y: ExactElement) -> ExactElement:
    _same_group(x, y)
    return x.group.mul(x, y)


def inv(x: ExactElement) -> ExactElement:
    return x.group.inv(x)


def canonical_key(x: ExactElement) -> CanonicalKey:
    return x.key


def is_identity(G: ExactGroup, w: Iterable[Letter]) -> bool:
    return G.evaluate(w).is_identity()


def equal_words(G: ExactGroup, u: Iterable[Letter], v: Iterable[Letter]) -> bool:
    return G.evaluate(u) == G.evaluate(v)
