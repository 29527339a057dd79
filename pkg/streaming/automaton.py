"""
Контракт потокового автомата и решение проблемы равенства единице.

Рецепт (Recipe) — неизменяемое описание конструкции, общее для всех потоков.
Автомат (StreamAutomaton) — экземпляр для конкретных (n, seed): вся
случайность потребляется при построении, дальше переходы детерминированы.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable

from streaming.errors import AlphabetError, ConstructionError, InvalidArgumentError, StreamOverflowError
from streaming.rng import SeedLike
from streaming.words import IDENTITY, Letter, Word


def pack_fields(fields: Iterable[tuple[int, int]]) -> int:
    """
    Упаковка полей (значение, ширина) в одно целое, первое поле — младшие биты.
    """
    index, offset = 0, 0
    for value, width in fields:
        if value < 0 or value >> width:
            raise ValueError(f"Значение {value} не помещается в {width} бит")
        index |= value << offset
        offset += width
    return index


class Recipe(ABC):
    """Рецепт построения автомата"""

    injective = True

    @property
    @abstractmethod
    def alphabet(self) -> frozenset[Letter]:
        ...

    @abstractmethod
    def space_bits(self, n: int) -> int:
        ...

    @abstractmethod
    def epsilon_bound(self, n: int) -> float:
        ...

    @abstractmethod
    def _make(self, n: int, seed: SeedLike) -> "StreamAutomaton":
        ...

    def describe(self) -> str:
        return type(self).__name__

    def build(self, n: int, seed: SeedLike) -> "StreamAutomaton":
        if n < 1:
            raise ConstructionError(f"Граница длины n должна быть ≥ 1, получено {n}")
        machine = self._make(n, seed)
        machine.initial_index = machine.state_index()
        return machine


class StreamAutomaton(ABC):
    """Полуслучайный автомат: случайное начальное состояние, детерминированные переходы"""

    routes_identity = False

    def __init__(self, recipe: Recipe, n: int, seed: SeedLike):
        self.recipe = recipe
        self.n = n
        self.seed = seed
        self.letters_read = 0
        self.initial_index: int | None = None
        self.bits = recipe.space_bits(n)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self.recipe.alphabet

    def epsilon_bound(self) -> float:
        return self.recipe.epsilon_bound(self.n)

    def _check(self, a: Letter, k: int) -> None:
        if k < 0:
            raise InvalidArgumentError(f"Показатель степени должен быть ≥ 0, получено {k}")
        if not a.is_identity and a not in self.alphabet:
            raise AlphabetError(f"Буква {a} не входит в алфавит {self.recipe.describe()}")
        if self.letters_read + k > self.n:
            raise StreamOverflowError(
                f"Поток длиннее n = {self.n}: прочитано {self.letters_read}, запрошено ещё {k}"
            )

    def step(self, a: Letter) -> "StreamAutomaton":
        return self.step_power(a, 1)

    def step_power(self, a: Letter, k: int) -> "StreamAutomaton":
        """Состояние, совпадающее с k последовательными step(a)"""
        self._check(a, k)
        if k and not self._is_noop(a):
            self._advance(a, k)
        self.letters_read += k
        return self

    def feed(self, w: Iterable[Letter]) -> "StreamAutomaton":
        for a in w:
            self.step(a)
        return self

    def _is_noop(self, a: Letter) -> bool:
        # составные автоматы передают "<тег>.1" сомножителю, листья пропускают
        return a.is_identity and (a == IDENTITY or not self.routes_identity)

    def _advance(self, a: Letter, k: int) -> None:
        for _ in range(k):
            self._transition(a)

    def _transition(self, a: Letter) -> None:
        raise NotImplementedError

    @abstractmethod
    def state_index(self) -> int:
        ...

    def accepts(self) -> bool:
        return self.state_index() == self.initial_index


@dataclass(frozen=True)
class DecisionResult:
    accept: bool
    bits_used: int
    letters_read: int


def init(recipe: Recipe, n: int, seed: SeedLike) -> StreamAutomaton:
    return recipe.build(n, seed)


def decide_identity(recipe: Recipe, n: int, seed: SeedLike, w: Word) -> DecisionResult:
    """Запоминаем начальное состояние и принимаем, если слово вернуло в него"""
    if len(w) > n:
        raise StreamOverflowError(f"Длина слова {len(w)} больше n = {n}")
    machine = recipe.build(n, seed)
    machine.feed(w)
    return DecisionResult(machine.accepts(), machine.bits, machine.letters_read)


def space_bits(recipe: Recipe, n: int) -> int:
    if n < 1:
        raise ConstructionError(f"Граница длины n должна быть ≥ 1, получено {n}")
    return recipe.space_bits(n)
