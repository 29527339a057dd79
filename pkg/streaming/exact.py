"""
Точные автоматы без случайности и без ошибки.

Счётчик — для Z^m и Z_m: после не более n букв координата Z лежит в [-n, n],
поэтому хватает вычетов по модулю 2n+1. Таблица — для конечной группы:
состояние есть номер элемента.
"""
from typing import Mapping, Sequence

from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError
from streaming.rng import SeedLike
from streaming.words import Letter


class CounterRecipe(Recipe):
    """
    Прямое произведение циклических групп.

    moduli[i] = None означает координату Z, иначе Z_{moduli[i]}.
    """

    def __init__(self, names: Sequence[str], moduli: Sequence[int | None]):
        if not names or len(names) != len(moduli):
            raise ConstructionError("Число имён образующих должно совпадать с числом модулей")
        for m in moduli:
            if m is not None and m < 1:
                raise ConstructionError(f"Модуль циклической группы должен быть ≥ 1, получено {m}")
        self.names = list(names)
        self.moduli = list(moduli)
        self._coordinate = {}
        for i, name in enumerate(self.names):
            self._coordinate[Letter(name)] = (i, 1)
            self._coordinate[Letter(name, True)] = (i, -1)
        self._alphabet = frozenset(self._coordinate)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        parts = ['Z' if m is None else f"Z_{m}" for m in self.moduli]
        return f"counter({' × '.join(parts)})"

    def effective_moduli(self, n: int) -> list[int]:
        return [2 * n + 1 if m is None else m for m in self.moduli]

    def space_bits(self, n: int) -> int:
        return sum((m - 1).bit_length() for m in self.effective_moduli(n))

    def epsilon_bound(self, n: int) -> float:
        return 0.0

    def _make(self, n: int, seed: SeedLike) -> "CounterMachine":
        return CounterMachine(self, n, seed)


class CounterMachine(StreamAutomaton):
    def __init__(self, recipe: CounterRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.moduli = recipe.effective_moduli(n)
        self.values = [0] * len(self.moduli)

    def _advance(self, a: Letter, k: int) -> None:
        i, sign = self.recipe._coordinate[a]
        self.values[i] = (self.values[i] + sign * k) % self.moduli[i]

    def state_index(self) -> int:
        return pack_fields((v, (m - 1).bit_length()) for v, m in zip(self.values, self.moduli))


def counter_recipe(names: Sequence[str], moduli: Sequence[int | None] | None = None) -> CounterRecipe:
    return CounterRecipe(names, moduli if moduli is not None else [None] * len(names))


class TableRecipe(Recipe):
    """
    Конечная группа по таблице умножения: table[i][j] — номер произведения,
    элемент 0 — единица. generators сопоставляет букве номер элемента.
    """

    def __init__(self, table: Sequence[Sequence[int]], generators: Mapping[Letter, int]):
        self.table = [list(row) for row in table]
        size = len(self.table)
        if size == 0 or any(len(row) != size for row in self.table):
            raise ConstructionError("Таблица умножения должна быть квадратной и непустой")
        for a, index in generators.items():
            if not 0 <= index < size:
                raise ConstructionError(f"Образующая {a} указывает на несуществующий элемент {index}")
        self.generators = dict(generators)
        self._alphabet = frozenset(self.generators)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    @property
    def order(self) -> int:
        return len(self.table)

    def describe(self) -> str:
        return f"table(|G|={self.order})"

    def space_bits(self, n: int) -> int:
        return (self.order - 1).bit_length()

    def epsilon_bound(self, n: int) -> float:
        return 0.0

    def _make(self, n: int, seed: SeedLike) -> "TableMachine":
        return TableMachine(self, n, seed)


class TableMachine(StreamAutomaton):
    def __init__(self, recipe: TableRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.element = 0

    def _transition(self, a: Letter) -> None:
        self.element = self.recipe.table[self.element][self.recipe.generators[a]]

    def state_index(self) -> int:
        return self.element
