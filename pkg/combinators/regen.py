"""
Смена порождающего множества: буква Σ₁ разворачивается в слово над Σ₂,
которое читает внутренний автомат, построенный для границы c·n.
"""
from typing import Mapping

from groups.relabel import complete_letter_map
from streaming.automaton import Recipe, StreamAutomaton
from streaming.errors import ConstructionError
from streaming.rng import SeedLike
from streaming.words import Letter, Word, format_word


class RegenRecipe(Recipe):
    def __init__(self, inner: Recipe, letter_map: Mapping[Letter, Word]):
        self.inner = inner
        self.letter_map = complete_letter_map(letter_map)
        for a, image in self.letter_map.items():
            unknown = [b for b in image if b not in inner.alphabet and not b.is_identity]
            if unknown:
                raise ConstructionError(f"Образ буквы {a} содержит буквы вне алфавита: {format_word(unknown)}")
        self.c = max(1, max(len(w) for w in self.letter_map.values()))
        self.injective = inner.injective
        self._alphabet = frozenset(self.letter_map)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        return f"regen({self.inner.describe()}, c={self.c})"

    def space_bits(self, n: int) -> int:
        return self.inner.space_bits(self.c * n)

    def epsilon_bound(self, n: int) -> float:
        return self.inner.epsilon_bound(self.c * n)

    def _make(self, n: int, seed: SeedLike) -> "RegenMachine":
        return RegenMachine(self, n, seed)


class RegenMachine(StreamAutomaton):
    def __init__(self, recipe: RegenRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.inner = recipe.inner.build(recipe.c * n, seed)

    def _advance(self, a: Letter, k: int) -> None:
        image = self.recipe.letter_map[a]
        if len(image) == 1:
            self.inner.step_power(image[0], k)
            return
        for _ in range(k):
            self.inner.feed(image)

    def state_index(self) -> int:
        return self.inner.state_index()


def change_generators(inner: Recipe, letter_map: Mapping[Letter, Word]) -> RegenRecipe:
    return RegenRecipe(inner, letter_map)
