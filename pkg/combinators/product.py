"""
Прямое произведение: сомножители работают параллельно, буква уходит
в автомат своего сомножителя по тегу.
"""
from typing import Sequence

from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError, RoutingError
from streaming.rng import SeedLike, spawn
from streaming.words import Letter, split_tag, tag_alphabet


class DirectProductRecipe(Recipe):
    def __init__(self, factors: Sequence[tuple[str, Recipe]]):
        if not factors:
            raise ConstructionError("Прямое произведение без сомножителей")
        tags = [t for t, _ in factors]
        if len(set(tags)) != len(tags):
            raise ConstructionError(f"Теги сомножителей должны быть различны: {tags}")
        self.factors = list(factors)
        self.position = {t: i for i, t in enumerate(tags)}
        self.injective = all(r.injective for _, r in factors)
        letters = set()
        for t, recipe in factors:
            letters |= tag_alphabet(recipe.alphabet, t)
        self._alphabet = frozenset(letters)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        return f"dp({', '.join(r.describe() for _, r in self.factors)})"

    def space_bits(self, n: int) -> int:
        return sum(r.space_bits(n) for _, r in self.factors)

    def epsilon_bound(self, n: int) -> float:
        return sum(r.epsilon_bound(n) for _, r in self.factors)

    def route(self, a: Letter) -> tuple[int, Letter]:
        prefix, inner = split_tag(a)
        if prefix not in self.position:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не соответствует ни одному сомножителю")
        return self.position[prefix], inner

    def _make(self, n: int, seed: SeedLike) -> "DirectProductMachine":
        return DirectProductMachine(self, n, seed)


class DirectProductMachine(StreamAutomaton):
    routes_identity = True

    def __init__(self, recipe: DirectProductRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.children = [r.build(n, spawn(seed, i)) for i, (_, r) in enumerate(recipe.factors)]

    def _advance(self, a: Letter, k: int) -> None:
        i, inner = self.recipe.route(a)
        self.children[i].step_power(inner, k)

    def state_index(self) -> int:
        return pack_fields((child.state_index(), child.bits) for child in self.children)


def direct_product(left: Recipe, right: Recipe) -> DirectProductRecipe:
    return DirectProductRecipe([('1', left), ('2', right)])
