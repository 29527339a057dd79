"""
Конечное расширение H ⊇ G: автомат хранит номер класса h_i и переводит
каждую букву H в слово над Σ для внутреннего автомата G.
"""
from itertools import product

from groups.base import ExactGroup
from groups.extension import ExtensionData, ExtensionGroup
from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError
from streaming.rng import SeedLike
from streaming.words import Letter, Word, symmetric


class ExtensionRecipe(Recipe):
    """
    inner_oracle, если задан, используется для проверки таблиц при
    построении рецепта.
    """

    def __init__(self, inner: Recipe, data: ExtensionData, inner_oracle: ExactGroup | None = None):
        self.inner = inner
        self.data = data
        clash = {a.symbol for a in inner.alphabet} & set(data.coset_names)
        if clash:
            raise ConstructionError(f"Имена классов совпадают с образующими G: {sorted(clash)}")
        if inner_oracle is not None:
            ExtensionGroup(inner_oracle, data)
        self.injective = inner.injective
        self._alphabet = inner.alphabet | symmetric(data.coset_names)
        self.coset_width = (data.index - 1).bit_length()
        self.c = self._expansion()

    def _expansion(self) -> int:
        """Наибольшая длина слова, которое внутренний автомат читает за одну букву"""
        data, k = self.data, self.data.index
        lengths = [1]
        for a in self.inner.alphabet:
            for i in range(k):
                lengths.append(len(data.conj_letter(a, i)))
        for i, j in product(range(k), repeat=2):
            lengths.append(len(data.product(i, j)[0]))
            word, beta = data.inverse_of(j)
            lengths.append(len(data.conjugate(word, i)) + len(data.product(i, beta)[0]))
        return max(lengths)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        return f"ext({self.inner.describe()}, k={self.data.index})"

    def space_bits(self, n: int) -> int:
        return self.coset_width + self.inner.space_bits(self.c * n)

    def epsilon_bound(self, n: int) -> float:
        return self.inner.epsilon_bound(self.c * n)

    def _make(self, n: int, seed: SeedLike) -> "ExtensionMachine":
        return ExtensionMachine(self, n, seed)


class ExtensionMachine(StreamAutomaton):
    def __init__(self, recipe: ExtensionRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.inner = recipe.inner.build(recipe.c * n, seed)
        self.coset = 0

    def _transition(self, a: Letter) -> None:
        data = self.recipe.data
        if a.symbol not in data.coset_names:
            self.inner.feed(data.conj_letter(a, self.coset))
            return
        j = data.coset_of(a)
        feed: Word
        if a.inverted:
            word, beta = data.inverse_of(j)
            tail, alpha = data.product(self.coset, beta)
            feed = data.conjugate(word, self.coset) + tail
        else:
            feed, alpha = data.product(self.coset, j)
        self.inner.feed(feed)
        self.coset = alpha

    def state_index(self) -> int:
        return pack_fields([(self.coset, self.recipe.coset_width), (self.inner.state_index(), self.inner.bits)])


def finite_extension(inner: Recipe, data: ExtensionData, inner_oracle: ExactGroup | None = None) -> ExtensionRecipe:
    return ExtensionRecipe(inner, data, inner_oracle)
