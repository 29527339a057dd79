"""
Свободное произведение G ∗ H.

Автоматы сомножителей читают свои проекции слова. На каждой смене алфавита
текущая пара состояний (p, q) кодируется числом f(p, q), и в автомат F₂
пишется блок a^{-f}·b^{±1}·a^{f}: b после блока букв H, b⁻¹ после блока
букв G. Если p = p₀ или q = q₀, блок не пишется.
"""
from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError, RoutingError
from streaming.linear import free_group_spec
from streaming.rng import SeedLike, spawn
from streaming.words import Letter, split_tag, tag_alphabet

F2_A = Letter('a')
F2_B = Letter('b')


class FreeProductRecipe(Recipe):
    def __init__(self, left: Recipe, right: Recipe, c_f2: int = 1, tags: tuple[str, str] = ('1', '2')):
        for recipe in (left, right):
            if not recipe.injective:
                raise ConstructionError(
                    f"Сомножитель {recipe.describe()} не ε-инъективен: свободное произведение требует индексов состояний"
                )
        if tags[0] == tags[1]:
            raise ConstructionError("Теги сомножителей должны быть различны")
        self.left = left
        self.right = right
        self.tags = tags
        self.f2 = free_group_spec(2, c_f2)
        self._alphabet = tag_alphabet(left.alphabet, tags[0]) | tag_alphabet(right.alphabet, tags[1])

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        return f"fp({self.left.describe()}, {self.right.describe()})"

    def f2_bound(self, n: int) -> int:
        """m = n·(2·|P_n|·|Q_n| + 1) с |P_n| = 2^bits"""
        return n * (2 * 2 ** self.left.space_bits(n) * 2 ** self.right.space_bits(n) + 1)

    def space_bits(self, n: int) -> int:
        return self.left.space_bits(n) + self.right.space_bits(n) + self.f2.space_bits(self.f2_bound(n))

    def epsilon_bound(self, n: int) -> float:
        inner = max(self.left.epsilon_bound(n), self.right.epsilon_bound(n), self.f2.epsilon_bound(self.f2_bound(n)))
        return (4 * n * n + 1) * inner

    def route(self, a: Letter) -> tuple[int, Letter]:
        prefix, inner = split_tag(a)
        if prefix not in self.tags:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не соответствует ни одному сомножителю")
        return self.tags.index(prefix), inner

    def _make(self, n: int, seed: SeedLike) -> "FreeProductMachine":
        return FreeProductMachine(self, n, seed)


class FreeProductMachine(StreamAutomaton):
    routes_identity = True

    def __init__(self, recipe: FreeProductRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.factors = [recipe.left.build(n, spawn(seed, 0)), recipe.right.build(n, spawn(seed, 1))]
        self.f2 = recipe.f2.build(recipe.f2_bound(n), spawn(seed, 2))
        self.origin = [m.initial_index for m in self.factors]
        self.right_bits = self.factors[1].bits
        self.phase: int | None = None
        self.emissions = 0

    def pairing(self, p: int, q: int) -> int:
        return p * 2 ** self.right_bits + q + 1

    def _emit(self, closing: int) -> None:
        p, q = (m.state_index() for m in self.factors)
        if p == self.origin[0] or q == self.origin[1]:
            return
        f = self.pairing(p, q)
        b = F2_B if closing == 1 else F2_B.inverse()
        self.f2.step_power(F2_A.inverse(), f)
        self.f2.step(b)
        self.f2.step_power(F2_A, f)
        self.emissions += 1

    def _advance(self, a: Letter, k: int) -> None:
        side, inner = self.recipe.route(a)
        if self.phase is not None and side != self.phase:
            self._emit(self.phase)
        self.phase = side
        self.factors[side].step_power(inner, k)

    def state_index(self) -> int:
        # фаза не входит в индекс: сравнение с начальным состоянием идёт по (p, q, r)
        return pack_fields((m.state_index(), m.bits) for m in (*self.factors, self.f2))


def free_product(left: Recipe, right: Recipe, c_f2: int = 1) -> FreeProductRecipe:
    return FreeProductRecipe(left, right, c_f2)
