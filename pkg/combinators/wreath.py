"""
Сплетения H ≀ G с автоматом A для базы G.

Состояние q внутреннего автомата после префикса служит адресом позиции
курсора. Буква лампы a^γ, прочитанная в позиции q, добавляет γ·x^q
к многочлену P(x) = Σ σ(s)·x^{q_s}; автоматы хранят не сам многочлен,
а его отпечаток:

  - H = Z: значение P(n+1) по модулю случайного простого;
  - H = Z_p: значение P(r) в F_{p^e} в случайной точке r;
  - H = Z_{p^k}: остатки P по t случайным приведённым многочленам над Z_{p^k}.

Для конечной базы G хранятся |G| копий автомата H и номер элемента курсора.
"""
import logging
import math
from typing import Mapping, Sequence

import numpy as np
import sympy

from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError, RoutingError
from streaming.exact import TableRecipe
from streaming.fields import GaloisField, ResiduePolynomials, minimal_extension_degree
from streaming.primes import ceil_product, is_probable_prime, residue_width, sample_prime
from streaming.rng import SeedLike, generator, randbelow, spawn
from streaming.words import Letter, split_tag, symmetric, tag_alphabet

LAMP_SYMBOL = 'a'


class _InfiniteBaseWreath(Recipe):
    """
    Общая часть сплетений с бесконечной базой: маршрутизация букв и
    построение внутреннего автомата.
    """

    def __init__(self, inner: Recipe, lamp_tag: str = 'h', base_tag: str = 'g'):
        if not inner.injective:
            raise ConstructionError(
                f"Автомат базы {inner.describe()} не ε-инъективен: сплетение адресует лампы индексом состояния"
            )
        if lamp_tag == base_tag:
            raise ConstructionError("Теги ламп и базы должны быть различны")
        self.inner = inner
        self.lamp_tag = lamp_tag
        self.base_tag = base_tag
        self._alphabet = tag_alphabet(symmetric([LAMP_SYMBOL]), lamp_tag) | tag_alphabet(inner.alphabet, base_tag)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def split(self, a: Letter) -> tuple[bool, Letter]:
        """(это буква базы?, внутренняя буква)"""
        prefix, inner = split_tag(a)
        if prefix == self.base_tag:
            return True, inner
        if prefix != self.lamp_tag:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не относится ни к лампам, ни к базе")
        return False, inner

    def inner_bits(self, n: int) -> int:
        return self.inner.space_bits(n)

    def spread(self, n: int) -> float:
        """2εn² — вероятность того, что две разные позиции получат один индекс"""
        return 2 * self.inner.epsilon_bound(n) * n * n


class WreathMachine(StreamAutomaton):
    routes_identity = True

    def __init__(self, recipe: _InfiniteBaseWreath, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.inner = recipe.inner.build(n, spawn(seed, 0))

    def _advance(self, a: Letter, k: int) -> None:
        is_base, inner = self.recipe.split(a)
        if is_base:
            self.inner.step_power(inner, k)
        elif not inner.is_identity:
            self._lamp(-k if inner.inverted else k)

    def _lamp(self, amount: int) -> None:
        raise NotImplementedError

    def _lamp_fields(self) -> list[tuple[int, int]]:
        raise NotImplementedError

    def state_index(self) -> int:
        return pack_fields(self._lamp_fields() + [(self.inner.state_index(), self.inner.bits)])


# --- H = Z ---

class WreathZRecipe(_InfiniteBaseWreath):
    def __init__(self, inner: Recipe, d: int = 2, lamp_tag: str = 'h', base_tag: str = 'g'):
        if d < 1:
            raise ConstructionError(f"Показатель ошибки d должен быть ≥ 1, получено {d}")
        super().__init__(inner, lamp_tag, base_tag)
        self.d = d

    def describe(self) -> str:
        return f"wr(Z, {self.inner.describe()})"

    def prime_base(self, n: int) -> int:
        """N = max(64, ⌈|Q_n|·n^{d+1}⌉)"""
        return max(64, ceil_product(n, self.d + 1, 2 ** self.inner_bits(n)))

    def space_bits(self, n: int) -> int:
        return residue_width(self.prime_base(n)) + self.inner_bits(n)

    def epsilon_bound(self, n: int) -> float:
        eps = self.inner.epsilon_bound(n)
        return self.spread(n) + max(eps, 1 / n ** self.d)

    def _make(self, n: int, seed: SeedLike) -> "WreathZMachine":
        return WreathZMachine(self, n, seed)


class WreathZMachine(WreathMachine):
    def __init__(self, recipe: WreathZRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        base = recipe.prime_base(n)
        self.p = sample_prime(base, 2 * base, spawn(seed, 1))
        self.width = residue_width(base)
        self.radix = n + 1
        self.z = 0

    def _lamp(self, amount: int) -> None:
        q = self.inner.state_index()
        self.z = (self.z + amount * pow(self.radix, q, self.p)) % self.p

    def _lamp_fields(self) -> list[tuple[int, int]]:
        return [(self.z, self.width)]


# --- H = Z_p ---

class WreathZpRecipe(_InfiniteBaseWreath):
    def __init__(self, inner: Recipe, p: int, d: int = 2, lamp_tag: str = 'h', base_tag: str = 'g'):
        if p < 2 or not is_probable_prime(p):
            raise ConstructionError(f"Порядок лампы должен быть простым, получено {p}")
        if d < 1:
            raise ConstructionError(f"Показатель ошибки d должен быть ≥ 1, получено {d}")
        super().__init__(inner, lamp_tag, base_tag)
        self.p = p
        self.d = d

    def describe(self) -> str:
        return f"wr(Z_{self.p}, {self.inner.describe()})"

    def extension_degree(self, n: int) -> int:
        """Наименьшее e с p^e ≥ |Q_n|·n^d"""
        return minimal_extension_degree(self.p, 2 ** self.inner_bits(n) * n ** self.d)

    def space_bits(self, n: int) -> int:
        order = self.p ** self.extension_degree(n)
        return 2 * (order - 1).bit_length() + self.inner_bits(n)

    def epsilon_bound(self, n: int) -> float:
        eps = self.inner.epsilon_bound(n)
        return self.spread(n) + max(eps, 1 / n ** self.d)

    def _make(self, n: int, seed: SeedLike) -> "WreathZpMachine":
        return WreathZpMachine(self, n, seed)


class WreathZpMachine(WreathMachine):
    def __init__(self, recipe: WreathZpRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.field = GaloisField(recipe.p, recipe.extension_degree(n))
        self.point = randbelow(generator(spawn(seed, 1)), self.field.order)
        self.z = self.field.zero

    def _lamp(self, amount: int) -> None:
        f = self.field
        term = f.mul(f.from_int(amount), f.pow(self.point, self.inner.state_index()))
        self.z = f.add(self.z, term)

    def _lamp_fields(self) -> list[tuple[int, int]]:
        width = self.field.element_bits
        return [(self.z, width), (self.point, width)]


# --- H = Z_{p^k} ---

class WreathZpkRecipe(_InfiniteBaseWreath):
    def __init__(self, inner: Recipe, p: int, k: int, eps_prime: float = 0.05,
                 lamp_tag: str = 'h', base_tag: str = 'g'):
        if k < 2:
            raise ConstructionError(f"Для Z_{{p^k}} нужно k ≥ 2, получено k = {k}; для k = 1 используйте Z_p")
        if p < 2 or not is_probable_prime(p):
            raise ConstructionError(f"Основание p должно быть простым, получено {p}")
        if not 0 < eps_prime < 1:
            raise ConstructionError(f"ε′ должно лежать в (0, 1), получено {eps_prime}")
        super().__init__(inner, lamp_tag, base_tag)
        self.p = p
        self.k = k
        self.modulus = p ** k
        self.eps_prime = eps_prime

    def describe(self) -> str:
        return f"wr(Z_{self.p}^{self.k}, {self.inner.describe()})"

    def divisor_degree(self, n: int) -> int:
        """D = ⌈log₂(4(|Q_n| − 1))⌉"""
        states = 2 ** self.inner_bits(n)
        return max(1, (4 * (states - 1) - 1).bit_length())

    def divisor_count(self, n: int) -> int:
        """t = ⌈4D·ln(1/ε′)⌉: каждый делитель пропускает ненулевой P с вероятностью ≤ 1 − 1/(4D)"""
        return math.ceil(4 * self.divisor_degree(n) * math.log(1 / self.eps_prime))

    def space_bits(self, n: int) -> int:
        entry = (self.modulus - 1).bit_length()
        return self.divisor_count(n) * self.divisor_degree(n) * entry + self.inner_bits(n)

    def epsilon_bound(self, n: int) -> float:
        return self.spread(n) + self.eps_prime

    def _make(self, n: int, seed: SeedLike) -> "WreathZpkMachine":
        return WreathZpkMachine(self, n, seed)


class WreathZpkMachine(WreathMachine):
    def __init__(self, recipe: WreathZpkRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        t, D = recipe.divisor_count(n), recipe.divisor_degree(n)
        self.divisors = ResiduePolynomials.random(recipe.modulus, t, D, generator(spawn(seed, 1)))
        self.residues = self.divisors.zeros()
        self._powers: dict[int, np.ndarray] = {}
        self.entry_width = (recipe.modulus - 1).bit_length()
        logging.debug("wr(Z_%d): %d делителей степени %d", recipe.modulus, t, D)

    def _lamp(self, amount: int) -> None:
        M = self.recipe.modulus
        q = self.inner.state_index()
        # степени x по позициям курсора; слово посещает не больше n + 1 позиций
        step = self._powers.get(q)
        if step is None:
            step = self._powers[q] = self.divisors.power_of_x(q)
        self.residues = (self.residues + (amount % M) * step) % M

    def _lamp_fields(self) -> list[tuple[int, int]]:
        return [(int(v), self.entry_width) for v in np.ravel(self.residues)]


# --- H = прямое произведение циклических ---

def prime_power(m: int) -> tuple[int, int]:
    """m = p^k → (p, k)"""
    factors = sympy.factorint(m)
    if len(factors) != 1:
        raise ConstructionError(f"Порядок лампы {m} не является степенью простого")
    (p, k), = factors.items()
    return int(p), int(k)


def lamp_factor(inner: Recipe, modulus: int | None, lamp_tag: str, d: int = 2,
                eps_prime: float = 0.05) -> _InfiniteBaseWreath:
    """Z при modulus=None, Z_p при простом, Z_{p^k} при степени простого"""
    if modulus is None:
        return WreathZRecipe(inner, d, lamp_tag)
    if modulus < 2:
        raise ConstructionError(f"Порядок лампы должен быть ≥ 2, получено {modulus}")
    p, k = prime_power(modulus)
    if k == 1:
        return WreathZpRecipe(inner, p, d, lamp_tag)
    return WreathZpkRecipe(inner, p, k, eps_prime, lamp_tag)


class WreathAbelianRecipe(Recipe):
    """
    (H₁ × … × H_m) ≀ G как подгруппа (H₁ ≀ G) × … × (H_m ≀ G).
    Буквы ламп сомножителя i помечены тегом "h<i>", буквы базы читают все копии.
    """

    def __init__(self, inner: Recipe, moduli: Sequence[int | None], d: int = 2, eps_prime: float = 0.05,
                 base_tag: str = 'g'):
        if not moduli:
            raise ConstructionError("Список сомножителей ламп пуст")
        self.inner = inner
        self.base_tag = base_tag
        self.tags = [f"h{i + 1}" for i in range(len(moduli))]
        self.factors = [lamp_factor(inner, m, t, d, eps_prime) for m, t in zip(moduli, self.tags)]
        self.moduli = list(moduli)
        self.position = {t: i for i, t in enumerate(self.tags)}
        letters = set()
        for factor in self.factors:
            letters |= factor.alphabet
        self._alphabet = frozenset(letters)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        lamps = ', '.join('Z' if m is None else f"Z_{m}" for m in self.moduli)
        return f"wr([{lamps}], {self.inner.describe()})"

    def space_bits(self, n: int) -> int:
        return sum(f.space_bits(n) for f in self.factors)

    def epsilon_bound(self, n: int) -> float:
        return sum(f.epsilon_bound(n) for f in self.factors)

    def route(self, a: Letter) -> int | None:
        """Номер сомножителя для буквы лампы, None для буквы базы"""
        prefix, _ = split_tag(a)
        if prefix == self.base_tag:
            return None
        if prefix not in self.position:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не соответствует ни одному сомножителю ламп")
        return self.position[prefix]

    def _make(self, n: int, seed: SeedLike) -> "WreathAbelianMachine":
        return WreathAbelianMachine(self, n, seed)


class WreathAbelianMachine(StreamAutomaton):
    routes_identity = True

    def __init__(self, recipe: WreathAbelianRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.children = [f.build(n, spawn(seed, i)) for i, f in enumerate(recipe.factors)]

    def _advance(self, a: Letter, k: int) -> None:
        i = self.recipe.route(a)
        if i is None:
            for child in self.children:
                child.step_power(a, k)
        else:
            self.children[i].step_power(a, k)

    def state_index(self) -> int:
        return pack_fields((child.state_index(), child.bits) for child in self.children)


def wreath_Z(inner: Recipe, d: int = 2) -> WreathZRecipe:
    return WreathZRecipe(inner, d)


def wreath_Zp(inner: Recipe, p: int, d: int = 2) -> WreathZpRecipe:
    return WreathZpRecipe(inner, p, d)


def wreath_Zpk(inner: Recipe, p: int, k: int, eps_prime: float = 0.05) -> WreathZpkRecipe:
    return WreathZpkRecipe(inner, p, k, eps_prime)


def wreath_abelian(inner: Recipe, moduli: Sequence[int | None], d: int = 2,
                   eps_prime: float = 0.05) -> WreathAbelianRecipe:
    return WreathAbelianRecipe(inner, moduli, d, eps_prime)


# --- конечная база ---

class WreathFiniteRecipe(Recipe):
    """
    H ≀ G для конечной G, заданной таблицей. lamp_tag=None означает, что буквы
    H уже помечены и передаются автомату H как есть.
    """

    def __init__(self, lamp: Recipe, table: Sequence[Sequence[int]], generators: Mapping[Letter, int],
                 lamp_tag: str | None = 'h', base_tag: str = 'g'):
        self.lamp = lamp
        self.top = TableRecipe(table, generators)
        self.lamp_tag = lamp_tag
        self.base_tag = base_tag
        self.injective = lamp.injective
        lamp_letters = lamp.alphabet if lamp_tag is None else tag_alphabet(lamp.alphabet, lamp_tag)
        self._alphabet = lamp_letters | tag_alphabet(self.top.alphabet, base_tag)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    @property
    def order(self) -> int:
        return self.top.order

    def describe(self) -> str:
        return f"wr({self.lamp.describe()}, |G|={self.order})"

    def split(self, a: Letter) -> tuple[bool, Letter]:
        prefix, inner = split_tag(a)
        if prefix == self.base_tag:
            return True, inner
        if self.lamp_tag is None:
            return False, a
        if prefix != self.lamp_tag:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не относится ни к лампам, ни к базе")
        return False, inner

    def space_bits(self, n: int) -> int:
        return self.order * self.lamp.space_bits(n) + self.top.space_bits(n)

    def epsilon_bound(self, n: int) -> float:
        return self.order * self.lamp.epsilon_bound(n)

    def _make(self, n: int, seed: SeedLike) -> "WreathFiniteMachine":
        return WreathFiniteMachine(self, n, seed)


class WreathFiniteMachine(StreamAutomaton):
    routes_identity = True

    def __init__(self, recipe: WreathFiniteRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.copies = [recipe.lamp.build(n, spawn(seed, i)) for i in range(recipe.order)]
        self.cursor = recipe.top.build(n, spawn(seed, recipe.order))

    def _advance(self, a: Letter, k: int) -> None:
        is_base, inner = self.recipe.split(a)
        if is_base:
            self.cursor.step_power(inner, k)
        else:
            self.copies[self.cursor.state_index()].step_power(inner, k)

    def state_index(self) -> int:
        fields = [(self.cursor.state_index(), self.cursor.bits)]
        fields.extend((copy.state_index(), copy.bits) for copy in self.copies)
        return pack_fields(fields)


def wreath_finite(lamp: Recipe, table: Sequence[Sequence[int]], generators: Mapping[Letter, int],
                  lamp_tag: str | None = 'h') -> WreathFiniteRecipe:
    return WreathFiniteRecipe(lamp, table, generators, lamp_tag)
