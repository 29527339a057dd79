"""
Конечные расширения: H ⊇ G с конечным индексом k и представителями
смежных классов h_0 = 1, h_1, …, h_{k−1}.

Таблицы расширения:
  conj[(a, i)]   — слово g(a, i) над Σ с h_i·a = g(a, i)·h_i;
  mult[(i, j)]   — (g(i, j), α(i, j)) с h_i·h_j = g(i, j)·h_{α(i, j)};
  inverse[j]     — (g′, β) с h_j⁻¹ = g′·h_β.
Элемент H хранится как g·h_i.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from groups.base import CanonicalKey, ExactGroup, pack_key
from streaming.errors import ConstructionError
from streaming.words import Letter, Word, inverse_word, symmetric


@dataclass(frozen=True)
class ExtensionData:
    coset_names: tuple[str, ...]
    conj: Mapping[tuple[Letter, int], Word] = field(default_factory=dict)
    mult: Mapping[tuple[int, int], tuple[Word, int]] = field(default_factory=dict)
    inverse: Mapping[int, tuple[Word, int]] = field(default_factory=dict)

    @property
    def index(self) -> int:
        return len(self.coset_names) + 1

    def coset_of(self, a: Letter) -> int:
        return self.coset_names.index(a.symbol) + 1

    def conj_letter(self, a: Letter, i: int) -> Word:
        if i == 0 or a.is_identity:
            return (a,) if not a.is_identity else ()
        if a.inverted:
            return inverse_word(self.conj[(a.inverse(), i)])
        return tuple(self.conj[(a, i)])

    def conjugate(self, w: Word, i: int) -> Word:
        """Слово φ_i(w) с h_i·w = φ_i(w)·h_i"""
        out: list[Letter] = []
        for a in w:
            out.extend(self.conj_letter(a, i))
        return tuple(out)

    def product(self, i: int, j: int) -> tuple[Word, int]:
        if i == 0:
            return (), j
        if j == 0:
            return (), i
        return self.mult[(i, j)]

    def inverse_of(self, j: int) -> tuple[Word, int]:
        if j == 0:
            return (), 0
        return self.inverse[j]

    @property
    def max_word_length(self) -> int:
        """Константа c: наибольшая длина слов таблиц (не меньше 1)"""
        words = list(self.conj.values()) + [w for w, _ in self.mult.values()] + [w for w, _ in self.inverse.values()]
        return max([1] + [len(w) for w in words])


class ExtensionGroup(ExactGroup):
    """Оракул расширения; элемент — (значение g в G, номер класса i, слово для g)"""

    kind = 'ext'

    def __init__(self, inner: ExactGroup, data: ExtensionData, verify: bool = True):
        overlap = {a.symbol for a in inner.alphabet} & set(data.coset_names)
        if overlap:
            raise ConstructionError(f"Имена классов совпадают с образующими G: {sorted(overlap)}")
        super().__init__(inner.alphabet | symmetric(data.coset_names))
        self.inner = inner
        self.data = data
        self._check_tables()
        if verify:
            verify_extension(self)

    def describe(self) -> str:
        return f"ext({self.inner.describe()}, k={self.data.index})"

    def _check_tables(self) -> None:
        k = self.data.index
        for a in self.inner.positive_letters():
            for i in range(1, k):
                if (a, i) not in self.data.conj:
                    raise ConstructionError(f"Нет слова сопряжения g({a}, {self.data.coset_names[i - 1]})")
        for i, j in product(range(1, k), repeat=2):
            if (i, j) not in self.data.mult:
                raise ConstructionError(
                    f"Нет произведения классов {self.data.coset_names[i - 1]}·{self.data.coset_names[j - 1]}"
                )
        for j in range(1, k):
            if j not in self.data.inverse:
                raise ConstructionError(f"Нет обратного для класса {self.data.coset_names[j - 1]}")
        for (i, j), (_, alpha) in self.data.mult.items():
            if not 0 <= alpha < k:
                raise ConstructionError(f"α({i}, {j}) = {alpha} вне диапазона классов")
            if (i == 0 or j == 0) and alpha != i + j:
                raise ConstructionError("Нарушен закон единицы: α(0, i) = α(i, 0) = i")

    def _eval(self, w: Word):
        return self.inner.evaluate(w).value

    def _identity_value(self):
        return self.inner._identity_value(), 0, ()

    def _generator_value(self, a: Letter):
        if a.symbol in self.data.coset_names:
            j = self.data.coset_of(a)
            if not a.inverted:
                return self.inner._identity_value(), j, ()
            word, beta = self.data.inverse_of(j)
            return self._eval(word), beta, word
        return self.inner.generator(a).value, 0, (a,)

    def _mul(self, u, v):
        g1, i, w1 = u
        g2, j, w2 = v
        moved = self.data.conjugate(w2, i)
        word, alpha = self.data.product(i, j)
        value = self.inner._mul(self.inner._mul(g1, self._eval(moved)), self._eval(word))
        return value, alpha, w1 + moved + word

    def _inv(self, u):
        g, i, w = u
        word, beta = self.data.inverse_of(i)
        head = (self._eval(word), beta, word)
        tail = (self.inner._inv(g), 0, inverse_word(w))
        return self._mul(head, tail)

    def _key(self, u) -> CanonicalKey:
        return pack_key([self.inner._key(u[0]), str(u[1]).encode()])

    def _word_of(self, u) -> Word:
        g, i, w = u
        try:
            head = self.inner._word_of(g)
        except NotImplementedError:
            head = w
        return tuple(head) + ((Letter(self.data.coset_names[i - 1]),) if i else ())

    def coset_element(self, i: int):
        return self.element((self.inner._identity_value(), i, ()))

    def relators(self) -> list[Word]:
        out = list(self.inner.relators())
        for j, name in enumerate(self.data.coset_names, start=1):
            h = Letter(name)
            for a in self.inner.positive_letters()[:2]:
                out.append((h, a, h.inverse()) + inverse_word(self.data.conj_letter(a, j)))
        for (i, j), (word, alpha) in self.data.mult.items():
            if i and j and alpha == 0:
                out.append((Letter(self.data.coset_names[i - 1]), Letter(self.data.coset_names[j - 1]))
                           + inverse_word(word))
        return out


def verify_extension(group: ExtensionGroup) -> None:
    """
    Проверка таблиц расширения по оракулу G.

    Raises:
        ConstructionError: первое нарушенное тождество
    """
    data, inner = group.data, group.inner
    k = data.index

    def equal(u: Word, v: Word) -> bool:
        return inner.evaluate(u) == inner.evaluate(v)

    for i, j, l in product(range(k), repeat=3):
        left = group.mul(group.mul(group.coset_element(i), group.coset_element(j)), group.coset_element(l))
        right = group.mul(group.coset_element(i), group.mul(group.coset_element(j), group.coset_element(l)))
        if left != right:
            raise ConstructionError(f"Умножение классов не ассоциативно на ({i}, {j}, {l})")
    for a in inner.positive_letters():
        for i, j in product(range(1, k), range(k)):
            word, alpha = data.product(i, j)
            lhs = data.conjugate(data.conj_letter(a, j), i) + word
            rhs = word + data.conj_letter(a, alpha)
            if not equal(lhs, rhs):
                raise ConstructionError(f"Таблицы сопряжения и умножения не согласованы для {a}, ({i}, {j})")
    for j in range(1, k):
        h = group.coset_element(j)
        if not group.mul(h, group.inv(h)).is_identity():
            raise ConstructionError(f"Неверное обратное для класса {data.coset_names[j - 1]}")
    for relator in inner.relators():
        for i in range(1, k):
            if not inner.evaluate(data.conjugate(relator, i)).is_identity():
                raise ConstructionError(f"Сопряжение классом {data.coset_names[i - 1]} не сохраняет соотношение")


def dihedral_data(rotation: str = 'r', reflection: str = 's') -> ExtensionData:
    """D∞ = Z ⋊ Z₂: s·r = r⁻¹·s, s² = 1, s⁻¹ = s"""
    r = Letter(rotation)
    return ExtensionData(
        coset_names=(reflection,),
        conj={(r, 1): (r.inverse(),)},
        mult={(1, 1): ((), 0)},
        inverse={1: ((), 1)},
    )
