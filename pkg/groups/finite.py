"""
Конечные группы по таблице умножения.
"""
from collections import deque
from itertools import product
from typing import Mapping, Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from groups.base import CanonicalKey, ExactGroup
from streaming.errors import ConstructionError
from streaming.words import Letter, Word, inverse_word, symmetric


class FiniteGroup(ExactGroup):
    """
    Элемент — номер строки таблицы; элемент 0 — единица.

    generators сопоставляет имени образующей номер элемента; по умолчанию
    образующими служат все неединичные элементы под своими именами.
    """

    kind = 'finite'

    def __init__(self, element_names: Sequence[str], table: Sequence[Sequence[int]],
                 generators: Mapping[str, int] | None = None, check_associativity: bool = True):
        size = len(table)
        if size == 0 or len(element_names) != size or any(len(row) != size for row in table):
            raise ConstructionError("Таблица умножения должна быть квадратной и совпадать по размеру со списком элементов")
        if len(set(element_names)) != size:
            raise ConstructionError("Имена элементов должны быть различны")
        self.element_names = list(element_names)
        self.table = [list(row) for row in table]
        self._validate(check_associativity)
        if generators is None:
            generators = {name: i for i, name in enumerate(self.element_names) if i}
        for name, index in generators.items():
            if not 0 <= index < size:
                raise ConstructionError(f"Образующая {name} указывает на несуществующий элемент {index}")
        super().__init__(symmetric(generators))
        self.generator_index = dict(generators)
        self._inverse = [row.index(0) for row in self.table]
        self._words: dict[int, Word] | None = None

    def _validate(self, check_associativity: bool) -> None:
        size = len(self.table)
        for i in range(size):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise ConstructionError("Первый элемент таблицы должен быть единицей")
            if sorted(self.table[i]) != list(range(size)):
                raise ConstructionError(f"Строка {self.element_names[i]} не является перестановкой элементов")
            if sorted(row[i] for row in self.table) != list(range(size)):
                raise ConstructionError(f"Столбец {self.element_names[i]} не является перестановкой элементов")
        if check_associativity:
            t = self.table
            for i, j, k in product(range(size), repeat=3):
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    raise ConstructionError(
                        f"Нарушена ассоциативность: ({self.element_names[i]}·{self.element_names[j]})·"
                        f"{self.element_names[k]}"
                    )

    @property
    def order(self) -> int:
        return len(self.table)

    def describe(self) -> str:
        return f"finite(|G|={self.order})"

    def index_of(self, a: Letter) -> int:
        index = self.generator_index[a.symbol]
        return self._inverse[index] if a.inverted else index

    def letter_indices(self) -> dict[Letter, int]:
        return {a: self.index_of(a) for a in self.alphabet}

    def _identity_value(self) -> int:
        return 0

    def _generator_value(self, a: Letter) -> int:
        return self.index_of(a)

    def _mul(self, u: int, v: int) -> int:
        return self.table[u][v]

    def _inv(self, u: int) -> int:
        return self._inverse[u]

    def _key(self, u: int) -> CanonicalKey:
        return str(u).encode()

    def _word_of(self, u: int) -> Word:
        if self._words is None:
            self._words = {0: ()}
            queue = deque([0])
            letters = sorted(self.alphabet)
            while queue:
                x = queue.popleft()
                for a in letters:
                    y = self.table[x][self.index_of(a)]
                    if y not in self._words:
                        self._words[y] = self._words[x] + (a,)
                        queue.append(y)
        if u not in self._words:
            raise ConstructionError(f"Элемент {self.element_names[u]} не выражается через образующие")
        return self._words[u]

    def element_order(self, u: int) -> int:
        k, x = 1, u
        while x != 0:
            x = self.table[x][u]
            k += 1
        return k

    def relators(self) -> list[Word]:
        out = []
        names = sorted(self.generator_index)
        for name in names:
            out.append((Letter(name),) * self.element_order(self.generator_index[name]))
        for a, b in product(names, repeat=2):
            if a < b:
                ab = self.table[self.generator_index[a]][self.generator_index[b]]
                out.append((Letter(a), Letter(b)) + inverse_word(self._word_of(ab)))
        return out


def from_permutations(generators: Mapping[str, Sequence[int]]) -> FiniteGroup:
    """Группа перестановок, порождённая заданными перестановками (образы 0…k−1)"""
    if not generators:
        raise ConstructionError("Нужна хотя бы одна образующая перестановка")
    perms = {name: Permutation(list(images)) for name, images in generators.items()}
    sizes = {p.size for p in perms.values()}
    if len(sizes) != 1:
        raise ConstructionError("Перестановки должны действовать на одно множество")
    group = PermutationGroup(list(perms.values()))
    identity = Permutation(list(range(sizes.pop())))
    elements = [identity] + sorted((p for p in group.generate() if p != identity), key=lambda p: p.array_form)
    index = {p: i for i, p in enumerate(elements)}
    # в sympy p*q означает сначала p, затем q, что совпадает с правым действием слов
    table = [[index[p * q] for q in elements] for p in elements]
    names = ['e'] + [f"g{i}" for i in range(1, len(elements))]
    gen_index = {name: index[p] for name, p in perms.items()}
    for name, i in gen_index.items():
        if i:
            names[i] = name
    return FiniteGroup(names, table, gen_index, check_associativity=False)


def symmetric_group_s3() -> FiniteGroup:
    """S₃ с транспозицией s и циклом r; [s, r] ≠ 1"""
    return from_permutations({'s': [1, 0, 2], 'r': [1, 2, 0]})


def cyclic_table(m: int, name: str = 'a') -> FiniteGroup:
    if m < 1:
        raise ConstructionError(f"Порядок циклической группы должен быть ≥ 1, получено {m}")
    names = ['e'] + [f"{name}{i}" for i in range(1, m)]
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    return FiniteGroup(names, table, {name: 1 % m} if m > 1 else {}, check_associativity=False)
