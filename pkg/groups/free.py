"""
Свободные группы, свободные абелевы и циклические группы.
"""
from itertools import combinations
from typing import Sequence

from groups.base import CanonicalKey, ExactGroup, int_key
from streaming.errors import ConstructionError
from streaming.words import Letter, Word, format_word, inverse_word, symmetric


def free_reduce(w: Sequence[Letter]) -> Word:
    """Свободная редукция стеком: нет соседних x x⁻¹"""
    stack: list[Letter] = []
    for a in w:
        if a.is_identity:
            continue
        if stack and stack[-1] == a.inverse():
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


class FreeGroup(ExactGroup):
    """Элемент — несократимое слово"""

    kind = 'free'

    def __init__(self, names: Sequence[str]):
        if not names:
            raise ConstructionError("Свободная группа должна иметь хотя бы одну образующую")
        super().__init__(symmetric(names))
        self.names = list(names)

    def describe(self) -> str:
        return f"free({len(self.names)})"

    def _identity_value(self) -> Word:
        return ()

    def _generator_value(self, a: Letter) -> Word:
        return (a,)

    def _mul(self, u: Word, v: Word) -> Word:
        # сокращение только на стыке
        i = 0
        while i < min(len(u), len(v)) and u[len(u) - 1 - i] == v[i].inverse():
            i += 1
        return u[:len(u) - i] + v[i:]

    def _inv(self, u: Word) -> Word:
        return inverse_word(u)

    def _key(self, u: Word) -> CanonicalKey:
        return format_word(u).encode()

    def _word_of(self, u: Word) -> Word:
        return u


class AbelianGroup(ExactGroup):
    """
    Прямое произведение циклических: moduli[i] = None — множитель Z,
    иначе Z_{moduli[i]}. Элемент — вектор координат.
    """

    kind = 'abelian'

    def __init__(self, names: Sequence[str], moduli: Sequence[int | None]):
        if not names or len(names) != len(moduli):
            raise ConstructionError("Число имён образующих должно совпадать с числом модулей")
        for m in moduli:
            if m is not None and m < 1:
                raise ConstructionError(f"Модуль циклической группы должен быть ≥ 1, получено {m}")
        super().__init__(symmetric(names))
        self.names = list(names)
        self.moduli = list(moduli)
        self._index = {name: i for i, name in enumerate(self.names)}

    def describe(self) -> str:
        if all(m is None for m in self.moduli):
            return 'Z' if len(self.names) == 1 else f"Z^{len(self.names)}"
        return ' × '.join('Z' if m is None else f"Zmod({m})" for m in self.moduli)

    def _normalize(self, values) -> tuple[int, ...]:
        return tuple(v if m is None else v % m for v, m in zip(values, self.moduli))

    def _identity_value(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def _generator_value(self, a: Letter) -> tuple[int, ...]:
        values = [0] * len(self.names)
        values[self._index[a.symbol]] = -1 if a.inverted else 1
        return self._normalize(values)

    def _mul(self, u, v):
        return self._normalize(x + y for x, y in zip(u, v))

    def _inv(self, u):
        return self._normalize(-x for x in u)

    def _key(self, u) -> CanonicalKey:
        return int_key(u)

    def _word_of(self, u) -> Word:
        out = []
        for name, value in zip(self.names, u):
            out.extend([Letter(name, value < 0)] * abs(value))
        return tuple(out)

    def relators(self) -> list[Word]:
        out = []
        for a, b in combinations(self.names, 2):
            out.append((Letter(a), Letter(b), Letter(a, True), Letter(b, True)))
        for name, m in zip(self.names, self.moduli):
            if m is not None:
                out.append((Letter(name),) * m)
        return out


def free_abelian(names: Sequence[str]) -> AbelianGroup:
    return AbelianGroup(names, [None] * len(names))


def cyclic(m: int, name: str = 'a') -> AbelianGroup:
    return AbelianGroup([name], [m])


def abelian_names(m: int) -> list[str]:
    """Имена образующих Z^m: a для m = 1, иначе a, b, c…"""
    if m < 1:
        raise ConstructionError(f"Ранг должен быть ≥ 1, получено {m}")
    if m <= 26:
        return [chr(ord('a') + i) for i in range(m)]
    return [f"e{i + 1}" for i in range(m)]
