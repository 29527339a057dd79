"""
Прямое и свободное произведения.

Буквы сомножителей помечаются тегом: "1.a", "2.b", "h1.a" и т.п.
"""
from typing import Any, Sequence

from groups.base import CanonicalKey, ExactGroup, pack_key
from streaming.errors import ConstructionError, RoutingError
from streaming.words import Letter, Word, split_tag, tag_alphabet, tag_word


class _TaggedFactors:
    def __init__(self, factors: Sequence[tuple[str, ExactGroup]]):
        tags = [t for t, _ in factors]
        if len(set(tags)) != len(tags):
            raise ConstructionError(f"Теги сомножителей должны быть различны: {tags}")
        self.factors = list(factors)
        self.position = {t: i for i, t in enumerate(tags)}

    def route(self, a: Letter) -> tuple[int, Letter]:
        prefix, inner = split_tag(a)
        if prefix not in self.position:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не соответствует ни одному сомножителю")
        return self.position[prefix], inner

    def alphabet(self) -> frozenset[Letter]:
        letters = set()
        for t, group in self.factors:
            letters |= tag_alphabet(group.alphabet, t)
        return frozenset(letters)


class DirectProductGroup(ExactGroup):
    """Элемент — кортеж значений сомножителей"""

    kind = 'dp'

    def __init__(self, factors: Sequence[tuple[str, ExactGroup]]):
        if not factors:
            raise ConstructionError("Прямое произведение без сомножителей")
        self.tagged = _TaggedFactors(factors)
        super().__init__(self.tagged.alphabet())
        self.groups = [g for _, g in factors]

    def describe(self) -> str:
        return ' × '.join(g.describe() for g in self.groups)

    def _identity_value(self):
        return tuple(g._identity_value() for g in self.groups)

    def _generator_value(self, a: Letter):
        i, inner = self.tagged.route(a)
        values = list(self._identity_value())
        values[i] = self.groups[i].generator(inner).value
        return tuple(values)

    def _mul(self, u, v):
        return tuple(g._mul(x, y) for g, x, y in zip(self.groups, u, v))

    def _inv(self, u):
        return tuple(g._inv(x) for g, x in zip(self.groups, u))

    def _key(self, u) -> CanonicalKey:
        return pack_key(g._key(x) for g, x in zip(self.groups, u))

    def _word_of(self, u) -> Word:
        out: list[Letter] = []
        for (t, g), x in zip(self.tagged.factors, u):
            out.extend(tag_word(g._word_of(x), t))
        return tuple(out)

    def relators(self) -> list[Word]:
        out = []
        for t, g in self.tagged.factors:
            out.extend(tag_word(r, t) for r in g.relators())
        # образующие разных сомножителей коммутируют
        for i, (t1, g1) in enumerate(self.tagged.factors):
            for t2, g2 in self.tagged.factors[i + 1:]:
                for a in g1.positive_letters()[:2]:
                    for b in g2.positive_letters()[:2]:
                        x, y = tag_word((a,), t1)[0], tag_word((b,), t2)[0]
                        out.append((x, y, x.inverse(), y.inverse()))
        return out


Syllable = tuple[int, Any]


class FreeProductGroup(ExactGroup):
    """
    Свободное произведение двух групп. Нормальная форма — чередующиеся
    неединичные слоги (номер сомножителя, значение).
    """

    kind = 'fp'

    def __init__(self, left: ExactGroup, right: ExactGroup, tags: tuple[str, str] = ('1', '2')):
        self.tagged = _TaggedFactors([(tags[0], left), (tags[1], right)])
        super().__init__(self.tagged.alphabet())
        self.groups = [left, right]
        self._identity_keys = [g._key(g._identity_value()) for g in self.groups]

    def describe(self) -> str:
        return f"{self.groups[0].describe()} ∗ {self.groups[1].describe()}"

    def _is_trivial(self, i: int, value) -> bool:
        return self.groups[i]._key(value) == self._identity_keys[i]

    def _identity_value(self) -> tuple[Syllable, ...]:
        return ()

    def _generator_value(self, a: Letter):
        i, inner = self.tagged.route(a)
        value = self.groups[i].generator(inner).value
        return () if self._is_trivial(i, value) else ((i, value),)

    def _mul(self, u, v):
        out = list(u)
        for syllable in v:
            i, value = syllable
            if out and out[-1][0] == i:
                merged = self.groups[i]._mul(out[-1][1], value)
                out.pop()
                if not self._is_trivial(i, merged):
                    out.append((i, merged))
            else:
                out.append(syllable)
        return tuple(out)

    def _inv(self, u):
        return tuple((i, self.groups[i]._inv(value)) for i, value in reversed(u))

    def _key(self, u) -> CanonicalKey:
        return pack_key(bytes([i]) + self.groups[i]._key(value) for i, value in u)

    def _word_of(self, u) -> Word:
        out: list[Letter] = []
        for i, value in u:
            t, g = self.tagged.factors[i]
            out.extend(tag_word(g._word_of(value), t))
        return tuple(out)

    def relators(self) -> list[Word]:
        out = []
        for t, g in self.tagged.factors:
            out.extend(tag_word(r, t) for r in g.relators())
        return out

    def syllables(self, x) -> list[tuple[int, Any]]:
        return list(x.value)
