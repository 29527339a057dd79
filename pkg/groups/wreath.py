"""
Сплетение H ≀ G: пары (f, g), f — функция G → H с конечным носителем,
g — положение курсора.

Правило умножения: (f₁, g₁)(f₂, g₂) = (f, g₁g₂), f(x) = f₁(x)·f₂(g₁⁻¹x).
Буква лампы пишет в текущую позицию курсора, буква базы двигает курсор.
"""
from typing import Any

from groups.base import CanonicalKey, ExactGroup, pack_key
from streaming.errors import RoutingError
from streaming.words import Letter, Word, split_tag, tag, tag_alphabet, tag_word

# носитель: кортеж (ключ позиции, значение позиции в G, значение в H), по возрастанию ключа
Support = tuple[tuple[bytes, Any, Any], ...]


class WreathGroup(ExactGroup):
    """
    lamp_tag=None означает, что буквы H уже помечены (например, "h1.a"
    у прямого произведения ламп) и используются как есть.
    """

    kind = 'wr'

    def __init__(self, lamp: ExactGroup, base: ExactGroup, lamp_tag: str | None = 'h', base_tag: str = 'g'):
        self.lamp = lamp
        self.base = base
        self.lamp_tag = lamp_tag
        self.base_tag = base_tag
        lamp_letters = lamp.alphabet if lamp_tag is None else tag_alphabet(lamp.alphabet, lamp_tag)
        super().__init__(lamp_letters | tag_alphabet(base.alphabet, base_tag))
        self._lamp_identity = lamp._key(lamp._identity_value())

    def describe(self) -> str:
        return f"wr({self.lamp.describe()}, {self.base.describe()})"

    def split(self, a: Letter) -> tuple[bool, Letter]:
        """(это буква базы?, внутренняя буква)"""
        prefix, inner = split_tag(a)
        if prefix == self.base_tag:
            return True, inner
        if self.lamp_tag is None:
            return False, a
        if prefix != self.lamp_tag:
            raise RoutingError(f"Тег {prefix!r} буквы {a} не относится ни к лампам, ни к базе")
        return False, inner

    def lamp_letter(self, a: Letter) -> Letter:
        return a if self.lamp_tag is None else tag(a, self.lamp_tag)

    def base_letter(self, a: Letter) -> Letter:
        return tag(a, self.base_tag)

    def _identity_value(self):
        return (), self.base._identity_value()

    def _generator_value(self, a: Letter):
        is_base, inner = self.split(a)
        if is_base:
            return (), self.base.generator(inner).value
        h = self.lamp.generator(inner).value
        if self.lamp._key(h) == self._lamp_identity:
            return self._identity_value()
        g0 = self.base._identity_value()
        return ((self.base._key(g0), g0, h),), g0

    def _mul(self, u, v):
        f1, g1 = u
        f2, g2 = v
        if not f2:
            return f1, self.base._mul(g1, g2)
        lamps = {key: (pos, h) for key, pos, h in f1}
        for _, pos, h in f2:
            shifted = self.base._mul(g1, pos)
            key = self.base._key(shifted)
            if key in lamps:
                value = self.lamp._mul(lamps[key][1], h)
            else:
                value = h
            if self.lamp._key(value) == self._lamp_identity:
                lamps.pop(key, None)
            else:
                lamps[key] = (shifted, value)
        support = tuple(sorted(((k, pos, h) for k, (pos, h) in lamps.items()), key=lambda item: item[0]))
        return support, self.base._mul(g1, g2)

    def _inv(self, u):
        f, g = u
        g_inv = self.base._inv(g)
        lamps = []
        for _, pos, h in f:
            shifted = self.base._mul(g_inv, pos)
            lamps.append((self.base._key(shifted), shifted, self.lamp._inv(h)))
        return tuple(sorted(lamps, key=lambda item: item[0])), g_inv

    def _key(self, u) -> CanonicalKey:
        f, g = u
        parts = [self.base._key(g)]
        for key, _, h in f:
            parts.append(key)
            parts.append(self.lamp._key(h))
        return pack_key(parts)

    def _word_of(self, u) -> Word:
        f, g = u
        out: list[Letter] = []
        cursor = self.base._identity_value()
        for _, pos, h in f:
            step = self.base._mul(self.base._inv(cursor), pos)
            out.extend(tag_word(self.base._word_of(step), self.base_tag))
            lamp_word = self.lamp._word_of(h)
            out.extend(lamp_word if self.lamp_tag is None else tag_word(lamp_word, self.lamp_tag))
            cursor = pos
        out.extend(tag_word(self.base._word_of(self.base._mul(self.base._inv(cursor), g)), self.base_tag))
        return tuple(out)

    def support(self, x) -> dict[bytes, Any]:
        """Носитель элемента: ключ позиции → значение лампы"""
        return {key: h for key, _, h in x.value[0]}

    def cursor(self, x):
        return x.value[1]

    def relators(self) -> list[Word]:
        out = [tag_word(r, self.base_tag) for r in self.base.relators()]
        for r in self.lamp.relators():
            out.append(r if self.lamp_tag is None else tag_word(r, self.lamp_tag))
        # лампы в разных позициях коммутируют
        for t in self.base.positive_letters()[:2]:
            moved = self.base_letter(t)
            for h in self.lamp.positive_letters()[:2]:
                lamp = self.lamp_letter(h)
                out.append((lamp, moved, lamp, moved.inverse(), lamp.inverse(), moved, lamp.inverse(), moved.inverse()))
        return out
