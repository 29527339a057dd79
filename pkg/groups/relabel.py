"""
Смена порождающего множества: новые буквы — слова в старых образующих.
"""
from typing import Mapping

from groups.base import CanonicalKey, ExactGroup
from streaming.errors import ConstructionError
from streaming.words import Letter, Word, format_word, inverse_word


def complete_letter_map(letter_map: Mapping[Letter, Word]) -> dict[Letter, Word]:
    """
    Дополняет отображение образами обратных букв и проверяет
    согласованность: образ a⁻¹ — обращённое слово образа a.

    Raises:
        ConstructionError: образы a и a⁻¹ не согласованы
    """
    if not letter_map:
        raise ConstructionError("Пустое отображение образующих")
    full: dict[Letter, Word] = {}
    for a, image in letter_map.items():
        image = tuple(image)
        partner = letter_map.get(a.inverse())
        if partner is not None and tuple(partner) != inverse_word(image):
            raise ConstructionError(
                f"Образ {a.inverse()} ({format_word(partner)}) не обратен образу {a} ({format_word(image)})"
            )
        full[a] = image
        full[a.inverse()] = inverse_word(image)
    return full


class RegeneratedGroup(ExactGroup):
    """Та же группа G с алфавитом Σ₁; значения элементов — значения G"""

    kind = 'regen'

    def __init__(self, inner: ExactGroup, letter_map: Mapping[Letter, Word]):
        self.letter_map = complete_letter_map(letter_map)
        for a, image in self.letter_map.items():
            unknown = [b for b in image if b not in inner.alphabet and not b.is_identity]
            if unknown:
                raise ConstructionError(f"Образ буквы {a} содержит буквы вне алфавита G: {format_word(unknown)}")
        super().__init__(frozenset(self.letter_map))
        self.inner = inner

    def describe(self) -> str:
        return f"regen({self.inner.describe()})"

    @property
    def max_image_length(self) -> int:
        return max(1, max(len(w) for w in self.letter_map.values()))

    def _identity_value(self):
        return self.inner._identity_value()

    def _generator_value(self, a: Letter):
        return self.inner.evaluate(self.letter_map[a]).value

    def _mul(self, u, v):
        return self.inner._mul(u, v)

    def _inv(self, u):
        return self.inner._inv(u)

    def _key(self, u) -> CanonicalKey:
        return self.inner._key(u)
