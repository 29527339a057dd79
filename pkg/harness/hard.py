"""
Трудные входы: слова дизъюнктности в сплетениях и слова Григорчука.

Оба семейства кодируют две битовые строки x, y словом вида
x[g]·y[h]·x[g⁻¹]·y[h⁻¹]. В позиции i остаётся коммутатор [g, h] ровно
тогда, когда x_i = y_i = 1, поэтому слово равно единице в точности
при непересекающихся носителях.
"""
from typing import Sequence

from groups.base import ExactGroup
from groups.grigorchuk import GrigorchukGroup
from groups.wreath import WreathGroup
from streaming.errors import ConstructionError, InvalidArgumentError, RayError
from streaming.words import IDENTITY, Letter, Word, inverse_word, power, word

# --- дизъюнктность в H ≀ G ---


def _bits(text: str, name: str) -> list[int]:
    if not text or set(text) - {'0', '1'}:
        raise InvalidArgumentError(f"{name} должна быть непустой строкой из 0 и 1, получено {text!r}")
    return [int(ch) for ch in text]


def check_ray(base: ExactGroup, ray: Sequence[Letter]) -> None:
    """
    Префиксы t₁…t_i (i = 0…n−1) должны давать различные элементы G.

    Raises:
        RayError: две позиции луча совпали
    """
    seen = {}
    value = base.identity()
    for i in range(len(ray) + 1):
        if value.key in seen:
            raise RayError(f"Префиксы луча длины {seen[value.key]} и {i} задают один элемент")
        seen[value.key] = i
        if i < len(ray):
            value = base.mul(value, base.generator(ray[i]))


def _encode(bits: list[int], x: Letter, ray: Word, pad: Letter) -> Word:
    """x^{a₀} t₁ x^{a₁} t₂ ⋯ x^{a_{n−1}} s⁻¹, пропуск x заменён единичной буквой"""
    out: list[Letter] = []
    for i, bit in enumerate(bits):
        if i:
            out.append(ray[i - 1])
        out.append(x if bit else pad)
    out.extend(inverse_word(ray))
    return tuple(out)


def disjointness_instance(u: str, v: str, wreath: WreathGroup, g: Letter, h: Letter,
                          ray: Sequence[Letter] | None = None) -> Word:
    """
    Слово u[g]·v[h]·u[g⁻¹]·v[h⁻¹] длины 4(3n − 2) над алфавитом H ≀ G.

    Args:
        u, v: битовые строки длины n
        wreath: оракул сплетения
        g, h: буквы H без тега, [g, h] ≠ 1
        ray: буквы G без тега t₁…t_{n−1}; по умолчанию степени первой образующей G

    Raises:
        RayError: у луча повторяются префиксы
    """
    x, y = _bits(u, 'u'), _bits(v, 'v')
    if len(x) != len(y):
        raise InvalidArgumentError(f"Строки должны быть одной длины: {len(x)} и {len(y)}")
    n = len(x)
    lamp = wreath.lamp
    commutator = (g, h, g.inverse(), h.inverse())
    if lamp.evaluate(commutator).is_identity():
        raise ConstructionError(f"Буквы {g} и {h} коммутируют в группе ламп {lamp.describe()}")
    if ray is None:
        ray = (wreath.base.positive_letters()[0],) * (n - 1)
    ray = tuple(ray)
    if len(ray) != n - 1:
        raise InvalidArgumentError(f"Луч должен содержать n − 1 = {n - 1} букв, получено {len(ray)}")
    check_ray(wreath.base, ray)

    tagged_ray = tuple(wreath.base_letter(t) for t in ray)
    G, H = wreath.lamp_letter(g), wreath.lamp_letter(h)
    return (
        _encode(x, G, tagged_ray, IDENTITY)
        + _encode(y, H, tagged_ray, IDENTITY)
        + _encode(x, G.inverse(), tagged_ray, IDENTITY)
        + _encode(y, H.inverse(), tagged_ray, IDENTITY)
    )


def lamp_pair(wreath: WreathGroup) -> tuple[Letter, Letter]:
    """Первая пара некоммутирующих образующих группы ламп"""
    letters = wreath.lamp.positive_letters()
    for i, g in enumerate(letters):
        for h in letters[i + 1:]:
            if not wreath.lamp.evaluate((g, h, g.inverse(), h.inverse())).is_identity():
                return g, h
    raise ConstructionError(f"Группа ламп {wreath.lamp.describe()} коммутативна: нет пары для дизъюнктности")


def disjointness_for(wreath: WreathGroup, u: str, v: str) -> Word:
    g, h = lamp_pair(wreath)
    return disjointness_instance(u, v, wreath, g, h)


# --- слова Григорчука ---

T, V, W = Letter('t'), Letter('v'), Letter('w')

# φ(x, 1) и φ(1, x) для образующих t, v, w
PHI_LEFT = {T: (V,), V: word('v-', 't-', 'v', 't'), W: word('v', 't', 'v-', 't-')}
PHI_RIGHT = {T: (W,), V: word('w-', 't', 'w', 't-'), W: word('w', 't-', 'w-', 't')}

# t = (ab)², v = (bada)², w = (abad)²
EXPANSION = {
    T: tuple(Letter(ch) for ch in 'abab'),
    V: tuple(Letter(ch) for ch in 'badabada'),
    W: tuple(Letter(ch) for ch in 'abadabad'),
}


def _substitute(w: Sequence[Letter], table: dict[Letter, Word]) -> Word:
    out: list[Letter] = []
    for a in w:
        if a.is_identity:
            continue
        if a.inverted:
            out.extend(inverse_word(table[a.inverse()]))
        elif a in table:
            out.extend(table[a])
        else:
            raise InvalidArgumentError(f"Буква {a} не из {{t, v, w}}")
    return tuple(out)


def phi(x: Sequence[Letter], y: Sequence[Letter]) -> Word:
    """φ(x, y) = φ(x, 1)·φ(1, y)"""
    return _substitute(x, PHI_LEFT) + _substitute(y, PHI_RIGHT)


def grigorchuk_phi(entries: Sequence[Sequence[Letter]], k: int) -> Word:
    """
    φ_k(x₀, …, x_{2^k−1}): φ₀(x) = x, φ_{k+1}(x̄, ȳ) = φ(φ_k(x̄), φ_k(ȳ)).
    """
    if k < 0 or len(entries) != 2 ** k:
        raise InvalidArgumentError(f"Кортеж должен иметь длину 2^k = {2 ** max(k, 0)}, получено {len(entries)}")
    level = [tuple(a for a in entry if not a.is_identity) for entry in entries]
    for a in (a for entry in level for a in entry):
        if a.symbol not in ('t', 'v', 'w'):
            raise InvalidArgumentError(f"Буква {a} не из {{t, v, w}}")
    while len(level) > 1:
        level = [phi(level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


def expand_tvw(w: Sequence[Letter]) -> Word:
    """Слово над t, v, w → слово над a, b, c, d"""
    return _substitute(w, EXPANSION)


def _power_of_two(n: int) -> int:
    k = n.bit_length() - 1
    if n < 1 or 2 ** k != n:
        raise InvalidArgumentError(f"Длина строки должна быть степенью двойки, получено {n}")
    return k


def grigorchuk_instance(x: str, y: str, expand: bool = True) -> Word:
    """x[t]·y[v]·x[t⁻¹]·y[v⁻¹], x[s] = φ_k(s^{x₀}, …, s^{x_{n−1}})"""
    xs, ys = _bits(x, 'x'), _bits(y, 'y')
    if len(xs) != len(ys):
        raise InvalidArgumentError(f"Строки должны быть одной длины: {len(xs)} и {len(ys)}")
    k = _power_of_two(len(xs))

    def encode(bits: list[int], s: Letter) -> Word:
        return grigorchuk_phi([power((s,), bit) for bit in bits], k)

    w = encode(xs, T) + encode(ys, V) + encode(xs, T.inverse()) + encode(ys, V.inverse())
    return expand_tvw(w) if expand else w


def grigorchuk_truth(x: str, y: str, oracle: GrigorchukGroup | None = None) -> bool:
    """Ответ оракула для слова Григорчука"""
    oracle = oracle or GrigorchukGroup()
    return oracle.evaluate(grigorchuk_instance(x, y)).is_identity()
