"""
Шар Кэли и оптимальный детерминированный автомат для слов длины ≤ n.

Состояния автомата — элементы шара радиуса R = ⌊n/2⌋. Рёбра, выходящие
из шара, при чётном n ведут в фиксированный элемент g_f на расстоянии
ровно R, при нечётном — в поглощающее состояние отказа.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

import pandas as pd

from groups.base import CanonicalKey, ExactElement, ExactGroup
from streaming.automaton import Recipe, StreamAutomaton
from streaming.errors import AlphabetError, ConstructionError, ResourceLimitError, StreamOverflowError
from streaming.rng import SeedLike
from streaming.words import Letter, Word

DEFAULT_MEMORY_CAP = 10 ** 7


@dataclass
class GrowthTable:
    group: str
    gamma: list[int]

    @property
    def radius(self) -> int:
        return len(self.gamma) - 1

    def spheres(self) -> list[int]:
        """Число элементов на расстоянии ровно r"""
        return [g - (self.gamma[r - 1] if r else 0) for r, g in enumerate(self.gamma)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'radius': range(len(self.gamma)),
            'gamma': self.gamma,
            'log2_gamma': [math.log2(g) for g in self.gamma],
        })


@dataclass
class Ball:
    group: ExactGroup
    radius: int
    elements: list[ExactElement]
    distance: list[int]
    index: dict[CanonicalKey, int]
    table: GrowthTable


def compute_ball(G: ExactGroup, radius: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> Ball:
    """
    Обход в ширину от единицы по рёбрам образующих.

    Raises:
        ResourceLimitError: шар больше memory_cap элементов
    """
    if radius < 0:
        raise ConstructionError(f"Радиус должен быть ≥ 0, получено {radius}")
    letters = sorted(G.alphabet)
    identity = G.identity()
    elements = [identity]
    distance = [0]
    index = {identity.key: 0}
    gamma = [1]
    layer_start = 0
    for r in range(1, radius + 1):
        layer_end = len(elements)
        for i in range(layer_start, layer_end):
            x = elements[i]
            for a in letters:
                y = G.mul(x, G.generator(a))
                if y.key in index:
                    continue
                index[y.key] = len(elements)
                elements.append(y)
                distance.append(r)
                if len(elements) > memory_cap:
                    raise ResourceLimitError(
                        f"Шар группы {G.describe()} радиуса {r} больше лимита {memory_cap} элементов"
                    )
        layer_start = layer_end
        gamma.append(len(elements))
        logging.debug("Шар %s: радиус %d, %d элементов", G.describe(), r, len(elements))
    logging.info("Шар %s радиуса %d: %d элементов", G.describe(), radius, len(elements))
    return Ball(G, radius, elements, distance, index, GrowthTable(G.describe(), gamma))


def growth_table(G: ExactGroup, radius: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> GrowthTable:
    return compute_ball(G, radius, memory_cap).table


@dataclass
class BallAutomaton:
    """
    transitions[s][a] — следующее состояние; 0 — единица (начальное и
    единственное принимающее). sink — номер состояния отказа или None.
    """

    n: int
    alphabet: frozenset[Letter]
    transitions: list[dict[Letter, int]]
    sink: int | None = None
    target: int | None = None
    ball_size: int = field(default=0)

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    @property
    def bits(self) -> int:
        return (self.state_count - 1).bit_length()

    def step(self, state: int, a: Letter) -> int:
        if a.is_identity:
            return state
        try:
            return self.transitions[state][a]
        except KeyError:
            raise AlphabetError(f"Буква {a} не входит в алфавит автомата шара") from None


def build_ball_automaton(G: ExactGroup, n: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> BallAutomaton:
    if n < 1:
        raise ConstructionError(f"Граница длины n должна быть ≥ 1, получено {n}")
    radius = n // 2
    ball = compute_ball(G, radius, memory_cap)
    letters = sorted(G.alphabet)
    size = len(ball.elements)
    transitions: list[dict[Letter, int]] = []
    missing: list[tuple[int, Letter]] = []
    for i, x in enumerate(ball.elements):
        row = {}
        for a in letters:
            j = ball.index.get(G.mul(x, G.generator(a)).key)
            if j is None:
                missing.append((i, a))
            else:
                row[a] = j
        transitions.append(row)

    sink = target = None
    if missing:
        if n % 2:
            sink = size
            transitions.append({a: sink for a in letters})
            target = sink
        else:
            # первый найденный обходом элемент на расстоянии ровно R
            target = ball.distance.index(radius)
        for i, a in missing:
            transitions[i][a] = target
    logging.info(
        "Автомат шара %s, n = %d: %d состояний, %d лишних рёбер",
        G.describe(), n, len(transitions), len(missing),
    )
    return BallAutomaton(n, G.alphabet, transitions, sink, target, size)


def dfa_decide(automaton: BallAutomaton, w: Iterable[Letter]) -> bool:
    w = tuple(w)
    if len(w) > automaton.n:
        raise StreamOverflowError(f"Длина слова {len(w)} больше n = {automaton.n}")
    state = 0
    for a in w:
        state = automaton.step(state, a)
    return state == 0


@dataclass
class VerificationResult:
    words_checked: int
    mismatches: list[Word]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_exhaustive(automaton: BallAutomaton, G: ExactGroup, max_mismatches: int = 20) -> VerificationResult:
    """
    Сравнение с оракулом на всех словах длины ≤ n. Обход в глубину делит
    общие префиксы: состояние и значение элемента продолжаются по букве.
    """
    letters = sorted(G.alphabet)
    identity_key = G.identity().key
    checked = 0
    mismatches: list[Word] = []
    stack: list[tuple[int, object, Word]] = [(0, G.identity().value, ())]
    while stack:
        state, value, prefix = stack.pop()
        checked += 1
        if (state == 0) != (G._key(value) == identity_key):
            mismatches.append(prefix)
            if len(mismatches) >= max_mismatches:
                break
        if len(prefix) == automaton.n:
            continue
        for a in letters:
            stack.append((automaton.transitions[state][a], G._mul(value, G.generator(a).value), prefix + (a,)))
    return VerificationResult(checked, mismatches)


class BallRecipe(Recipe):
    """
    Автомат шара как потоковый автомат: детерминированный, без ошибки,
    но индекс состояния не различает элементы вне шара.
    """

    injective = False

    def __init__(self, group: ExactGroup, memory_cap: int = DEFAULT_MEMORY_CAP):
        self.group = group
        self.memory_cap = memory_cap
        self._automata: dict[int, BallAutomaton] = {}

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self.group.alphabet

    def describe(self) -> str:
        return f"ball({self.group.describe()})"

    def automaton(self, n: int) -> BallAutomaton:
        if n not in self._automata:
            self._automata[n] = build_ball_automaton(self.group, n, self.memory_cap)
        return self._automata[n]

    def space_bits(self, n: int) -> int:
        return self.automaton(n).bits

    def epsilon_bound(self, n: int) -> float:
        return 0.0

    def _make(self, n: int, seed: SeedLike) -> "BallMachine":
        return BallMachine(self, n, seed)


class BallMachine(StreamAutomaton):
    def __init__(self, recipe: BallRecipe, n: int, seed: SeedLike):
        super().__init__(recipe, n, seed)
        self.automaton = recipe.automaton(n)
        self.state = 0

    def _transition(self, a: Letter) -> None:
        self.state = self.automaton.step(self.state, a)

    def state_index(self) -> int:
        return self.state


def ball_recipe(group: ExactGroup, memory_cap: int = DEFAULT_MEMORY_CAP) -> BallRecipe:
    return BallRecipe(group, memory_cap)
