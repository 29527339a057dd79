"""
Отпечаток унитреугольной группы UT_d(Z): произведение по модулю простого.

Элементы произведения длины n растут полиномиально, поэтому хватает
простого размера polylog(n) (политика "polylog"). Политика "poly" берёт
простые того же размера, что и линейный отпечаток: ошибка 1/n^c вместо
1/log^c n, что нужно при подстановке во вложенные конструкции.
"""
import math
from typing import Mapping, Sequence

import sympy

from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError
from streaming.fields import PrimeField
from streaming.linear import Matrix, identity_matrix, mat_mul, mat_pow
from streaming.primes import linear_prime_base, polylog_prime_base, residue_width, sample_prime
from streaming.rng import SeedLike, spawn
from streaming.words import Letter

PRIME_POLICIES = ('polylog', 'poly')


def _is_unitriangular(rows: Sequence[Sequence[int]]) -> bool:
    size = len(rows)
    diagonal = all(rows[i][i] == 1 for i in range(size))
    lower = all(rows[i][j] == 0 for i in range(size) for j in range(i))
    return diagonal and lower


class NilpotentFingerprintSpec(Recipe):
    """Рецепт по целочисленным унитреугольным образующим; обратные вычисляются точно"""

    def __init__(self, generators: Mapping[str, Sequence[Sequence[int]]], c: int = 2,
                 prime_policy: str = 'polylog'):
        if not generators:
            raise ConstructionError("Нужна хотя бы одна образующая")
        if c < 1:
            raise ConstructionError(f"Показатель ошибки c должен быть ≥ 1, получено {c}")
        if prime_policy not in PRIME_POLICIES:
            raise ConstructionError(f"Неизвестная политика простых: {prime_policy}")
        self.c = c
        self.prime_policy = prime_policy
        self.generators: dict[Letter, tuple[tuple[int, ...], ...]] = {}
        sizes = set()
        for name, rows in generators.items():
            rows = [[int(x) for x in row] for row in rows]
            if any(len(row) != len(rows) for row in rows):
                raise ConstructionError(f"Матрица образующей {name} не квадратная")
            if not _is_unitriangular(rows):
                raise ConstructionError(f"Матрица образующей {name} не унитреугольная")
            inverse = sympy.Matrix(rows).inv()
            self.generators[Letter(name)] = tuple(tuple(row) for row in rows)
            self.generators[Letter(name, True)] = tuple(
                tuple(int(inverse[i, j]) for j in range(len(rows))) for i in range(len(rows))
            )
            sizes.add(len(rows))
        if len(sizes) != 1:
            raise ConstructionError(f"Образующие разных размеров: {sorted(sizes)}")
        self.d = sizes.pop()
        if self.d < 2:
            raise ConstructionError("Размерность унитреугольных матриц должна быть ≥ 2")
        self._alphabet = frozenset(self.generators)

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        return f"UT({self.d}, c={self.c}, {self.prime_policy})"

    def prime_base(self, n: int) -> int:
        if self.prime_policy == 'poly':
            return linear_prime_base(n, self.c)
        return polylog_prime_base(n, self.c)

    @property
    def entry_count(self) -> int:
        return self.d * (self.d - 1) // 2

    def space_bits(self, n: int) -> int:
        return self.entry_count * residue_width(self.prime_base(n))

    def epsilon_bound(self, n: int) -> float:
        if self.prime_policy == 'poly':
            return 1.0 / n ** self.c
        return 1.0 / math.log2(n) ** self.c

    def _make(self, n: int, seed: SeedLike) -> "NilpotentFingerprint":
        base = self.prime_base(n)
        p = sample_prime(base, 2 * base, spawn(seed, 0))
        return NilpotentFingerprint(self, n, seed, p, residue_width(base))


class NilpotentFingerprint(StreamAutomaton):
    def __init__(self, recipe: NilpotentFingerprintSpec, n: int, seed: SeedLike, p: int, width: int):
        super().__init__(recipe, n, seed)
        self.p = p
        self.field = PrimeField(p)
        self.width = width
        self.steps: dict[Letter, Matrix] = {
            a: [[x % p for x in row] for row in rows] for a, rows in recipe.generators.items()
        }
        self.matrix = identity_matrix(recipe.d, self.field)

    def _advance(self, a: Letter, k: int) -> None:
        step = self.steps[a]
        if k > 1:
            step = mat_pow(step, k, self.field)
        self.matrix = mat_mul(self.matrix, step, self.field)

    def state_index(self) -> int:
        d = self.recipe.d
        return pack_fields((self.matrix[i][j], self.width) for i in range(d) for j in range(i + 1, d))


def build_nilpotent_fingerprint(spec: NilpotentFingerprintSpec, n: int, seed: SeedLike) -> NilpotentFingerprint:
    return spec.build(n, seed)


HEISENBERG_GENERATORS = {
    'x': [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    'y': [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
    'z': [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
}


def heisenberg_spec(c: int = 2, prime_policy: str = 'polylog') -> NilpotentFingerprintSpec:
    return NilpotentFingerprintSpec(HEISENBERG_GENERATORS, c, prime_policy)


def abelian_generators(names: Sequence[str]) -> dict[str, list[list[int]]]:
    """Z^m внутри UT_{m+1}: образующая i — единица в позиции (0, i)"""
    size = len(names) + 1
    out = {}
    for i, name in enumerate(names, start=1):
        rows = [[1 if r == col else 0 for col in range(size)] for r in range(size)]
        rows[0][i] = 1
        out[name] = rows
    return out


def abelian_spec(names: Sequence[str], c: int = 4, prime_policy: str = 'poly') -> NilpotentFingerprintSpec:
    if not names:
        raise ConstructionError("Свободная абелева группа ранга 0 не поддерживается")
    return NilpotentFingerprintSpec(abelian_generators(names), c, prime_policy)
