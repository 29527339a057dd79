"""
Отпечаток линейной группы: произведение матриц по модулю случайного простого
в случайной точке.

Образующие заданы масштабированными матрицами M̂ = t·M с целыми
многочленами от m переменных. Состояние после k букв:
B = t(s̄)^{n+1-k}·M̂_1(s̄)⋯M̂_k(s̄) mod p.
В характеристике p вычисления идут в F_{p^e}, где p^e ≥ |S|.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import sympy

from streaming.automaton import Recipe, StreamAutomaton, pack_fields
from streaming.errors import ConstructionError
from streaming.fields import GaloisField, PrimeField, minimal_extension_degree
from streaming.polynomials import PolyMatrix, SparsePoly, poly_gens, poly_matmul, poly_matrix, poly_scalar_identity
from streaming.primes import linear_prime_base, residue_width, sample_prime
from streaming.rng import SeedLike, generator, randbelow, spawn
from streaming.words import Letter

Matrix = list[list[int]]


# --- Матрицы над полем (PrimeField или GaloisField) ---

def identity_matrix(size: int, field) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(size)] for i in range(size)]


def mat_mul(a: Matrix, b: Matrix, field) -> Matrix:
    size = len(a)
    if isinstance(field, PrimeField):
        p = field.p
        return [[sum(a[i][k] * b[k][j] for k in range(size)) % p for j in range(size)] for i in range(size)]
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = field.zero
            for k in range(size):
                if a[i][k] and b[k][j]:
                    acc = field.add(acc, field.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_pow(a: Matrix, k: int, field) -> Matrix:
    result = identity_matrix(len(a), field)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base, field)
        k >>= 1
        if k:
            base = mat_mul(base, base, field)
    return result


def scalar_matrix(size: int, value: int, field) -> Matrix:
    return [[value if i == j else field.zero for j in range(size)] for i in range(size)]


def derive_inverse(mhat: PolyMatrix, t: SparsePoly, characteristic: int = 0) -> PolyMatrix | None:
    """
    Масштабированная обратная t·M⁻¹ = t²·adj(M̂)/det(M̂), если она
    целочисленна (делится без остатка). Иначе None.
    """
    m = t.m
    gens = poly_gens(m)
    modulus = characteristic or None
    size = len(mhat)
    domain = {'modulus': modulus} if modulus else {'domain': sympy.ZZ}
    matrix = sympy.Matrix(size, size, lambda i, j: mhat[i][j].to_sympy(modulus).as_expr())
    det = sympy.Poly(matrix.det(), *gens, **domain)
    if det.is_zero:
        raise ConstructionError("Матрица образующей вырождена: определитель равен нулю")
    adjugate = matrix.adjugate()
    t_squared = (t * t).to_sympy(modulus)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = sympy.Poly(adjugate[i, j], *gens, **domain)
            try:
                quotient = (t_squared * entry).exquo(det)
            except sympy.polys.polyerrors.ExactQuotientFailed:
                return None
            row.append(SparsePoly.from_sympy(quotient, m))
        rows.append(tuple(row))
    return tuple(rows)


class LinearFingerprintSpec(Recipe):
    """
    Рецепт линейного отпечатка.

    generators содержит и образующие, и их формальные обратные; для каждой
    пары проверяется M̂_a·M̂_{a⁻¹} = t²·Id.
    """

    def __init__(self, r: int, m: int, generators: Mapping[Letter, PolyMatrix], t: SparsePoly,
                 c: int = 4, characteristic: int = 0):
        if r < 1:
            raise ConstructionError(f"Размерность матриц должна быть ≥ 1, получено {r}")
        if c < 1:
            raise ConstructionError(f"Показатель ошибки c должен быть ≥ 1, получено {c}")
        if t.is_zero():
            raise ConstructionError("Общий знаменатель t не может быть нулевым")
        self.r = r
        self.m = m
        self.t = t if not characteristic else t.reduce(characteristic)
        self.c = c
        self.characteristic = characteristic
        self.generators = {}
        for a, mhat in generators.items():
            if len(mhat) != r or any(len(row) != r for row in mhat):
                raise ConstructionError(f"Матрица образующей {a} должна иметь размер {r}×{r}")
            if any(entry.m != m for row in mhat for entry in row):
                raise ConstructionError(f"Матрица образующей {a}: ожидается {m} переменных")
            if characteristic:
                mhat = tuple(tuple(entry.reduce(characteristic) for entry in row) for row in mhat)
            self.generators[a] = mhat
        self._alphabet = frozenset(self.generators)
        self._check_inverses()
        self.d = max(
            [self.t.degree] + [entry.degree for mhat in self.generators.values() for row in mhat for entry in row]
        )

    def _check_inverses(self):
        target = poly_scalar_identity(self.r, self.t * self.t)
        if self.characteristic:
            target = tuple(tuple(e.reduce(self.characteristic) for e in row) for row in target)
        for a, mhat in self.generators.items():
            if a.inverse() not in self.generators:
                raise ConstructionError(f"Для образующей {a} не задана обратная {a.inverse()}")
            product = poly_matmul(mhat, self.generators[a.inverse()])
            if self.characteristic:
                product = tuple(tuple(e.reduce(self.characteristic) for e in row) for row in product)
            if product != target:
                raise ConstructionError(
                    f"Матрицы {a} и {a.inverse()} не взаимно обратны (M̂·M̂⁻ ≠ t²·Id): образующая вырождена"
                )

    @property
    def alphabet(self) -> frozenset[Letter]:
        return self._alphabet

    def describe(self) -> str:
        field = f"F_{self.characteristic}" if self.characteristic else "Q"
        return f"linear(r={self.r}, m={self.m}, {field}, c={self.c})"

    def point_set_size(self, n: int) -> int:
        """|S| = 2d(n+1)^{c+1}; при d = 0 берём d = 1"""
        return 2 * max(self.d, 1) * (n + 1) ** (self.c + 1)

    def extension_degree(self, n: int) -> int:
        if not self.characteristic:
            raise ConstructionError("Степень расширения определена только в характеристике p")
        return minimal_extension_degree(self.characteristic, self.point_set_size(n))

    def _coordinate_bits(self, n: int) -> int:
        return self.m * (self.point_set_size(n) - 1).bit_length()

    def space_bits(self, n: int, e: int | None = None) -> int:
        if self.characteristic:
            order = self.characteristic ** (e or self.extension_degree(n))
            width = (order - 1).bit_length()
        else:
            width = residue_width(linear_prime_base(n, self.c))
        return 1 + self._coordinate_bits(n) + self.r * self.r * width

    def epsilon_bound(self, n: int) -> float:
        if self.characteristic and self.m == 0:
            return 0.0
        return 1.0 / n ** self.c

    def _galois_machine(self, n: int, seed: SeedLike, e: int) -> "LinearFingerprint":
        field = GaloisField(self.characteristic, e)
        return LinearFingerprint(self, n, seed, field, field.element_bits, offset=0, e=e)

    def _make(self, n: int, seed: SeedLike) -> "LinearFingerprint":
        if self.characteristic:
            return self._galois_machine(n, seed, self.extension_degree(n))
        base = linear_prime_base(n, self.c)
        p = sample_prime(base, 2 * base, spawn(seed, 0))
        return LinearFingerprint(self, n, seed, PrimeField(p), residue_width(base), offset=1)


class LinearFingerprint(StreamAutomaton):
    def __init__(self, recipe: LinearFingerprintSpec, n: int, seed: SeedLike, field, width: int,
                 offset: int, e: int | None = None):
        super().__init__(recipe, n, seed)
        if e is not None:
            self.bits = recipe.space_bits(n, e)
        self.field = field
        self.width = width
        size = recipe.point_set_size(n)
        self.coordinate_width = (size - 1).bit_length()
        gen = generator(spawn(seed, 1))
        self.point_index = tuple(randbelow(gen, size) for _ in range(recipe.m))
        # в характеристике 0 S = [1, |S|]; в характеристике p первые |S| элементов поля
        point = tuple(field.element(i + offset) for i in self.point_index)
        t_value = recipe.t.evaluate(field, point)
        self.degenerate = t_value == field.zero
        self.steps: dict[Letter, Matrix] = {}
        self.matrix: Matrix = []
        if self.degenerate:
            logging.debug("t(s̄) ≡ 0: отпечаток %s игнорирует вход", recipe.describe())
            return
        t_inv = field.inv(t_value)
        for a, mhat in recipe.generators.items():
            self.steps[a] = [[field.mul(t_inv, entry.evaluate(field, point)) for entry in row] for row in mhat]
        self.matrix = scalar_matrix(recipe.r, field.pow(t_value, n + 1), field)

    def _advance(self, a: Letter, k: int) -> None:
        if self.degenerate:
            return
        step = self.steps[a]
        if k > 1:
            step = mat_pow(step, k, self.field)
        self.matrix = mat_mul(self.matrix, step, self.field)

    def state_index(self) -> int:
        if self.degenerate:
            return 1
        fields = [(0, 1)]
        fields += [(i, self.coordinate_width) for i in self.point_index]
        fields += [(x, self.width) for row in self.matrix for x in row]
        return pack_fields(fields)


def build_linear_fingerprint(spec: LinearFingerprintSpec, n: int, seed: SeedLike) -> LinearFingerprint:
    return spec.build(n, seed)


def prime_char_fingerprint(spec: LinearFingerprintSpec, n: int, seed: SeedLike,
                           e: int | None = None) -> LinearFingerprint:
    """
    Отпечаток над F_{p^e}. По умолчанию e — наименьшее с p^e ≥ |S|;
    явно заданное e проверяется на то же условие.
    """
    if not spec.characteristic:
        raise ConstructionError("Рецепт задан над Q, а не над полем характеристики p")
    if e is None:
        return spec.build(n, seed)
    if n < 1:
        raise ConstructionError(f"Граница длины n должна быть ≥ 1, получено {n}")
    size = spec.point_set_size(n)
    if spec.characteristic ** e < size:
        raise ConstructionError(f"Поле F_{spec.characteristic}^{e} меньше множества точек |S| = {size}")
    machine = spec._galois_machine(n, seed, e)
    machine.initial_index = machine.state_index()
    return machine


# --- Готовые рецепты ---

def _constant_matrix(values: Sequence[Sequence[int]]) -> PolyMatrix:
    return poly_matrix(0, values)


def rational_linear_spec(generators: Mapping[str, Sequence[Sequence[int | Fraction]]], c: int = 4,
                         characteristic: int = 0) -> LinearFingerprintSpec:
    """
    Рецепт по рациональным матрицам образующих (m = 0). Обратные
    вычисляются точно, t — НОК всех знаменателей.
    """
    if not generators:
        raise ConstructionError("Нужна хотя бы одна образующая")
    matrices: dict[Letter, sympy.Matrix] = {}
    for name, rows in generators.items():
        matrix = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row]
                               for row in rows])
        if not matrix.is_square:
            raise ConstructionError(f"Матрица образующей {name} не квадратная")
        try:
            if characteristic:
                inverse = matrix.inv_mod(characteristic)
            elif matrix.det() == 0:
                raise ValueError
            else:
                inverse = matrix.inv()
        except ValueError:
            raise ConstructionError(f"Матрица образующей {name} вырождена")
        matrices[Letter(name)] = matrix
        matrices[Letter(name, True)] = inverse
    r = next(iter(matrices.values())).rows
    t = 1
    if not characteristic:
        t = lcm(*(int(sympy.fraction(x)[1]) for matrix in matrices.values() for x in matrix))
    scaled = {a: _constant_matrix([[int(x * t) for x in matrix.row(i)] for i in range(r)])
              for a, matrix in matrices.items()}
    return LinearFingerprintSpec(r, 0, scaled, SparsePoly.constant(0, t), c, characteristic)


SL2_GENERATORS = {
    'S': [[0, -1], [1, 0]],
    'T': [[1, 1], [0, 1]],
}

# Подгруппа Санова: a и b порождают свободную группу ранга 2 в SL₂(Z)
SANOV_A = [[1, 2], [0, 1]]
SANOV_B = [[1, 0], [2, 1]]


def sl2_spec(c: int = 4) -> LinearFingerprintSpec:
    return rational_linear_spec(SL2_GENERATORS, c)


def free_group_names(r: int) -> list[str]:
    if r == 2:
        return ['a', 'b']
    if r <= 26:
        return [chr(ord('a') + i) for i in range(r)]
    return [f"x{i + 1}" for i in range(r)]


def free_group_matrices(r: int) -> dict[str, list[list[int]]]:
    """
    Образующие F_r в SL₂(Z): при r = 2 — пара Санова, при r > 2 —
    сопряжённые a^{-i}·b·a^{i}, i = 0…r−1, которые порождают F_r свободно.
    """
    if r < 1:
        raise ConstructionError(f"Ранг свободной группы должен быть ≥ 1, получено {r}")
    a = sympy.Matrix(SANOV_A)
    b = sympy.Matrix(SANOV_B)
    names = free_group_names(r)
    if r == 1:
        return {names[0]: SANOV_A}
    if r == 2:
        return {names[0]: SANOV_A, names[1]: SANOV_B}
    a_inv = a.inv()
    out = {}
    for i, name in enumerate(names):
        conj = a_inv ** i * b * a ** i
        out[name] = [[int(conj[row, col]) for col in range(2)] for row in range(2)]
    return out


def free_group_spec(r: int = 2, c: int = 4) -> LinearFingerprintSpec:
    return rational_linear_spec(free_group_matrices(r), c)
