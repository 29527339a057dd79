"""
Матричные группы: рациональные матрицы, матрицы над F_p,
унитреугольные целочисленные и матрицы над полем рациональных функций.
"""
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from groups.base import CanonicalKey, ExactGroup, int_key, pack_key
from streaming.errors import ConstructionError
from streaming.polynomials import PolyMatrix, SparsePoly, poly_gens
from streaming.words import Letter, Word, inverse_word, symmetric


def _identity(size: int, one=1) -> tuple:
    return tuple(tuple(one if i == j else 0 * one for j in range(size)) for i in range(size))


def _matmul(a, b, modulus: int | None = None):
    size = len(a)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = sum(a[i][k] * b[k][j] for k in range(size) if a[i][k] and b[k][j])
            row.append(acc % modulus if modulus else acc)
        rows.append(tuple(row))
    return tuple(rows)


class MatrixGroup(ExactGroup):
    """Подгруппа GL_r(Q) (или GL_r(F_p)), порождённая заданными матрицами"""

    kind = 'matrix'

    def __init__(self, generators: Mapping[str, Sequence[Sequence[int | Fraction]]], characteristic: int = 0,
                 relators: Sequence[Word] = ()):
        if not generators:
            raise ConstructionError("Нужна хотя бы одна образующая")
        super().__init__(symmetric(generators))
        self.characteristic = characteristic
        self._relators = list(relators)
        self._matrices: dict[Letter, tuple] = {}
        for name, rows in generators.items():
            matrix = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row]
                                   for row in rows])
            if not matrix.is_square:
                raise ConstructionError(f"Матрица образующей {name} не квадратная")
            try:
                inverse = matrix.inv_mod(characteristic) if characteristic else matrix.inv()
            except ValueError:
                raise ConstructionError(f"Матрица образующей {name} вырождена")
            self._matrices[Letter(name)] = self._convert(matrix)
            self._matrices[Letter(name, True)] = self._convert(inverse)
        sizes = {len(m) for m in self._matrices.values()}
        if len(sizes) != 1:
            raise ConstructionError(f"Образующие разных размеров: {sorted(sizes)}")
        self.r = sizes.pop()

    def _convert(self, matrix: sympy.Matrix) -> tuple:
        if self.characteristic:
            return tuple(tuple(int(matrix[i, j]) % self.characteristic for j in range(matrix.cols))
                         for i in range(matrix.rows))
        return tuple(tuple(Fraction(int(matrix[i, j].p), int(matrix[i, j].q)) for j in range(matrix.cols))
                     for i in range(matrix.rows))

    def describe(self) -> str:
        field = f"F_{self.characteristic}" if self.characteristic else "Q"
        return f"matrix({self.r}, {field})"

    def _identity_value(self):
        return _identity(self.r, 1 if self.characteristic else Fraction(1))

    def _generator_value(self, a: Letter):
        return self._matrices[a]

    def _mul(self, u, v):
        return _matmul(u, v, self.characteristic or None)

    def _inv(self, u):
        matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                                for x in row] for row in u])
        inverse = matrix.inv_mod(self.characteristic) if self.characteristic else matrix.inv()
        return self._convert(inverse)

    def _key(self, u) -> CanonicalKey:
        return ';'.join(','.join(str(x) for x in row) for row in u).encode()

    def relators(self) -> list[Word]:
        return list(self._relators)


class UnitriangularGroup(ExactGroup):
    """Подгруппа UT_d(Z) с целочисленными унитреугольными образующими"""

    kind = 'UT'

    def __init__(self, generators: Mapping[str, Sequence[Sequence[int]]], relators: Sequence[Word] = ()):
        if not generators:
            raise ConstructionError("Нужна хотя бы одна образующая")
        super().__init__(symmetric(generators))
        self._relators = list(relators)
        self._matrices: dict[Letter, tuple] = {}
        for name, rows in generators.items():
            size = len(rows)
            if any(rows[i][i] != 1 for i in range(size)) or any(rows[i][j] for i in range(size) for j in range(i)):
                raise ConstructionError(f"Матрица образующей {name} не унитреугольная")
            inverse = sympy.Matrix(rows).inv()
            self._matrices[Letter(name)] = tuple(tuple(int(x) for x in row) for row in rows)
            self._matrices[Letter(name, True)] = tuple(
                tuple(int(inverse[i, j]) for j in range(size)) for i in range(size)
            )
        self.d = len(next(iter(self._matrices.values())))

    def describe(self) -> str:
        return f"UT({self.d})"

    def _identity_value(self):
        return _identity(self.d)

    def _generator_value(self, a: Letter):
        return self._matrices[a]

    def _mul(self, u, v):
        return _matmul(u, v)

    def _inv(self, u):
        inverse = sympy.Matrix(u).inv()
        return tuple(tuple(int(inverse[i, j]) for j in range(self.d)) for i in range(self.d))

    def _key(self, u) -> CanonicalKey:
        return int_key(u[i][j] for i in range(self.d) for j in range(i + 1, self.d))

    def relators(self) -> list[Word]:
        return list(self._relators)


def heisenberg() -> UnitriangularGroup:
    """UT_3(Z) с образующими x, y и центральной z = [x, y]"""
    from streaming.nilpotent import HEISENBERG_GENERATORS
    x, y, z = Letter('x'), Letter('y'), Letter('z')
    relators = [
        (x, y, x.inverse(), y.inverse(), z.inverse()),
        (x, z, x.inverse(), z.inverse()),
        (y, z, y.inverse(), z.inverse()),
    ]
    return UnitriangularGroup(HEISENBERG_GENERATORS, relators)


class PolynomialMatrixGroup(ExactGroup):
    """
    Подгруппа GL_r(F(x₁,…,x_m)), заданная масштабированными матрицами
    M̂ = t·M. Элемент — пара (P, e) с M = P / t^e и наименьшим e, плюс
    представляющее слово (оно не входит в ключ и нужно для обращения).
    """

    kind = 'matrix'

    def __init__(self, generators: Mapping[Letter, PolyMatrix], t: SparsePoly, characteristic: int = 0):
        super().__init__(frozenset(generators))
        self.m = t.m
        self.characteristic = characteristic
        self._gens = poly_gens(self.m)
        self._domain = {'modulus': characteristic} if characteristic else {'domain': sympy.ZZ}
        self.t = self._poly(t)
        self.r = len(next(iter(generators.values())))
        self._matrices = {
            a: tuple(tuple(self._poly(entry) for entry in row) for row in mhat) for a, mhat in generators.items()
        }

    def _poly(self, p: SparsePoly) -> sympy.Poly:
        return p.to_sympy(self.characteristic or None)

    def describe(self) -> str:
        field = f"F_{self.characteristic}" if self.characteristic else "Q"
        return f"matrix({self.r}, {field}(x1..x{self.m}))"

    def _normalize(self, matrix, e: int, word: Word):
        # сокращаем общий множитель t, пока он делит все элементы
        while e > 0:
            try:
                reduced = tuple(tuple(entry.exquo(self.t) for entry in row) for row in matrix)
            except sympy.polys.polyerrors.ExactQuotientFailed:
                break
            matrix, e = reduced, e - 1
        return matrix, e, word

    def _identity_value(self):
        one = sympy.Poly(1, *self._gens, **self._domain)
        zero = sympy.Poly(0, *self._gens, **self._domain)
        return tuple(tuple(one if i == j else zero for j in range(self.r)) for i in range(self.r)), 0, ()

    def _generator_value(self, a: Letter):
        return self._normalize(self._matrices[a], 1, (a,))

    def _mul(self, u, v):
        a, ea, wa = u
        b, eb, wb = v
        size = self.r
        product = tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(1, size)), a[i][0] * b[0][j]) for j in range(size))
            for i in range(size)
        )
        return self._normalize(product, ea + eb, wa + wb)

    def _inv(self, u):
        return self.evaluate(inverse_word(u[2])).value

    def _key(self, u) -> CanonicalKey:
        matrix, e, _ = u
        parts = [str(e).encode()]
        parts += [repr(sorted(entry.terms())).encode() for row in matrix for entry in row]
        return pack_key(parts)

    def _word_of(self, u) -> Word:
        return u[2]
