"""
Разреженные многочлены с целыми коэффициентами от m переменных.

Запись в файлах: слагаемые через '+', каждое в виде coef:e1,…,em
(при m = 0 — просто целое число). Пример: "3:1,0+-2:0,2".
Хранится словарь мономов; сложение и умножение выполняет sympy.Poly.
"""
from dataclasses import dataclass
from typing import Mapping, Sequence

import sympy

from streaming.errors import DataFormatError


def poly_gens(m: int) -> list[sympy.Symbol]:
    """Переменные x1, …, xm; при m = 0 одна фиктивная x0 в нулевой степени"""
    return list(sympy.symbols(f'x1:{m + 1}')) if m else [sympy.Symbol('x0')]


@dataclass(frozen=True)
class SparsePoly:
    m: int
    terms: tuple[tuple[tuple[int, ...], int], ...] = ()

    @classmethod
    def from_dict(cls, m: int, terms: Mapping[tuple[int, ...], int]) -> "SparsePoly":
        cleaned = {}
        for exps, coef in terms.items():
            if len(exps) != m:
                raise ValueError(f"Моном {exps} не соответствует числу переменных {m}")
            if coef:
                cleaned[tuple(exps)] = cleaned.get(tuple(exps), 0) + coef
        return cls(m, tuple(sorted((e, c) for e, c in cleaned.items() if c)))

    @classmethod
    def constant(cls, m: int, value: int) -> "SparsePoly":
        return cls.from_dict(m, {(0,) * m: value})

    @classmethod
    def parse(cls, text: str, m: int) -> "SparsePoly":
        terms: dict[tuple[int, ...], int] = {}
        for chunk in text.replace(' ', '').split('+'):
            if not chunk:
                continue
            coef_text, _, exps_text = chunk.partition(':')
            try:
                coef = int(coef_text)
                exps = tuple(int(x) for x in exps_text.split(',')) if exps_text else (0,) * m
            except ValueError:
                raise DataFormatError(f"Некорректный моном: {chunk!r}")
            if len(exps) != m or any(x < 0 for x in exps):
                raise DataFormatError(f"Моном {chunk!r}: ожидается {m} неотрицательных показателей")
            terms[exps] = terms.get(exps, 0) + coef
        return cls.from_dict(m, terms)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> int | None:
        """Значение, если многочлен — константа"""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and not any(self.terms[0][0]):
            return self.terms[0][1]
        return None

    def to_sympy(self, modulus: int | None = None) -> sympy.Poly:
        gens = poly_gens(self.m)
        terms = {(e if self.m else (0,)): c for e, c in self.terms}
        kwargs = {'modulus': modulus} if modulus else {'domain': sympy.ZZ}
        return sympy.Poly.from_dict(terms or {(0,) * len(gens): 0}, *gens, **kwargs)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, m: int) -> "SparsePoly":
        terms = {}
        for exps, coef in poly.terms():
            terms[tuple(exps) if m else ()] = int(coef)
        return cls.from_dict(m, terms)

    def _check_ring(self, other: "SparsePoly") -> None:
        if other.m != self.m:
            raise ValueError(f"Многочлены от разного числа переменных: {self.m} и {other.m}")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_ring(other)
        return SparsePoly.from_sympy(self.to_sympy() + other.to_sympy(), self.m)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.m, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_ring(other)
        return SparsePoly.from_sympy(self.to_sympy() - other.to_sympy(), self.m)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_ring(other)
        return SparsePoly.from_sympy(self.to_sympy() * other.to_sympy(), self.m)

    def reduce(self, p: int) -> "SparsePoly":
        """Коэффициенты по модулю p"""
        return SparsePoly.from_dict(self.m, {e: c % p for e, c in self.terms})

    def evaluate(self, field, point: Sequence[int]):
        """Значение в точке; field — PrimeField или GaloisField"""
        total = field.zero
        for exps, coef in self.terms:
            term = field.from_int(coef)
            for x, k in zip(point, exps):
                if k:
                    term = field.mul(term, field.pow(x, k))
            total = field.add(total, term)
        return total

    def __str__(self):
        if not self.terms:
            return '0'
        if self.m == 0:
            return str(self.terms[0][1])
        return '+'.join(f"{c}:{','.join(map(str, e))}" for e, c in self.terms)


PolyMatrix = tuple[tuple[SparsePoly, ...], ...]


def poly_matrix(m: int, rows: Sequence[Sequence[int | SparsePoly]]) -> PolyMatrix:
    return tuple(
        tuple(x if isinstance(x, SparsePoly) else SparsePoly.constant(m, x) for x in row)
        for row in rows
    )


def poly_matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    m = a[0][0].m
    size = len(a)
    left = [[x.to_sympy() for x in row] for row in a]
    right = [[x.to_sympy() for x in row] for row in b]
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = left[i][0] * right[0][j]
            for k in range(1, size):
                acc += left[i][k] * right[k][j]
            row.append(SparsePoly.from_sympy(acc, m))
        out.append(tuple(row))
    return tuple(out)


def poly_scalar_identity(size: int, value: SparsePoly) -> PolyMatrix:
    zero = SparsePoly(value.m)
    return tuple(tuple(value if i == j else zero for j in range(size)) for i in range(size))
