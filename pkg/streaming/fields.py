"""
Конечная арифметика для отпечатков: F_p, F_{p^e} и пачки многочленов над Z_{p^k}.

Элементы F_{p^e} хранятся целыми числами из [0, p^e): цифры в системе
счисления p — коэффициенты многочлена, старшая цифра — старший коэффициент.
Сами операции в F_p[x] выполняет sympy.polys.galoistools.
"""
import logging
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_from_int_poly,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
)

from streaming.errors import ConstructionError


class PrimeField:
    """Поле вычетов Z/p"""

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.order = p
        self.element_bits = (p - 1).bit_length()
        self.zero = 0
        self.one = 1 % p

    def from_int(self, c: int) -> int:
        return c % self.p

    def element(self, i: int) -> int:
        return i % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def pow(self, a: int, k: int) -> int:
        return pow(a, k, self.p)

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("Обращение нуля в поле вычетов")
        return pow(a, -1, self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Неприводимость над F_p; coeffs — младший коэффициент первым"""
    f = gf_from_int_poly([int(c) for c in reversed(coeffs)], p)
    if len(f) < 2:
        return False
    return gf_irreducible_p(f, p, ZZ)


@lru_cache(maxsize=None)
def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """
    Лексикографически наименьший приведённый неприводимый многочлен степени e.

    Порядок — по вектору (c_{e-1}, …, c_0), то есть по номеру младших
    коэффициентов в системе счисления p. Поиск детерминирован и не зависит
    от случайности отпечатка.
    """
    if e < 1:
        raise ConstructionError(f"Степень расширения должна быть ≥ 1, получено {e}")
    for index in range(p ** e):
        # свободный член 0: делится на x
        if e > 1 and index % p == 0:
            continue
        coeffs, rest = [], index
        for _ in range(e):
            rest, digit = divmod(rest, p)
            coeffs.append(digit)
        coeffs.append(1)
        if is_irreducible(coeffs, p):
            if e > 16:
                logging.info("Неприводимый многочлен степени %d над F_%d найден (номер %d)", e, p, index)
            return tuple(coeffs)
    raise ConstructionError(f"Неприводимый многочлен степени {e} над F_{p} не найден")


class GaloisField:
    """Поле F_{p^e} = F_p[x]/(f) с наименьшим неприводимым f"""

    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.characteristic = p
        self.order = p ** e
        self.element_bits = (self.order - 1).bit_length()
        self.modulus = find_irreducible(p, e)
        self.zero = 0
        self.one = 1
        self._f = [ZZ(c) for c in reversed(self.modulus)]

    def _poly(self, x: int) -> list:
        digits = []
        while x:
            x, digit = divmod(x, self.p)
            digits.append(ZZ(digit))
        return digits[::-1]

    def _number(self, f: Sequence) -> int:
        x = 0
        for c in f:
            x = x * self.p + int(c)
        return x

    def from_int(self, c: int) -> int:
        return c % self.p

    def element(self, i: int) -> int:
        return i % self.order

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self._number(gf_add(self._poly(a), self._poly(b), self.p, ZZ))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._number(gf_neg(self._poly(a), self.p, ZZ))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        product = gf_mul(self._poly(a), self._poly(b), self.p, ZZ)
        return self._number(gf_rem(product, self._f, self.p, ZZ))

    def pow(self, a: int, k: int) -> int:
        return self._number(gf_pow_mod(self._poly(a), k, self._f, self.p, ZZ))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"Обращение нуля в F_{self.p}^{self.e}")
        return self.pow(a, self.order - 2)

    def __repr__(self):
        return f"GaloisField({self.p}, {self.e})"


def minimal_extension_degree(p: int, size: int) -> int:
    """Наименьшее e ≥ 1 с p^e ≥ size"""
    e, power = 1, p
    while power < size:
        e += 1
        power *= p
    return e


class ResiduePolynomials:
    """
    Пачка приведённых многочленов s_1, …, s_t степени D над Z_M.

    Все t многочленов обрабатываются разом как массив (t, D): строка i —
    младшие коэффициенты s_i (старший равен 1 и не хранится).
    Остатки x^D, …, x^{2D-2} по каждому s_i считаются один раз, после чего
    приведение произведения — одна свёртка со старшей половиной.
    """

    def __init__(self, modulus: int, lower: np.ndarray):
        self.modulus = modulus
        self.count, self.degree = lower.shape
        if self.degree < 1:
            raise ConstructionError("Степень делителей должна быть ≥ 1")
        # int64 хватает, пока 2D·M² < 2^62, иначе длинная арифметика
        self.dtype = np.int64 if 2 * self.degree * modulus * modulus < 2 ** 62 else object
        self.lower = np.asarray(lower, dtype=self.dtype) % modulus
        self._fold = self._fold_table()
        self._doubling: list[np.ndarray] = []

    @classmethod
    def random(cls, modulus: int, count: int, degree: int, gen: np.random.Generator) -> "ResiduePolynomials":
        if modulus < 2 ** 62:
            lower = gen.integers(0, modulus, size=(count, degree), dtype=np.int64)
        else:
            from streaming.rng import randbelow
            lower = np.array([[randbelow(gen, modulus) for _ in range(degree)] for _ in range(count)], dtype=object)
        return cls(modulus, lower)

    def zeros(self) -> np.ndarray:
        return np.zeros((self.count, self.degree), dtype=self.dtype)

    def one(self) -> np.ndarray:
        result = self.zeros()
        result[:, 0] = 1 % self.modulus
        return result

    def times_x(self, a: np.ndarray) -> np.ndarray:
        """x·a mod s_i: x^D ≡ −(младшие коэффициенты s_i)"""
        shifted = self.zeros()
        shifted[:, 1:] = a[:, :-1]
        return (shifted - a[:, -1:] * self.lower) % self.modulus

    def _fold_table(self) -> np.ndarray:
        """Массив (t, D−1, D): строка j — x^{D+j} mod s_i"""
        table = np.zeros((self.count, max(self.degree - 1, 0), self.degree), dtype=self.dtype)
        if self.degree > 1:
            current = -self.lower % self.modulus
            for j in range(self.degree - 1):
                table[:, j, :] = current
                current = self.times_x(current)
        return table

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        D, M = self.degree, self.modulus
        prod = np.zeros((self.count, 2 * D - 1), dtype=self.dtype)
        for i in range(D):
            prod[:, i:i + D] += a[:, i:i + 1] * b
        high = prod[:, D:] % M
        folded = np.matmul(high[:, None, :], self._fold)[:, 0, :] if D > 1 else 0
        return (prod[:, :D] + folded) % M

    def power_of_x(self, q: int) -> np.ndarray:
        """x^q mod s_i для всех i по таблице x^{2^j}, которая растёт по мере надобности"""
        while len(self._doubling) < q.bit_length():
            if self._doubling:
                last = self._doubling[-1]
                self._doubling.append(self.mul(last, last))
            else:
                self._doubling.append(self.times_x(self.one()))
        result = None
        for j in range(q.bit_length()):
            if q >> j & 1:
                factor = self._doubling[j]
                result = factor if result is None else self.mul(result, factor)
        return self.one() if result is None else result
