"""
Unit тесты для букв, слов, случайности, простых и конечных полей.
"""
import pytest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from streaming.errors import DataFormatError, EmptyPrimeRangeError, RoutingError
from streaming.fields import GaloisField, PrimeField, find_irreducible, is_irreducible, minimal_extension_degree
from streaming.primes import is_probable_prime, linear_prime_base, polylog_prime_base, residue_width, sample_prime
from streaming.rng import generator, spawn
from streaming.words import (
    IDENTITY,
    Letter,
    format_word,
    inverse_word,
    letter,
    parse_word,
    power,
    split_tag,
    tag,
    word,
)


class TestLetters:
    """Тесты для букв и слов"""

    def test_letter_parsing(self):
        assert letter('a') == Letter('a')
        assert letter('a-') == Letter('a', True)
        assert str(Letter('b', True)) == 'b-'

    def test_identity_letter_has_no_inverse(self):
        assert IDENTITY.is_identity
        assert IDENTITY.inverse() == IDENTITY
        assert Letter('1', True) == IDENTITY
        assert Letter('h1.1').is_identity
        assert not Letter('h1.a').is_identity

    def test_parse_and_format(self):
        w = parse_word("a b- 1 c")
        assert w == (Letter('a'), Letter('b', True), IDENTITY, Letter('c'))
        assert format_word(w) == "a b- 1 c"
        assert parse_word("") == ()

    def test_inverse_word(self):
        assert inverse_word(word('a', 'b-', 'c')) == word('c-', 'b', 'a-')

    def test_power(self):
        assert power(word('a', 'b'), 2) == word('a', 'b', 'a', 'b')
        assert power(word('a', 'b'), -1) == word('b-', 'a-')
        assert power(word('a'), 0) == ()

    def test_tags(self):
        tagged = tag(Letter('a', True), 'h1')
        assert str(tagged) == 'h1.a-'
        assert split_tag(tagged) == ('h1', Letter('a', True))

    def test_untagged_letter_cannot_be_routed(self):
        with pytest.raises(RoutingError):
            split_tag(Letter('a'))

    def test_bad_letter_name(self):
        with pytest.raises(DataFormatError):
            parse_word("a - b")


class TestRandomness:
    """Тесты для дерева подсидов"""

    def test_same_path_same_stream(self):
        a = generator(spawn(7, 1, 2)).integers(0, 2 ** 62, size=4)
        b = generator(spawn(7, 1, 2)).integers(0, 2 ** 62, size=4)
        assert np.array_equal(a, b)

    def test_different_paths_differ(self):
        a = generator(spawn(7, 1, 2)).integers(0, 2 ** 62, size=4)
        b = generator(spawn(7, 2, 1)).integers(0, 2 ** 62, size=4)
        assert not np.array_equal(a, b)

    def test_negative_seed_rejected(self):
        with pytest.raises(ValueError):
            generator(-1)


class TestPrimes:
    """Тесты для выборки простых"""

    def test_sample_prime_in_range(self, seed):
        p = sample_prime(1000, 2000, seed)
        assert 1000 <= p <= 2000
        assert is_probable_prime(p)

    def test_sample_prime_reproducible(self, seed):
        assert sample_prime(10 ** 20, 2 * 10 ** 20, seed) == sample_prime(10 ** 20, 2 * 10 ** 20, seed)

    def test_empty_range(self):
        with pytest.raises(EmptyPrimeRangeError):
            sample_prime(24, 28, 0)

    def test_prime_bases(self):
        assert linear_prime_base(1, 1) == 64
        assert linear_prime_base(100, 2) > 100 ** 3
        assert polylog_prime_base(2 ** 16, 2) >= 16 ** 3
        assert residue_width(64) == 7


class TestFields:
    """Тесты для арифметики конечных полей"""

    def test_prime_field(self):
        F = PrimeField(13)
        assert F.mul(5, 8) == 1
        assert F.inv(5) == 8
        assert F.sub(3, 5) == 11

    def test_minimal_extension_degree(self):
        assert minimal_extension_degree(2, 98) == 7
        assert minimal_extension_degree(3, 3) == 1
        assert minimal_extension_degree(2, 129) == 8

    def test_irreducible_search(self):
        f = find_irreducible(2, 7)
        assert len(f) == 8
        assert is_irreducible(f, 2)
        assert not is_irreducible((1, 0, 1), 2)  # x² + 1 = (x + 1)²

    @pytest.mark.parametrize("p,e", [(2, 5), (3, 3), (5, 2)])
    def test_galois_field_inverse(self, p, e):
        F = GaloisField(p, e)
        for x in range(1, min(F.order, 40)):
            assert F.mul(x, F.inv(x)) == F.from_int(1)

    def test_galois_field_is_commutative(self):
        F = GaloisField(3, 4)
        for x, y in [(5, 17), (80, 3), (42, 42)]:
            assert F.mul(x, y) == F.mul(y, x)
            assert F.add(x, F.neg(x)) == 0

    def test_smallest_irreducible(self):
        assert find_irreducible(2, 1) == (0, 1)
        assert find_irreducible(2, 2) == (1, 1, 1)
        assert find_irreducible(2, 3) == (1, 1, 0, 1)
        assert find_irreducible(3, 2) == (1, 0, 1)
        assert is_irreducible((1, 0, 1), 3)
        assert not is_irreducible((2, 0, 1), 3)  # x² − 1
        assert not is_irreducible((5,), 7)

    def test_four_elements(self):
        F = GaloisField(2, 2)
        x = 2
        assert F.mul(x, x) == 3
        assert F.mul(x, 3) == 1
        assert F.add(3, 1) == 2
        assert F.pow(x, 3) == 1

    def test_nine_elements(self):
        F = GaloisField(3, 2)
        x = 3
        assert F.mul(x, x) == 2
        assert F.add(x, x) == 6
        assert F.neg(x) == 6
        assert F.sub(x, x) == 0
        assert F.pow(x, 4) == 1
        assert F.pow(0, 5) == 0

    def test_multiplicative_group_is_cyclic_of_right_order(self):
        F = GaloisField(2, 4)
        for a in range(1, F.order):
            assert F.pow(a, F.order - 1) == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            GaloisField(2, 3).inv(0)
        with pytest.raises(ZeroDivisionError):
            PrimeField(7).inv(14)
