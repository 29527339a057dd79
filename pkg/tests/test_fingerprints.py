"""
Unit тесты для листовых автоматов: линейного, нильпотентного и точных.
"""
import itertools

import pytest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from groups.base import is_identity
from streaming.automaton import decide_identity, pack_fields, space_bits
from streaming.errors import AlphabetError, ConstructionError, InvalidArgumentError, StreamOverflowError
from streaming.exact import TableRecipe, counter_recipe
from streaming.linear import (
    LinearFingerprintSpec,
    derive_inverse,
    free_group_matrices,
    free_group_spec,
    prime_char_fingerprint,
    rational_linear_spec,
    sl2_spec,
)
from streaming.nilpotent import abelian_spec, heisenberg_spec
from streaming.polynomials import SparsePoly, poly_matmul, poly_matrix
from streaming.rng import spawn
from streaming.words import IDENTITY, Letter, inverse_word, parse_word, power, word


def _sanov_over_f2() -> LinearFingerprintSpec:
    """[[1, x], [0, 1]] над F₂: образующая совпадает со своей обратной"""
    x = SparsePoly.parse('1:1', 1)
    mhat = poly_matrix(1, [[1, x], [0, 1]])
    return LinearFingerprintSpec(
        r=2, m=1,
        generators={Letter('a'): mhat, Letter('a', True): mhat},
        t=SparsePoly.constant(1, 1),
        c=1,
        characteristic=2,
    )


class TestPackFields:
    """Тесты для упаковки состояния"""

    def test_pack(self):
        assert pack_fields([(1, 1), (3, 2)]) == 0b111
        assert pack_fields([]) == 0

    def test_value_too_wide(self):
        with pytest.raises(ValueError):
            pack_fields([(4, 2)])


class TestLinearFingerprint:
    """Тесты для линейного отпечатка над Q"""

    def test_identity_words_always_accepted(self, f2_spec, seed):
        words = [
            word('a', 'a-'),
            word('a', 'b', 'b-', 'a-'),
            parse_word("a b a- b- b a b- a-"),
            (),
        ]
        for i, w in enumerate(words):
            assert decide_identity(f2_spec, 16, spawn(seed, i), w).accept

    def test_commutator_rejected(self, f2_spec, seed):
        w = word('a', 'b', 'a-', 'b-')
        for i in range(5):
            assert not decide_identity(f2_spec, 16, spawn(seed, i), w).accept

    def test_bits_are_reported(self, f2_spec, seed):
        result = decide_identity(f2_spec, 16, seed, word('a'))
        assert result.bits_used == f2_spec.space_bits(16)
        assert result.letters_read == 1

    def test_space_formula(self, f2_spec):
        # m = 0: один бит вырожденности и r² остатков
        width = f2_spec.space_bits(100) - 1
        assert width % 4 == 0
        assert f2_spec.space_bits(1000) > f2_spec.space_bits(100)

    def test_sl2_relations(self, seed):
        spec = sl2_spec()
        assert decide_identity(spec, 8, seed, power(word('S'), 4)).accept
        assert not decide_identity(spec, 8, seed, power(word('S'), 2)).accept

    def test_step_power_matches_steps(self, f2_spec, seed):
        a = f2_spec.build(20, seed)
        b = f2_spec.build(20, seed)
        a.step_power(Letter('a'), 7).step(Letter('b'))
        for _ in range(7):
            b.step(Letter('a'))
        b.step(Letter('b'))
        assert a.state_index() == b.state_index()
        assert a.letters_read == b.letters_read == 8

    def test_identity_letter_counts_but_does_nothing(self, f2_spec, seed):
        machine = f2_spec.build(4, seed)
        machine.feed((IDENTITY, IDENTITY))
        assert machine.accepts()
        assert machine.letters_read == 2

    def test_overflow(self, f2_spec, seed):
        machine = f2_spec.build(2, seed)
        machine.feed(word('a', 'b'))
        with pytest.raises(StreamOverflowError):
            machine.step(Letter('a'))
        with pytest.raises(StreamOverflowError):
            decide_identity(f2_spec, 2, seed, word('a', 'b', 'a'))

    def test_unknown_letter(self, f2_spec, seed):
        with pytest.raises(AlphabetError):
            f2_spec.build(4, seed).step(Letter('c'))

    def test_negative_power(self, f2_spec, seed):
        with pytest.raises(InvalidArgumentError):
            f2_spec.build(4, seed).step_power(Letter('a'), -1)

    def test_zero_length_bound(self, f2_spec):
        with pytest.raises(ConstructionError):
            f2_spec.build(0, 1)
        with pytest.raises(ConstructionError):
            space_bits(f2_spec, 0)

    def test_same_seed_same_state(self, f2_spec, seed):
        a = f2_spec.build(10, seed).feed(word('a', 'b'))
        b = f2_spec.build(10, seed).feed(word('a', 'b'))
        assert a.state_index() == b.state_index()

    def test_rank_three(self, seed):
        spec = free_group_spec(3)
        assert len(free_group_matrices(3)) == 3
        w = word('a', 'b', 'c')
        assert decide_identity(spec, 12, seed, w + inverse_word(w)).accept
        assert not decide_identity(spec, 12, seed, word('b', 'c', 'b-', 'c-')).accept

    def test_rational_generators(self, seed):
        from fractions import Fraction
        spec = rational_linear_spec({'h': [[2, 0], [0, Fraction(1, 2)]]})
        assert spec.t.constant_value() == 2
        assert decide_identity(spec, 6, seed, word('h', 'h', 'h-', 'h-')).accept
        assert not decide_identity(spec, 6, seed, word('h', 'h')).accept

    def test_singular_generator(self):
        with pytest.raises(ConstructionError):
            rational_linear_spec({'a': [[1, 2], [2, 4]]})

    def test_mismatched_inverse(self):
        one = SparsePoly.constant(0, 1)
        mhat = poly_matrix(0, [[1, 1], [0, 1]])
        with pytest.raises(ConstructionError):
            LinearFingerprintSpec(2, 0, {Letter('a'): mhat, Letter('a', True): mhat}, one)


class TestDeriveInverse:
    """Тесты для вычисления масштабированных обратных"""

    def test_unipotent(self):
        t = SparsePoly.constant(0, 1)
        inverse = derive_inverse(poly_matrix(0, [[1, 2], [0, 1]]), t)
        assert inverse == poly_matrix(0, [[1, -2], [0, 1]])

    def test_not_integral(self):
        t = SparsePoly.constant(0, 1)
        assert derive_inverse(poly_matrix(0, [[2, 0], [0, 1]]), t) is None

    def test_zero_determinant(self):
        t = SparsePoly.constant(0, 1)
        with pytest.raises(ConstructionError):
            derive_inverse(poly_matrix(0, [[1, 1], [1, 1]]), t)


class TestPrimeCharacteristic:
    """Тесты для отпечатка над F_{p^e}"""

    def test_extension_degree(self):
        spec = _sanov_over_f2()
        assert spec.d == 1
        assert spec.point_set_size(6) == 98
        assert spec.extension_degree(6) == 7

    def test_involution_accepted(self, seed):
        spec = _sanov_over_f2()
        for i in range(5):
            assert decide_identity(spec, 6, spawn(seed, i), word('a', 'a')).accept

    def test_single_letter_rejected_by_some_seed(self, seed):
        spec = _sanov_over_f2()
        assert any(not decide_identity(spec, 6, spawn(seed, i), word('a')).accept for i in range(5))

    def test_explicit_degree(self, seed):
        spec = _sanov_over_f2()
        machine = prime_char_fingerprint(spec, 6, seed, e=9)
        assert machine.bits == spec.space_bits(6, 9)
        with pytest.raises(ConstructionError):
            prime_char_fingerprint(spec, 6, seed, e=3)

    def test_requires_prime_characteristic(self, f2_spec, seed):
        with pytest.raises(ConstructionError):
            prime_char_fingerprint(f2_spec, 6, seed)
        with pytest.raises(ConstructionError):
            f2_spec.extension_degree(6)


class TestNilpotentFingerprint:
    """Тесты для отпечатка унитреугольных групп"""

    def test_heisenberg_commutator(self, seed):
        spec = heisenberg_spec()
        n = 2 ** 16
        assert decide_identity(spec, n, seed, parse_word("x y x- y- z-")).accept
        machine = spec.build(n, seed)
        assert machine.p < 2 ** 32
        assert spec.space_bits(n) <= 3 * machine.p.bit_length()

    def test_one_sided_on_short_words(self, heis, seed):
        spec = heisenberg_spec()
        letters = parse_word("x x- y y-")
        for length in range(5):
            for i, w in enumerate(itertools.product(letters, repeat=length)):
                if is_identity(heis, w):
                    assert decide_identity(spec, 8, spawn(seed, length, i), w).accept

    def test_poly_policy_rejects(self, seed):
        spec = heisenberg_spec(c=2, prime_policy='poly')
        for i in range(5):
            assert not decide_identity(spec, 16, spawn(seed, i), parse_word("x y x- y-")).accept

    def test_short_bound(self, seed):
        with pytest.raises(ConstructionError):
            heisenberg_spec().build(3, seed)

    def test_not_unitriangular(self):
        from streaming.nilpotent import NilpotentFingerprintSpec
        with pytest.raises(ConstructionError):
            NilpotentFingerprintSpec({'a': [[2, 0], [0, 1]]})

    def test_unknown_policy(self):
        with pytest.raises(ConstructionError):
            heisenberg_spec(prime_policy='fast')

    def test_abelian_embedding(self, seed):
        spec = abelian_spec(['a', 'b'])
        assert decide_identity(spec, 8, seed, parse_word("a b a- b-")).accept
        assert not decide_identity(spec, 8, seed, parse_word("a b a-")).accept
        with pytest.raises(ConstructionError):
            abelian_spec([])


class TestExactMachines:
    """Тесты для счётчиков и таблиц конечных групп"""

    def test_counter_on_integers(self, seed):
        recipe = counter_recipe(['a'])
        n = 10
        assert recipe.space_bits(n) == (2 * n).bit_length()
        assert decide_identity(recipe, n, seed, power(word('a'), 5) + power(word('a-'), 5)).accept
        assert not decide_identity(recipe, n, seed, power(word('a'), 10)).accept
        assert recipe.epsilon_bound(n) == 0.0

    def test_counter_with_modulus(self, seed):
        recipe = counter_recipe(['a', 'b'], [3, None])
        assert decide_identity(recipe, 6, seed, parse_word("a a a b b-")).accept
        assert not decide_identity(recipe, 6, seed, parse_word("a a")).accept

    def test_bad_modulus(self):
        with pytest.raises(ConstructionError):
            counter_recipe(['a'], [0])
        with pytest.raises(ConstructionError):
            counter_recipe(['a', 'b'], [3])

    def test_s3_table(self, s3, seed):
        recipe = TableRecipe(s3.table, s3.letter_indices())
        assert recipe.space_bits(100) == 3
        assert decide_identity(recipe, 6, seed, power(word('s'), 2)).accept
        assert decide_identity(recipe, 6, seed, power(word('r'), 3)).accept
        assert not decide_identity(recipe, 6, seed, parse_word("r s r- s-")).accept

    def test_table_matches_oracle(self, s3, seed):
        recipe = TableRecipe(s3.table, s3.letter_indices())
        letters = sorted(s3.alphabet)
        for w in itertools.product(letters, repeat=3):
            assert decide_identity(recipe, 3, seed, w).accept == is_identity(s3, w)

    def test_generator_out_of_range(self):
        with pytest.raises(ConstructionError):
            TableRecipe([[0]], {Letter('a'): 1})


class TestSparsePoly:
    """Тесты для многочленов с целыми коэффициентами"""

    def test_add_and_sub(self):
        p = SparsePoly.parse('1:1,0+2:0,1', 2)
        q = SparsePoly.parse('-1:1,0', 2)
        assert p + q == SparsePoly.parse('2:0,1', 2)
        assert (p - p).is_zero()
        assert -q == SparsePoly.parse('1:1,0', 2)

    def test_mul(self):
        left = SparsePoly.parse('1:1+1:0', 1)
        right = SparsePoly.parse('1:1+-1:0', 1)
        assert left * right == SparsePoly.parse('1:2+-1:0', 1)
        assert (left * right).degree == 2

    def test_constants(self):
        product = SparsePoly.constant(0, 3) * SparsePoly.constant(0, 4)
        assert product == SparsePoly.constant(0, 12)
        assert product.constant_value() == 12
        assert str(product) == '12'
        assert str(SparsePoly(0)) == '0'

    def test_different_rings(self):
        with pytest.raises(ValueError):
            SparsePoly.constant(1, 1) + SparsePoly.constant(2, 1)
        with pytest.raises(ValueError):
            SparsePoly.constant(1, 1) * SparsePoly.constant(0, 1)

    def test_sympy_modulus(self):
        p = SparsePoly.parse('3:1+4:0', 1)
        assert SparsePoly.from_sympy(p.to_sympy(2), 1) == SparsePoly.parse('1:1', 1)
        assert SparsePoly.from_sympy(p.to_sympy(), 1) == p

    def test_matrix_product(self):
        x = SparsePoly.parse('1:1', 1)
        a = poly_matrix(1, [[1, x], [0, 1]])
        square = poly_matmul(a, a)
        assert square == poly_matrix(1, [[1, SparsePoly.parse('2:1', 1)], [0, 1]])

    def test_evaluate(self):
        from streaming.fields import PrimeField
        p = SparsePoly.parse('2:2,1+1:0,0', 2)
        assert p.evaluate(PrimeField(7), [3, 2]) == (2 * 9 * 2 + 1) % 7
