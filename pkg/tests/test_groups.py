"""
Unit тесты для точных оракулов групп.
"""
import itertools

import numpy as np
import pytest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from groups.base import equal_words, is_identity, mul
from groups.extension import ExtensionData, ExtensionGroup
from groups.finite import FiniteGroup, cyclic_table, from_permutations
from groups.free import AbelianGroup, FreeGroup, cyclic, free_reduce
from groups.grigorchuk import (
    GrigorchukGroup,
    grigorchuk_is_trivial,
    reduce_word,
    tree_action,
    tree_depth_for,
    tree_is_trivial,
)
from groups.matrix import MatrixGroup
from groups.products import DirectProductGroup, FreeProductGroup
from groups.relabel import RegeneratedGroup, complete_letter_map
from groups.wreath import WreathGroup
from harness.pairs import random_word
from streaming.errors import AlphabetError, ConstructionError, GroupMismatchError
from streaming.rng import generator, spawn
from streaming.words import IDENTITY, Letter, parse_word, power, word


class TestFreeAndAbelian:
    """Тесты для свободных и абелевых групп"""

    def test_free_reduction(self):
        assert free_reduce(word('a', 'b', 'b-', 'a-', 'a')) == word('a')

    def test_free_group_identity(self, free2):
        assert is_identity(free2, word('a', 'b', 'b-', 'a-'))
        assert not is_identity(free2, word('a', 'b', 'a-', 'b-'))

    def test_identity_letter_is_ignored(self, free2):
        assert equal_words(free2, word('a', '1', 'b'), word('a', 'b'))

    def test_word_of_is_reduced(self, free2):
        x = free2.evaluate(word('a', 'b', 'b-', 'b'))
        assert free2.word_of(x) == word('a', 'b')

    def test_abelian_commutes(self, z2):
        assert is_identity(z2, word('a', 'b', 'a-', 'b-'))

    def test_cyclic_group(self):
        Z5 = cyclic(5)
        assert is_identity(Z5, power(word('a'), 5))
        assert not is_identity(Z5, power(word('a'), 4))

    def test_unknown_letter(self, free2):
        with pytest.raises(AlphabetError):
            free2.evaluate(word('c'))

    def test_elements_of_different_groups(self, free2):
        other = FreeGroup(['a', 'b'])
        with pytest.raises(GroupMismatchError):
            mul(free2.identity(), other.identity())

    def test_bad_moduli(self):
        with pytest.raises(ConstructionError):
            AbelianGroup(['a', 'b'], [None])


class TestMatrixGroups:
    """Тесты для матричных и унитреугольных групп"""

    def test_heisenberg_relators(self, heis):
        for r in heis.relators():
            assert is_identity(heis, r)

    def test_heisenberg_commutator_is_central(self, heis):
        assert not is_identity(heis, word('x', 'y', 'x-', 'y-'))
        assert equal_words(heis, word('x', 'y', 'x-', 'y-'), word('z'))

    def test_sl2_rational(self):
        G = MatrixGroup({'S': [[0, -1], [1, 0]], 'T': [[1, 1], [0, 1]]})
        assert is_identity(G, power(word('S'), 4))
        assert not is_identity(G, power(word('S'), 2))
        # (ST)³ = S² в SL₂(Z)
        assert equal_words(G, power(word('S', 'T'), 3), power(word('S'), 2))

    def test_singular_generator(self):
        with pytest.raises(ConstructionError):
            MatrixGroup({'a': [[1, 1], [1, 1]]})


class TestFiniteGroups:
    """Тесты для конечных групп по таблице"""

    def test_s3_order_and_relators(self, s3):
        assert len(s3.table) == 6
        for r in s3.relators():
            assert is_identity(s3, r)

    def test_s3_is_not_abelian(self, s3):
        assert not is_identity(s3, word('r', 's', 'r-', 's-'))

    def test_cyclic_table(self):
        Z4 = cyclic_table(4)
        assert is_identity(Z4, power(word('a'), 4))
        assert not is_identity(Z4, power(word('a'), 2))

    def test_permutations(self):
        G = from_permutations({'t': [1, 0]})
        assert len(G.table) == 2
        assert is_identity(G, word('t', 't'))

    def test_identity_must_be_first(self):
        with pytest.raises(ConstructionError):
            FiniteGroup(['a', 'e'], [[1, 0], [0, 1]])

    def test_non_associative_table(self):
        # латинский квадрат с единицей 0, но без ассоциативности
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ConstructionError):
            FiniteGroup(['e', 'p', 'q', 'r', 's'], table)


class TestExtensions:
    """Тесты для расширений конечного индекса"""

    def test_dihedral_words(self, dihedral):
        assert is_identity(dihedral, word('s', 'r', 's', 'r'))
        assert is_identity(dihedral, word('s', 's'))
        assert not is_identity(dihedral, word('r', 's', 'r', 's', 'r'))
        assert not is_identity(dihedral, word('s', 'r'))

    def test_inconsistent_tables(self, integers):
        data = ExtensionData(
            coset_names=('s',),
            conj={(Letter('a'), 1): word('a', 'a')},
            mult={(1, 1): ((), 0)},
            inverse={1: ((), 1)},
        )
        with pytest.raises(ConstructionError):
            ExtensionGroup(integers, data)


class TestProducts:
    """Тесты для прямого и свободного произведений"""

    def test_direct_product_commutes(self, integers):
        G = DirectProductGroup([('1', integers), ('2', integers)])
        assert is_identity(G, parse_word("1.a 2.a 1.a- 2.a-"))

    def test_free_product_does_not_commute(self, integers):
        G = FreeProductGroup(integers, integers)
        assert not is_identity(G, parse_word("1.a 2.a 1.a- 2.a-"))
        assert is_identity(G, parse_word("1.a 2.a 2.a- 1.a-"))

    def test_free_product_of_finite(self):
        G = FreeProductGroup(cyclic(2), cyclic(3))
        assert is_identity(G, parse_word("1.a 1.a"))
        assert not is_identity(G, parse_word("1.a 2.a 1.a 2.a"))

    def test_tagged_identity(self, integers):
        G = FreeProductGroup(integers, integers)
        assert is_identity(G, parse_word("1.1 2.1 1"))


class TestWreath:
    """Тесты для сплетений"""

    def test_lamplighter_equal_words(self, integers):
        G = WreathGroup(integers, integers)
        u = parse_word("h.a g.a h.a g.a-")
        v = parse_word("g.a h.a g.a- h.a")
        assert equal_words(G, u, v)

    def test_lamps_at_different_sites(self, integers):
        G = WreathGroup(integers, integers)
        assert not is_identity(G, parse_word("h.a g.a h.a- g.a-"))

    def test_z_wr_z_commutator_of_lamps(self, integers):
        G = WreathGroup(integers, integers)
        # лампы в Z ≀ Z коммутируют
        w = parse_word("h.a g.a h.a g.a- h.a- g.a h.a- g.a-")
        assert is_identity(G, w)

    def test_nonabelian_lamps(self, s3_wr_z):
        w = parse_word("h.r h.s h.r- h.s-")
        assert not is_identity(s3_wr_z, w)
        assert is_identity(s3_wr_z, parse_word("h.r g.a h.s g.a- h.r- g.a h.s- g.a-"))


class TestRegenerated:
    """Тесты для смены образующих"""

    def test_inverse_images_are_completed(self):
        full = complete_letter_map({Letter('u'): word('a', 'b')})
        assert full[Letter('u', True)] == word('b-', 'a-')

    def test_inconsistent_map(self):
        with pytest.raises(ConstructionError):
            complete_letter_map({Letter('u'): word('a'), Letter('u', True): word('a')})

    def test_regenerated_free_group(self, free2):
        G = RegeneratedGroup(free2, {Letter('u'): word('a', 'b'), Letter('v'): word('b')})
        assert equal_words(G, word('u', 'v-'), word('v', 'v-', 'u', 'v-'))
        assert not is_identity(G, word('u', 'v'))
        assert is_identity(G, word('u', 'v-', 'v', 'u-'))

    def test_image_outside_alphabet(self, free2):
        with pytest.raises(ConstructionError):
            RegeneratedGroup(free2, {Letter('u'): word('c')})


class TestGrigorchuk:
    """Тесты для группы Григорчука"""

    def test_generators_are_involutions(self, grigorchuk):
        for a in 'abcd':
            assert is_identity(grigorchuk, word(a, a))

    def test_bcd_relation(self, grigorchuk):
        assert is_identity(grigorchuk, word('b', 'c', 'd'))

    def test_order_of_ab(self, grigorchuk):
        ab = word('a', 'b')
        assert is_identity(grigorchuk, power(ab, 16))
        assert not is_identity(grigorchuk, power(ab, 8))

    def test_reduce_word(self):
        assert reduce_word('aa') == ''
        assert reduce_word('bc') == 'd'

    def test_trivial_by_text(self):
        assert grigorchuk_is_trivial('adadadad')
        assert not grigorchuk_is_trivial('ad')

    def test_tvw_commutation(self, grigorchuk):
        t = parse_word("a b a b")
        v = parse_word("b a d a b a d a")
        w = parse_word("a b a d a b a d")
        inv = lambda x: tuple(a.inverse() for a in reversed(x))
        assert is_identity(grigorchuk, v + w + inv(v) + inv(w))
        assert not is_identity(grigorchuk, t + v + inv(t) + inv(v))

    def test_identity_letter(self, grigorchuk):
        assert is_identity(grigorchuk, (IDENTITY,))


class TestGrigorchukTree:
    """Сверка оракула сечений с действием на конечном уровне дерева"""

    @staticmethod
    def _compare_up_to(grigorchuk, max_len):
        depth = tree_depth_for(max_len)
        for length in range(max_len + 1):
            for letters in itertools.product('abcd', repeat=length):
                text = ''.join(letters)
                by_sections = is_identity(grigorchuk, tuple(Letter(ch) for ch in letters))
                assert by_sections == grigorchuk_is_trivial(text)
                assert by_sections == tree_is_trivial(text, depth), text

    def test_short_words(self, grigorchuk):
        self._compare_up_to(grigorchuk, 5)

    @pytest.mark.slow
    def test_all_words_up_to_eight(self, grigorchuk):
        self._compare_up_to(grigorchuk, 8)

    def test_order_of_ab_on_tree(self, grigorchuk):
        assert tree_is_trivial('ab' * 16)
        assert not tree_is_trivial('ab' * 8)
        assert is_identity(grigorchuk, power(word('a', 'b'), 16))

    def test_first_level(self):
        assert np.array_equal(tree_action('a', 1), [1, 0])
        assert np.array_equal(tree_action('b', 1), [0, 1])
        assert np.array_equal(tree_action('a', 2), [2, 3, 0, 1])

    def test_bcd_on_tree(self):
        assert tree_is_trivial('bcd')
        assert not tree_is_trivial('ad')


@pytest.mark.parametrize("name", ['free2', 'z2', 'heis', 's3', 'grigorchuk', 'dihedral', 's3_wr_z'])
def test_group_axioms(request, name, seed):
    G = request.getfixturevalue(name)
    letters = sorted(G.alphabet)
    e = G.identity()
    for i in range(20):
        gen = generator(spawn(seed, i))
        x, y, z = (G.evaluate(random_word(letters, 6, gen)) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * e == x
        assert e * x == x
        assert (x * x.inverse()).is_identity()
        assert (x.inverse() * x).is_identity()
