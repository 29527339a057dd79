"""
Unit тесты для языка выражений групп и сборки рецептов.
"""
import pytest
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dsl.builder import RunConfig, build
from dsl.parser import GroupSpecAST, format_group_spec, parse_group_spec
from streaming.automaton import decide_identity
from streaming.errors import ConstructionError, GroupSpecError, InvalidArgumentError
from streaming.exact import CounterRecipe, TableRecipe
from streaming.linear import LinearFingerprintSpec
from streaming.nilpotent import NilpotentFingerprintSpec
from streaming.rng import generator, spawn
from streaming.words import parse_word

Z = GroupSpecAST('Z')


class TestParse:
    """Тесты для разбора выражений"""

    def test_atoms(self):
        assert parse_group_spec('Z') == Z
        assert parse_group_spec('heisenberg') == GroupSpecAST('heisenberg')
        assert parse_group_spec('Z^3') == GroupSpecAST('Z^', (3,))

    def test_constructors(self):
        assert parse_group_spec('free(2)') == GroupSpecAST('free', (2,))
        assert parse_group_spec('dp(Z, free(2))') == GroupSpecAST('dp', children=(Z, GroupSpecAST('free', (2,))))
        assert parse_group_spec('Zmod(6)') == GroupSpecAST('Zmod', (6,))

    def test_wreath(self):
        ast = parse_group_spec('wr(Z, Z)')
        assert ast.lamps == (Z,)
        assert ast.children == (Z,)
        ast = parse_group_spec('wr([Z, Zmod(4)], Z^2)')
        assert ast.lamps == (Z, GroupSpecAST('Zmod', (4,)))
        assert ast.children == (GroupSpecAST('Z^', (2,)),)

    def test_paths(self):
        assert parse_group_spec('matrix(data/sanov.txt)') == GroupSpecAST('matrix', ('data/sanov.txt',))
        assert parse_group_spec('matrix("my file.txt", 3)') == GroupSpecAST('matrix', ('my file.txt', 3))
        ast = parse_group_spec('ext(dihedral.ext, Z)')
        assert ast.params == ('dihedral.ext',)
        assert ast.children == (Z,)

    def test_whitespace(self):
        assert parse_group_spec('  fp( Z ,\n  Z )  ') == GroupSpecAST('fp', children=(Z, Z))

    @pytest.mark.parametrize("text", [
        'Z',
        'Z^2',
        'free(3)',
        'fp(Z, Zmod(2))',
        'wr([Z, Zmod(4)], Z^2)',
        'wr(Zmod(2), finite("z3.txt"))',
        'UT(3, "heis.txt", 2)',
        'regen("swap.map", dp(Z, grigorchuk))',
    ])
    def test_format_round_trip(self, text):
        ast = parse_group_spec(text)
        assert format_group_spec(ast) == text
        assert parse_group_spec(format_group_spec(ast)) == ast


class TestParseErrors:
    """Тесты для ошибок разбора"""

    @pytest.mark.parametrize("text", [
        'wr(free(2), Z)',
        'wr(Zmod(6), Z)',
        'wr([], Z)',
        'foo(1)',
        'bogus',
        'free()',
        'free(0)',
        'Z^0',
        'heisenberg(1)',
        'dp(Z)',
        'matrix(3)',
        'dp(Z',
        'Z Z',
    ])
    def test_rejected(self, text):
        with pytest.raises(GroupSpecError):
            parse_group_spec(text)

    def test_position_of_unknown_constructor(self):
        with pytest.raises(GroupSpecError) as exc:
            parse_group_spec("dp(Z,\n  bogus(1))")
        assert exc.value.line == 2
        assert exc.value.col == 3

    def test_syntax_error_has_position(self):
        with pytest.raises(GroupSpecError) as exc:
            parse_group_spec("dp(Z, ")
        assert exc.value.line == 1
        assert exc.value.col is not None

    def test_message_mentions_lamp(self):
        with pytest.raises(GroupSpecError) as exc:
            parse_group_spec('wr(free(2), Z)')
        assert 'wr' in str(exc.value)


class TestRunConfig:
    """Тесты для параметров запуска"""

    def test_defaults(self):
        config = RunConfig(n=8)
        assert config.abelian_machine == 'poly'
        assert config.fmt == 'json'

    @pytest.mark.parametrize("kwargs", [
        {'n': 0},
        {'n': 8, 'trials': 0},
        {'n': 8, 'abelian_machine': 'fast'},
        {'n': 8, 'prime_policy': 'tiny'},
        {'n': 8, 'fmt': 'xml'},
        {'n': 8, 'eps_prime': 1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            RunConfig(**kwargs)


class TestBuild:
    """Тесты для сборки оракула и рецепта"""

    def _accepts(self, group, text, n=12, seed=7):
        return decide_identity(group.recipe, n, seed, parse_word(text)).accept

    def test_integers(self):
        group = build(parse_group_spec('Z'), RunConfig(n=12))
        assert isinstance(group.recipe, NilpotentFingerprintSpec)
        assert group.spec == 'Z'
        assert self._accepts(group, "a a a-  a-")
        assert not self._accepts(group, "a a")

    def test_counter_machine(self):
        group = build(parse_group_spec('Z^2'), RunConfig(n=12, abelian_machine='counter'))
        assert isinstance(group.recipe, CounterRecipe)
        assert self._accepts(group, "a b a- b-")

    def test_free_group(self):
        group = build(parse_group_spec('free(2)'), RunConfig(n=12))
        assert isinstance(group.recipe, LinearFingerprintSpec)
        assert not self._accepts(group, "a b a- b-")
        assert group.oracle.evaluate(parse_word("a a-")).is_identity()

    def test_finite_file(self, data_dir):
        group = build(parse_group_spec('finite(z3.txt)'), RunConfig(n=12), data_dir)
        assert isinstance(group.recipe, TableRecipe)
        assert group.recipe.order == 3
        assert self._accepts(group, "a a a")
        assert not self._accepts(group, "a a")

    def test_matrix_file_derives_inverses(self, data_dir):
        group = build(parse_group_spec('matrix(sanov.txt)'), RunConfig(n=12), data_dir)
        assert self._accepts(group, "a b b- a-")
        assert not self._accepts(group, "a b a- b-")

    def test_matrix_exponent_override(self, data_dir):
        group = build(parse_group_spec('matrix(sanov.txt, 2)'), RunConfig(n=12), data_dir)
        assert group.recipe.c == 2

    def test_unitriangular_file(self, data_dir):
        group = build(parse_group_spec('UT(3, heis.txt)'), RunConfig(n=16), data_dir)
        assert self._accepts(group, "x y y- x-", n=16)
        assert not self._accepts(group, "x y x- y-", n=16)

    def test_unitriangular_dimension_mismatch(self, data_dir):
        with pytest.raises(ConstructionError):
            build(parse_group_spec('UT(2, heis.txt)'), RunConfig(n=16), data_dir)

    def test_extension_file(self, data_dir):
        group = build(parse_group_spec('ext(dihedral.ext, Z)'), RunConfig(n=12), data_dir)
        assert self._accepts(group, "s a s a")
        assert not self._accepts(group, "a s")

    def test_dihedral_atom(self):
        group = build(parse_group_spec('dihedral_inf'), RunConfig(n=12))
        assert self._accepts(group, "s r s r")
        assert not self._accepts(group, "s r")

    def test_regen_file(self, data_dir):
        group = build(parse_group_spec('regen(swap.map, free(2))'), RunConfig(n=12), data_dir)
        assert self._accepts(group, "u v- v u-")
        assert group.oracle.evaluate(parse_word("u v- v u-")).is_identity()
        assert not self._accepts(group, "u v")

    def test_direct_product(self):
        group = build(parse_group_spec('dp(Z, grigorchuk)'), RunConfig(n=12))
        assert self._accepts(group, "1.a 2.b 1.a- 2.b")
        assert not self._accepts(group, "2.a 2.b")

    def test_free_product(self):
        group = build(parse_group_spec('fp(Z, Z)'), RunConfig(n=6, abelian_machine='counter'))
        assert self._accepts(group, "1.a 2.a 2.a- 1.a-", n=6)
        assert not self._accepts(group, "1.a 2.a 1.a- 2.a-", n=6)

    def test_wreath_infinite_base(self):
        group = build(parse_group_spec('wr(Z, Z)'), RunConfig(n=8, abelian_machine='counter'))
        assert self._accepts(group, "h1.a g.a g.a- h1.a-", n=8)
        assert not self._accepts(group, "h1.a g.a h1.a- g.a-", n=8)

    def test_wreath_finite_base(self):
        group = build(parse_group_spec('wr(Zmod(2), Zmod(3))'), RunConfig(n=8))
        assert self._accepts(group, "h1.a g.a g.a g.a h1.a", n=8)
        assert not self._accepts(group, "h1.a g.a h1.a g.a-", n=8)
        w = parse_word("h1.a g.a g.a g.a h1.a")
        assert group.oracle.evaluate(w).is_identity()

    def test_wreath_over_ball_base(self):
        with pytest.raises(ConstructionError):
            build(parse_group_spec('wr(Z, grigorchuk)'), RunConfig(n=8))

    def test_missing_file(self, data_dir):
        with pytest.raises(OSError):
            build(parse_group_spec('finite(missing.txt)'), RunConfig(n=8), data_dir)


PATHS = ['z3.txt', 'data/sanov.txt', 'my file.txt', '../groups/heis.txt']
LAMP_ORDERS = [2, 3, 4, 5, 8, 9, 27]


def _random_lamp(gen) -> GroupSpecAST:
    choice = int(gen.integers(3))
    if choice == 0:
        return Z
    if choice == 1:
        return GroupSpecAST('Z^', (int(gen.integers(1, 5)),))
    return GroupSpecAST('Zmod', (LAMP_ORDERS[int(gen.integers(len(LAMP_ORDERS)))],))


def _random_ast(gen, depth: int) -> GroupSpecAST:
    kinds = ['atom', 'Z^', 'Zmod', 'free', 'matrix', 'UT', 'finite']
    if depth > 0:
        kinds += ['dp', 'fp', 'wr', 'ext', 'regen'] * 2
    kind = kinds[int(gen.integers(len(kinds)))]
    path = PATHS[int(gen.integers(len(PATHS)))]
    if kind == 'atom':
        return GroupSpecAST(('Z', 'heisenberg', 'grigorchuk', 'dihedral_inf')[int(gen.integers(4))])
    if kind in ('Z^', 'Zmod', 'free'):
        return GroupSpecAST(kind, (int(gen.integers(1, 10)),))
    if kind == 'matrix':
        return GroupSpecAST(kind, (path,) + ((int(gen.integers(1, 5)),) if gen.integers(2) else ()))
    if kind == 'UT':
        extra = (int(gen.integers(1, 5)),) if gen.integers(2) else ()
        return GroupSpecAST(kind, (int(gen.integers(2, 6)), path) + extra)
    if kind == 'finite':
        return GroupSpecAST(kind, (path,))
    if kind in ('dp', 'fp'):
        return GroupSpecAST(kind, children=(_random_ast(gen, depth - 1), _random_ast(gen, depth - 1)))
    if kind == 'wr':
        lamps = tuple(_random_lamp(gen) for _ in range(int(gen.integers(1, 4))))
        return GroupSpecAST(kind, children=(_random_ast(gen, depth - 1),), lamps=lamps)
    return GroupSpecAST(kind, (path,), (_random_ast(gen, depth - 1),))


class TestGeneratedRoundTrip:
    """Форматирование и повторный разбор случайных деревьев"""

    @pytest.mark.parametrize("count", [300, pytest.param(10_000, marks=pytest.mark.slow)])
    def test_round_trip(self, seed, count):
        for i in range(count):
            ast = _random_ast(generator(spawn(seed, i)), 3)
            assert parse_group_spec(format_group_spec(ast)) == ast

    def test_power_with_spaces(self):
        assert parse_group_spec('Z ^ 3') == GroupSpecAST('Z^', (3,))
        assert parse_group_spec('dp(Z ^2, Z^ 1)') == GroupSpecAST(
            'dp', children=(GroupSpecAST('Z^', (2,)), GroupSpecAST('Z^', (1,)))
        )
        with pytest.raises(GroupSpecError):
            parse_group_spec('Z ^ 0')


MALFORMED = [
    ('wr(free(2), Z)', 1),
    ('wr(Zmod(6), Z)', 1),
    ('wr([], Z)', 1),
    ('wr([Z, heisenberg], Z)', 1),
    ('wr(Z)', 1),
    ('foo(1)', 1),
    ('bogus', 1),
    ('free', 1),
    ('free()', 1),
    ('free(0)', 1),
    ('Z^0', 1),
    ('heisenberg(1)', 1),
    ('dp(Z)', 1),
    ('fp(Z, Z, Z)', 1),
    ('matrix(3)', 1),
    ('UT(1, heis.txt)', 1),
    ('Zmod(x.txt)', 1),
    ('ext(Z, Z)', 1),
    ('fp(Z,\n  wr(Zmod(6), Z))', 2),
    ('dp(Z,\n\n  free(0))', 3),
]


@pytest.mark.parametrize("text, line", MALFORMED)
def test_malformed_input_is_located(text, line):
    with pytest.raises(GroupSpecError) as exc:
        parse_group_spec(text)
    assert exc.value.line == line
    assert exc.value.col >= 1
