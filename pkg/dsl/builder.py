"""
Сборка оракула и рецепта по дереву выражения группы.
"""
import logging
from dataclasses import dataclass
from pathlib import Path

from combinators.extension import finite_extension
from combinators.free_product import free_product
from combinators.product import DirectProductRecipe, direct_product
from combinators.regen import change_generators
from combinators.wreath import WreathAbelianRecipe, WreathFiniteRecipe
from config import DEFAULTS, WORDSTREAM_MEMORY_CAP
from dsl.parser import GroupSpecAST, format_group_spec
from groups.base import ExactGroup
from groups.extension import ExtensionGroup, dihedral_data
from groups.finite import FiniteGroup, cyclic_table
from groups.free import AbelianGroup, FreeGroup, abelian_names, cyclic, free_abelian
from groups.grigorchuk import GrigorchukGroup
from groups.matrix import PolynomialMatrixGroup, UnitriangularGroup, heisenberg
from groups.products import DirectProductGroup, FreeProductGroup
from groups.relabel import RegeneratedGroup
from groups.wreath import WreathGroup
from growth.ball import ball_recipe
from streaming.automaton import Recipe
from streaming.errors import ConstructionError, InvalidArgumentError
from streaming.exact import TableRecipe, counter_recipe
from streaming.linear import LinearFingerprintSpec, derive_inverse, free_group_names, free_group_spec
from streaming.nilpotent import PRIME_POLICIES, NilpotentFingerprintSpec, abelian_spec, heisenberg_spec
from streaming.words import Letter
from utils.file_formats import read_extension_file, read_map_file, read_matrix_file, read_table_file

ABELIAN_MACHINES = ('poly', 'counter')
FORMATS = ('json', 'csv')


@dataclass(frozen=True)
class RunConfig:
    n: int
    seed: int = 0
    c: int = DEFAULTS['c']
    c_inner: int = DEFAULTS['c_inner']
    c_f2: int = DEFAULTS['c_f2']
    c_nilpotent: int = DEFAULTS['c_nilpotent']
    d: int = DEFAULTS['d']
    eps_prime: float = DEFAULTS['eps_prime']
    trials: int = DEFAULTS['trials']
    memory_cap: int = WORDSTREAM_MEMORY_CAP
    abelian_machine: str = 'poly'
    prime_policy: str = 'polylog'
    output: str | None = None
    fmt: str = 'json'

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"n должно быть ≥ 1, получено {self.n}")
        if self.trials < 1:
            raise InvalidArgumentError(f"trials должно быть ≥ 1, получено {self.trials}")
        if self.abelian_machine not in ABELIAN_MACHINES:
            raise InvalidArgumentError(f"Неизвестный автомат для Z^m: {self.abelian_machine}")
        if self.prime_policy not in PRIME_POLICIES:
            raise InvalidArgumentError(f"Неизвестная политика простых: {self.prime_policy}")
        if self.fmt not in FORMATS:
            raise InvalidArgumentError(f"Неизвестный формат вывода: {self.fmt}")
        if not 0 < self.eps_prime < 1:
            raise InvalidArgumentError(f"ε′ должно лежать в (0, 1), получено {self.eps_prime}")


@dataclass
class BuiltGroup:
    ast: GroupSpecAST
    oracle: ExactGroup
    recipe: Recipe

    @property
    def spec(self) -> str:
        return format_group_spec(self.ast)


class _Builder:
    def __init__(self, config: RunConfig, base_dir: Path):
        self.config = config
        self.base_dir = base_dir

    def path(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.base_dir / p

    def build(self, ast: GroupSpecAST, c: int) -> BuiltGroup:
        method = getattr(self, '_' + ast.kind.replace('^', '_power'))
        oracle, recipe = method(ast, c)
        logging.debug("Собрано %s: %s", format_group_spec(ast), recipe.describe())
        return BuiltGroup(ast, oracle, recipe)

    # --- атомы ---

    def _abelian(self, names: list[str], c: int) -> tuple[ExactGroup, Recipe]:
        if self.config.abelian_machine == 'counter':
            return free_abelian(names), counter_recipe(names)
        return free_abelian(names), abelian_spec(names, c, 'poly')

    def _Z(self, ast, c):
        return self._abelian(['a'], c)

    def _Z_power(self, ast, c):
        return self._abelian(abelian_names(ast.params[0]), c)

    def _Zmod(self, ast, c):
        m = ast.params[0]
        return cyclic(m, 'a'), counter_recipe(['a'], [m])

    def _free(self, ast, c):
        r = ast.params[0]
        return FreeGroup(free_group_names(r)), free_group_spec(r, c)

    def _heisenberg(self, ast, c):
        return heisenberg(), heisenberg_spec(self.config.c_nilpotent, self.config.prime_policy)

    def _grigorchuk(self, ast, c):
        group = GrigorchukGroup()
        return group, ball_recipe(group, self.config.memory_cap)

    def _dihedral_inf(self, ast, c):
        inner_oracle, inner = self._abelian(['r'], c)
        data = dihedral_data('r', 's')
        return ExtensionGroup(inner_oracle, data), finite_extension(inner, data, inner_oracle)

    # --- файлы ---

    def _matrix(self, ast, c):
        data = read_matrix_file(self.path(ast.params[0]))
        c = ast.params[1] if len(ast.params) > 1 else c
        generators = {}
        for name, mhat in data.generators.items():
            inverse = data.inverses.get(name)
            if inverse is None:
                inverse = derive_inverse(mhat, data.t, data.characteristic)
            if inverse is None:
                raise ConstructionError(
                    f"Обратная к {name} не выражается с тем же знаменателем t; задайте блок inv {name}"
                )
            generators[Letter(name)] = mhat
            generators[Letter(name, True)] = inverse
        recipe = LinearFingerprintSpec(data.r, data.m, generators, data.t, c, data.characteristic)
        return PolynomialMatrixGroup(generators, data.t, data.characteristic), recipe

    def _UT(self, ast, c):
        d, path = ast.params[0], ast.params[1]
        c = ast.params[2] if len(ast.params) > 2 else self.config.c_nilpotent
        data = read_matrix_file(self.path(path))
        if data.r != d:
            raise ConstructionError(f"UT({d}): в файле {path} матрицы размера {data.r}")
        rows = {name: data.integer_rows(name) for name in data.generators}
        return UnitriangularGroup(rows), NilpotentFingerprintSpec(rows, c, self.config.prime_policy)

    def _finite(self, ast, c):
        group = read_table_file(self.path(ast.params[0]))
        return group, TableRecipe(group.table, group.letter_indices())

    # --- конструкторы ---

    def _dp(self, ast, c):
        left, right = (self.build(child, c) for child in ast.children)
        oracle = DirectProductGroup([('1', left.oracle), ('2', right.oracle)])
        return oracle, direct_product(left.recipe, right.recipe)

    def _fp(self, ast, c):
        left, right = (self.build(child, self.config.c_inner) for child in ast.children)
        oracle = FreeProductGroup(left.oracle, right.oracle)
        return oracle, free_product(left.recipe, right.recipe, self.config.c_f2)

    def _wr(self, ast, c):
        moduli = _lamp_moduli(ast.lamps)
        tags = [f"h{i + 1}" for i in range(len(moduli))]
        lamp = DirectProductGroup([(t, AbelianGroup(['a'], [m])) for t, m in zip(tags, moduli)])
        base_ast = ast.children[0]
        if base_ast.kind in ('finite', 'Zmod'):
            base = self._finite_base(base_ast)
            lamp_recipe = DirectProductRecipe([(t, counter_recipe(['a'], [m])) for t, m in zip(tags, moduli)])
            recipe = WreathFiniteRecipe(lamp_recipe, base.table, base.letter_indices(), lamp_tag=None)
            return WreathGroup(lamp, base, lamp_tag=None), recipe
        base = self.build(base_ast, c)
        recipe = WreathAbelianRecipe(base.recipe, moduli, self.config.d, self.config.eps_prime)
        return WreathGroup(lamp, base.oracle, lamp_tag=None), recipe

    def _finite_base(self, ast: GroupSpecAST) -> FiniteGroup:
        if ast.kind == 'Zmod':
            return cyclic_table(ast.params[0], 'a')
        return read_table_file(self.path(ast.params[0]))

    def _ext(self, ast, c):
        data = read_extension_file(self.path(ast.params[0]))
        inner = self.build(ast.children[0], c)
        return ExtensionGroup(inner.oracle, data), finite_extension(inner.recipe, data, inner.oracle)

    def _regen(self, ast, c):
        letter_map = read_map_file(self.path(ast.params[0]))
        inner = self.build(ast.children[0], c)
        return RegeneratedGroup(inner.oracle, letter_map), change_generators(inner.recipe, letter_map)


def _lamp_moduli(lamps: tuple[GroupSpecAST, ...]) -> list[int | None]:
    """Z → None, Z^m → m раз None, Zmod(q) → q"""
    moduli: list[int | None] = []
    for lamp in lamps:
        if lamp.kind == 'Z':
            moduli.append(None)
        elif lamp.kind == 'Z^':
            moduli.extend([None] * lamp.params[0])
        else:
            moduli.append(lamp.params[0])
    return moduli


def build(ast: GroupSpecAST, config: RunConfig, base_dir: str | Path | None = None) -> BuiltGroup:
    """
    Оракул и рецепт для выражения группы.

    Args:
        ast: разобранное выражение
        config: параметры запуска (показатели c, d, ε′, лимит памяти)
        base_dir: каталог, относительно которого читаются файлы данных

    Raises:
        ConstructionError: параметры не позволяют построить конструкцию
        DataFormatError: ошибка в файле данных
    """
    builder = _Builder(config, Path(base_dir) if base_dir is not None else Path.cwd())
    built = builder.build(ast, config.c)
    logging.info("Группа %s: %s", built.spec, built.recipe.describe())
    return built
