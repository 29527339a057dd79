"""
Язык выражений групп.

    expr := NAME | NAME '(' args ')' | 'Z^' INT
    arg  := INT | "путь" | путь/с/точкой | '[' expr, … ']' | expr

Грамматика разбирает вызовы в сырое дерево, затем каждый конструктор
проверяется по своей сигнатуре; ошибки несут строку и столбец.
"""
from dataclasses import dataclass
from typing import Any

import pyparsing as pp
import sympy

from streaming.errors import GroupSpecError

ATOMS = ('Z', 'heisenberg', 'grigorchuk', 'dihedral_inf')
ABELIAN_LAMPS = ('Z', 'Z^', 'Zmod')


@dataclass(frozen=True)
class GroupSpecAST:
    kind: str
    params: tuple[int | str, ...] = ()
    children: tuple["GroupSpecAST", ...] = ()
    lamps: tuple["GroupSpecAST", ...] = ()


# --- сырое дерево ---

@dataclass
class _Call:
    name: str
    args: list[Any] | None
    loc: int


@dataclass
class _List:
    items: list[Any]
    loc: int


@dataclass
class _Path:
    text: str
    loc: int


@dataclass
class _Int:
    value: int
    loc: int


def _make_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    name = pp.Word(pp.alphas + '_', pp.alphanums + '_')
    integer = pp.Regex(r"\d+(?![\w./])").set_parse_action(lambda s, loc, toks: _Int(int(toks[0]), loc))
    quoted = pp.QuotedString('"', esc_char='\\').set_parse_action(lambda s, loc, toks: _Path(toks[0], loc))
    bare_path = pp.Regex(r"[\w\-~]*[./][\w./\-~]*").set_parse_action(lambda s, loc, toks: _Path(toks[0], loc))
    group_list = (pp.Suppress('[') + pp.Opt(pp.delimited_list(expr)) + pp.Suppress(']')).set_parse_action(
        lambda s, loc, toks: _List(list(toks), loc)
    )
    arg = integer | quoted | bare_path | group_list | expr

    power = pp.Regex(r"Z\s*\^\s*(?P<m>\d+)").set_parse_action(
        lambda s, loc, toks: _Call('Z^', [_Int(int(toks['m']), loc)], loc)
    )
    arguments = pp.Suppress('(') + pp.Group(pp.Opt(pp.delimited_list(arg))) + pp.Suppress(')')

    def call(s, loc, toks):
        args = list(toks[1]) if len(toks) > 1 else None
        return _Call(toks[0], args, loc)

    expr <<= power | (name + pp.Opt(arguments)).set_parse_action(call)
    return expr


_GRAMMAR = _make_grammar()


# --- проверка конструкторов ---

def _where(text: str, loc: int) -> tuple[int, int]:
    return pp.lineno(loc, text), pp.col(loc, text)


def _error(text: str, loc: int, message: str) -> GroupSpecError:
    line, col = _where(text, loc)
    return GroupSpecError(message, line, col)


def _int_arg(text: str, node: _Call, arg: Any, what: str, minimum: int) -> int:
    if not isinstance(arg, _Int):
        raise _error(text, node.loc, f"{node.name}: {what} должно быть целым числом")
    if arg.value < minimum:
        raise _error(text, arg.loc, f"{node.name}: {what} должно быть ≥ {minimum}, получено {arg.value}")
    return arg.value


def _path_arg(text: str, node: _Call, arg: Any) -> str:
    if not isinstance(arg, _Path):
        raise _error(text, node.loc, f"{node.name}: ожидается путь к файлу")
    return arg.text


def _group_arg(text: str, node: _Call, arg: Any) -> GroupSpecAST:
    if not isinstance(arg, _Call):
        raise _error(text, node.loc, f"{node.name}: ожидается выражение группы")
    return _convert(text, arg)


def _arity(text: str, node: _Call, low: int, high: int | None = None) -> list[Any]:
    args = node.args or []
    high = low if high is None else high
    if not low <= len(args) <= high:
        expected = str(low) if low == high else f"{low}–{high}"
        raise _error(text, node.loc, f"{node.name}: ожидается аргументов {expected}, получено {len(args)}")
    return args


def _is_prime_power(m: int) -> bool:
    return m >= 2 and len(sympy.factorint(m)) == 1


def _lamp(text: str, node: Any) -> GroupSpecAST:
    if not isinstance(node, _Call):
        raise _error(text, node.loc, "wr: группа ламп должна быть выражением группы")
    lamp = _convert(text, node)
    if lamp.kind not in ABELIAN_LAMPS:
        raise _error(text, node.loc, f"wr: неабелева или неподдерживаемая группа ламп {node.name}; допустимы Z, Z^m, Zmod(p^k)")
    if lamp.kind == 'Zmod' and not _is_prime_power(lamp.params[0]):
        raise _error(text, node.loc, f"wr: порядок лампы Zmod({lamp.params[0]}) не является степенью простого")
    return lamp


def _convert(text: str, node: _Call) -> GroupSpecAST:
    kind = node.name
    if kind == 'Z^':
        return GroupSpecAST('Z^', (_int_arg(text, node, node.args[0], 'показатель', 1),))
    if kind in ATOMS:
        _arity(text, node, 0)
        return GroupSpecAST(kind)
    if node.args is None:
        raise _error(text, node.loc, f"Неизвестная группа {kind!r}" if kind not in _CONSTRUCTORS
                     else f"{kind}: нужны аргументы в скобках")
    if kind not in _CONSTRUCTORS:
        raise _error(text, node.loc, f"Неизвестный конструктор {kind!r}")
    return _CONSTRUCTORS[kind](text, node)


def _zmod(text, node):
    m, = _arity(text, node, 1)
    return GroupSpecAST('Zmod', (_int_arg(text, node, m, 'модуль', 1),))


def _free(text, node):
    r, = _arity(text, node, 1)
    return GroupSpecAST('free', (_int_arg(text, node, r, 'ранг', 1),))


def _matrix(text, node):
    args = _arity(text, node, 1, 2)
    params: tuple = (_path_arg(text, node, args[0]),)
    if len(args) == 2:
        params += (_int_arg(text, node, args[1], 'c', 1),)
    return GroupSpecAST('matrix', params)


def _ut(text, node):
    args = _arity(text, node, 2, 3)
    params: tuple = (_int_arg(text, node, args[0], 'размерность', 2), _path_arg(text, node, args[1]))
    if len(args) == 3:
        params += (_int_arg(text, node, args[2], 'c', 1),)
    return GroupSpecAST('UT', params)


def _finite(text, node):
    path, = _arity(text, node, 1)
    return GroupSpecAST('finite', (_path_arg(text, node, path),))


def _binary(text, node):
    left, right = _arity(text, node, 2)
    return GroupSpecAST(node.name, children=(_group_arg(text, node, left), _group_arg(text, node, right)))


def _wr(text, node):
    lamps, base = _arity(text, node, 2)
    if isinstance(lamps, _List):
        if not lamps.items:
            raise _error(text, lamps.loc, "wr: пустой список групп ламп")
        parsed = tuple(_lamp(text, item) for item in lamps.items)
    else:
        parsed = (_lamp(text, lamps),)
    return GroupSpecAST('wr', children=(_group_arg(text, node, base),), lamps=parsed)


def _with_file(text, node):
    path, group = _arity(text, node, 2)
    return GroupSpecAST(node.name, (_path_arg(text, node, path),), (_group_arg(text, node, group),))


_CONSTRUCTORS = {
    'Zmod': _zmod,
    'free': _free,
    'matrix': _matrix,
    'UT': _ut,
    'finite': _finite,
    'dp': _binary,
    'fp': _binary,
    'wr': _wr,
    'ext': _with_file,
    'regen': _with_file,
}


def parse_group_spec(text: str) -> GroupSpecAST:
    """
    Raises:
        GroupSpecError: синтаксическая ошибка, неизвестный конструктор,
            неверная арность или параметр
    """
    try:
        raw = _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise GroupSpecError(f"Синтаксическая ошибка: {e.msg}", e.lineno, e.col) from None
    return _convert(text, raw)


def _quote(path: str) -> str:
    return '"' + path.replace('\\', '\\\\').replace('"', '\\"') + '"'


def format_group_spec(ast: GroupSpecAST) -> str:
    kind = ast.kind
    if kind in ATOMS:
        return kind
    if kind == 'Z^':
        return f"Z^{ast.params[0]}"
    if kind == 'wr':
        lamps = [format_group_spec(lamp) for lamp in ast.lamps]
        head = lamps[0] if len(lamps) == 1 else f"[{', '.join(lamps)}]"
        return f"wr({head}, {format_group_spec(ast.children[0])})"
    params = [_quote(p) if isinstance(p, str) else str(p) for p in ast.params]
    children = [format_group_spec(child) for child in ast.children]
    return f"{kind}({', '.join(params + children)})"
