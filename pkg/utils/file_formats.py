"""
Чтение файлов данных: слова, матрицы образующих, таблицы конечных групп,
таблицы расширений и отображения образующих.

Во всех текстовых форматах '#' начинает комментарий.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, TextIO

import pandas as pd

from groups.extension import ExtensionData
from groups.finite import FiniteGroup
from streaming.errors import ConstructionError, DataFormatError
from streaming.polynomials import PolyMatrix, SparsePoly
from streaming.words import Letter, Word, letter, parse_word

PathLike = str | Path


def _lines(path: PathLike) -> Iterator[tuple[int, str]]:
    with open(path, encoding='utf-8') as f:
        for number, raw in enumerate(f, start=1):
            text = raw.split('#', 1)[0].strip()
            if text:
                yield number, text


def _fail(path: PathLike, line: int | None, message: str) -> DataFormatError:
    return DataFormatError(message, str(path), line)


# --- слова ---

def parse_words(stream: TextIO, name: str = '<stdin>') -> list[Word]:
    """Одно слово на строку; пустая строка — пустое слово"""
    words = []
    for number, raw in enumerate(stream, start=1):
        text = raw.split('#', 1)[0].strip() if not raw.lstrip().startswith('#') else None
        if text is None:
            continue
        try:
            words.append(parse_word(text))
        except DataFormatError as e:
            raise DataFormatError(str(e), name, number) from None
    return words


def read_words(path: PathLike) -> list[Word]:
    with open(path, encoding='utf-8') as f:
        return parse_words(f, str(path))


# --- матрицы ---

@dataclass
class MatrixFile:
    r: int
    m: int
    t: SparsePoly
    characteristic: int
    generators: dict[str, PolyMatrix] = field(default_factory=dict)
    inverses: dict[str, PolyMatrix] = field(default_factory=dict)

    def integer_rows(self, name: str) -> list[list[int]]:
        """Матрица образующей с константными элементами как список целых"""
        rows = []
        for row in self.generators[name]:
            values = [entry.constant_value() for entry in row]
            if any(v is None for v in values):
                raise ConstructionError(f"Образующая {name} содержит переменные, ожидались целые числа")
            rows.append(values)
        return rows


def read_matrix_file(path: PathLike) -> MatrixFile:
    """
    Формат:
        dim r
        vars m
        denom <многочлен>
        char p            (необязательно, по умолчанию 0)
        gen NAME          (r строк по r многочленов)
        inv NAME          (необязательно: масштабированная обратная)

    Многочлены записываются слагаемыми coef:e1,…,em через '+'.
    """
    header = {'dim': None, 'vars': 0, 'denom': None, 'char': 0}
    blocks: list[tuple[str, str, int]] = []
    rows: dict[tuple[str, str], list[list[str]]] = {}
    current: tuple[str, str] | None = None
    for number, text in _lines(path):
        key, _, value = text.partition(' ')
        value = value.strip()
        if key in ('dim', 'vars', 'char'):
            try:
                header[key] = int(value)
            except ValueError:
                raise _fail(path, number, f"{key}: ожидается целое число, получено {value!r}") from None
        elif key == 'denom':
            header['denom'] = (value, number)
        elif key in ('gen', 'inv'):
            if not value:
                raise _fail(path, number, f"{key}: не указано имя образующей")
            current = (key, value)
            if current in rows:
                raise _fail(path, number, f"Повторный блок {key} {value}")
            rows[current] = []
            blocks.append((key, value, number))
        elif current is None:
            raise _fail(path, number, f"Строка вне блока gen/inv: {text!r}")
        else:
            rows[current].append(text.split())

    r, m = header['dim'], header['vars']
    if r is None or r < 1:
        raise _fail(path, None, "Не задана размерность dim ≥ 1")
    if m < 0:
        raise _fail(path, None, "vars должно быть ≥ 0")
    try:
        t = SparsePoly.parse(header['denom'][0], m) if header['denom'] else SparsePoly.constant(m, 1)
    except DataFormatError as e:
        raise _fail(path, header['denom'][1], str(e)) from None
    data = MatrixFile(r, m, t, header['char'])
    for key, name, number in blocks:
        block = rows[(key, name)]
        if len(block) != r or any(len(row) != r for row in block):
            raise _fail(path, number, f"Блок {key} {name}: ожидается {r} строк по {r} элементов")
        try:
            matrix = tuple(tuple(SparsePoly.parse(x, m) for x in row) for row in block)
        except DataFormatError as e:
            raise _fail(path, number, f"Блок {key} {name}: {e}") from None
        (data.generators if key == 'gen' else data.inverses)[name] = matrix
    if not data.generators:
        raise _fail(path, None, "Нет ни одной образующей")
    orphans = set(data.inverses) - set(data.generators)
    if orphans:
        raise _fail(path, None, f"Обратные без образующих: {sorted(orphans)}")
    logging.info("Матрицы %s: %d образующих %d×%d, переменных %d", path, len(data.generators), r, r, m)
    return data


# --- таблицы конечных групп ---

def _table_from_names(path: PathLike, names: list[str], rows: list[list[str]],
                      generators: list[str] | None) -> FiniteGroup:
    index = {name: i for i, name in enumerate(names)}
    table = []
    for i, row in enumerate(rows):
        if len(row) != len(names):
            raise _fail(path, None, f"Строка {i + 1} таблицы: ожидается {len(names)} элементов")
        try:
            table.append([index[x] for x in row])
        except KeyError as e:
            raise _fail(path, None, f"Неизвестный элемент {e.args[0]!r} в строке {i + 1}") from None
    gen_index = None
    if generators is not None:
        unknown = [g for g in generators if g not in index]
        if unknown:
            raise _fail(path, None, f"Неизвестные образующие: {unknown}")
        gen_index = {g: index[g] for g in generators}
    try:
        return FiniteGroup(names, table, gen_index)
    except ConstructionError as e:
        raise _fail(path, None, str(e)) from None


def read_table_file(path: PathLike) -> FiniteGroup:
    """
    Текстовый формат: необязательная строка "gens a b", затем строка
    имён элементов (единица первой) и строки таблицы умножения.
    Файлы .csv/.xlsx читаются через pandas: заголовок — имена элементов,
    первый столбец — имена строк.
    """
    suffix = Path(path).suffix.lower()
    if suffix in ('.csv', '.xlsx', '.xls'):
        df = pd.read_csv(path, index_col=0, dtype=str) if suffix == '.csv' else pd.read_excel(
            path, index_col=0, dtype=str
        )
        names = [str(c).strip() for c in df.columns]
        rows = [[str(x).strip() for x in row] for row in df.itertuples(index=False)]
        logging.info("Таблица %s: %d элементов (pandas)", path, len(names))
        return _table_from_names(path, names, rows, None)

    generators = None
    lines = list(_lines(path))
    if lines and lines[0][1].startswith('gens '):
        generators = lines[0][1].split()[1:]
        lines = lines[1:]
    if not lines:
        raise _fail(path, None, "Пустая таблица")
    names = lines[0][1].split()
    rows = [text.split() for _, text in lines[1:]]
    if len(rows) != len(names):
        raise _fail(path, None, f"Ожидается {len(names)} строк таблицы, получено {len(rows)}")
    logging.info("Таблица %s: %d элементов", path, len(names))
    return _table_from_names(path, names, rows, generators)


# --- расширения ---

def read_extension_file(path: PathLike) -> ExtensionData:
    """
    Формат:
        cosets s t …
        conj a I : WORD          h_I·a = WORD·h_I
        mult I J : ALPHA : WORD  h_I·h_J = WORD·h_ALPHA
        inv J : BETA : WORD      h_J⁻¹ = WORD·h_BETA

    Имя "1" обозначает класс самой подгруппы.
    """
    cosets: tuple[str, ...] | None = None
    conj: dict[tuple[Letter, int], Word] = {}
    mult: dict[tuple[int, int], tuple[Word, int]] = {}
    inverse: dict[int, tuple[Word, int]] = {}

    def coset(name: str, number: int) -> int:
        if name == '1':
            return 0
        if cosets is None or name not in cosets:
            raise _fail(path, number, f"Неизвестный класс {name!r}")
        return cosets.index(name) + 1

    for number, text in _lines(path):
        key, _, rest = text.partition(' ')
        parts = [p.strip() for p in rest.split(':')]
        try:
            if key == 'cosets':
                cosets = tuple(rest.split())
                if not cosets:
                    raise _fail(path, number, "Пустой список классов")
            elif key == 'conj':
                head, body = parts[0].split(), parts[1] if len(parts) > 1 else ''
                conj[(letter(head[0]), coset(head[1], number))] = parse_word(body)
            elif key == 'mult':
                head = parts[0].split()
                mult[(coset(head[0], number), coset(head[1], number))] = (
                    parse_word(parts[2] if len(parts) > 2 else ''), coset(parts[1], number)
                )
            elif key == 'inv':
                inverse[coset(parts[0], number)] = (parse_word(parts[2] if len(parts) > 2 else ''),
                                                    coset(parts[1], number))
            else:
                raise _fail(path, number, f"Неизвестная директива {key!r}")
        except DataFormatError as e:
            if e.path:
                raise
            raise _fail(path, number, str(e)) from None
        except (IndexError, ValueError):
            raise _fail(path, number, f"Некорректная строка {key}: {text!r}") from None
    if cosets is None:
        raise _fail(path, None, "Не задан список классов cosets")
    k = len(cosets) + 1
    missing = [(i, j) for i in range(1, k) for j in range(1, k) if (i, j) not in mult]
    missing_inv = [j for j in range(1, k) if j not in inverse]
    if missing or missing_inv:
        raise _fail(path, None, f"Неполные таблицы: mult {missing}, inv {missing_inv}")
    return ExtensionData(cosets, conj, mult, inverse)


# --- отображения образующих ---

def read_map_file(path: PathLike) -> dict[Letter, Word]:
    """Строки вида "NEW : WORD"; образы обратных букв выводятся автоматически"""
    mapping: dict[Letter, Word] = {}
    for number, text in _lines(path):
        head, sep, body = text.partition(':')
        if not sep or not head.strip():
            raise _fail(path, number, f"Ожидается \"буква : слово\", получено {text!r}")
        try:
            a = letter(head)
            mapping[a] = parse_word(body)
        except ValueError as e:
            raise _fail(path, number, str(e)) from None
    if not mapping:
        raise _fail(path, None, "Пустое отображение")
    return mapping
