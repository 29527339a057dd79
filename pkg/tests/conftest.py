"""
Конфигурация pytest и общие фикстуры.
"""
import pytest
import sys
import os

# Добавляем корневую директорию проекта в путь
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Переменные окружения до импорта модулей: база в памяти, без потоков
os.environ.setdefault('WORDSTREAM_DB_URL', 'sqlite:///:memory:')
os.environ.setdefault('WORDSTREAM_SEED', '0')
os.environ.setdefault('WORDSTREAM_WORKERS', '1')
os.environ.setdefault('WORDSTREAM_SAVE_RUNS', '0')


@pytest.fixture
def seed():
    return 20240601


@pytest.fixture
def free2():
    """F₂ на образующих a, b"""
    from groups.free import FreeGroup
    return FreeGroup(['a', 'b'])


@pytest.fixture
def integers():
    """Z с образующей a"""
    from groups.free import free_abelian
    return free_abelian(['a'])


@pytest.fixture
def z2():
    from groups.free import free_abelian
    return free_abelian(['a', 'b'])


@pytest.fixture
def heis():
    from groups.matrix import heisenberg
    return heisenberg()


@pytest.fixture
def s3():
    from groups.finite import symmetric_group_s3
    return symmetric_group_s3()


@pytest.fixture
def grigorchuk():
    from groups.grigorchuk import GrigorchukGroup
    return GrigorchukGroup()


@pytest.fixture
def dihedral():
    """D∞ = ⟨r⟩ ⋊ ⟨s⟩"""
    from groups.extension import ExtensionGroup, dihedral_data
    from groups.free import free_abelian
    return ExtensionGroup(free_abelian(['r']), dihedral_data('r', 's'))


@pytest.fixture
def s3_wr_z(s3, integers):
    from groups.wreath import WreathGroup
    return WreathGroup(s3, integers)


@pytest.fixture
def f2_spec():
    from streaming.linear import free_group_spec
    return free_group_spec(2, c=4)


@pytest.fixture
def data_dir(tmp_path):
    """Каталог с файлами данных для выражений групп"""
    (tmp_path / 'z3.txt').write_text(
        "gens a\n"
        "e a b\n"
        "e a b\n"
        "a b e\n"
        "b e a\n",
        encoding='utf-8',
    )
    (tmp_path / 'sanov.txt').write_text(
        "# подгруппа Санова\n"
        "dim 2\n"
        "vars 0\n"
        "gen a\n"
        "1 2\n"
        "0 1\n"
        "gen b\n"
        "1 0\n"
        "2 1\n",
        encoding='utf-8',
    )
    (tmp_path / 'heis.txt').write_text(
        "dim 3\n"
        "gen x\n"
        "1 1 0\n"
        "0 1 0\n"
        "0 0 1\n"
        "gen y\n"
        "1 0 0\n"
        "0 1 1\n"
        "0 0 1\n",
        encoding='utf-8',
    )
    (tmp_path / 'swap.map').write_text(
        "u : a b\n"
        "v : b\n",
        encoding='utf-8',
    )
    (tmp_path / 'dihedral.ext').write_text(
        "cosets s\n"
        "conj a s : a-\n"
        "mult s s : 1 :\n"
        "inv s : s :\n",
        encoding='utf-8',
    )
    return tmp_path
