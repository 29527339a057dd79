"""
Иерархия исключений движка потоковых автоматов.
"""


class WordstreamError(Exception):
    """Базовое исключение проекта"""


class ConstructionError(WordstreamError, ValueError):
    """Некорректные параметры рецепта или входных данных конструкции"""


class EmptyPrimeRangeError(ConstructionError):
    """В заданном интервале нет ни одного простого числа"""


class InvalidArgumentError(WordstreamError, ValueError):
    """Нарушено предусловие операции (например, слишком мало испытаний)"""


class AlphabetError(WordstreamError, KeyError):
    """Буква не принадлежит алфавиту машины или группы"""

    def __str__(self):
        # KeyError по умолчанию оборачивает сообщение в кавычки
        return str(self.args[0]) if self.args else ''


class RoutingError(AlphabetError):
    """Буква без тега или с тегом, которому не соответствует ни один сомножитель"""


class StreamOverflowError(WordstreamError):
    """Прочитано больше n букв: гарантии конструкции больше не действуют"""


class GroupMismatchError(WordstreamError, TypeError):
    """Операция над элементами разных групп"""


class RecursionDepthError(WordstreamError, RecursionError):
    """Рекурсия по сечениям превысила допустимую глубину"""


class ResourceLimitError(WordstreamError, MemoryError):
    """Превышен лимит памяти (например, число элементов шара)"""


class GenerationTimeout(WordstreamError):
    """Не удалось сгенерировать пару слов нужного вида за отведённое число попыток"""


class RayError(WordstreamError, ValueError):
    """Луч в базовой группе проходит через одну и ту же вершину дважды"""


class GroupSpecError(WordstreamError, ValueError):
    """Ошибка разбора выражения группы, с позицией в тексте"""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        location = f" (строка {line}, столбец {col})" if line is not None else ""
        super().__init__(f"{message}{location}")


class DataFormatError(WordstreamError, ValueError):
    """Ошибка в файле данных (слова, матрицы, таблицы, расширения)"""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{where}{message}")
