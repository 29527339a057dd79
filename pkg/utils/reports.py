"""
Вывод отчётов: JSON (по умолчанию), CSV и книга Excel.
"""
import json
import logging
import sys
from pathlib import Path
from typing import TextIO

import pandas as pd
from openpyxl.utils import get_column_letter

# имена полей во внешнем формате отчёта
COLUMN_NAMES = {'passed': 'pass'}


def _external(frame: pd.DataFrame) -> pd.DataFrame:
    return frame.rename(columns=COLUMN_NAMES)


def to_json(frame: pd.DataFrame) -> str:
    """Одна строка — объект, несколько — список объектов"""
    records = json.loads(_external(frame).to_json(orient='records', force_ascii=False))
    payload = records[0] if len(records) == 1 else records
    return json.dumps(payload, ensure_ascii=False, indent=2)


def write_xlsx(frame: pd.DataFrame, path: str | Path, sheet: str = 'report') -> None:
    """Excel через openpyxl; ширина столбцов подбирается по содержимому"""
    frame = _external(frame)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with pd.ExcelWriter(path, engine='openpyxl') as writer:
        frame.to_excel(writer, sheet_name=sheet, index=False)
        worksheet = writer.sheets[sheet]
        for i, column in enumerate(frame.columns, start=1):
            width = max([len(str(column))] + [len(str(v)) for v in frame[column]])
            worksheet.column_dimensions[get_column_letter(i)].width = min(width + 2, 60)
    logging.info("Отчёт Excel записан: %s", path)


def write_report(frame: pd.DataFrame, fmt: str = 'json', output: str | Path | None = None,
                 xlsx: str | Path | None = None, stream: TextIO | None = None) -> None:
    """
    Args:
        frame: таблица отчёта
        fmt: 'json' или 'csv'
        output: файл для JSON/CSV; по умолчанию stdout
        xlsx: дополнительно записать книгу Excel
        stream: поток вместо stdout
    """
    stream = stream or sys.stdout
    if fmt == 'csv':
        text = _external(frame).to_csv(index=False)
    else:
        text = to_json(frame) + '\n'
    if output is None:
        stream.write(text)
    else:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text, encoding='utf-8')
        logging.info("Отчёт записан: %s", output)
    if xlsx is not None:
        write_xlsx(frame, xlsx)
