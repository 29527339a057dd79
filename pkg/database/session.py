from pathlib import Path

from sqlalchemy import create_engine, text
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from config import WORDSTREAM_DB_URL
from .models import Base

DATABASE_URL = WORDSTREAM_DB_URL


def _make_engine(url: str):
    if url.startswith('sqlite:///'):
        folder = Path(url[len('sqlite:///'):]).parent
        if str(folder) not in ('', '.', ':memory:'):
            folder.mkdir(parents=True, exist_ok=True)
        # Статический пул: одно соединение SQLite на процесс
        return create_engine(
            url,
            connect_args={"check_same_thread": False},
            poolclass=StaticPool,
            echo=False,
        )
    return create_engine(url, echo=False)


engine = _make_engine(DATABASE_URL)
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def init_db():
    Base.metadata.create_all(bind=engine)
    _run_migrations()


def _run_migrations():
    """Добавляем недостающие колонки в существующую базу данных"""
    if engine.dialect.name != 'sqlite':
        return
    with engine.connect() as conn:
        result = conn.execute(text("PRAGMA table_info(experiment_runs)"))
        columns = {row[1] for row in result.fetchall()}

        # Базы первых версий не хранили длительность прогона
        if columns and 'duration_seconds' not in columns:
            conn.execute(text("ALTER TABLE experiment_runs ADD COLUMN duration_seconds FLOAT"))
            conn.commit()
