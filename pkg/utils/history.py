"""
Сохранённые прогоны: отчёты оценки ошибки и таблицы роста.
"""
import logging

import pandas as pd

from database.models import ExperimentRun, GrowthRecord
from database.session import SessionLocal
from growth.ball import GrowthTable
from harness.estimate import ErrorReport


def save_run(report: ErrorReport, seed: int, duration: float | None = None) -> int:
    """Сохранить отчёт и вернуть id записи"""
    with SessionLocal() as session:
        run = ExperimentRun(
            spec=report.spec,
            kind=report.kind,
            n=report.n,
            seed=seed,
            trials=report.trials,
            failures=report.failures,
            estimate=report.estimate,
            ci=report.ci,
            bound=report.bound,
            passed=report.passed,
            duration_seconds=duration,
        )
        session.add(run)
        session.commit()
        logging.info("Прогон %s сохранён под номером %d", report.spec, run.id)
        return run.id


def list_runs(spec: str | None = None, limit: int = 50) -> pd.DataFrame:
    """Последние прогоны, новые первыми"""
    with SessionLocal() as session:
        query = session.query(ExperimentRun)
        if spec is not None:
            query = query.filter(ExperimentRun.spec == spec)
        runs = query.order_by(ExperimentRun.id.desc()).limit(limit).all()
        return pd.DataFrame([
            {
                'id': r.id, 'spec': r.spec, 'kind': r.kind, 'n': r.n, 'seed': r.seed,
                'trials': r.trials, 'failures': r.failures, 'estimate': r.estimate,
                'ci': r.ci, 'bound': r.bound, 'passed': r.passed,
                'created_at': r.created_at.isoformat() if r.created_at else None,
            }
            for r in runs
        ], columns=['id', 'spec', 'kind', 'n', 'seed', 'trials', 'failures', 'estimate', 'ci', 'bound',
                    'passed', 'created_at'])


def save_growth(table: GrowthTable, spec: str) -> None:
    """Перезаписать сохранённые значения γ(r) для группы"""
    with SessionLocal() as session:
        session.query(GrowthRecord).filter(GrowthRecord.spec == spec).delete()
        for radius, gamma in enumerate(table.gamma):
            session.add(GrowthRecord(spec=spec, radius=radius, gamma=gamma))
        session.commit()
    logging.info("Таблица роста %s сохранена: радиус %d", spec, table.radius)


def load_growth(spec: str) -> list[int]:
    with SessionLocal() as session:
        records = session.query(GrowthRecord).filter(
            GrowthRecord.spec == spec
        ).order_by(GrowthRecord.radius).all()
        return [r.gamma for r in records]
