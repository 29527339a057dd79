from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class ExperimentRun(Base):
    """Результат одной оценки ошибки"""
    __tablename__ = 'experiment_runs'
    id = Column(Integer, primary_key=True)
    spec = Column(String, index=True)  # выражение группы
    kind = Column(String)  # вид пар
    n = Column(Integer)
    seed = Column(Integer)
    trials = Column(Integer)
    failures = Column(Integer)
    estimate = Column(Float)
    ci = Column(Float)
    bound = Column(Float)
    passed = Column(Boolean, default=False)
    duration_seconds = Column(Float, nullable=True)
    created_at = Column(DateTime, default=datetime.utcnow)


class GrowthRecord(Base):
    """Значение функции роста γ(r)"""
    __tablename__ = 'growth_records'
    id = Column(Integer, primary_key=True)
    spec = Column(String, index=True)
    radius = Column(Integer)
    gamma = Column(Integer)
    created_at = Column(DateTime, default=datetime.utcnow)
