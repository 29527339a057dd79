import os
from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str = "0") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


WORDSTREAM_SEED = int(os.getenv("WORDSTREAM_SEED", "0"))
WORDSTREAM_MEMORY_CAP = int(os.getenv("WORDSTREAM_MEMORY_CAP", str(10 ** 7)))
WORDSTREAM_DB_URL = os.getenv("WORDSTREAM_DB_URL", "sqlite:///./data/wordstream.db")
WORDSTREAM_WORKERS = int(os.getenv("WORDSTREAM_WORKERS", "4"))
WORDSTREAM_SAVE_RUNS = _flag("WORDSTREAM_SAVE_RUNS")

# Параметры конструкций по умолчанию
DEFAULTS = {
    "c": 4,             # линейный отпечаток, ε = 1/n^c
    "c_inner": 6,       # сомножители свободного произведения
    "c_f2": 1,          # автомат F₂ внутри свободного произведения
    "c_nilpotent": 2,   # унитреугольный отпечаток, ε = 1/log^c n
    "d": 2,             # сплетения, ε_lamp = 1/n^d
    "eps_prime": 0.05,  # лампы Z_{p^k}
    "trials": 2000,
}
