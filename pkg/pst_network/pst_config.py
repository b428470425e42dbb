# pst_config.py - Konfiguracja poleceń (wartości domyślne, zmienne środowiskowe PST_*)

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from dotenv import load_dotenv

from .pst_errors import ConfigError
from .pst_routing import DEFAULT_ROUND_CAP, SolveMode
from .pst_spectral import DEFAULT_TIME_TOLERANCE, DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

MAX_TOLERANCE = 1e-3
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = DEFAULT_TOLERANCE
    time_tolerance: float = DEFAULT_TIME_TOLERANCE
    t_max: float = 20.0
    round_cap: int = DEFAULT_ROUND_CAP
    mode: Optional[SolveMode] = None  # None: EXACT w granicach instancji, inaczej GREEDY
    correct_durations: bool = False
    output: Optional[str] = None
    log_dir: Optional[str] = None
    log_level: str = "WARNING"

    def validate(self) -> "CliConfig":
        if not 0 < self.tolerance <= MAX_TOLERANCE:
            raise ConfigError(f"Tolerancja musi należeć do (0, {MAX_TOLERANCE}]: {self.tolerance}")
        if not self.time_tolerance > 0:
            raise ConfigError(f"Tolerancja czasu musi być dodatnia: {self.time_tolerance}")
        if not self.t_max > 0:
            raise ConfigError(f"t_max musi być dodatnie: {self.t_max}")
        if self.round_cap < 1:
            raise ConfigError(f"round_cap musi być >= 1: {self.round_cap}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigError(f"Nieznany poziom logowania: {self.log_level}")
        return self

    def to_dict(self) -> dict:
        """Parametry liczbowe dołączane do każdego dokumentu wynikowego"""
        doc = asdict(self)
        doc["mode"] = self.mode.value if self.mode else None
        for key in ("output", "log_dir", "log_level"):
            doc.pop(key)
        return doc


def parse_mode(value) -> Optional[SolveMode]:
    if value is None or isinstance(value, SolveMode):
        return value
    text = str(value).strip().upper()
    if text in ("", "AUTO"):
        return None
    try:
        return SolveMode(text)
    except ValueError:
        raise ConfigError(f"Nieznany tryb solvera: {value!r}") from None


_ENVIRONMENT = {
    "tolerance": ("PST_TOLERANCE", float),
    "time_tolerance": ("PST_TIME_TOLERANCE", float),
    "t_max": ("PST_T_MAX", float),
    "round_cap": ("PST_ROUND_CAP", int),
    "mode": ("PST_MODE", parse_mode),
    "log_dir": ("PST_LOG_DIR", str),
    "log_level": ("PST_LOG_LEVEL", str.upper),
}


def load_config(env_file: Optional[str] = None, **overrides) -> CliConfig:
    """
    Wczytaj konfigurację: wartości domyślne < zmienne środowiskowe < jawne flagi

    Args:
        env_file: Plik .env (domyślnie wyszukiwany przez python-dotenv)
        **overrides: Wartości z flag CLI (None = brak flagi)

    Returns:
        Zwalidowany CliConfig
    """
    load_dotenv(env_file)
    values = {}
    for name, (variable, convert) in _ENVIRONMENT.items():
        raw = os.environ.get(variable)
        if raw is None or raw == "":
            continue
        try:
            values[name] = convert(raw)
        except ValueError:
            raise ConfigError(f"Niepoprawna wartość {variable}={raw!r}") from None

    known = {f.name for f in fields(CliConfig)}
    for name, value in overrides.items():
        if name not in known:
            raise ConfigError(f"Nieznany parametr konfiguracji: {name}")
        if value is not None:
            values[name] = parse_mode(value) if name == "mode" else value

    config = replace(CliConfig(), **values).validate()
    logger.debug(f"Konfiguracja: {config}")
    return config
