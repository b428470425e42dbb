# pst_violations.py - Zbieranie naruszeń warunków (weryfikator tabel, procedury budowy)

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

logger = logging.getLogger(__name__)

SEVERITIES = ("info", "warning", "error")


@dataclass(frozen=True)
class Violation:
    """Pojedyncze naruszenie warunku"""
    condition: str
    message: str
    severity: str = "error"  # 'info', 'warning', 'error'
    net: Optional[int] = None
    round_index: Optional[int] = None
    magnitude: Optional[float] = None

    def to_dict(self) -> Dict:
        return {key: value for key, value in asdict(self).items() if value is not None}


class ViolationsCollector:
    """Manager naruszeń: historia, callback i log ostrzeżeń"""

    def __init__(self, notification_callback: Callable = None, max_history: int = 10000):
        """
        Inicjalizacja kolektora

        Args:
            notification_callback: Funkcja wywoływana dla każdego naruszenia
            max_history: Maksymalna liczba przechowywanych naruszeń
        """
        self.notification_callback = notification_callback
        self.history: List[Violation] = []
        self.max_history = max_history

    def report(self, condition: str, message: str, severity: str = "error", **context) -> Violation:
        """Zarejestruj naruszenie"""
        if severity not in SEVERITIES:
            raise ValueError(f"Nieznany poziom: {severity}")
        violation = Violation(condition, message, severity, **context)
        self.trigger(violation)
        return violation

    def trigger(self, violation: Violation):
        self.history.append(violation)
        if len(self.history) > self.max_history:
            self.history.pop(0)

        if self.notification_callback:
            self.notification_callback(violation)

        if violation.severity == "info":
            logger.info(violation.message)
        else:
            logger.warning(f"🚨 {violation.condition}: {violation.message}")

    @property
    def errors(self) -> List[Violation]:
        return [v for v in self.history if v.severity == "error"]

    @property
    def warnings(self) -> List[Violation]:
        return [v for v in self.history if v.severity == "warning"]

    @property
    def has_errors(self) -> bool:
        return any(v.severity == "error" for v in self.history)

    def to_list(self) -> List[Dict]:
        return [v.to_dict() for v in self.history]

    def clear(self):
        self.history.clear()
