# report_exporter.py - Zapis raportów (JSON, JSON lines, CSV, Excel, tekst)

import json
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)


class ReportExporter:
    """Eksportuje dokumenty i tabele wyników do plików"""

    def __init__(self, export_dir: str = "reports", prefix: str = "pst_report"):
        self.export_dir = export_dir
        self.prefix = prefix
        Path(export_dir).mkdir(exist_ok=True, parents=True)
        self._counter = 0

    def _ensure_writable_export_dir(self):
        """Upewnij się, że katalog eksportu jest zapisywalny."""
        if not os.path.isdir(self.export_dir):
            raise FileNotFoundError(f"Katalog eksportu nie istnieje: {self.export_dir}")

        dir_mode = os.stat(self.export_dir).st_mode
        if dir_mode & 0o222 == 0:
            raise PermissionError(f"Brak uprawnień do zapisu w katalogu: {self.export_dir}")

    def _generate_filename(self, extension: str) -> str:
        """Generuj unikalną nazwę pliku {prefix}_{NNN}.{ext}"""
        while True:
            self._counter += 1
            filename = f"{self.prefix}_{self._counter:03d}.{extension}"
            if not os.path.exists(os.path.join(self.export_dir, filename)):
                return filename

    def _path(self, filename: Optional[str], extension: str) -> str:
        self._ensure_writable_export_dir()
        return os.path.join(self.export_dir, filename or self._generate_filename(extension))

    def export_to_json(self, document: Dict, filename: Optional[str] = None) -> str:
        """
        Eksportuj dokument do JSON

        Args:
            document: Słownik wynikowy polecenia
            filename: Nazwa pliku (opcjonalnie)

        Returns:
            str: Ścieżka do pliku
        """
        filepath = self._path(filename, "json")
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                json.dump(document, f, indent=2, ensure_ascii=False)
                f.write("\n")
        except OSError as e:
            logger.error(f"Błąd eksportu JSON: {e}")
            raise
        logger.info(f"✓ Wyeksportowano do JSON: {filepath}")
        return filepath

    def export_jsonl(self, rows: Iterable[Dict], filename: Optional[str] = None) -> str:
        """Eksportuj wiersze jako JSON lines (jeden obiekt w linii)"""
        filepath = self._path(filename, "jsonl")
        with open(filepath, "w", encoding="utf-8") as f:
            for row in rows:
                f.write(json.dumps(row, ensure_ascii=False) + "\n")
        logger.info(f"✓ Wyeksportowano do JSONL: {filepath}")
        return filepath

    def export_to_csv(self, rows: List[Dict], filename: Optional[str] = None) -> str:
        """
        Eksportuj wiersze do CSV

        Args:
            rows: Lista słowników (wspólne klucze = kolumny)
            filename: Nazwa pliku (opcjonalnie)

        Returns:
            str: Ścieżka do pliku
        """
        filepath = self._path(filename, "csv")
        if not rows:
            logger.warning("Brak danych do eksportu")
        pd.DataFrame(_flatten(rows)).to_csv(filepath, index=False, encoding="utf-8")
        logger.info(f"✓ Wyeksportowano do CSV: {filepath}")
        return filepath

    def export_to_excel(self, rows: List[Dict], filename: Optional[str] = None, sheet_name: str = "Raport") -> str:
        """Eksportuj wiersze do arkusza Excel (openpyxl)"""
        filepath = self._path(filename, "xlsx")
        if not rows:
            logger.warning("Brak danych do eksportu")
        try:
            pd.DataFrame(_flatten(rows)).to_excel(filepath, index=False, sheet_name=sheet_name, engine="openpyxl")
        except ImportError:
            logger.error("openpyxl nie zainstalowany. Zainstaluj: pip install openpyxl")
            raise
        logger.info(f"✓ Wyeksportowano do Excel: {filepath}")
        return filepath

    def write_text(self, text: str, filename: Optional[str] = None) -> str:
        filepath = self._path(filename, "txt")
        with open(filepath, "w", encoding="utf-8") as f:
            f.write(text)
        return filepath

    def export_rows(self, rows: List[Dict], filename: str) -> str:
        """Wybierz format po rozszerzeniu: .csv, .xlsx, .jsonl, inaczej JSON"""
        suffix = Path(filename).suffix.lower()
        if suffix == ".csv":
            return self.export_to_csv(rows, filename)
        if suffix == ".xlsx":
            return self.export_to_excel(rows, filename)
        if suffix == ".jsonl":
            return self.export_jsonl(rows, filename)
        return self.export_to_json({"rows": rows}, filename)


def _flatten(rows: List[Dict]) -> List[Dict]:
    """Listy w komórkach (np. pary wierzchołków) jako tekst 'u-v'"""
    flat = []
    for row in rows:
        flat.append({
            key: "-".join(str(x) for x in value) if isinstance(value, (list, tuple)) else value
            for key, value in row.items()
        })
    return flat
