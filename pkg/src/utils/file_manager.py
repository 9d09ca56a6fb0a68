import csv
import io
import json
import os
import sys
from typing import Any, Dict, Iterable, Optional, Sequence

from src.core.errors import ReportWriteError

STDOUT = "-"


class FileManager:
    """
    Centralized handler for all report output of the congruence engine.

    This class provides static utility methods to:
    1.  **Render Records**: JSON Lines (one compact object per line) and CSV with a fixed header.
    2.  **Route Output**: the standard output stream when no destination (or "-") is given, a file otherwise.
    3.  **Atomic Writes**: files are written to a `.tmp` sibling, fsynced, then swapped in with `os.replace`,
        so a reader never sees a half-written report.
    4.  **Surface Failures**: every I/O error is re-raised as `ReportWriteError` naming the destination.
    """

    @staticmethod
    def is_stdout(destination: Optional[str]) -> bool:
        return destination is None or destination == STDOUT

    @staticmethod
    def render_jsonl(records: Iterable[Dict[str, Any]]) -> str:
        """
        Serialize records as JSON Lines.

        Keys keep their insertion order and separators are compact, so equal
        records always render to identical bytes.
        """
        return "".join(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n" for record in records)

    @staticmethod
    def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    @staticmethod
    def write_text(destination: Optional[str], text: str):
        """
        Write `text` to stdout or atomically to a file.

        Args:
            destination (str | None): File path, or None / "-" for stdout.
            text (str): Full content to write.

        Raises:
            ReportWriteError: the write failed; the original error is chained.
        """
        if FileManager.is_stdout(destination):
            try:
                sys.stdout.write(text)
                sys.stdout.flush()
            except OSError as e:
                raise ReportWriteError("<stdout>", e) from e
            return
        FileManager.atomic_write_text(destination, text)

    @staticmethod
    def atomic_write_text(path: str, text: str):
        """
        Write text atomically to prevent partial reads.

        Writes to a `.tmp` file first, then uses `os.replace` to swap it in.

        Args:
            path (str): Target file path.
            text (str): Content to write.

        Raises:
            ReportWriteError: the directory could not be created or the write failed.
        """
        temp_path = path + ".tmp"
        try:
            dir_name = os.path.dirname(path)
            if dir_name:
                os.makedirs(dir_name, exist_ok=True)

            with open(temp_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
                f.flush()
                os.fsync(f.fileno())  # Ensure write to disk

            os.replace(temp_path, path)
        except OSError as e:
            if os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass
            raise ReportWriteError(path, e) from e

    @staticmethod
    def write_jsonl(destination: Optional[str], records: Iterable[Dict[str, Any]]):
        FileManager.write_text(destination, FileManager.render_jsonl(records))

    @staticmethod
    def write_csv(destination: Optional[str], header: Sequence[str], rows: Iterable[Sequence[Any]]):
        FileManager.write_text(destination, FileManager.render_csv(header, rows))
