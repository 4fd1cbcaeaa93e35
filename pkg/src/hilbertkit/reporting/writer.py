import asyncio
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, TextIO

import aiofiles
import aiofiles.os
from filelock import AsyncFileLock, Timeout

from ..exceptions import ReportWriteError
from .check import CheckReport, plain_value

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ("command", "name", "pass", "asserted", "lhs", "rhs", "margin", "location", "params")


class AsyncDummyLock:
    """An asynchronous lock that doesn't lock anything. Used when file locking is disabled."""

    async def __aenter__(self):
        await asyncio.sleep(0)
        return self

    async def __aexit__(self, exc_type, exc, tb):
        pass


def build_document(
        command: str,
        params: dict[str, Any],
        reports: list[CheckReport],
        estimates: dict[str, Any] | None = None,
        timing_ms: float | None = None
    ) -> dict[str, Any]:
    """Assemble the run document shared by every output format.

    Args:
        command (str): CLI command name
        params (dict[str, Any]): merged run parameters
        reports (list[CheckReport]): verdicts in execution order
        estimates (dict[str, Any] | None, optional): estimated values. Defaults to None.
        timing_ms (float | None, optional): wall time. Defaults to None.

    Returns:
        dict[str, Any]: {command, params, verdicts, estimates, timing_ms}
    """
    return {
        "command": command,
        "params": plain_value(params),
        "verdicts": [r.to_row() for r in reports],
        "estimates": plain_value(estimates or {}),
        "timing_ms": timing_ms,
    }


class ReportWriter:
    output_format: str
    use_file_lock: bool
    lock_timeout: float

    def __init__(self, output_format: str = "json", use_file_lock: bool = True, lock_timeout: float = 30.0):
        """Renders run documents and writes them to a file or standard output.

        Args:
            output_format (str, optional): one of json, csv, text. Defaults to "json".
            use_file_lock (bool, optional): guard file output with a lock file. Defaults to True.
            lock_timeout (float, optional): seconds to wait for the lock. Defaults to 30.0.

        Raises:
            ValueError: unknown format
        """
        if output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}")
        self.output_format = output_format
        self.use_file_lock = use_file_lock
        self.lock_timeout = lock_timeout

    def render(self, document: dict[str, Any]) -> str:
        """
        Args:
            document (dict[str, Any]): run document from build_document

        Returns:
            str: document in the configured format
        """
        if self.output_format == "json":
            return json.dumps(document, sort_keys=True, indent=2) + "\n"
        if self.output_format == "csv":
            return self._render_csv(document)
        return self._render_text(document)

    @staticmethod
    def _render_csv(document: dict[str, Any]) -> str:
        buff = io.StringIO()
        writer = csv.DictWriter(buff, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in document["verdicts"]:
            writer.writerow({
                "command": document["command"],
                "name": row["name"],
                "pass": row["pass"],
                "asserted": row["asserted"],
                "lhs": row["lhs"],
                "rhs": row["rhs"],
                "margin": row["margin"],
                "location": json.dumps(row["location"], sort_keys=True),
                "params": json.dumps(row["params"], sort_keys=True),
            })
        return buff.getvalue()

    @staticmethod
    def _render_text(document: dict[str, Any]) -> str:
        lines = [f"command: {document['command']}"]
        for k in sorted(document["params"]):
            lines.append(f"  {k} = {document['params'][k]}")
        if document["estimates"]:
            lines.append("estimates:")
            for k in sorted(document["estimates"]):
                lines.append(f"  {k} = {document['estimates'][k]}")
        header = ("verdict", "name", "lhs", "rhs", "margin", "location")
        rows = [header]
        for row in document["verdicts"]:
            if row["pass"]:
                verdict = "PASS"
            else:
                verdict = "FAIL" if row["asserted"] else "note"
            rows.append((
                verdict,
                row["name"],
                _fmt(row["lhs"]),
                _fmt(row["rhs"]),
                _fmt(row["margin"]),
                "" if row["location"] is None else json.dumps(row["location"], sort_keys=True),
            ))
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        for r in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        if document["timing_ms"] is not None:
            lines.append(f"timing_ms: {document['timing_ms']:.1f}")
        return "\n".join(lines) + "\n"

    def get_lock(self, lock_path: Path) -> AsyncDummyLock | AsyncFileLock:
        """
        Args:
            lock_path (Path): lock file location

        Returns:
            AsyncDummyLock|AsyncFileLock: lock type depending on use_file_lock
        """
        if not self.use_file_lock:
            return AsyncDummyLock()
        return AsyncFileLock(lock_file=str(lock_path), timeout=self.lock_timeout)

    async def write_async(self, document: dict[str, Any], output_path: str | Path | None = None,
                          stream: TextIO | None = None) -> str:
        """Asynchronously render and write a document.

        Args:
            document (dict[str, Any]): run document
            output_path (str | Path | None, optional): destination file. None writes to stream.
            stream (TextIO | None, optional): stream used when output_path is None.
                Defaults to sys.stdout.

        Raises:
            ReportWriteError: destination directory missing, lock timeout or OS error

        Returns:
            str: the rendered text
        """
        text = self.render(document)
        if output_path is None:
            (stream or sys.stdout).write(text)
            return text

        dst = Path(output_path)
        if not await aiofiles.os.path.isdir(str(dst.parent if str(dst.parent) else ".")):
            raise ReportWriteError(f"Parent directory {dst.parent} does not exist.")
        lock = self.get_lock(dst.with_name(dst.name + ".lock"))
        try:
            async with lock:
                async with aiofiles.open(str(dst), "w", encoding="utf-8", newline="") as f:
                    await f.write(text)
        except Timeout:
            raise ReportWriteError(f"timed out waiting for the lock on {dst}")
        except OSError as e:
            raise ReportWriteError(f"could not write report to {dst}: {e}")
        logger.debug("wrote %s report to %s", self.output_format, dst)
        return text

    def write(self, document: dict[str, Any], output_path: str | Path | None = None,
              stream: TextIO | None = None) -> str:
        """Render and write a document. Synchronous wrapper around write_async."""
        return asyncio.run(self.write_async(document, output_path=output_path, stream=stream))


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)
