"""
Output directory handling and plain-text reports.

Reports contain no timestamps or host details, so a rerun with the same
resolved config reproduces every file byte for byte.
"""

import csv
import io
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union

from slugify import slugify

from components.errors import XibasinError
from components.logger_config import get_logger

from .run_config import RunConfig, format_config

RESOLVED_CONFIG = "resolved_config.txt"
REPORT = "report.txt"


def output_stem(*parts: Any) -> str:
    """File stem such as ``basins-random-relaxed`` from free-form parts."""
    return slugify("-".join(str(p) for p in parts if p not in (None, "")))


class OutputDirectory:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.logger = get_logger(__name__)
        try:
            self.path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise XibasinError(f"cannot create output directory {self.path}: {e}") from e
        self.files: List[Path] = []

    def file(self, name: str) -> Path:
        return self.path / name

    def write_text(self, name: str, text: str) -> Path:
        target = self.file(name)
        with open(target, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(text)
        self._written(target)
        return target

    def write_bytes(self, name: str, data: bytes) -> Path:
        target = self.file(name)
        target.write_bytes(data)
        self._written(target)
        return target

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return self.write_text(name, buffer.getvalue())

    def write_config(self, config: RunConfig) -> Path:
        return self.write_text(RESOLVED_CONFIG, format_config(config))

    def _written(self, target: Path):
        self.files.append(target)
        self.logger.info(f"Wrote {target}")


class RunReport:
    """Sectioned key: value report ending with the resolved config."""

    def __init__(self, title: str):
        self.lines: List[str] = [title, "=" * len(title)]

    def section(self, name: str) -> "RunReport":
        self.lines += ["", name, "-" * len(name)]
        return self

    def field(self, key: str, value: Any) -> "RunReport":
        self.lines.append(f"{key}: {value}")
        return self

    def note(self, text: str) -> "RunReport":
        self.lines.append(text)
        return self

    def table(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> "RunReport":
        rows = [[str(c) for c in row] for row in rows]
        widths = [len(h) for h in header]
        for row in rows:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]
        self.lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for row in rows:
            self.lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        return self

    def render(self, config: RunConfig) -> str:
        echo = ["", "Resolved config", "---------------", format_config(config).rstrip("\n")]
        return "\n".join(self.lines + echo) + "\n"

    def write(self, out: OutputDirectory, config: RunConfig) -> Path:
        return out.write_text(REPORT, self.render(config))
