"""
CSV datasets and JSON evaluation configs.

CSV contract: UTF-8, comma separated, a header row, object labels in the
first column, ``.`` as decimal point and no thousands separators.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .components import DEFAULT_THRESHOLD
from .errors import ParseError, ValidationError
from .preprocess import (
    QUALITATIVE,
    IndicatorSpec,
    JudgmentMatrix,
    check_unique,
    quantize_qualitative,
)
from .scoring import PRESETS, US_4BAND, GradeBand, GradeScale

ROTATIONS = ("none", "varimax")
FORMATS = ("json", "csv")

_CONFIG_KEYS = {
    "indicators",
    "grade_scale",
    "retention_threshold",
    "retain",
    "rotation",
    "output_format",
    "notes",
    "description",
}
_INDICATOR_KEYS = {"name", "direction", "kind", "mapping", "notes"}


def bundled(name):
    """Path to a file shipped in ``compindex/data`` (``.json``/``.csv`` optional)."""
    root = resources.files("compindex") / "data"
    for candidate in (name, f"{name}.json", f"{name}.csv"):
        path = root / candidate
        if path.is_file():
            return Path(str(path))
    raise FileNotFoundError(f"no bundled file named {name!r}")


def resolve_path(path):
    """Use ``path`` if it exists, else fall back to a bundled file of that name."""
    p = Path(path)
    if p.exists():
        return p
    try:
        return bundled(str(path))
    except FileNotFoundError:
        return p


@dataclass(frozen=True)
class RawTable:
    """Parsed CSV cells before any typing; values stay strings."""

    object_header: str
    headers: tuple
    objects: tuple
    cells: tuple  # rows of strings

    def column(self, name):
        j = self.headers.index(name)
        return [row[j] for row in self.cells]


def read_table(path):
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise ParseError(f"{path}: file not found") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 ({exc.reason})") from None

    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if len(header) < 2:
        raise ParseError(f"{path}, line 1: need an object column and at least one indicator")
    seen = {}
    for col, h in enumerate(header, start=1):
        if not h and col > 1:
            raise ParseError(f"{path}, line 1, column {col}: empty header")
        if h in seen:
            raise ParseError(
                f"{path}, line 1: duplicate header {h!r} (columns {seen[h]} and {col})"
            )
        seen[h] = col

    objects, cells = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(
                f"{path}, line {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        objects.append(row[0].strip())
        cells.append(tuple(c.strip() for c in row[1:]))
    return RawTable(header[0], tuple(header[1:]), tuple(objects), tuple(cells))


def _parse_number(text, path, lineno, col, name):
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not math.isfinite(value):
        raise ParseError(
            f"{path}, line {lineno}, column {col} ({name!r}): "
            f"expected a finite number, got {text!r}"
        )
    return value


def load_dataset(path, indicators=None):
    """
    Load a CSV into a :class:`JudgmentMatrix`.

    Parameters
    ----------
    path : str or Path
    indicators : sequence of IndicatorSpec, optional
        Selects and orders columns by name. Qualitative columns are quantized
        to 0/1 through their mapping. Without it every column is a
        quantitative benefit indicator.
    """
    path = Path(path)
    table = read_table(path)
    if indicators is None:
        indicators = [IndicatorSpec(h) for h in table.headers]
    indicators = tuple(indicators)
    check_unique(indicators)

    columns = []
    for spec in indicators:
        if spec.name not in table.headers:
            raise ValidationError(f"{path}: no column named {spec.name!r} for indicator")
        j = table.headers.index(spec.name)
        raw = [row[j] for row in table.cells]
        if spec.kind == QUALITATIVE:
            columns.append(quantize_qualitative(raw, spec.effective_mapping))
        else:
            columns.append(
                np.array(
                    [
                        _parse_number(text, path, i + 2, j + 2, spec.name)
                        for i, text in enumerate(raw)
                    ]
                )
            )
    values = np.column_stack(columns) if columns else np.empty((len(table.objects), 0))
    return JudgmentMatrix(table.objects, indicators, values)


def write_dataset(x, path, object_header="object"):
    """Write a judgment (or normalized) matrix with full float precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([object_header, *[s.name for s in x.indicators]])
        for obj, row in zip(x.objects, x.values):
            writer.writerow([obj, *[repr(float(v)) for v in row]])


@dataclass(frozen=True)
class EvaluationConfig:
    indicators: tuple
    grade_scale: GradeScale = US_4BAND
    retention_threshold: float = DEFAULT_THRESHOLD
    retain: Optional[int] = None
    rotation: str = "none"
    output_format: str = "json"
    notes: str = field(default="", compare=False)

    def to_dict(self):
        out = {
            "indicators": [
                {
                    "name": s.name,
                    "direction": s.direction,
                    "kind": s.kind,
                    **({"mapping": dict(sorted(s.effective_mapping.items()))} if s.kind == QUALITATIVE else {}),
                }
                for s in self.indicators
            ],
            "grade_scale": self.grade_scale.to_dict(),
            "retention_threshold": self.retention_threshold,
            "retain": self.retain,
            "rotation": self.rotation,
            "output_format": self.output_format,
        }
        return out


def _parse_band(item, idx):
    if isinstance(item, dict):
        try:
            return GradeBand(float(item["lower"]), float(item["upper"]), str(item["label"]))
        except KeyError as exc:
            raise ValidationError(f"grade_scale.bands[{idx}]: missing {exc.args[0]!r}") from None
    if isinstance(item, (list, tuple)) and len(item) == 3:
        return GradeBand(float(item[0]), float(item[1]), str(item[2]))
    if isinstance(item, (list, tuple)) and len(item) == 2:
        # unlabeled band, label by position
        return GradeBand(float(item[0]), float(item[1]), f"band{idx + 1}")
    raise ValidationError(f"grade_scale.bands[{idx}]: expected [lower, upper, label]")


def parse_grade_scale(value):
    if value is None:
        return US_4BAND
    if isinstance(value, str):
        if value not in PRESETS:
            raise ValidationError(
                f"grade_scale: unknown preset {value!r} (known: {sorted(PRESETS)})"
            )
        return PRESETS[value]
    if isinstance(value, list):
        value = {"bands": value}
    if not isinstance(value, dict) or "bands" not in value:
        raise ValidationError("grade_scale: expected a preset name or {'bands': [...]}")
    bands = [_parse_band(b, i) for i, b in enumerate(value["bands"])]
    try:
        return GradeScale(tuple(bands), name=str(value.get("name", "custom")))
    except ValidationError as exc:
        raise ValidationError(f"grade_scale: {exc}") from None


def _parse_indicator(item, idx):
    if isinstance(item, str):
        return IndicatorSpec(item)
    if not isinstance(item, dict):
        raise ValidationError(f"indicators[{idx}]: expected a name or an object")
    unknown = set(item) - _INDICATOR_KEYS
    if unknown:
        raise ValidationError(f"indicators[{idx}]: unknown field(s) {sorted(unknown)}")
    if "name" not in item:
        raise ValidationError(f"indicators[{idx}]: missing 'name'")
    try:
        return IndicatorSpec(
            name=item["name"],
            direction=item.get("direction", "benefit"),
            kind=item.get("kind", "quantitative"),
            mapping=item.get("mapping"),
        )
    except ValidationError as exc:
        raise ValidationError(f"indicators[{idx}]: {exc}") from None


def config_from_dict(data, headers=None):
    """Validate a config mapping and apply defaults.

    ``headers`` supplies default indicators when the config lists none.
    """
    if not isinstance(data, dict):
        raise ValidationError("config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ValidationError(f"config: unknown field(s) {sorted(unknown)}")

    raw_inds = data.get("indicators")
    if raw_inds is None:
        if headers is None:
            raise ValidationError("config: 'indicators' is required")
        raw_inds = list(headers)
    if not isinstance(raw_inds, list) or not raw_inds:
        raise ValidationError("indicators: expected a non-empty list")
    indicators = tuple(_parse_indicator(item, i) for i, item in enumerate(raw_inds))
    try:
        check_unique(indicators)
    except ValidationError as exc:
        raise ValidationError(f"indicators: {exc}") from None

    threshold = data.get("retention_threshold", DEFAULT_THRESHOLD)
    if isinstance(threshold, bool) or not isinstance(threshold, (int, float)) or not 0 < threshold <= 1:
        raise ValidationError(f"retention_threshold: must be a number in (0, 1], got {threshold!r}")
    retain = data.get("retain")
    if retain is not None and (isinstance(retain, bool) or not isinstance(retain, int) or retain < 1):
        raise ValidationError(f"retain: must be a positive integer, got {retain!r}")
    rotation = data.get("rotation", "none")
    if rotation not in ROTATIONS:
        raise ValidationError(f"rotation: must be one of {ROTATIONS}, got {rotation!r}")
    fmt = data.get("output_format", "json")
    if fmt not in FORMATS:
        raise ValidationError(f"output_format: must be one of {FORMATS}, got {fmt!r}")

    return EvaluationConfig(
        indicators=indicators,
        grade_scale=parse_grade_scale(data.get("grade_scale")),
        retention_threshold=float(threshold),
        retain=retain,
        rotation=rotation,
        output_format=fmt,
        notes=str(data.get("notes", data.get("description", ""))),
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"{path}: config file not found") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return config_from_dict(data)
