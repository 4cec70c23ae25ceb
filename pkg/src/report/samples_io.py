"""Reading and writing per-subject metric values.

CSV files carry the header ``subject_id,value``; JSON files hold an array
of ``{"subject_id": ..., "value": ...}`` objects. Output uses comma
separators, "." decimals, UTF-8 and LF line endings, with floats written
as their shortest round-tripping repr.
"""

import csv
import io
import json
import math
import sys
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Dict, List, Optional, TextIO, Union

import pydantic
from pydantic import BaseModel, ConfigDict

from src.errors import DuplicateSubjectError, NonFiniteValueError, ParseError
from src.models.sample import Bounds, MetricSample, MetricSampleSet, bounds_for_metric

CSV_HEADER = ["subject_id", "value"]
STDIN = "-"


class SampleFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class SampleRecord(BaseModel):
    """One JSON sample object. Strict: booleans and numeric strings are rejected."""
    model_config = ConfigDict(extra="forbid", strict=True)

    subject_id: str
    value: float


def _decode(source: Union[BinaryIO, TextIO, bytes, str]) -> str:
    data = source if isinstance(source, (bytes, str)) else source.read()
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8: {e.reason}", offset=e.start) from e


def _add(
    samples: List[MetricSample],
    seen: Dict[str, str],
    subject_id: str,
    value: float,
    where: str,
) -> None:
    if not subject_id:
        raise ParseError(f"empty subject_id at {where}")
    if not math.isfinite(value):
        raise NonFiniteValueError(f"non-finite value {value!r} for subject {subject_id!r} at {where}")
    if subject_id in seen:
        raise DuplicateSubjectError(
            f"duplicate subject_id {subject_id!r} at {where} (first at {seen[subject_id]})"
        )
    seen[subject_id] = where
    samples.append(MetricSample(subject_id, value))


def _parse_csv(text: str) -> List[MetricSample]:
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ParseError(f"expected header {','.join(CSV_HEADER)!r}, got {header!r}", line=1)

        samples: List[MetricSample] = []
        seen: Dict[str, str] = {}
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if len(row) != 2:
                raise ParseError(f"expected 2 fields, got {len(row)}", line=line)
            subject_id, raw = row
            try:
                value = float(raw)
            except ValueError:
                raise ParseError(f"value {raw!r} is not a number", line=line) from None
            _add(samples, seen, subject_id, value, f"line {line}")
    except csv.Error as e:
        raise ParseError(f"malformed CSV: {e}", line=reader.line_num) from e
    return samples


def _parse_json(text: str) -> List[MetricSample]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, offset=e.colno) from e
    if not isinstance(document, list):
        raise ParseError("expected a JSON array of sample objects")

    samples: List[MetricSample] = []
    seen: Dict[str, str] = {}
    for i, item in enumerate(document):
        try:
            record = SampleRecord.model_validate(item)
        except pydantic.ValidationError as e:
            err = e.errors()[0]
            field_name = ".".join(str(p) for p in err["loc"]) or "item"
            raise ParseError(f"item {i}: {field_name}: {err['msg']}") from e
        _add(samples, seen, record.subject_id, record.value, f"item {i}")
    return samples


def load_samples(
    source: Union[BinaryIO, TextIO, bytes, str],
    format: SampleFormat = SampleFormat.CSV,
    metric_name: str = "dice",
    bounds: Optional[Bounds] = None,
) -> MetricSampleSet:
    """Parse a sample file into a validated MetricSampleSet.

    Args:
        source: Byte or text stream, or its full contents.
        format: csv or json.
        metric_name: Metric the values measure.
        bounds: Validation range; defaults to the metric's natural range
            (0..100 for Dice, none otherwise).

    Returns:
        MetricSampleSet in file order.

    Raises:
        ParseError: Malformed input, with line or item position.
        NonFiniteValueError: A NaN or infinite value.
        DuplicateSubjectError: A repeated subject_id.
        OutOfBoundsError: A value outside the bounds.
    """
    text = _decode(source)
    if SampleFormat(format) is SampleFormat.CSV:
        samples = _parse_csv(text)
    else:
        samples = _parse_json(text)
    if bounds is None:
        bounds = bounds_for_metric(metric_name)
    return MetricSampleSet(tuple(samples), metric_name=metric_name, bounds=bounds)


def save_samples(
    samples: MetricSampleSet,
    sink: TextIO,
    format: SampleFormat = SampleFormat.CSV,
) -> None:
    """Write samples so that load_samples reads back identical values."""
    if SampleFormat(format) is SampleFormat.CSV:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for sample in samples:
            writer.writerow([sample.subject_id, repr(sample.value)])
    else:
        records = [{"subject_id": s.subject_id, "value": s.value} for s in samples]
        sink.write(json.dumps(records, indent=2, ensure_ascii=False) + "\n")


def infer_format(path: str) -> SampleFormat:
    """json for *.json paths, csv otherwise (including stdin)."""
    return SampleFormat.JSON if Path(path).suffix.lower() == ".json" else SampleFormat.CSV


def read_samples(
    path: str,
    format: Optional[SampleFormat] = None,
    metric_name: str = "dice",
    bounds: Optional[Bounds] = None,
) -> MetricSampleSet:
    """Load samples from a file path, or from stdin when path is "-"."""
    format = format or infer_format(path)
    if path == STDIN:
        return load_samples(sys.stdin.buffer, format, metric_name, bounds)
    with open(path, "rb") as f:
        return load_samples(f, format, metric_name, bounds)
