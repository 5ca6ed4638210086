import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Mapping, Optional

from rindler_corr.exception import RindlerCorrError
from rindler_corr.model import CorrelationRecord, SweepResult
from rindler_corr.utils.helpers import format_scalar, schema_comment

logger = logging.getLogger("rindler_corr")


def format_csv(result: SweepResult) -> str:
    """
    Renders a sweep as CSV text.

    The first line is the versioned schema comment, the second the header
    naming every record field, then one row per α. Floats carry 12
    significant digits and lines end in LF.

    Args:
        result (SweepResult): The sweep.

    Returns:
        str: The CSV document.
    """
    buffer = io.StringIO()
    buffer.write(schema_comment() + "\n")
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(CorrelationRecord.FIELD_NAMES)
    for record in result:
        writer.writerow(format_scalar(record_value) for record_value in _row(record))
    return buffer.getvalue()


def emit_csv(result: SweepResult, path: Path | str) -> Path:
    """
    Writes a sweep to a CSV file, creating parent directories.

    Args:
        result (SweepResult): The sweep.
        path (Path | str): Destination file.

    Returns:
        Path: The file written.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps LF endings on every platform
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write(format_csv(result))
    logger.info("Wrote %d rows to %s", len(result), path)
    return path


def read_csv(path: Path | str) -> SweepResult:
    """
    Reads a CSV written by :func:`emit_csv` back into records.

    Comment lines starting with ``#`` are skipped.

    Args:
        path (Path | str): The CSV file.

    Returns:
        SweepResult: The records, without run metadata.

    Raises:
        RindlerCorrError: If the header does not match the record schema.
    """
    with Path(path).open(encoding="utf-8", newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != CorrelationRecord.FIELD_NAMES:
        raise RindlerCorrError(f"{path} does not follow the correlation record schema")
    return SweepResult(tuple(CorrelationRecord.from_dict(row) for row in reader))


def write_json(
    data: CorrelationRecord | Mapping[str, Any], path: Optional[Path | str] = None
) -> str:
    """
    Serializes a record, or any JSON-compatible mapping such as sweep
    metadata, with keys in schema order.

    Args:
        data (CorrelationRecord | Mapping[str, Any]): What to write.
        path (Optional[Path | str], optional): When given, the text is also
            written to this file.

    Returns:
        str: The JSON text, newline terminated.
    """
    mapping = data.to_dict() if isinstance(data, CorrelationRecord) else dict(data)
    text = json.dumps(mapping, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", path)
    return text


def _row(record: CorrelationRecord) -> list[float | int]:
    return [getattr(record, name) for name in CorrelationRecord.FIELD_NAMES]
