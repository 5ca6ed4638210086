import math
from importlib import metadata

from rindler_corr.utils.const import CSV_SIGNIFICANT_DIGITS, DEFAULT_VERSION, TOOL_NAME


def tool_version() -> str:
    """Returns the installed package version.

    Returns:
        str: The distribution version, or the source-tree default when the
            package is imported without being installed.
    """
    try:
        return metadata.version(TOOL_NAME)
    except metadata.PackageNotFoundError:
        return DEFAULT_VERSION


def schema_comment() -> str:
    """Returns the versioned header comment written before every CSV table."""
    return f"# {TOOL_NAME} v{tool_version()}"


def format_scalar(value: float | int) -> str:
    """Serializes a record scalar for CSV output.

    Integers are written verbatim, floats with a fixed number of
    significant digits so that repeated runs are byte-identical.

    Args:
        value (float | int): The value to format.

    Returns:
        str: The formatted value.
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    text = format(value, f".{CSV_SIGNIFICANT_DIGITS}g")
    # normalise negative zero
    return "0" if text == "-0" else text
