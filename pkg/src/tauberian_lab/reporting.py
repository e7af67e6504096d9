"""Deterministic serialisation of report objects to JSON and CSV.

Two rules keep outputs reproducible and diff-friendly:

  * writes are atomic: content goes to a temp file in the target directory
    and is moved into place with os.replace, so readers never observe a
    half-written file;
  * JSON keys are sorted and floats are emitted in shortest round-trip
    form (the json module's default), so emit(parse(emit(x))) == emit(x).

Complex numbers serialise as [re, im] pairs, enums as their string value,
arrays as lists.  Dataclass report types from the rest of the package pass
through ``to_jsonable`` unchanged in structure.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import os
import tempfile
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "to_jsonable",
    "dumps_json",
    "write_json",
    "write_csv",
    "atomic_write_text",
]


def to_jsonable(obj: Any) -> Any:
    """Convert report objects to plain JSON-serialisable structures."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return z.real if z.imag == 0.0 else [z.real, z.imag]
    if isinstance(obj, np.integer):
        return int(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__} to JSON")


def dumps_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str, obj: Any) -> None:
    atomic_write_text(path, dumps_json(obj))


def _format_cell(v: Any) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def write_csv(path: str, header: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> None:
    """Write rows with repr-exact floats; no quoting is ever needed here."""
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError("row width does not match header")
        lines.append(",".join(_format_cell(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
