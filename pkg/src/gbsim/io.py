"""JSON serialization shared by the library and the CLI.

Complex scalars are ``[re, im]``, matrices are lists of rows, patterns are
integer lists. Files wrap their content as ``{"schema_version", "payload"}``.
Floats are written with Python's shortest round-trip repr (at most 17
significant digits), so equal values always serialize to equal bytes.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .sampler import DistributionTable, SampleRecord, residual_draws
from .state import GaussianState, InterferometerUnitary

SCHEMA_VERSION = 1


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(isinstance(v, (int, float)) for v in obj):
        return complex(obj[0], obj[1])
    raise ParseError(f"not a complex scalar: {obj!r}")


def matrix_to_json(m) -> list:
    return [[complex_to_json(v) for v in row] for row in np.asarray(m)]


def matrix_from_json(obj) -> np.ndarray:
    """Parse a list of rows; entries may be ``[re, im]`` pairs or plain reals."""
    if not isinstance(obj, list) or not all(isinstance(row, list) for row in obj):
        raise ParseError("a matrix must be a list of row lists")
    if obj and len({len(row) for row in obj}) != 1:
        raise ParseError("matrix rows have different lengths")
    rows = [[complex_from_json(v) for v in row] for row in obj]
    ncols = len(rows[0]) if rows else 0
    return np.array(rows, dtype=np.complex128).reshape(len(rows), ncols)


def state_to_json(state: GaussianState) -> dict:
    return {"modes": state.modes, "sigma": matrix_to_json(state.sigma)}


def state_from_json(obj) -> GaussianState:
    try:
        return GaussianState(int(obj["modes"]), matrix_from_json(obj["sigma"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad state record: {exc}") from exc


def unitary_to_json(t: InterferometerUnitary, seed: int | None = None) -> dict:
    out = {"modes": t.modes, "t": matrix_to_json(t.t)}
    if seed is not None:
        out["seed"] = int(seed)
    return out


def unitary_from_json(obj) -> InterferometerUnitary:
    try:
        t = InterferometerUnitary(matrix_from_json(obj["t"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad unitary record: {exc}") from exc
    if "modes" in obj and int(obj["modes"]) != t.modes:
        raise ParseError(f"unitary record says {obj['modes']} modes but t is {t.modes}x{t.modes}")
    return t


def table_to_json(table: DistributionTable) -> dict:
    return {
        "entries": [{"pattern": list(p), "probability": float(v)}
                    for p, v in zip(table.patterns, table.probabilities)],
        "residual_tail_bound": float(table.residual),
        "metadata": table.metadata,
    }


def table_from_json(obj) -> DistributionTable:
    try:
        entries = obj["entries"]
        return DistributionTable(
            [tuple(int(n) for n in e["pattern"]) for e in entries],
            np.array([float(e["probability"]) for e in entries]),
            float(obj["residual_tail_bound"]),
            dict(obj.get("metadata", {})),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad distribution table: {exc}") from exc


def samples_to_json(samples: list[SampleRecord], draws: int, seed: int) -> dict:
    return {
        "records": [{"pattern": list(s.pattern), "count": s.count} for s in samples],
        "seed": int(seed),
        "draws": int(draws),
        "residual_draws": residual_draws(samples, draws),
    }


def samples_from_json(obj) -> list[SampleRecord]:
    try:
        draws = int(obj["draws"])
        return [SampleRecord(tuple(int(n) for n in r["pattern"]), int(r["count"]), draws) for r in obj["records"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad sample record: {exc}") from exc


def dumps(payload) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "payload": payload}, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    """Return the payload of a wrapped document, or the bare document itself."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and "payload" in doc:
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ParseError(f"unsupported schema_version {version!r}")
        return doc["payload"]
    return doc


def write(path, payload) -> None:
    Path(path).write_text(dumps(payload))


def read(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)
