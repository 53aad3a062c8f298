"""State files, POVM files, ensemble manifests and CSV reports.

A state file is a JSON document::

    {"dim": 2, "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}

with complex entries written as ``[re, im]`` pairs, row-major. A pure state
uses ``"vector": [[re, im], ...]`` instead of ``"matrix"``. A POVM file has
``"dim"`` and ``"elements"`` (a list of matrices in the same layout). An
ensemble manifest lists ``{"file": ..., "probability": ...}`` entries under
``"states"``; relative paths resolve against the manifest's directory.
"""
import json
import math
import os
from typing import Iterable, List, Sequence

import numpy as np

from . import __version__
from .errors import ValidationError
from .states import (
    POVM,
    DensityOperator,
    PureState,
    StateEnsemble,
    make_density,
    make_ensemble,
    make_povm,
    make_pure,
)


class FileFormatError(ValidationError):
    """A state, POVM or manifest file is malformed."""


def _reject_constant(name):
    raise FileFormatError(f"non-finite literal {name} is not allowed")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc})") from exc


def _pair(x, where) -> complex:
    if not (isinstance(x, (list, tuple)) and len(x) == 2):
        raise FileFormatError(f"{where}: expected an [re, im] pair, got {x!r}")
    re, im = x
    if isinstance(re, bool) or isinstance(im, bool) or not all(isinstance(v, (int, float)) for v in (re, im)):
        raise FileFormatError(f"{where}: entries must be numbers")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise FileFormatError(f"{where}: entries must be finite")
    return complex(re, im)


def decode_matrix(rows, dim: int, where="matrix") -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise FileFormatError(f"{where}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise FileFormatError(f"{where}: row {i} must have {dim} entries")
        for j, x in enumerate(row):
            out[i, j] = _pair(x, f"{where}[{i}][{j}]")
    return out


def encode_matrix(m) -> List[List[List[float]]]:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _dim(doc, where) -> int:
    dim = doc.get("dim") if isinstance(doc, dict) else None
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"{where}: 'dim' must be a positive integer")
    return dim


def parse_state(doc, where="state"):
    """Decode a state document into a DensityOperator or PureState."""
    dim = _dim(doc, where)
    if "matrix" in doc:
        return make_density(decode_matrix(doc["matrix"], dim, where))
    if "vector" in doc:
        vec = doc["vector"]
        if not isinstance(vec, list) or len(vec) != dim:
            raise FileFormatError(f"{where}: 'vector' must have {dim} entries")
        return make_pure([_pair(x, f"{where}[{i}]") for i, x in enumerate(vec)])
    raise FileFormatError(f"{where}: needs a 'matrix' or 'vector' field")


def read_state(path):
    return parse_state(_load_json(path), str(path))


def state_document(state) -> dict:
    if isinstance(state, PureState):
        return {"dim": state.dim, "vector": [[float(z.real), float(z.imag)] for z in state.amplitudes]}
    m = state.matrix if isinstance(state, DensityOperator) else np.asarray(state)
    return {"dim": int(m.shape[0]), "matrix": encode_matrix(m)}


def dumps(doc) -> str:
    return json.dumps(doc, allow_nan=False) + "\n"


def write_state(path, state) -> None:
    _write_text(path, dumps(state_document(state)))


def read_povm(path) -> POVM:
    doc = _load_json(path)
    dim = _dim(doc, str(path))
    elems = doc.get("elements")
    if not isinstance(elems, list) or not elems:
        raise FileFormatError(f"{path}: 'elements' must be a non-empty list")
    return make_povm([decode_matrix(e, dim, f"{path}:elements[{i}]") for i, e in enumerate(elems)])


def povm_document(povm: POVM) -> dict:
    return {"dim": povm.dim, "elements": [encode_matrix(e) for e in povm.elements]}


def read_ensemble(path) -> StateEnsemble:
    doc = _load_json(path)
    entries = doc.get("states") if isinstance(doc, dict) else None
    if not isinstance(entries, list) or not entries:
        raise FileFormatError(f"{path}: 'states' must be a non-empty list")
    base = os.path.dirname(os.path.abspath(path))
    states, probs = [], []
    for i, e in enumerate(entries):
        if not isinstance(e, dict) or "file" not in e or "probability" not in e:
            raise FileFormatError(f"{path}: entry {i} needs 'file' and 'probability'")
        p = e["probability"]
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise FileFormatError(f"{path}: entry {i} probability must be a number")
        states.append(read_state(os.path.join(base, e["file"])))
        probs.append(float(p))
    return make_ensemble(states, probs)


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# numbers and CSV
# ---------------------------------------------------------------------------

def fmt(x) -> str:
    """12 significant digits; ``inf`` for infinity, twelve zero decimals for exact zero."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0.000000000000"
    return f"{x:.12g}"


def csv_report(header: Sequence[str], rows: Iterable[Sequence], comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValueError(f"row has {len(row)} columns, header has {width}")
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def report_comments(command: str, seed=None) -> List[str]:
    out = [f"qjsd {__version__}", f"command: {command}"]
    if seed is not None:
        out.insert(1, f"seed: {seed}")
    return out


def write_csv(path, header, rows, comments=()) -> str:
    text = csv_report(header, rows, comments)
    _write_text(path, text)
    return text
