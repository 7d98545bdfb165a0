"""JSON serialization for spaces, operators, sequences, and band matrices.

Conventions: atom indices are 1-based in files (0-based in the library);
complex numbers are ``[re, im]`` pairs, with bare reals accepted on
input; matrices use separate ``re``/``im`` tables where ``im`` may be
omitted.  All angles are radians.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .circle import EventuallyPeriodicSeq, PeriodicBandOperator
from .operators import Endomorphism, OperatorMatrix
from .spaces import FiniteMeasureSpace, Partition

__all__ = [
    "load_json",
    "space_from_obj",
    "space_to_obj",
    "distribution_from_obj",
    "partition_from_obj",
    "partition_to_obj",
    "matrix_from_obj",
    "matrix_to_obj",
    "operator_from_obj",
    "endomorphism_from_obj",
    "endomorphism_to_obj",
    "seq_from_obj",
    "seq_to_obj",
    "bandop_from_obj",
    "bandop_to_obj",
]


def load_json(path: str | Path) -> Any:
    """Parse a JSON file; syntax errors keep their line/column context."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise json.JSONDecodeError(f"{path}: {exc.msg}", exc.doc, exc.pos) from None


def _require(obj: Any, field: str, where: str) -> Any:
    if not isinstance(obj, dict) or field not in obj:
        raise ValueError(f"{where}: missing field '{field}'")
    return obj[field]


def _complex_in(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise ValueError(f"{where}: expected a number or an [re, im] pair, got {value!r}")


def _complex_out(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def space_from_obj(obj: Any) -> FiniteMeasureSpace:
    weights = _require(obj, "weights", "space")
    if not isinstance(weights, list) or not all(isinstance(w, (int, float)) for w in weights):
        raise ValueError("space: field 'weights' must be a list of numbers")
    return FiniteMeasureSpace(weights)


def space_to_obj(space: FiniteMeasureSpace) -> dict:
    return {"weights": space.weights.tolist()}


def distribution_from_obj(obj: Any) -> np.ndarray:
    """A probability vector; unlike a space, zero entries are allowed."""
    weights = _require(obj, "weights", "distribution")
    v = np.asarray(weights, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("distribution: 'weights' must be a nonempty list")
    if np.any(v < 0) or abs(float(v.sum()) - 1.0) > 1e-9:
        raise ValueError("distribution: entries must be nonnegative and sum to 1")
    return v


def partition_from_obj(obj: Any, size: int) -> Partition:
    blocks = _require(obj, "blocks", "partition")
    if not isinstance(blocks, list):
        raise ValueError("partition: field 'blocks' must be a list of lists")
    shifted = []
    for b in blocks:
        if not isinstance(b, list) or not all(isinstance(j, int) for j in b):
            raise ValueError("partition: each block must be a list of integers")
        shifted.append([j - 1 for j in b])  # files are 1-based
    return Partition(size, shifted)


def partition_to_obj(partition: Partition) -> dict:
    return {"blocks": [[j + 1 for j in b] for b in partition.blocks]}


def matrix_from_obj(obj: Any, where: str = "matrix") -> np.ndarray:
    re = np.asarray(_require(obj, "re", where), dtype=float)
    im_raw = obj.get("im")
    im = np.zeros_like(re) if im_raw is None else np.asarray(im_raw, dtype=float)
    if re.ndim != 2 or re.shape != im.shape:
        raise ValueError(f"{where}: 're' and 'im' must be equal-shape 2-d tables")
    return re + 1j * im


def matrix_to_obj(entries: np.ndarray) -> dict:
    arr = np.asarray(entries, dtype=complex)
    return {"re": arr.real.tolist(), "im": arr.imag.tolist()}


def operator_from_obj(obj: Any, space: FiniteMeasureSpace) -> OperatorMatrix:
    return OperatorMatrix(space, matrix_from_obj(obj, "operator"))


def endomorphism_from_obj(obj: Any, space: FiniteMeasureSpace) -> Endomorphism:
    table = _require(obj, "map", "endomorphism")
    if not isinstance(table, list) or not all(isinstance(j, int) for j in table):
        raise ValueError("endomorphism: field 'map' must be a list of integers")
    return Endomorphism(space, [j - 1 for j in table])


def endomorphism_to_obj(endo: Endomorphism) -> dict:
    return {"map": [int(j) + 1 for j in endo.table]}


def seq_from_obj(obj: Any) -> EventuallyPeriodicSeq:
    left = [_complex_in(v, "seq.left") for v in _require(obj, "left", "seq")]
    right = [_complex_in(v, "seq.right") for v in _require(obj, "right", "seq")]
    k0 = obj.get("k0", 0)
    if not isinstance(k0, int):
        raise ValueError("seq: field 'k0' must be an integer")
    middle_raw = obj.get("middle", {})
    if not isinstance(middle_raw, dict):
        raise ValueError("seq: field 'middle' must be an object keyed by index")
    middle = {}
    for key, val in middle_raw.items():
        try:
            k = int(key)
        except ValueError:
            raise ValueError(f"seq.middle: key {key!r} is not an integer") from None
        middle[k] = _complex_in(val, f"seq.middle[{key}]")
    return EventuallyPeriodicSeq(left, right, middle, k0)


def seq_to_obj(seq: EventuallyPeriodicSeq) -> dict:
    return {
        "left": [_complex_out(v) for v in seq.left],
        "right": [_complex_out(v) for v in seq.right],
        "middle": {str(k): _complex_out(v) for k, v in sorted(seq.middle.items())},
        "k0": seq.k0,
    }


def bandop_from_obj(obj: Any) -> PeriodicBandOperator:
    tau = _require(obj, "tau", "band operator")
    band = _require(obj, "band", "band operator")
    if not isinstance(tau, int) or not isinstance(band, int):
        raise ValueError("band operator: 'tau' and 'band' must be integers")
    rows = _require(obj, "coeffs", "band operator")
    if not isinstance(rows, list):
        raise ValueError("band operator: 'coeffs' must be a list of rows")
    coeffs = [[_complex_in(v, "band operator.coeffs") for v in row] for row in rows]
    pert = []
    for item in obj.get("perturbation", []):
        if not (isinstance(item, list) and len(item) == 3
                and isinstance(item[0], int) and isinstance(item[1], int)):
            raise ValueError(
                "band operator: each perturbation item must be [row, col, value]"
            )
        pert.append((item[0], item[1], _complex_in(item[2], "band operator.perturbation")))
    return PeriodicBandOperator(tau, band, coeffs, pert)


def bandop_to_obj(op: PeriodicBandOperator) -> dict:
    return {
        "tau": op.tau,
        "band": op.band,
        "coeffs": [[_complex_out(v) for v in row] for row in op.coeffs],
        "perturbation": [[r, c, _complex_out(v)] for r, c, v in op.perturbation],
    }
