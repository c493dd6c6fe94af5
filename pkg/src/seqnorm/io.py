"""JSON formats for matrices, weights, space specs and reports."""

import json
import math
from pathlib import Path

import numpy as np

from ._validation import check_matrix
from .spaces import LORENTZ, LP, LP_WEIGHTED, SpaceSpec, WeightSeq


def matrix_to_dict(A):
    A = check_matrix(A)
    return {"rows": A.shape[0], "cols": A.shape[1], "entries": A.tolist()}


def matrix_from_dict(d):
    A = check_matrix(np.array(d["entries"], dtype=float).reshape(-1, int(d["cols"])))
    if A.shape != (int(d["rows"]), int(d["cols"])):
        raise ValueError(f"entries do not match declared shape {d['rows']}x{d['cols']}")
    return A


def write_json(obj, path):
    # repr-exact floats: json uses the shortest round-tripping representation
    text = json.dumps(obj, indent=None, allow_nan=False)
    if path in (None, "-"):
        print(text)
    else:
        Path(path).write_text(text + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


def load_matrix(path):
    return matrix_from_dict(read_json(path))


def save_matrix(A, path):
    write_json(matrix_to_dict(A), path)


def load_weights(path):
    return WeightSeq(np.asarray(read_json(path), dtype=float))


def _parse_p(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def parse_space(text):
    """Parse ``lp:<p>``, ``lpw:<p>:<weights.json>`` or ``lorentz:<p>:<weights.json>``."""
    parts = text.split(":", 2)
    kind = parts[0].lower()
    if kind == "lp" and len(parts) == 2:
        return SpaceSpec(LP, _parse_p(parts[1]))
    if kind in ("lpw", "lorentz") and len(parts) == 3:
        return SpaceSpec(LP_WEIGHTED if kind == "lpw" else LORENTZ,
                         _parse_p(parts[1]), load_weights(parts[2]))
    raise ValueError(
        f"bad space spec {text!r}; expected lp:<p>, lpw:<p>:<file> or lorentz:<p>:<file>")
