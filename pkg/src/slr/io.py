"""CSV ingestion and JSON (de)serialization of fitted models."""

import csv
import json
import math
import os

import numpy as np

from .coda import BalancePartition
from .exceptions import (
    BinaryResponseNotIn01Error,
    InputError,
    NonNumericError,
    RaggedRowsError,
    ResponseLengthMismatchError,
    ZeroWithoutPseudocountError,
)
from .glm import BINOMIAL, check_family
from .model import SlrModel

__all__ = ["Dataset", "load_dataset", "model_to_dict", "model_from_dict", "dumps"]


class Dataset:
    """Parsed input: closed compositions, response, names and sample ids."""

    def __init__(self, X, y, feature_names, sample_ids):
        self.X = X
        self.y = y
        self.feature_names = feature_names
        self.sample_ids = sample_ids

    def __iter__(self):
        # allows ``X, y = load_dataset(...)``
        return iter((self.X, self.y))


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise InputError(f"{path}: empty file")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRowsError(f"{path}: line {i + 1} has {len(row)} fields, expected {width}")
    return rows


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def _parse(cell, path, line, column):
    try:
        v = float(cell)
    except ValueError:
        raise NonNumericError(f"{path}: line {line}, column {column!r}: {cell!r} is not a number") from None
    if not math.isfinite(v):
        raise NonNumericError(f"{path}: line {line}, column {column!r}: non-finite value")
    return v


def _read_response_file(path):
    rows = _read_rows(path)
    if len(rows[0]) != 1:
        raise InputError(f"{path}: response file must have a single column")
    if not _is_number(rows[0][0]):
        rows = rows[1:]
    return np.array([_parse(r[0], path, i + 2, "response") for i, r in enumerate(rows)])


def load_dataset(path, response=None, pseudocount=None, family=None, id_column="auto"):
    """Read a samples-by-features CSV into closed compositions.

    Parameters
    ----------
    path : str
        Comma-separated file, header row of feature names, one sample per row.
    response : str, optional
        Either the name of a column of ``path`` holding the response, or the
        path of a single-column file aligned with the rows. Without it ``y``
        is None.
    pseudocount : float, optional
        Added to every cell before closure. Without it any zero is an error.
    family : {"gaussian", "binomial"}, optional
        When binomial, the response must be coded 0/1.
    id_column : {"auto", True, False}
        Whether the first column holds sample ids. ``"auto"`` treats it as an
        id column if its header is empty or any of its values is non-numeric.

    Returns
    -------
    Dataset
        Unpacks as ``X, y``.
    """
    rows = _read_rows(path)
    header, body = [h.strip() for h in rows[0]], rows[1:]
    if not body:
        raise InputError(f"{path}: no data rows")
    if id_column == "auto":
        id_column = header[0] == "" or not all(_is_number(r[0]) for r in body)
    cols = list(range(1 if id_column else 0, len(header)))
    sample_ids = [r[0] for r in body] if id_column else [str(i) for i in range(len(body))]

    y = None
    if response is not None:
        if response in [header[c] for c in cols]:
            rc = header.index(response)
            cols.remove(rc)
            y = np.array([_parse(r[rc], path, i + 2, response) for i, r in enumerate(body)])
        elif os.path.exists(response):
            y = _read_response_file(response)
            if y.size != len(body):
                raise ResponseLengthMismatchError(
                    f"{response}: {y.size} responses for {len(body)} samples"
                )
        else:
            raise InputError(f"response {response!r} is neither a column of {path} nor a file")

    names = [header[c] for c in cols]
    if len(set(names)) != len(names):
        raise InputError(f"{path}: duplicate feature names")
    if len(names) < 2:
        raise InputError(f"{path}: need at least 2 feature columns")
    X = np.array([[_parse(r[c], path, i + 2, header[c]) for c in cols] for i, r in enumerate(body)])
    neg = np.argwhere(X < 0)
    if neg.size:
        i, j = neg[0]
        raise InputError(f"{path}: line {i + 2}, column {names[j]!r}: negative abundance")
    if pseudocount is not None:
        if not pseudocount > 0:
            raise InputError("pseudocount must be positive")
        X = X + pseudocount
    zero = np.argwhere(X == 0)
    if zero.size:
        i, j = zero[0]
        raise ZeroWithoutPseudocountError(
            f"{path}: line {i + 2}, column {names[j]!r} is zero; pass --pseudocount"
        )
    if np.any(X.sum(axis=1) == 0):
        raise InputError(f"{path}: a sample has zero total")
    X = X / X.sum(axis=1, keepdims=True)

    if y is not None and family is not None and check_family(family) == BINOMIAL:
        if not np.all((y == 0) | (y == 1)):
            raise BinaryResponseNotIn01Error("binomial response must be coded 0/1")
    return Dataset(X, y, names, sample_ids)


def model_to_dict(model: SlrModel):
    return {
        "plus": model.plus_names,
        "minus": model.minus_names,
        "theta0": model.theta0,
        "theta1": model.theta1,
        "family": model.family,
        "m": model.m,
        "features": list(model.feature_names),
    }


def model_from_dict(d, feature_names=None):
    """Rebuild a model; ``feature_names`` (default: the stored ones) sets the column order."""
    names = list(d["features"] if feature_names is None else feature_names)
    pos = {name: j for j, name in enumerate(names)}
    missing = [s for s in d["plus"] + d["minus"] if s not in pos]
    if missing:
        raise InputError(f"model variables missing from data: {missing}")
    part = BalancePartition([pos[s] for s in d["plus"]], [pos[s] for s in d["minus"]])
    return SlrModel(
        partition=part,
        theta0=float(d["theta0"]),
        theta1=float(d["theta1"]),
        family=check_family(d["family"]),
        m=int(d.get("m", len(part.active))),
        p=len(names),
        feature_names=tuple(names),
    )


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj):
    """Serialize to JSON; floats use the shortest repr that round-trips."""
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"
