"""Model persistence: versioned JSON with tagged numpy arrays.

Floats are serialized with repr semantics, so a load restores bit-identical
arrays and predictions.
"""

from __future__ import annotations

import json

import numpy as np

from .base import TrainedModel

_FORMAT = "tasksim-model"
_VERSION = 1


def _encode(value):
    if isinstance(value, np.ndarray):
        return {"__nd__": value.tolist(), "dtype": str(value.dtype)}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode(value):
    if isinstance(value, dict):
        if "__nd__" in value:
            return np.array(value["__nd__"], dtype=value["dtype"])
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


def save_model(model: TrainedModel, path) -> None:
    payload = {
        "format": _FORMAT,
        "version": _VERSION,
        "algorithm": model.algorithm,
        "classes": list(model.classes),
        "seed": model.seed,
        "parameters": _encode(model.parameters),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"))
        fh.write("\n")


def load_model(path) -> TrainedModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != _FORMAT:
        raise ValueError(f"not a {_FORMAT} file")
    if payload.get("version") != _VERSION:
        raise ValueError(f"unsupported model version {payload.get('version')!r}")
    return TrainedModel(
        algorithm=payload["algorithm"],
        classes=tuple(payload["classes"]),
        parameters=_decode(payload["parameters"]),
        seed=payload["seed"],
    )
