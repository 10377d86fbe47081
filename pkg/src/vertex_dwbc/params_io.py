"""JSON reading and writing of model parameters.

Document layout::

    {"eta": [re, im], "lambdas": [[re, im], ...], "nus": [[re, im], ...]}

or, for the spin-1 lattice, ``zs`` / ``ws`` in place of ``lambdas`` / ``nus``.
Floats are written with ``repr`` precision, so a write/read/write cycle is
byte-stable.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ParseError
from .weights import ModelParams6, ModelParams19

_KEYS6 = ("lambdas", "nus")
_KEYS19 = ("zs", "ws")


def _pair(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value, 0.0]
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected [re, im], got {value!r}")
    try:
        re, im = float(value[0]), float(value[1])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: non-numeric entry {value!r}") from exc
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError(f"{where}: non-finite entry {value!r}")
    return complex(re, im)


def _vector(doc: dict, key: str) -> list[complex]:
    raw = doc[key]
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"field '{key}': expected a non-empty list")
    return [_pair(v, f"field '{key}'[{i}]") for i, v in enumerate(raw)]


def params_from_dict(doc) -> ModelParams6 | ModelParams19:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected a JSON object")
    if "eta" not in doc:
        raise ParseError("field 'eta': missing")
    eta = _pair(doc["eta"], "field 'eta'")
    for keys, cls in ((_KEYS6, ModelParams6), (_KEYS19, ModelParams19)):
        if keys[0] in doc or keys[1] in doc:
            missing = [k for k in keys if k not in doc]
            if missing:
                raise ParseError(f"field '{missing[0]}': missing")
            rows, cols = _vector(doc, keys[0]), _vector(doc, keys[1])
            if len(rows) != len(cols):
                raise ParseError(f"fields '{keys[0]}'/'{keys[1]}': lengths {len(rows)} and {len(cols)} differ")
            return cls(eta, rows, cols)
    raise ParseError("expected either 'lambdas'/'nus' or 'zs'/'ws'")


def params_to_dict(params: ModelParams6 | ModelParams19) -> dict:
    def enc(x):
        x = complex(x)
        return [x.real, x.imag]

    if isinstance(params, ModelParams6):
        rows, cols, keys = params.lambdas, params.nus, _KEYS6
    else:
        rows, cols, keys = params.zs, params.ws, _KEYS19
    return {"eta": enc(params.eta), keys[0]: [enc(x) for x in rows], keys[1]: [enc(x) for x in cols]}


def dumps(params: ModelParams6 | ModelParams19) -> str:
    return json.dumps(params_to_dict(params), indent=1) + "\n"


def loads(text: str, source: str = "<string>") -> ModelParams6 | ModelParams19:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return params_from_dict(doc)
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}") from None


def read_params(path) -> ModelParams6 | ModelParams19:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return loads(text, str(path))


def write_params(path, params: ModelParams6 | ModelParams19) -> None:
    Path(path).write_text(dumps(params))
