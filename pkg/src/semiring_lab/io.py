"""JSON formats for semirings, semimodules, lattices, congruences and verdicts."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import FiniteSemimodule, FiniteSemiring, validate_semimodule, validate_semiring
from .errors import FormatError, ShapeError
from .lattices import FiniteLattice, validate_lattice


def _table(t):
    return np.asarray(t).astype(int).tolist()


def semiring_to_dict(S: FiniteSemiring) -> dict:
    return {
        "name": S.name,
        "elements": list(S.labels),
        "zero": S.zero,
        "one": S.one,
        "add": _table(S.add),
        "mul": _table(S.mul),
    }


def semimodule_to_dict(M: FiniteSemimodule, ring_ref=None) -> dict:
    """Semimodule document; the ring is inlined unless a file reference is given."""
    return {
        "name": M.name,
        "elements": list(M.labels),
        "zero": M.zero,
        "add": _table(M.add),
        "ring": ring_ref if ring_ref is not None else semiring_to_dict(M.ring),
        "action": _table(M.action),
    }


def lattice_to_dict(L: FiniteLattice) -> dict:
    return {"name": L.name, "elements": list(L.labels), "leq": L.leq.astype(int).tolist()}


def to_dict(X) -> dict:
    if isinstance(X, FiniteSemiring):
        return semiring_to_dict(X)
    if isinstance(X, FiniteSemimodule):
        return semimodule_to_dict(X)
    if isinstance(X, FiniteLattice):
        return lattice_to_dict(X)
    if hasattr(X, "to_dict"):
        return X.to_dict()
    raise TypeError(f"no JSON form for {type(X).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text (one line, trailing newline)."""
    if not isinstance(obj, (dict, list)):
        obj = to_dict(obj)
    return json.dumps(obj, ensure_ascii=False) + "\n"


def _need(d, *keys):
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")


def _size(d):
    if "elements" in d:
        if not isinstance(d["elements"], list):
            raise FormatError("'elements' must be a list")
        return len(d["elements"])
    if "add" in d and isinstance(d["add"], list):
        return len(d["add"])
    raise FormatError("cannot determine the carrier size")


def _labels(d, n):
    if "elements" not in d:
        return None
    return [str(x) for x in d["elements"]]


def semiring_from_dict(d) -> FiniteSemiring:
    _need(d, "zero", "one", "add", "mul")
    n = _size(d)
    return validate_semiring(n, d["add"], d["mul"], d["zero"], d["one"], _labels(d, n), d.get("name", ""))


def semimodule_from_dict(d, base: Path | None = None) -> FiniteSemimodule:
    _need(d, "ring", "zero", "add", "action")
    ring = d["ring"]
    if isinstance(ring, str):
        ring = load_json((base or Path(".")) / ring)
    if not isinstance(ring, dict):
        raise FormatError("'ring' must be an object or a file path")
    S = semiring_from_dict(ring)
    n = _size(d)
    return validate_semimodule(S, n, d["add"], d["zero"], d["action"], _labels(d, n), d.get("name", ""))


def lattice_from_dict(d) -> FiniteLattice:
    _need(d, "leq")
    try:
        leq = np.array(d["leq"], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeError("leq: not a rectangular 0/1 table") from exc
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or not np.isin(leq, (0, 1)).all():
        raise ShapeError("leq: expected a square 0/1 table")
    n = len(leq)
    if "elements" in d and len(d["elements"]) != n:
        raise ShapeError("leq size does not match 'elements'")
    return validate_lattice(leq.astype(bool), _labels(d, n), d.get("name", ""))


def kind_of_dict(d) -> str:
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    if "leq" in d:
        return "lattice"
    if "action" in d:
        return "semimodule"
    return "semiring"


def from_dict(d, base: Path | None = None):
    k = kind_of_dict(d)
    if k == "lattice":
        return lattice_from_dict(d)
    if k == "semimodule":
        return semimodule_from_dict(d, base)
    return semiring_from_dict(d)


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load(path):
    """Read and validate a semiring, semimodule or lattice file."""
    path = Path(path)
    return from_dict(load_json(path), path.parent)


def save(X, path):
    Path(path).write_text(dumps(X), encoding="utf-8")
