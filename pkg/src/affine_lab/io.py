"""JSON interchange for groups, affine structures, semi-braces and matched systems.

Every emitted document carries a ``schema`` field. Loaders accept the
emitted form as well as the minimal hand-written forms (a bare table, a group
given by spec string such as ``"cyclic:6"``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .affine import AffineStructure
from .errors import InputError
from .groups import FiniteGroup, group_from_json, parse_group_spec
from .products import MatchedSystem
from .semibrace import SemiBrace


def _plain(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def dumps(obj: Any, indent: int | None = None) -> str:
    """Byte-deterministic JSON: sorted keys, numpy values converted."""
    return json.dumps(_plain(obj), sort_keys=True, indent=indent)


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj, indent=1) + "\n")


def load_group(ref: Any) -> FiniteGroup:
    """A group from a spec string, a path to a JSON file, or an already parsed dict."""
    if isinstance(ref, FiniteGroup):
        return ref
    if isinstance(ref, dict):
        return group_from_json(ref)
    if isinstance(ref, list):
        return group_from_json({"table": ref})
    if isinstance(ref, str):
        if Path(ref).is_file():
            return load_group(read_json(ref))
        return parse_group_spec(ref)
    raise InputError(f"cannot read a group from {type(ref).__name__}")


def _table(data: Any, key: str) -> Any:
    if isinstance(data, list):
        return data
    if isinstance(data, dict) and key in data:
        return data[key]
    raise InputError(f"expected a '{key}' table")


def affine_from_json(data: dict, group: FiniteGroup | None = None) -> AffineStructure:
    if group is None:
        if not isinstance(data, dict) or "group" not in data:
            raise InputError("affine JSON needs a 'group' field (or pass the group separately)")
        group = load_group(data["group"])
    name = data.get("name", "") if isinstance(data, dict) else ""
    return AffineStructure(group, _table(data, "sigma"), name=name)


def load_affine(path: str | Path, group: Any = None) -> AffineStructure:
    return affine_from_json(read_json(path), None if group is None else load_group(group))


def semibrace_from_json(data: dict) -> SemiBrace:
    if not isinstance(data, dict) or "mul" not in data or "add" not in data:
        raise InputError("semi-brace JSON needs 'mul' and 'add'")
    mul = data["mul"]
    G = load_group(mul if not isinstance(mul, list) else {"table": mul, "labels": data.get("labels")})
    if "order" in data and int(data["order"]) != G.order:
        raise InputError("semi-brace JSON 'order' does not match the tables")
    return SemiBrace(G, data["add"], name=data.get("name", ""))


def load_semibrace(path: str | Path) -> SemiBrace:
    return semibrace_from_json(read_json(path))


def matched_from_json(data: dict) -> MatchedSystem:
    try:
        return MatchedSystem(load_group(data["S"]), load_group(data["T"]), data["alpha"],
                             data["beta"], name=data.get("name", ""))
    except (KeyError, TypeError):
        raise InputError("matched-system JSON needs 'S', 'T', 'alpha', 'beta'") from None


def load_matched(ref: str) -> MatchedSystem:
    return matched_from_json(read_json(ref))


def load_hom_images(path: str | Path) -> np.ndarray:
    data = read_json(path)
    return np.asarray(_table(data, "images"), dtype=np.int64)
