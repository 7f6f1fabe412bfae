"""JSON readers and writers for fans, polytope presentations and psi matrices.

Formats:

* fan: ``{"dimension": n, "generators": [[int, ...], ...], "maximal_cones": [[1-based], ...]}``
* polytope: ``{"dimension": n, "A": [[rational, ...], ...], "b": [rational, ...]}``
* psi: ``{"psi": [[[re, im], ...], ...]}`` with ``m`` rows and ``l`` columns

Rationals are JSON integers or strings ``"p/q"``. Errors name the file,
the JSON line/column for syntax problems, and the field path otherwise.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .errors import InputError
from .fan import Fan
from .linalg import Gaussian
from .polytope import PolytopePresentation

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _where(source: str, field: str) -> str:
    return f"{source}: field '{field}'" if source else f"field '{field}'"


def parse_rational(value: Any, field: str, source: str = "") -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{_where(source, field)}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"{_where(source, field)}: expected an integer or a 'p/q' string, got {value!r}")


def _parse_int(value: Any, field: str, source: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{_where(source, field)}: expected an integer, got {value!r}")
    return value


def _require(data: Any, key: str, kind: type, source: str):
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be a JSON object")
    if key not in data:
        raise InputError(f"{_where(source, key)}: missing")
    value = data[key]
    if kind is int:
        return _parse_int(value, key, source)
    if not isinstance(value, kind):
        raise InputError(f"{_where(source, key)}: expected a {kind.__name__}")
    return value


def fan_from_dict(data: Any, source: str = "") -> Fan:
    n = _require(data, "dimension", int, source)
    if n < 0:
        raise InputError(f"{_where(source, 'dimension')}: must be nonnegative")
    gens = _require(data, "generators", list, source)
    rows = []
    for i, row in enumerate(gens):
        if not isinstance(row, list):
            raise InputError(f"{_where(source, f'generators[{i}]')}: expected a list")
        if len(row) != n:
            raise InputError(f"{_where(source, f'generators[{i}]')}: has {len(row)} entries, expected {n}")
        rows.append([_parse_int(x, f"generators[{i}][{j}]", source) for j, x in enumerate(row)])
    cones = []
    for c, cone in enumerate(_require(data, "maximal_cones", list, source)):
        if not isinstance(cone, list):
            raise InputError(f"{_where(source, f'maximal_cones[{c}]')}: expected a list")
        idx = []
        for j, x in enumerate(cone):
            x = _parse_int(x, f"maximal_cones[{c}][{j}]", source)
            if not 1 <= x <= len(rows):
                raise InputError(f"{_where(source, f'maximal_cones[{c}][{j}]')}: index {x} "
                                 f"outside 1..{len(rows)}")
            idx.append(x - 1)
        if len(set(idx)) != len(idx):
            raise InputError(f"{_where(source, f'maximal_cones[{c}]')}: repeated index")
        cones.append(idx)
    return Fan.from_data(n, rows, cones)


def polytope_from_dict(data: Any, source: str = "") -> PolytopePresentation:
    n = _require(data, "dimension", int, source)
    A = _require(data, "A", list, source)
    b = _require(data, "b", list, source)
    if len(A) != len(b):
        raise InputError(f"{source}: 'A' has {len(A)} rows but 'b' has {len(b)} entries")
    rows = []
    for i, row in enumerate(A):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{_where(source, f'A[{i}]')}: expected a list of {n} rationals")
        rows.append([parse_rational(x, f"A[{i}][{j}]", source) for j, x in enumerate(row)])
    rhs = [parse_rational(x, f"b[{i}]", source) for i, x in enumerate(b)]
    return PolytopePresentation.from_data(n, rows, rhs)


def psi_from_dict(data: Any, source: str = "") -> list[list[Gaussian]]:
    rows = _require(data, "psi", list, source)
    out = []
    width = None
    for k, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{_where(source, f'psi[{k}]')}: expected a list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{_where(source, f'psi[{k}]')}: has {len(row)} entries, expected {width}")
        entries = []
        for j, pair in enumerate(row):
            field = f"psi[{k}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f"{_where(source, field)}: expected a pair [re, im]")
            entries.append(Gaussian(parse_rational(pair[0], field + "[0]", source),
                                    parse_rational(pair[1], field + "[1]", source)))
        out.append(entries)
    return out


def detect_kind(data: Any) -> str:
    """``"fan"``, ``"polytope"`` or ``"psi"`` from the keys present."""
    if isinstance(data, dict):
        if "maximal_cones" in data or "generators" in data:
            return "fan"
        if "A" in data and "b" in data:
            return "polytope"
        if "psi" in data:
            return "psi"
    raise InputError("input is neither a fan, a polytope nor a psi file")


def read_fan(path: PathLike) -> Fan:
    return fan_from_dict(load_json(path), str(path))


def read_polytope(path: PathLike) -> PolytopePresentation:
    return polytope_from_dict(load_json(path), str(path))


def read_psi(path: PathLike) -> list[list[Gaussian]]:
    return psi_from_dict(load_json(path), str(path))


def fan_to_dict(fan: Fan) -> dict:
    return {
        "dimension": fan.n,
        "generators": [[int(x) if x.denominator == 1 else str(x) for x in row] for row in fan.generators],
        "maximal_cones": fan.complex.to_one_based() if fan.cones else [],
    }


def polytope_to_dict(P: PolytopePresentation) -> dict:
    def enc(x: Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return {"dimension": P.n, "A": [[enc(x) for x in row] for row in P.A], "b": [enc(x) for x in P.b]}


def psi_to_dict(psi) -> dict:
    lifted = [[Gaussian._lift(z) for z in row] for row in psi]
    return {"psi": [[[str(z.re), str(z.im)] for z in row] for row in lifted]}


def to_jsonable(obj: Any) -> Any:
    """Recursively convert Fractions and Gaussians to strings, sets to sorted lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Gaussian):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, float):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)
