"""JSON algebroid spec files.

Example::

    {"version": 1, "base_vars": ["x", "y"], "rank": 2,
     "frame": ["X1", "X2"], "coframe": ["a1", "a2"],
     "anchor": [["1", "0"], ["0", "1"]],
     "structure": {"1,2": ["0", "0"]},
     "connection": {"theta": ["0", "0"]}}

Matrix entries are polynomial-grammar strings.  Structure keys are 1-based
``"i,j"`` with ``i < j``; missing keys are zero.  The connection block is
optional and defaults to theta = 0.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebroid import AlgebroidSpec, InvalidSpecError
from .parsing import ParseError, parse_poly

SPEC_VERSION = 1


class SpecFileError(InvalidSpecError):
    pass


def _poly(text, base_vars, where):
    if not isinstance(text, str):
        raise SpecFileError(f"{where}: expected a polynomial string, got {text!r}")
    try:
        return parse_poly(text, base_vars)
    except ParseError as exc:
        raise SpecFileError(f"{where}: {exc}") from None


def spec_from_dict(data: dict, name: str = ""):
    """Build ``(AlgebroidSpec, theta)`` from a decoded spec document."""
    if not isinstance(data, dict):
        raise SpecFileError("spec document must be a JSON object")
    if data.get("version") != SPEC_VERSION:
        raise SpecFileError(f"unsupported or missing version {data.get('version')!r} (expected {SPEC_VERSION})")
    try:
        rank = data["rank"]
    except KeyError:
        raise SpecFileError("missing field 'rank'") from None
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SpecFileError("'rank' must be a non-negative integer")
    base_vars = data.get("base_vars", [])
    frame = data.get("frame") or [f"X{i + 1}" for i in range(rank)]
    coframe = data.get("coframe") or [f"a{i + 1}" for i in range(rank)]
    for field_name, names in (("base_vars", base_vars), ("frame", frame), ("coframe", coframe)):
        if not isinstance(names, list) or not all(isinstance(s, str) and s.isidentifier() for s in names):
            raise SpecFileError(f"'{field_name}' must be a list of identifiers")

    m = len(base_vars)
    raw_anchor = data.get("anchor", [["0"] * m for _ in range(rank)])
    if not isinstance(raw_anchor, list) or len(raw_anchor) != rank or any(
        not isinstance(row, list) or len(row) != m for row in raw_anchor
    ):
        raise SpecFileError(f"'anchor' must be a {rank}x{m} matrix")
    anchor = tuple(
        tuple(_poly(c, base_vars, f"anchor[{i + 1}][{mu + 1}]") for mu, c in enumerate(row))
        for i, row in enumerate(raw_anchor)
    )

    structure = {}
    raw_structure = data.get("structure", {})
    if not isinstance(raw_structure, dict):
        raise SpecFileError("'structure' must be an object")
    for key, vec in raw_structure.items():
        try:
            i, j = (int(part) for part in key.split(","))
        except ValueError:
            raise SpecFileError(f"bad structure key {key!r}; expected 'i,j'") from None
        if not 1 <= i < j <= rank:
            raise SpecFileError(f"structure key {key!r} must satisfy 1 <= i < j <= rank")
        if not isinstance(vec, list) or len(vec) != rank:
            raise SpecFileError(f"structure[{key!r}] must list {rank} polynomials")
        structure[(i - 1, j - 1)] = tuple(_poly(c, base_vars, f"structure[{key}][{k + 1}]") for k, c in enumerate(vec))

    theta = ()
    conn = data.get("connection")
    if conn is not None:
        raw_theta = conn.get("theta") if isinstance(conn, dict) else None
        if not isinstance(raw_theta, list) or len(raw_theta) != rank:
            raise SpecFileError(f"'connection.theta' must list {rank} polynomials")
        theta = tuple(_poly(c, base_vars, f"connection.theta[{k + 1}]") for k, c in enumerate(raw_theta))

    try:
        spec = AlgebroidSpec(rank, tuple(base_vars), anchor, structure, tuple(frame), tuple(coframe), name)
    except InvalidSpecError as exc:
        raise SpecFileError(str(exc)) from None
    return spec, theta


def load_spec(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    return spec_from_dict(data, name=path.stem)


def spec_to_dict(spec: AlgebroidSpec, theta=()) -> dict:
    names = list(spec.base_vars)
    out = {
        "version": SPEC_VERSION,
        "base_vars": names,
        "rank": spec.rank,
        "frame": list(spec.frame),
        "coframe": list(spec.coframe),
        "anchor": [[c.render(names) for c in row] for row in spec.anchor],
        "structure": {
            f"{i + 1},{j + 1}": [c.render(names) for c in vec] for (i, j), vec in sorted(spec.structure.items())
        },
    }
    if theta and any(theta):
        out["connection"] = {"theta": [t.render(names) for t in theta]}
    return out
