"""Built-in example algebroids.

Each entry returns ``(AlgebroidSpec, theta)``.  The Lie algebras live over a
point (no base variables, zero anchor); ``tangent-r2`` is the tangent bundle
of the plane with the coordinate frame.
"""

from __future__ import annotations

from .algebroid import AlgebroidSpec
from .scalar import Scalar


def _abelian(n):
    frame = tuple(f"e{i + 1}" for i in range(n))
    coframe = tuple(f"a{i + 1}" for i in range(n))
    return AlgebroidSpec(n, frame=frame, coframe=coframe, name=f"abelian-n{n}"), ()


def _lie(name, n, structure):
    frame = tuple(f"e{i + 1}" for i in range(n))
    coframe = tuple(f"a{i + 1}" for i in range(n))
    return AlgebroidSpec(n, structure=structure, frame=frame, coframe=coframe, name=name), ()


def _tangent(curved):
    spec = AlgebroidSpec(
        2,
        base_vars=("x", "y"),
        anchor=((1, 0), (0, 1)),
        frame=("Dx", "Dy"),
        coframe=("dx", "dy"),
        name="tangent-r2-curved" if curved else "tangent-r2",
    )
    theta = (Scalar.var(1, 2), Scalar.zero(2)) if curved else ()
    return spec, theta


_BUILDERS = {
    "abelian-n2": lambda: _abelian(2),
    "abelian-n3": lambda: _abelian(3),
    # [e1, e2] = e3
    "heisenberg": lambda: _lie("heisenberg", 3, {(0, 1): (0, 0, 1)}),
    # h = e1, e = e2, f = e3: [h, e] = 2e, [h, f] = -2f, [e, f] = h
    "sl2": lambda: _lie("sl2", 3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}),
    # [e1, e2] = e2
    "aff1": lambda: _lie("aff1", 2, {(0, 1): (0, 1)}),
    "tangent-r2": lambda: _tangent(False),
    # theta = (y, 0): curvature R(Dx, Dy) = -1
    "tangent-r2-curved": lambda: _tangent(True),
}

NAMES = tuple(_BUILDERS)
FLAT_NAMES = tuple(n for n in NAMES if n != "tangent-r2-curved")


def get(name: str):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(NAMES)}") from None
