"""String operators along paths and their elementary deformation moves."""

from __future__ import annotations

from enum import Enum

from .lattice import (
    Bond,
    FinitePath,
    PathKind,
    Plaquette,
    SemiInfinitePath,
    SemiInfiniteRibbon,
    Vertex,
    plaq,
    star,
    thread_dual,
    thread_primal,
)
from .pauli import PauliOperator, X, Z, multiply


class StringType(Enum):
    TYPE_X = "X"
    TYPE_Y = "Y"
    TYPE_Z = "Z"


_KIND_FOR_TYPE = {
    StringType.TYPE_Z: PathKind.PRIMAL,
    StringType.TYPE_X: PathKind.DUAL,
    StringType.TYPE_Y: PathKind.RIBBON,
}


def string_operator(path: FinitePath, t: StringType) -> PauliOperator:
    """Z letters along a primal path, X letters on the bonds a dual path
    crosses, and for a ribbon the X part multiplied on the left of the Z
    part (this order fixes the Z4 phase everywhere downstream).

    Repeated bonds cancel mod 2 before letters are placed, so the operator
    depends only on the support parity of the path.
    """
    want = _KIND_FOR_TYPE[t]
    if path.kind is not want:
        raise ValueError(f"{t.value}-type strings need a {want.value} path, got {path.kind.value}")
    if t is StringType.TYPE_Z:
        return PauliOperator.from_map({b: Z for b in path.support()})
    if t is StringType.TYPE_X:
        return PauliOperator.from_map({b: X for b in path.support()})
    x_op = PauliOperator.from_map({b: X for b in path.dual_part.support()})
    z_op = PauliOperator.from_map({b: Z for b in path.primal_part.support()})
    return multiply(x_op, z_op)


def truncated_string(path: SemiInfinitePath | SemiInfiniteRibbon, n: int,
                     t: StringType) -> PauliOperator:
    """String operator of the first ``n`` bonds of a semi-infinite path."""
    return string_operator(path.truncate(n), t)


def deform(path: FinitePath, *, plaquette: Plaquette | None = None,
           vertex: Vertex | None = None) -> FinitePath:
    """Slide a path across one plaquette (primal) or one star (dual).

    The new path has the same endpoints and support equal to the symmetric
    difference with the plaquette/star boundary, so the two string operators
    differ exactly by multiplication with B_p (resp. A_v).
    """
    if (plaquette is None) == (vertex is None):
        raise ValueError("deform needs exactly one of plaquette= or vertex=")
    if path.kind is PathKind.PRIMAL:
        if plaquette is None:
            raise ValueError("primal paths deform across plaquettes")
        cell_bonds = plaq(plaquette)
        if not (path.support() & cell_bonds):
            raise ValueError(f"plaquette {plaquette} does not meet the path")
        new_support = path.support() ^ cell_bonds
        return thread_primal(new_support, path.endpoints[0].vertex, path.endpoints[1].vertex)
    if path.kind is PathKind.DUAL:
        if vertex is None:
            raise ValueError("dual paths deform across stars")
        star_bonds = star(vertex)
        if not (path.support() & star_bonds):
            raise ValueError(f"star at {vertex} does not meet the path")
        new_support = path.support() ^ star_bonds
        return thread_dual(new_support, path.endpoints[0].plaquette, path.endpoints[1].plaquette)
    raise ValueError("ribbons deform part-wise; deform the primal or dual part")
