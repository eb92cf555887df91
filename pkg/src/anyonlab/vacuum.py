"""The translation-invariant ground-state functional, evaluated exactly.

A Pauli monomial has non-zero expectation exactly when it is a phase times
a finite product of star and plaquette operators.  Because the plane has
trivial topology, such a product is detected constructively: the X-support
must be the boundary of a unique finite vertex set (recovered by an
even-odd scanline rule) and the Z-support the boundary of a unique finite
plaquette set.  The functional extends linearly to finite combinations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import Bond, HORIZONTAL, Plaquette, VERTICAL, Vertex, plaq, star
from .pauli import (
    GR_ZERO,
    GaussianRational,
    PauliOperator,
    QuasiLocalOperator,
    X,
    Y,
    Z,
    as_quasi_local,
    i_power,
    multiply,
)


@dataclass(frozen=True)
class StabilizerWitness:
    """Certificate that ``P = i**phase * prod(A_v for v in stars) * prod(B_p)``."""

    stars: frozenset[Vertex]
    plaquettes: frozenset[Plaquette]
    phase: int

    def recompose(self) -> PauliOperator:
        op = PauliOperator.identity(self.phase)
        for v in sorted(self.stars):
            op = multiply(op, _star_op(v))
        for p in sorted(self.plaquettes):
            op = multiply(op, _plaq_op(p))
        return op


def _star_op(v: Vertex) -> PauliOperator:
    return PauliOperator.from_map({b: X for b in star(v)})


def _plaq_op(p: Plaquette) -> PauliOperator:
    return PauliOperator.from_map({b: Z for b in plaq(p)})


def decompose_xz(p: PauliOperator) -> tuple[PauliOperator, PauliOperator, int]:
    """Write ``p = i**k * Xpart * Zpart`` with pure-X and pure-Z factors.

    Per bond ``Y = i * X * Z``; bonds are independent, so the phase picks up
    one factor of ``i`` per Y letter.
    """
    xmap: dict[Bond, str] = {}
    zmap: dict[Bond, str] = {}
    n_y = 0
    for b, l in p.letters:
        if l == X:
            xmap[b] = X
        elif l == Z:
            zmap[b] = Z
        else:
            xmap[b] = X
            zmap[b] = Z
            n_y += 1
    return (PauliOperator.from_map(xmap), PauliOperator.from_map(zmap),
            (p.phase + n_y) % 4)


def _interior_vertices(x_support: frozenset[Bond]) -> frozenset[Vertex] | None:
    """Vertex set whose star-product boundary is ``x_support``, if one exists.

    Scanline parity: a vertex (x, y) is interior iff an odd number of
    horizontal support bonds lie strictly to its left in row y.
    """
    rows: dict[int, list[int]] = {}
    for b in x_support:
        if b.orientation == HORIZONTAL:
            rows.setdefault(b.y, []).append(b.x)
    interior: set[Vertex] = set()
    for y, xs in rows.items():
        xs.sort()
        if len(xs) % 2:
            return None
        for a, b in zip(xs[0::2], xs[1::2]):
            interior.update((x, y) for x in range(a + 1, b + 1))
    if _boundary_of_stars(interior) != x_support:
        return None
    return frozenset(interior)


def _interior_plaquettes(z_support: frozenset[Bond]) -> frozenset[Plaquette] | None:
    """Plaquette set whose product boundary is ``z_support``, if one exists."""
    rows: dict[int, list[int]] = {}
    for b in z_support:
        if b.orientation == VERTICAL:
            rows.setdefault(b.y, []).append(b.x)
    interior: set[Plaquette] = set()
    for y, xs in rows.items():
        xs.sort()
        if len(xs) % 2:
            return None
        for a, b in zip(xs[0::2], xs[1::2]):
            interior.update((x, y) for x in range(a, b))
    if _boundary_of_plaquettes(interior) != z_support:
        return None
    return frozenset(interior)


def _boundary_of_stars(vertices: set[Vertex]) -> frozenset[Bond]:
    acc: set[Bond] = set()
    for v in vertices:
        acc.symmetric_difference_update(star(v))
    return frozenset(acc)


def _boundary_of_plaquettes(cells: set[Plaquette]) -> frozenset[Bond]:
    acc: set[Bond] = set()
    for p in cells:
        acc.symmetric_difference_update(plaq(p))
    return frozenset(acc)


def is_stabilizer_product(p: PauliOperator) -> StabilizerWitness | None:
    """Witness for ``p`` being a phase times a star/plaquette product, or None."""
    xpart, zpart, _ = decompose_xz(p)
    stars = _interior_vertices(xpart.support)
    if stars is None:
        return None
    cells = _interior_plaquettes(zpart.support)
    if cells is None:
        return None
    recomposed = multiply(
        PauliOperator.from_map({b: X for b in xpart.support}),
        PauliOperator.from_map({b: Z for b in zpart.support}),
    )
    if recomposed.letters != p.letters:  # pragma: no cover - boundary check is exact
        raise AssertionError("witness recomposition produced different letters")
    return StabilizerWitness(stars, cells, (p.phase - recomposed.phase) % 4)


def monomial_expectation(p: PauliOperator) -> GaussianRational:
    witness = is_stabilizer_product(p)
    if witness is None:
        return GR_ZERO
    return i_power(witness.phase)


def vacuum_expectation(a: QuasiLocalOperator | PauliOperator) -> GaussianRational:
    """Ground-state expectation, exact; linear over the combination's terms."""
    value = GR_ZERO
    for mono, coeff in as_quasi_local(a).monomials():
        w = is_stabilizer_product(mono)
        if w is not None:
            value = value + coeff.times_i_power(w.phase)
    return value
