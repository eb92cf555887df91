"""Cone-localized string automorphisms and the single-excitation states.

An automorphism is conjugation by a truncated semi-infinite string; for a
finite-support operator the truncation index is computed exactly from the
geometry, beyond which further conjugation acts trivially.  Composing with
the vacuum functional gives the excitation expectation functionals, which
depend only on the start site and not on the chosen path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .lattice import (
    Bond,
    Cone,
    DIRECTIONS,
    FinitePath,
    IntVec,
    PathKind,
    Plaquette,
    SemiInfinitePath,
    SemiInfiniteRibbon,
    SiteKind,
    SiteSpec,
    Vertex,
    combined_site,
    cross,
    empty_dual_path,
    empty_primal_path,
    plaq,
    plaquette_site,
    star,
    vec_add,
    vec_sub,
    vertex_site,
)
from .pauli import (
    GaussianRational,
    PauliOperator,
    QuasiLocalOperator,
    as_quasi_local,
    commutation_sign,
    plaquette_operator,
    star_operator,
)
from .strings import StringType, string_operator
from .vacuum import vacuum_expectation


class SectorLabel(Enum):
    """The four superselection charges, with the Z2 x Z2 group law."""

    ONE = "1"
    X = "X"
    Y = "Y"
    Z = "Z"

    def __mul__(self, other: "SectorLabel") -> "SectorLabel":
        ex = (self in (SectorLabel.X, SectorLabel.Y)) ^ (other in (SectorLabel.X, SectorLabel.Y))
        ez = (self in (SectorLabel.Z, SectorLabel.Y)) ^ (other in (SectorLabel.Z, SectorLabel.Y))
        return _LABEL_FROM_CHARGES[(ex, ez)]

    @property
    def has_star_charge(self) -> bool:
        """True when the sector carries a star defect (Z- or Y-type)."""
        return self in (SectorLabel.Z, SectorLabel.Y)

    @property
    def has_plaquette_charge(self) -> bool:
        return self in (SectorLabel.X, SectorLabel.Y)


_LABEL_FROM_CHARGES = {
    (False, False): SectorLabel.ONE,
    (True, False): SectorLabel.X,
    (False, True): SectorLabel.Z,
    (True, True): SectorLabel.Y,
}

_STRING_TYPE = {SectorLabel.X: StringType.TYPE_X, SectorLabel.Z: StringType.TYPE_Z}


@dataclass(frozen=True)
class SectorSpec:
    """A charge label together with its localizing path and cone.

    X sectors ride a dual path, Z sectors a primal path, Y sectors a
    semi-infinite ribbon starting at a combined site; the trivial sector
    carries no path.  Every truncation of the path must stay in the cone.
    """

    label: SectorLabel
    path: SemiInfinitePath | SemiInfiniteRibbon | None
    cone: Cone | None

    def __post_init__(self) -> None:
        if self.label is SectorLabel.ONE:
            if self.path is not None:
                raise ValueError("the trivial sector has no path")
            return
        if self.path is None or self.cone is None:
            raise ValueError(f"{self.label.value} sector needs a path and a cone")
        if self.label is SectorLabel.Z:
            if not isinstance(self.path, SemiInfinitePath) or self.path.kind is not PathKind.PRIMAL:
                raise ValueError("Z sectors need a primal semi-infinite path")
        elif self.label is SectorLabel.X:
            if not isinstance(self.path, SemiInfinitePath) or self.path.kind is not PathKind.DUAL:
                raise ValueError("X sectors need a dual semi-infinite path")
        else:
            if not isinstance(self.path, SemiInfiniteRibbon):
                raise ValueError("Y sectors need a semi-infinite ribbon")
        for component in self.components():
            if not self.cone.contains_semi_infinite(component.path):
                raise ValueError("sector path leaves its cone")

    @property
    def start(self) -> SiteSpec | None:
        if self.label is SectorLabel.ONE:
            return None
        return self.path.start

    def components(self) -> tuple["SectorComponent", ...]:
        """The X/Z-type string components generating this sector's action."""
        if self.label is SectorLabel.ONE:
            return ()
        if self.label is SectorLabel.Z:
            return (SectorComponent(StringType.TYPE_Z, self.path),)
        if self.label is SectorLabel.X:
            return (SectorComponent(StringType.TYPE_X, self.path),)
        return (
            SectorComponent(StringType.TYPE_X, self.path.dual),
            SectorComponent(StringType.TYPE_Z, self.path.primal),
        )

    def translated(self, delta: IntVec) -> "SectorSpec":
        if self.label is SectorLabel.ONE:
            return self
        return SectorSpec(self.label, self.path.translated(delta), self.cone.translated(delta))


@dataclass(frozen=True)
class SectorComponent:
    string_type: StringType
    path: SemiInfinitePath

    def truncated_operator(self, n: int) -> PauliOperator:
        return string_operator(self.path.truncate(n), self.string_type)


def trivial_sector() -> SectorSpec:
    return SectorSpec(SectorLabel.ONE, None, None)


def _auto_cone(points: Sequence[IntVec], direction: str) -> Cone:
    """A wedge opening along ``direction``, wide enough for the given points.

    The apex backs away from the bounding box of the points until the
    45-degree wedge around the axis contains everything.
    """
    d = DIRECTIONS[direction]
    left = (-d[1], d[0])  # rotate +90
    ray1 = vec_sub(d, left)  # axis - 45 degrees
    ray2 = vec_add(d, left)  # axis + 45 degrees
    span = max(abs(q[0]) + abs(q[1]) for q in points) if points else 0
    base = min(q[0] * d[0] + q[1] * d[1] for q in points) if points else 0
    k = span + abs(base) + 2
    apex = (-d[0] * k, -d[1] * k)
    # recenter on the points' midpoint projected off-axis
    offs = [q[0] * left[0] + q[1] * left[1] for q in points] or [0]
    mid = (min(offs) + max(offs)) // 2
    apex = vec_add(apex, (left[0] * mid, left[1] * mid))
    return Cone(apex, ray1, ray2)


def ray_sector(label: SectorLabel, *, start, direction: str,
               cone: Cone | None = None,
               prefix_vertices: Sequence[Vertex] = (),
               prefix_cells: Sequence[Plaquette] = ()) -> SectorSpec:
    """Convenience builder: straight-ray sector, cone auto-fitted if absent.

    ``start`` is a vertex for Z, a plaquette for X, and a (vertex, plaquette)
    pair for Y; prefixes, when given, must begin at the start site.
    """
    from .lattice import dual_path, primal_path  # local import to avoid cycle noise

    if label is SectorLabel.ONE:
        return trivial_sector()
    if label is SectorLabel.Z:
        vs = list(prefix_vertices) or [start]
        path = SemiInfinitePath(PathKind.PRIMAL, vertex_site(vs[0]), primal_path(vs), direction)
        pts = [path.bond_at(i).endpoints()[j] for i in range(len(path.prefix) + 3) for j in (0, 1)]
        return SectorSpec(label, path, cone or _auto_cone(pts, direction))
    if label is SectorLabel.X:
        cs = list(prefix_cells) or [start]
        path = SemiInfinitePath(PathKind.DUAL, plaquette_site(cs[0]), dual_path(cs), direction)
        pts = [path.bond_at(i).endpoints()[j] for i in range(len(path.prefix) + 3) for j in (0, 1)]
        return SectorSpec(label, path, cone or _auto_cone(pts, direction))
    v, p = start
    combined_site(v, p)  # validates the corner relation
    primal = SemiInfinitePath(PathKind.PRIMAL, vertex_site(v), empty_primal_path(v), direction)
    dual = SemiInfinitePath(PathKind.DUAL, plaquette_site(p), empty_dual_path(p), direction)
    ribbon = SemiInfiniteRibbon(primal, dual)
    if cone is None:
        pts = [primal.bond_at(i).endpoints()[j] for i in range(3) for j in (0, 1)]
        pts += [dual.bond_at(i).endpoints()[j] for i in range(3) for j in (0, 1)]
        cone = _auto_cone(pts, direction)
    return SectorSpec(label, ribbon, cone)


def apply_automorphism(spec: SectorSpec,
                       a: QuasiLocalOperator | PauliOperator) -> QuasiLocalOperator:
    """Conjugate by the sector's string, truncated past the operator's support.

    Conjugating a monomial by a string monomial only flips its sign, so the
    action is an exact term-wise sign map; applying it twice is the identity.
    """
    a = as_quasi_local(a)
    if spec.label is SectorLabel.ONE:
        return a
    strings = [comp.truncated_operator(comp.path.disjoint_index(a.support))
               for comp in spec.components()]
    acc: dict = {}
    for mono, coeff in a.monomials():
        sign = 1
        for s in strings:
            sign *= commutation_sign(s, mono)
        acc[mono.letters] = coeff if sign == 1 else -coeff
    return QuasiLocalOperator.from_dict(acc)


def excitation_expectation(spec: SectorSpec,
                           a: QuasiLocalOperator | PauliOperator) -> GaussianRational:
    """Expectation in the single-excitation state of the sector."""
    return vacuum_expectation(apply_automorphism(spec, a))


def syndrome(p: PauliOperator) -> tuple[frozenset[Vertex], frozenset[Plaquette]]:
    """All stars and plaquettes whose stabilizers anticommute with ``p``."""
    candidate_vs: set[Vertex] = set()
    candidate_ps: set[Plaquette] = set()
    for b in p.support:
        candidate_vs.update(b.endpoints())
        candidate_ps.update(b.plaquettes())
    stars = frozenset(v for v in candidate_vs
                      if commutation_sign(star_operator(v), p) == -1)
    cells = frozenset(q for q in candidate_ps
                      if commutation_sign(plaquette_operator(q), p) == -1)
    return stars, cells


class LoopCharge(Enum):
    """Which defect a closed witness loop detects."""

    STAR = "star"          # product of enclosed star operators (dual loop)
    PLAQUETTE = "plaquette"  # product of enclosed plaquette operators (primal loop)


def _enclosing_star_product(center: Vertex, radius: int) -> PauliOperator:
    support: set[Bond] = set()
    for x in range(center[0] - radius, center[0] + radius + 1):
        for y in range(center[1] - radius, center[1] + radius + 1):
            support.symmetric_difference_update(star((x, y)))
    return PauliOperator.from_map({b: "X" for b in support})


def _enclosing_plaquette_product(center: Plaquette, radius: int) -> PauliOperator:
    support: set[Bond] = set()
    for x in range(center[0] - radius, center[0] + radius + 1):
        for y in range(center[1] - radius, center[1] + radius + 1):
            support.symmetric_difference_update(plaq((x, y)))
    return PauliOperator.from_map({b: "Z" for b in support})


def sector_distinguisher(spec: SectorSpec, excluded: Iterable[Bond] = (),
                         charge: LoopCharge | None = None) -> PauliOperator:
    """A closed loop operator telling the sector apart from the vacuum.

    Returns W with vacuum expectation +1 and excitation expectation -1; the
    loop grows until it clears the ``excluded`` bond set.  ``charge`` picks
    which defect to encircle when the sector carries both.
    """
    if spec.label is SectorLabel.ONE:
        raise ValueError("the vacuum cannot be distinguished from itself")
    if charge is None:
        charge = LoopCharge.STAR if spec.label.has_star_charge else LoopCharge.PLAQUETTE
    if charge is LoopCharge.STAR and not spec.label.has_star_charge:
        raise ValueError(f"{spec.label.value} sector has no star defect")
    if charge is LoopCharge.PLAQUETTE and not spec.label.has_plaquette_charge:
        raise ValueError(f"{spec.label.value} sector has no plaquette defect")
    excluded = frozenset(excluded)
    start = spec.start
    if charge is LoopCharge.STAR:
        center = start.vertex
        builder = _enclosing_star_product
    else:
        center = start.plaquette
        builder = _enclosing_plaquette_product
    for radius in range(1, 1000):
        w = builder(center, radius)
        if w.support & excluded:
            continue
        if excitation_expectation(spec, w) == GaussianRational.of(-1):
            return w
    raise RuntimeError("no distinguishing loop found")  # pragma: no cover


@dataclass(frozen=True)
class ComposedSector:
    """The composition of sector actions; acts as rho1 after rho2."""

    factors: tuple[SectorSpec, ...]

    @property
    def label(self) -> SectorLabel:
        out = SectorLabel.ONE
        for f in self.factors:
            out = out * f.label
        return out

    def apply(self, a: QuasiLocalOperator | PauliOperator) -> QuasiLocalOperator:
        out = as_quasi_local(a)
        for f in reversed(self.factors):
            out = apply_automorphism(f, out)
        return out

    def expectation(self, a) -> GaussianRational:
        return vacuum_expectation(self.apply(a))

    def components(self) -> tuple[SectorComponent, ...]:
        comps: list[SectorComponent] = []
        for f in self.factors:
            comps.extend(f.components())
        return tuple(comps)


def _cones_admit_common_cone(c1: Cone, c2: Cone) -> bool:
    """True when some cone of opening < pi contains both direction spans.

    Exact criterion: one boundary direction sees every other boundary
    direction strictly within its counter-clockwise half-turn.
    """
    from .lattice import dot

    edges = [c1.ray1, c1.ray2, c2.ray1, c2.ray2]

    def within_half_turn(base: IntVec, v: IntVec) -> bool:
        c = cross(base, v)
        return c > 0 or (c == 0 and dot(base, v) > 0)

    return any(all(within_half_turn(e, f) for f in edges) for e in edges)


def compose(s1: "SectorSpec | ComposedSector", s2: "SectorSpec | ComposedSector") -> ComposedSector:
    """Tensor-product action of two sectors (label multiplies in Z2 x Z2)."""
    factors = tuple(f for s in (s1, s2)
                    for f in (s.factors if isinstance(s, ComposedSector) else (s,)))
    cones = [f.cone for f in factors if f.cone is not None]
    for i, c1 in enumerate(cones):
        for c2 in cones[i + 1:]:
            if not _cones_admit_common_cone(c1, c2):
                raise ValueError("sector cones do not fit in a common cone")
    return ComposedSector(factors)


def region_hamiltonian(bonds: Iterable[Bond]) -> QuasiLocalOperator:
    """Minus the sum of all star and plaquette operators fully inside the region."""
    region = frozenset(bonds)
    vs: set[Vertex] = set()
    ps: set[Plaquette] = set()
    for b in region:
        vs.update(b.endpoints())
        ps.update(b.plaquettes())
    minus_one = GaussianRational.of(-1)
    h = QuasiLocalOperator.zero()
    for v in sorted(vs):
        if star(v) <= region:
            h = h + QuasiLocalOperator.from_pauli(star_operator(v), minus_one)
    for p in sorted(ps):
        if plaq(p) <= region:
            h = h + QuasiLocalOperator.from_pauli(plaquette_operator(p), minus_one)
    return h


def dynamics_shift(spec: SectorSpec, region: Iterable[Bond]) -> QuasiLocalOperator:
    """``rho(H_region) - H_region``: the defect's energy offset operator.

    Requires the region to contain the start defect's star (Z), plaquette
    (X), or both (Y); the result is then 2 A_v, 2 B_p, or their sum.
    """
    region = frozenset(region)
    if spec.label is SectorLabel.ONE:
        raise ValueError("the trivial sector shifts nothing")
    start = spec.start
    if spec.label.has_star_charge and not (star(start.vertex) <= region):
        raise ValueError("region does not contain the start defect's star")
    if spec.label.has_plaquette_charge and not (plaq(start.plaquette) <= region):
        raise ValueError("region does not contain the start defect's plaquette")
    h = region_hamiltonian(region)
    return apply_automorphism(spec, h) - h


def translation_intertwine_check(spec: SectorSpec, delta: IntVec,
                                 samples: Iterable[QuasiLocalOperator | PauliOperator]) -> bool:
    """Verify that conjugating the translation action equals translating the path."""
    translated_spec = spec.translated((-delta[0], -delta[1]))
    for a in samples:
        a = as_quasi_local(a)
        lhs = apply_automorphism(spec, a.translated(delta)).translated((-delta[0], -delta[1]))
        rhs = apply_automorphism(translated_spec, a)
        if lhs != rhs:
            return False
    return True
