"""Finite-lattice numerical oracle: Hamiltonians, projector ground states,
expectations, gaps, string energies, and the derivation identity.

Everything here is floating-point linear algebra in the computational
Z-basis (bit set = spin down), deliberately independent of the symbolic
witness machinery it cross-checks.  States are stored as (basis index,
amplitude) pairs; stabilizer projectors keep the support tiny, and dense
vectors/matrices are materialized only below the size caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .lattice import Bond, FinitePath, Plaquette, Vertex, hbond, plaq, star, vbond
from .pauli import PauliOperator, QuasiLocalOperator, as_quasi_local
from .sectors import syndrome
from .strings import StringType, string_operator

TOLERANCE = 1e-9
DENSE_EIG_MAX_BONDS = 12
ITERATIVE_EIG_MAX_BONDS = 26


@dataclass(frozen=True)
class FiniteLattice:
    """A torus (periodic) or open patch of ``width x height`` plaquettes."""

    kind: str  # "torus" | "patch"
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.kind not in ("torus", "patch"):
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        if self.width < 1 or self.height < 1:
            raise ValueError("lattice dimensions must be positive")

    @staticmethod
    def torus(width: int, height: int) -> "FiniteLattice":
        return FiniteLattice("torus", width, height)

    @staticmethod
    def open_patch(width: int, height: int) -> "FiniteLattice":
        return FiniteLattice("patch", width, height)

    @cached_property
    def bonds(self) -> tuple[Bond, ...]:
        out: list[Bond] = []
        if self.kind == "torus":
            for x in range(self.width):
                for y in range(self.height):
                    out.append(hbond(x, y))
                    out.append(vbond(x, y))
        else:
            for x in range(self.width):
                for y in range(self.height + 1):
                    out.append(hbond(x, y))
            for x in range(self.width + 1):
                for y in range(self.height):
                    out.append(vbond(x, y))
        return tuple(sorted(out))

    @cached_property
    def bond_index(self) -> dict[Bond, int]:
        return {b: i for i, b in enumerate(self.bonds)}

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)

    def wrap(self, b: Bond) -> Bond:
        if self.kind != "torus":
            return b
        return Bond(b.x % self.width, b.y % self.height, b.orientation)

    @cached_property
    def stars(self) -> tuple[tuple[Vertex, frozenset[Bond]], ...]:
        """Vertices whose four incident bonds all exist (all of them on a torus)."""
        out = []
        if self.kind == "torus":
            for x in range(self.width):
                for y in range(self.height):
                    out.append(((x, y), frozenset(self.wrap(b) for b in star((x, y)))))
        else:
            for x in range(1, self.width):
                for y in range(1, self.height):
                    out.append(((x, y), star((x, y))))
        return tuple(out)

    @cached_property
    def plaquettes(self) -> tuple[tuple[Plaquette, frozenset[Bond]], ...]:
        out = []
        for x in range(self.width):
            for y in range(self.height):
                cell = frozenset(self.wrap(b) for b in plaq((x, y)))
                out.append(((x, y), cell))
        return tuple(out)

    def contains_support(self, bonds) -> bool:
        if self.kind == "torus":
            return True  # every bond wraps onto the torus
        return all(b in self.bond_index for b in bonds)

    def mask(self, bonds) -> int:
        m = 0
        for b in bonds:
            m |= 1 << self.bond_index[self.wrap(b)]
        return m

    def interior_bonds(self, margin: int = 1) -> tuple[Bond, ...]:
        """Patch bonds all of whose endpoints keep ``margin`` from the boundary."""
        if self.kind != "patch":
            raise ValueError("interior_bonds applies to open patches")
        lo_x, hi_x = margin, self.width - margin
        lo_y, hi_y = margin, self.height - margin
        keep = []
        for b in self.bonds:
            if all(lo_x <= px <= hi_x and lo_y <= py <= hi_y for px, py in b.endpoints()):
                keep.append(b)
        return tuple(keep)


def _parity(values: np.ndarray, mask: int) -> np.ndarray:
    return np.bitwise_count(values & np.uint64(mask)).astype(np.int64) & 1


def _monomial_action(lattice: FiniteLattice, p: PauliOperator) -> tuple[int, int, complex]:
    """(flip mask, sign mask, scalar) of a monomial in the Z-basis.

    ``P |b> = scalar * (-1)^{popcount(b & sign_mask)} |b ^ flip_mask>`` with
    the scalar collecting the i-phase and one factor of i per Y letter.
    """
    flip = 0
    signm = 0
    n_y = 0
    for b, letter in p.letters:
        i = lattice.bond_index[lattice.wrap(b)]
        if letter in ("X", "Y"):
            flip |= 1 << i
        if letter in ("Z", "Y"):
            signm |= 1 << i
        if letter == "Y":
            n_y += 1
    scalar = 1j ** ((p.phase + n_y) % 4)
    return flip, signm, scalar


@dataclass
class DenseState:
    """Amplitudes over the computational basis, stored sparsely by index."""

    lattice: FiniteLattice
    indices: np.ndarray  # uint64, sorted unique
    amplitudes: np.ndarray  # complex128

    @staticmethod
    def from_pairs(lattice: FiniteLattice, indices, amplitudes) -> "DenseState":
        idx = np.asarray(indices, dtype=np.uint64)
        amp = np.asarray(amplitudes, dtype=np.complex128)
        order = np.argsort(idx, kind="stable")
        idx, amp = idx[order], amp[order]
        uniq, inverse = np.unique(idx, return_inverse=True)
        merged = np.zeros(len(uniq), dtype=np.complex128)
        np.add.at(merged, inverse, amp)
        keep = np.abs(merged) > 0.0
        return DenseState(lattice, uniq[keep], merged[keep])

    @staticmethod
    def basis_state(lattice: FiniteLattice, index: int = 0) -> "DenseState":
        return DenseState(lattice, np.array([index], dtype=np.uint64),
                          np.array([1.0 + 0j]))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def normalized(self) -> "DenseState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return DenseState(self.lattice, self.indices, self.amplitudes / n)

    def apply_pauli(self, p: PauliOperator) -> "DenseState":
        flip, signm, scalar = _monomial_action(self.lattice, p)
        signs = 1.0 - 2.0 * _parity(self.indices, signm)
        return DenseState.from_pairs(
            self.lattice,
            self.indices ^ np.uint64(flip),
            self.amplitudes * signs * scalar,
        )

    def apply_operator(self, a: QuasiLocalOperator | PauliOperator) -> "DenseState":
        a = as_quasi_local(a)
        parts_idx = []
        parts_amp = []
        for mono, coeff in a.monomials():
            moved = self.apply_pauli(mono)
            parts_idx.append(moved.indices)
            parts_amp.append(moved.amplitudes * complex(coeff))
        if not parts_idx:
            return DenseState(self.lattice, np.array([], dtype=np.uint64),
                              np.array([], dtype=np.complex128))
        return DenseState.from_pairs(self.lattice, np.concatenate(parts_idx),
                                     np.concatenate(parts_amp))

    def apply_hamiltonian(self, ham: "Hamiltonian") -> "DenseState":
        parts_idx = [self.indices]
        diag = np.zeros(len(self.indices))
        for zmask in ham.plaquette_masks:
            diag -= 1.0 - 2.0 * _parity(self.indices, zmask)
        parts_amp = [self.amplitudes * diag]
        for xmask in ham.star_masks:
            parts_idx.append(self.indices ^ np.uint64(xmask))
            parts_amp.append(-self.amplitudes)
        return DenseState.from_pairs(self.lattice, np.concatenate(parts_idx),
                                     np.concatenate(parts_amp))

    def inner(self, other: "DenseState") -> complex:
        """``<self|other>`` by matching basis indices."""
        common, ia, ib = np.intersect1d(self.indices, other.indices,
                                        assume_unique=True, return_indices=True)
        if len(common) == 0:
            return 0j
        return complex(np.sum(np.conj(self.amplitudes[ia]) * other.amplitudes[ib]))

    def to_dense(self) -> np.ndarray:
        if self.lattice.n_bonds > 24:
            raise ValueError("dense materialization capped at 24 bonds")
        vec = np.zeros(1 << self.lattice.n_bonds, dtype=np.complex128)
        vec[self.indices.astype(np.int64)] = self.amplitudes
        return vec


@dataclass
class Hamiltonian:
    """Sum of minus the complete star and plaquette stabilizers."""

    lattice: FiniteLattice
    star_masks: tuple[int, ...]
    plaquette_masks: tuple[int, ...]

    @property
    def n_terms(self) -> int:
        return len(self.star_masks) + len(self.plaquette_masks)

    @property
    def ground_energy_bound(self) -> float:
        return -float(self.n_terms)

    def linear_operator(self) -> scipy.sparse.linalg.LinearOperator:
        n = self.lattice.n_bonds
        if n > ITERATIVE_EIG_MAX_BONDS:
            raise ValueError(f"{n} bonds exceeds the iterative cap of {ITERATIVE_EIG_MAX_BONDS}")
        dim = 1 << n
        basis = np.arange(dim, dtype=np.uint64)
        flips = [basis ^ np.uint64(m) for m in self.star_masks]
        diag = np.zeros(dim)
        for zm in self.plaquette_masks:
            diag -= 1.0 - 2.0 * _parity(basis, zm)

        def matvec(psi: np.ndarray) -> np.ndarray:
            out = diag * psi
            for fl in flips:
                out -= psi[fl.astype(np.int64)]
            return out

        return scipy.sparse.linalg.LinearOperator((dim, dim), matvec=matvec,
                                                  dtype=np.complex128)

    def sparse_matrix(self) -> scipy.sparse.csr_matrix:
        n = self.lattice.n_bonds
        if n > 14:
            raise ValueError("explicit matrices capped at 14 bonds")
        dim = 1 << n
        basis = np.arange(dim, dtype=np.uint64)
        rows = [basis.astype(np.int64)]
        cols = [basis.astype(np.int64)]
        diag = np.zeros(dim)
        for zm in self.plaquette_masks:
            diag -= 1.0 - 2.0 * _parity(basis, zm)
        data = [diag]
        for m in self.star_masks:
            rows.append((basis ^ np.uint64(m)).astype(np.int64))
            cols.append(basis.astype(np.int64))
            data.append(-np.ones(dim))
        mat = scipy.sparse.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim, dim))
        return mat.tocsr()

    def dense_matrix(self) -> np.ndarray:
        if self.lattice.n_bonds > DENSE_EIG_MAX_BONDS:
            raise ValueError(f"dense matrices capped at {DENSE_EIG_MAX_BONDS} bonds")
        return self.sparse_matrix().toarray()

    def commuting_terms_check(self) -> bool:
        """Verify every pair of stabilizer terms commutes as matrices."""
        ops = [PauliOperator.from_map(dict.fromkeys(bonds, "X"))
               for _, bonds in self.lattice.stars]
        ops += [PauliOperator.from_map(dict.fromkeys(bonds, "Z"))
                for _, bonds in self.lattice.plaquettes]
        from .pauli import commutes
        return all(commutes(a, b) for i, a in enumerate(ops) for b in ops[i + 1:])


def build_hamiltonian(lattice: FiniteLattice) -> Hamiltonian:
    """Assemble the stabilizer Hamiltonian of the finite lattice.

    Only complete stars and plaquettes (all four bonds present) contribute;
    on a torus that is all of them.
    """
    if lattice.n_bonds > ITERATIVE_EIG_MAX_BONDS and lattice.kind == "torus":
        raise ValueError(
            f"torus with {lattice.n_bonds} bonds exceeds the {ITERATIVE_EIG_MAX_BONDS}-bond cap")
    star_masks = tuple(lattice.mask(bonds) for _, bonds in lattice.stars)
    plaq_masks = tuple(lattice.mask(bonds) for _, bonds in lattice.plaquettes)
    return Hamiltonian(lattice, star_masks, plaq_masks)


def projector_state(lattice: FiniteLattice) -> DenseState:
    """Normalized ``prod (1+A_v)/2 prod (1+B_p)/2`` applied to the all-up state.

    The all-up reference is already a +1 eigenvector of every plaquette
    term, so the support stays at ``2**n_stars`` basis states; the projector
    never annihilates the reference on an open patch.
    """
    if lattice.kind != "patch":
        raise ValueError("projector states are defined on open patches")
    state = DenseState.basis_state(lattice, 0)
    ham = build_hamiltonian(lattice)
    for zm in ham.plaquette_masks:
        signs = 1.0 - 2.0 * _parity(state.indices, zm)
        state = DenseState.from_pairs(lattice, np.concatenate([state.indices, state.indices]),
                                      np.concatenate([state.amplitudes, state.amplitudes * signs]) / 2.0)
    for xm in ham.star_masks:
        state = DenseState.from_pairs(
            lattice,
            np.concatenate([state.indices, state.indices ^ np.uint64(xm)]),
            np.concatenate([state.amplitudes, state.amplitudes]) / 2.0)
    return state.normalized()


def oracle_expectation(lattice: FiniteLattice, state: DenseState,
                       op: QuasiLocalOperator | PauliOperator) -> complex:
    """``<state| op |state>`` by explicit amplitude arithmetic."""
    op = as_quasi_local(op)
    if not lattice.contains_support(op.support):
        raise ValueError("operator support leaves the finite lattice")
    return state.inner(state.apply_operator(op))


def spectral_gap(lattice: FiniteLattice) -> tuple[float, float, int]:
    """(ground energy, gap to the next distinct level, ground degeneracy)."""
    ham = build_hamiltonian(lattice)
    n = lattice.n_bonds
    if n <= DENSE_EIG_MAX_BONDS and (1 << n) <= 1024:
        eigenvalues = np.linalg.eigvalsh(ham.dense_matrix())
    else:
        dim = 1 << n
        k = min(dim - 2, 12)
        rng = np.random.RandomState(0)
        v0 = rng.standard_normal(dim)
        eigenvalues = scipy.sparse.linalg.eigsh(
            ham.linear_operator(), k=k, which="SA", v0=v0,
            maxiter=20000, tol=0)[0]
        eigenvalues = np.sort(eigenvalues)
    e0 = float(eigenvalues[0])
    cluster_tol = 1e-6
    degeneracy = int(np.sum(eigenvalues < e0 + cluster_tol))
    above = eigenvalues[eigenvalues >= e0 + cluster_tol]
    if len(above) == 0:
        raise RuntimeError("solver returned no excited level; increase k")
    gap = float(above[0] - e0)
    return e0, gap, degeneracy


def ground_state(lattice: FiniteLattice) -> tuple[DenseState, float]:
    """A ground vector and its energy (projector state on patches)."""
    if lattice.kind == "patch":
        state = projector_state(lattice)
        ham = build_hamiltonian(lattice)
        e0 = state.inner(state.apply_hamiltonian(ham)).real
        return state, e0
    ham = build_hamiltonian(lattice)
    dim = 1 << lattice.n_bonds
    rng = np.random.RandomState(0)
    vals, vecs = scipy.sparse.linalg.eigsh(ham.linear_operator(), k=4, which="SA",
                                           v0=rng.standard_normal(dim), tol=0)
    order = np.argsort(vals)
    vec = vecs[:, order[0]]
    keep = np.abs(vec) > 1e-12
    state = DenseState.from_pairs(lattice, np.nonzero(keep)[0].astype(np.uint64), vec[keep])
    return state.normalized(), float(vals[order[0]])


def string_energy(lattice: FiniteLattice, path: FinitePath, t: StringType) -> float:
    """Energy of the string-excited state over the ground energy.

    Equals twice the number of defects the string creates, i.e.
    ``2 * |syndrome|`` for strings whose defects sit on complete stabilizers.
    """
    op = string_operator(path, t)
    if not lattice.contains_support(op.support):
        raise ValueError("string support leaves the finite lattice")
    psi, e0 = ground_state(lattice)
    excited = psi.apply_pauli(op).normalized()
    ham = build_hamiltonian(lattice)
    energy = excited.inner(excited.apply_hamiltonian(ham)).real
    return float(energy - e0)


def syndrome_energy(path_syndrome: tuple[frozenset, frozenset]) -> float:
    stars, cells = path_syndrome
    return 2.0 * (len(stars) + len(cells))


def derivation_check(lattice: FiniteLattice, x: QuasiLocalOperator,
                     y: QuasiLocalOperator, tolerance: float = TOLERANCE) -> bool:
    """Numerically verify the ground-state energy-form identity.

    ``-i <X* delta(Y)>`` with ``delta(Y) = i[H, Y]`` must equal the sum over
    stars and plaquettes of ``<X*Y> - <X* A Y>``; supports must stay well
    inside the patch so every relevant stabilizer is complete.
    """
    if lattice.kind != "patch":
        raise ValueError("derivation checks run on open patches")
    x, y = as_quasi_local(x), as_quasi_local(y)
    for op in (x, y):
        if not lattice.contains_support(op.support):
            raise ValueError("operator support leaves the patch")
    psi = projector_state(lattice)
    ham = build_hamiltonian(lattice)
    x_psi = psi.apply_operator(x)
    y_psi = psi.apply_operator(y)
    # lhs = <psi| X* (H Y - Y H) |psi>
    hy_psi = y_psi.apply_hamiltonian(ham)
    yh_psi = psi.apply_hamiltonian(ham).apply_operator(y)
    lhs = x_psi.inner(hy_psi) - x_psi.inner(yh_psi)

    xy = x_psi.inner(y_psi)
    rhs = 0j
    stabilizers = [PauliOperator.from_map(dict.fromkeys(bonds, "X"))
                   for _, bonds in lattice.stars]
    stabilizers += [PauliOperator.from_map(dict.fromkeys(bonds, "Z"))
                    for _, bonds in lattice.plaquettes]
    for stab in stabilizers:
        rhs += xy - x_psi.inner(y_psi.apply_pauli(stab))
    return abs(lhs - rhs) <= tolerance
