"""Sparse Pauli monomials with exact Z4 phases and their finite combinations.

A :class:`PauliOperator` is ``i**phase`` times a tensor product of X/Y/Z
letters over finitely many bonds (identity letters are never stored).  The
single-bond composition table is the standard cyclic one, fixed by
``sigma^x sigma^z = -i sigma^y``; all downstream sign conventions follow
from this single table.

Coefficients of :class:`QuasiLocalOperator` combinations are exact Gaussian
rationals; floating point appears only at the numerical-oracle and CLI
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .lattice import Bond, IntVec, Plaquette, Vertex, plaq, star

X = "X"
Y = "Y"
Z = "Z"
LETTERS = (X, Y, Z)

# (left, right) -> (i-phase exponent, resulting letter or None for identity)
_LETTER_PRODUCT: dict[tuple[str, str], tuple[int, str | None]] = {
    (X, X): (0, None), (Y, Y): (0, None), (Z, Z): (0, None),
    (X, Y): (1, Z), (Y, X): (3, Z),
    (Y, Z): (1, X), (Z, Y): (3, X),
    (Z, X): (1, Y), (X, Z): (3, Y),
}


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def times_i_power(self, k: int) -> "GaussianRational":
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return GaussianRational(-self.im, self.re)
        if k == 2:
            return -self
        return GaussianRational(self.im, -self.re)

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            if self.im == 1:
                s = "i"
            elif self.im == -1:
                s = "-i"
            else:
                s = f"{self.im}i"
            if parts and not s.startswith("-"):
                parts.append("+" + s)
            else:
                parts.append(s)
        return "".join(parts)

    @staticmethod
    def of(re, im=0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))


GR_ZERO = GaussianRational.of(0)
GR_ONE = GaussianRational.of(1)
GR_I = GaussianRational.of(0, 1)


def i_power(k: int) -> GaussianRational:
    return GR_ONE.times_i_power(k)


def _bond_key(b: Bond) -> tuple[int, int, str]:
    return (b.x, b.y, b.orientation)


@dataclass(frozen=True)
class PauliOperator:
    """``i**phase`` times a finite product of X/Y/Z letters on distinct bonds."""

    phase: int  # exponent of i, mod 4
    letters: tuple[tuple[Bond, str], ...]  # sorted by bond, no identities

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)

    @staticmethod
    def from_map(letters: Mapping[Bond, str], phase: int = 0) -> "PauliOperator":
        items = tuple(sorted(((b, l) for b, l in letters.items() if l in LETTERS),
                             key=lambda bl: _bond_key(bl[0])))
        for b, l in letters.items():
            if l not in LETTERS:
                raise ValueError(f"bad Pauli letter {l!r} on {b}")
        return PauliOperator(phase % 4, items)

    @staticmethod
    def identity(phase: int = 0) -> "PauliOperator":
        return PauliOperator(phase % 4, ())

    @staticmethod
    def single(b: Bond, letter: str, phase: int = 0) -> "PauliOperator":
        return PauliOperator.from_map({b: letter}, phase)

    def letter_map(self) -> dict[Bond, str]:
        return dict(self.letters)

    @property
    def support(self) -> frozenset[Bond]:
        return frozenset(b for b, _ in self.letters)

    def is_identity(self) -> bool:
        return not self.letters and self.phase == 0

    def phaseless(self) -> "PauliOperator":
        return PauliOperator(0, self.letters)

    def adjoint(self) -> "PauliOperator":
        return PauliOperator(-self.phase, self.letters)

    def with_phase(self, k: int) -> "PauliOperator":
        return PauliOperator(self.phase + k, self.letters)

    def translated(self, delta: IntVec) -> "PauliOperator":
        return PauliOperator.from_map(
            {b.translated(delta): l for b, l in self.letters}, self.phase)

    def phase_value(self) -> GaussianRational:
        return i_power(self.phase)

    def __repr__(self) -> str:
        sign = ["", "i*", "-", "-i*"][self.phase]
        if not self.letters:
            return f"{sign}I" if sign else "I"
        body = "*".join(f"{l}[{b!r}]" for b, l in self.letters)
        return sign + body


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``p * q`` (letters combine bond-wise, phases in Z4)."""
    phase = p.phase + q.phase
    out = dict(p.letters)
    for b, lq in q.letters:
        lp = out.pop(b, None)
        if lp is None:
            out[b] = lq
            continue
        k, letter = _LETTER_PRODUCT[(lp, lq)]
        phase += k
        if letter is not None:
            out[b] = letter
    return PauliOperator.from_map(out, phase)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff the monomials commute (they either commute or anticommute)."""
    return commutation_sign(p, q) == 1


def commutation_sign(p: PauliOperator, q: PauliOperator) -> int:
    qmap = dict(q.letters)
    odd = 0
    for b, lp in p.letters:
        lq = qmap.get(b)
        if lq is not None and lq != lp:
            odd ^= 1
    return -1 if odd else 1


def conjugate_by(u: PauliOperator, a: PauliOperator) -> PauliOperator:
    """``u a u^-1`` for monomials: ``a`` up to the commutation sign."""
    if commutation_sign(u, a) == 1:
        return a
    return a.with_phase(2)


def star_operator(v: Vertex) -> PauliOperator:
    """All-X stabilizer on the four bonds of the star at ``v``."""
    return PauliOperator.from_map({b: X for b in star(v)})


def plaquette_operator(p: Plaquette) -> PauliOperator:
    """All-Z stabilizer on the four bonds bounding the plaquette ``p``."""
    return PauliOperator.from_map({b: Z for b in plaq(p)})


LetterKey = tuple[tuple[Bond, str], ...]


@dataclass(frozen=True)
class QuasiLocalOperator:
    """Finite linear combination of phase-free Pauli monomials.

    Stored as a canonical sorted tuple of (letters, coefficient) pairs with
    the monomial phase folded into the exact coefficient; no zero terms.
    """

    terms: tuple[tuple[LetterKey, GaussianRational], ...]

    @staticmethod
    def from_dict(terms: Mapping[LetterKey, GaussianRational]) -> "QuasiLocalOperator":
        items = tuple(sorted(((k, c) for k, c in terms.items() if c),
                             key=lambda kc: tuple(map(lambda bl: (_bond_key(bl[0]), bl[1]), kc[0]))))
        return QuasiLocalOperator(items)

    @staticmethod
    def from_pauli(p: PauliOperator, coeff: GaussianRational = GR_ONE) -> "QuasiLocalOperator":
        return QuasiLocalOperator.from_dict({p.letters: coeff.times_i_power(p.phase)})

    @staticmethod
    def zero() -> "QuasiLocalOperator":
        return QuasiLocalOperator(())

    @staticmethod
    def one() -> "QuasiLocalOperator":
        return QuasiLocalOperator.from_pauli(PauliOperator.identity())

    def monomials(self) -> Iterable[tuple[PauliOperator, GaussianRational]]:
        for key, coeff in self.terms:
            yield PauliOperator(0, key), coeff

    @property
    def support(self) -> frozenset[Bond]:
        out: set[Bond] = set()
        for key, _ in self.terms:
            out.update(b for b, _ in key)
        return frozenset(out)

    def __add__(self, other: "QuasiLocalOperator") -> "QuasiLocalOperator":
        acc: dict[LetterKey, GaussianRational] = dict(self.terms)
        for key, coeff in other.terms:
            acc[key] = acc.get(key, GR_ZERO) + coeff
        return QuasiLocalOperator.from_dict(acc)

    def __sub__(self, other: "QuasiLocalOperator") -> "QuasiLocalOperator":
        return self + other.scale(GaussianRational.of(-1))

    def scale(self, c: GaussianRational) -> "QuasiLocalOperator":
        return QuasiLocalOperator.from_dict({k: coeff * c for k, coeff in self.terms})

    def __mul__(self, other: "QuasiLocalOperator") -> "QuasiLocalOperator":
        acc: dict[LetterKey, GaussianRational] = {}
        for k1, c1 in self.terms:
            p1 = PauliOperator(0, k1)
            for k2, c2 in other.terms:
                prod = multiply(p1, PauliOperator(0, k2))
                c = (c1 * c2).times_i_power(prod.phase)
                key = prod.letters
                acc[key] = acc.get(key, GR_ZERO) + c
        return QuasiLocalOperator.from_dict(acc)

    def adjoint(self) -> "QuasiLocalOperator":
        # phase-free letter monomials are self-adjoint, so only conjugate coefficients
        return QuasiLocalOperator.from_dict({k: c.conjugate() for k, c in self.terms})

    def translated(self, delta: IntVec) -> "QuasiLocalOperator":
        acc: dict[LetterKey, GaussianRational] = {}
        for key, coeff in self.terms:
            p = PauliOperator(0, key).translated(delta)
            acc[p.letters] = coeff
        return QuasiLocalOperator.from_dict(acc)

    def is_zero(self) -> bool:
        return not self.terms


def as_quasi_local(op) -> QuasiLocalOperator:
    if isinstance(op, QuasiLocalOperator):
        return op
    if isinstance(op, PauliOperator):
        return QuasiLocalOperator.from_pauli(op)
    raise TypeError(f"expected an operator, got {type(op).__name__}")
