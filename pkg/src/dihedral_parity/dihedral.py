"""Character algebra for dihedral groups D_{2m} with m odd.

Class functions are stored element-wise (groups here have at most a few
dozen elements); values are complex floats, but inner products are returned
as exact rationals after a tolerance check of 1e-9.  Elements of D_{2m} are
pairs ('r', j) for rotations and ('s', j) for the reflections s*r^j.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

TOL = 1e-9


@dataclass(frozen=True)
class CyclicGroupSpec:
    m: int

    def elements(self) -> list[int]:
        return list(range(self.m))

    @property
    def order(self) -> int:
        return self.m


@dataclass(frozen=True)
class DihedralGroupSpec:
    """D_{2m} = <r, s | r^m = s^2 = 1, s r s = r^-1>, m odd >= 3."""

    m: int

    def __post_init__(self):
        if self.m < 3 or self.m % 2 == 0:
            raise ValueError("rotation order m must be odd and >= 3")

    def elements(self) -> list[tuple[str, int]]:
        return [("r", j) for j in range(self.m)] + [("s", j) for j in range(self.m)]

    @property
    def order(self) -> int:
        return 2 * self.m


GroupSpec = CyclicGroupSpec | DihedralGroupSpec


@dataclass(frozen=True)
class ClassFunction:
    group: GroupSpec
    values: tuple[complex, ...]  # indexed by group.elements() order

    def __call__(self, g) -> complex:
        return self.values[self._index(g)]

    def _index(self, g) -> int:
        if isinstance(self.group, CyclicGroupSpec):
            return g % self.group.m
        kind, j = g
        return (j % self.group.m) + (self.group.m if kind == "s" else 0)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.group != other.group:
            raise ValueError("group mismatch")
        return ClassFunction(self.group,
                             tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        if self.group != other.group:
            raise ValueError("group mismatch")
        return ClassFunction(self.group,
                             tuple(a - b for a, b in zip(self.values, other.values)))

    def is_zero(self, tol: float = TOL) -> bool:
        return all(abs(v) < tol for v in self.values)

    def degree(self) -> complex:
        return self.values[0]


def cyclic_character(m: int, k: int) -> ClassFunction:
    """The character r^j -> zeta_m^{kj} of C_m."""
    zeta = [cmath.exp(2j * cmath.pi * k * j / m) for j in range(m)]
    return ClassFunction(CyclicGroupSpec(m), tuple(zeta))


def trivial_character(group: GroupSpec) -> ClassFunction:
    return ClassFunction(group, tuple(1.0 + 0j for _ in group.elements()))


def sign_character(G: DihedralGroupSpec) -> ClassFunction:
    """The character that is +1 on rotations and -1 on reflections."""
    return ClassFunction(G, tuple(1.0 + 0j if kind == "r" else -1.0 + 0j
                                  for kind, _ in G.elements()))


def two_dim_character(G: DihedralGroupSpec, k: int) -> ClassFunction:
    """Character of the 2-dimensional representation with rotation weight k."""
    m = G.m
    vals = [2 * cmath.cos(2 * cmath.pi * k * j / m) + 0j for j in range(m)]
    vals += [0j] * m
    return ClassFunction(G, tuple(vals))


def irreducible_characters(G: DihedralGroupSpec) -> list[ClassFunction]:
    """All irreducibles of D_{2m} (m odd): 1, sgn, and (m-1)/2 of degree 2."""
    out = [trivial_character(G), sign_character(G)]
    out += [two_dim_character(G, k) for k in range(1, (G.m + 1) // 2)]
    return out


def induce(chi: ClassFunction, G: DihedralGroupSpec) -> ClassFunction:
    """Induce a character of the rotation subgroup C_m up to D_{2m}.

    ind(chi)(r^j) = chi(r^j) + chi(r^-j); ind(chi) vanishes on reflections.
    """
    if not isinstance(chi.group, CyclicGroupSpec) or chi.group.m != G.m:
        raise ValueError("chi must live on the rotation subgroup of G")
    m = G.m
    vals = [chi(j) + chi(-j % m) for j in range(m)] + [0j] * m
    return ClassFunction(G, tuple(vals))


def restrict(chi: ClassFunction, H: str) -> ClassFunction:
    """Restrict a class function on D_{2m} to a subgroup.

    H = "rotations" gives the cyclic subgroup C_m; H = "reflection" gives the
    order-2 subgroup <s> (the decomposition groups the local analysis uses).
    """
    if not isinstance(chi.group, DihedralGroupSpec):
        raise ValueError("restriction is implemented from dihedral groups only")
    m = chi.group.m
    if H == "rotations":
        return ClassFunction(CyclicGroupSpec(m), tuple(chi(("r", j)) for j in range(m)))
    if H == "reflection":
        return ClassFunction(CyclicGroupSpec(2), (chi(("r", 0)), chi(("s", 0))))
    raise ValueError(f"unsupported subgroup {H!r}")


def inner_product(chi1: ClassFunction, chi2: ClassFunction) -> Fraction:
    """(1/|G|) sum_g chi1(g) conj(chi2(g)), returned exactly.

    The numerical sum is snapped to the nearest multiple of 1/|G|; a result
    further than 1e-6 from that lattice (or with a nontrivial imaginary
    part) raises, so no silent rounding of a genuinely irrational value.
    """
    if chi1.group != chi2.group:
        raise ValueError("group mismatch")
    order = chi1.group.order
    s = sum(a * b.conjugate() for a, b in zip(chi1.values, chi2.values))
    if abs(s.imag) > 1e-6:
        raise ArithmeticError(f"inner product not real: {s}")
    num = round(s.real)
    if abs(s.real - num) > 1e-6:
        raise ArithmeticError(f"inner product {s.real / order} is not in (1/|G|)Z")
    return Fraction(num, order)


def random_virtual_character(G: DihedralGroupSpec, rng,
                             coeff_range: Iterable[int] = range(-3, 4)) -> ClassFunction:
    """Integer combination of irreducibles, for property tests."""
    coeffs = [rng.choice(list(coeff_range)) for _ in irreducible_characters(G)]
    out = ClassFunction(G, tuple(0j for _ in G.elements()))
    for c, chi in zip(coeffs, irreducible_characters(G)):
        out = ClassFunction(G, tuple(v + c * w for v, w in zip(out.values, chi.values)))
    return out
