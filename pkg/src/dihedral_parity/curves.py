"""Integral Weierstrass models over Q and their local reduction data.

Minimal models are produced per prime by the Laska--Kraus--Connell strategy:
divide (c4, c6) by the largest ell-power pair (ell^4k, ell^6k) that is still
realizable by an integral model, where realizability is decided by an
exhaustive search for the b2 of such a model (a finite check mod 1728).  The
reduction trichotomy, split flag and valuations are then read off the
minimal model; Kodaira symbols are never needed downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .localarith import (
    RamifiedQuadratic,
    UnramifiedQuadratic,
    is_local_square,
    is_prime,
    is_squarefree,
    padic_valuation,
    quadratic_character_type,
    smallest_nonresidue,
)

# Naive point counting is O(ell); this bound keeps it at desk scale.
POINT_COUNT_BOUND = 100_000


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant() == 0:
            raise SingularCurveError(f"singular model {self.ainvs()}")

    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.ainvs()
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.b_invariants()
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveInvariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j: Fraction


def invariants(E: WeierstrassCurve) -> CurveInvariants:
    b2, b4, b6, b8 = E.b_invariants()
    c4, c6 = E.c_invariants()
    disc = E.discriminant()
    assert c4 ** 3 - c6 ** 2 == 1728 * disc
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, Fraction(c4 ** 3, disc))


def transform(E: WeierstrassCurve, u: int, r: int, s: int, t: int) -> WeierstrassCurve:
    """Change of model x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.

    Raises ValueError if the transformed model is not integral.
    """
    a1, a2, a3, a4, a6 = E.ainvs()
    nums = (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
    )
    out = []
    for num, i in zip(nums, (1, 2, 3, 4, 6)):
        q, rem = divmod(num, u ** i)
        if rem:
            raise ValueError("transformation does not preserve integrality")
        out.append(q)
    return WeierstrassCurve(*out)


def model_from_invariants(c4: int, c6: int) -> Optional[WeierstrassCurve]:
    """An integral model with exactly these c-invariants, if one exists.

    Searches b2 over a full residue system mod 1728; every admissibility
    condition (Kraus's conditions at 2 and 3 included) is a congruence on b2
    mod 1728, so the search is exhaustive.
    """
    if (c4 ** 3 - c6 ** 2) % 1728 != 0:
        return None
    if c4 ** 3 == c6 ** 2:
        return None
    for b2 in range(1728):
        if (b2 * b2 - c4) % 24:
            continue
        b4 = (b2 * b2 - c4) // 24
        f = b2 ** 3 - 3 * c4 * b2 - 2 * c6
        if f % 432:
            continue
        b6 = f // 432
        a1 = b2 % 2
        if (b2 - a1) % 4:
            continue
        a2 = (b2 - a1) // 4
        a3 = b6 % 2
        if (b6 - a3) % 4:
            continue
        a6 = (b6 - a3) // 4
        if (b4 - a1 * a3) % 2:
            continue
        a4 = (b4 - a1 * a3) // 2
        E = WeierstrassCurve(a1, a2, a3, a4, a6)
        assert E.c_invariants() == (c4, c6)
        return E
    return None


def minimal_model_at(E: WeierstrassCurve, ell: int) -> WeierstrassCurve:
    """An ell-minimal integral model isomorphic to E over Q.

    Returns E itself when it is already ell-minimal.
    """
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    c4, c6 = E.c_invariants()
    disc = E.discriminant()
    bounds = [padic_valuation(disc, ell) // 12]
    if c4:
        bounds.append(padic_valuation(c4, ell) // 4)
    if c6:
        bounds.append(padic_valuation(c6, ell) // 6)
    k = min(bounds)
    while k > 0:
        M = model_from_invariants(c4 // ell ** (4 * k), c6 // ell ** (6 * k))
        if M is not None:
            return M
        if ell > 3:  # at ell >= 5 every integral pair is realizable
            raise AssertionError("unreachable: scaled pair must be realizable")
        k -= 1
    return E


ReductionType = str  # "good" | "multiplicative" | "additive"


@dataclass(frozen=True)
class LocalReductionData:
    ell: int
    reduction_type: ReductionType
    split: Optional[bool]  # meaningful only for multiplicative reduction
    v_disc_min: int
    v_c6_min: Optional[int]  # None when c6 = 0
    v_j: Optional[int]  # None when j = 0
    potentially_multiplicative: bool
    minimal_model: WeierstrassCurve

    @property
    def potentially_good(self) -> bool:
        return not self.potentially_multiplicative


def local_reduction(E: WeierstrassCurve, ell: int) -> LocalReductionData:
    """Reduction trichotomy of E over Q_ell, from an ell-minimal model."""
    Em = minimal_model_at(E, ell)
    inv = invariants(Em)
    v_disc = padic_valuation(inv.disc, ell)
    v_c4 = padic_valuation(inv.c4, ell) if inv.c4 else None
    v_c6 = padic_valuation(inv.c6, ell) if inv.c6 else None
    v_j = padic_valuation(inv.j, ell) if inv.j else None
    pot_mult = v_j is not None and v_j < 0
    if v_disc == 0:
        rtype, split = "good", None
    elif v_c4 == 0:
        rtype = "multiplicative"
        split = is_local_square(-inv.c6, ell)
    else:
        rtype, split = "additive", None
    return LocalReductionData(
        ell=ell,
        reduction_type=rtype,
        split=split,
        v_disc_min=v_disc,
        v_c6_min=v_c6,
        v_j=v_j,
        potentially_multiplicative=pot_mult,
        minimal_model=Em,
    )


def quadratic_twist(E: WeierstrassCurve, d: int) -> WeierstrassCurve:
    """The quadratic twist of E by a squarefree integer d.

    The twist has c-invariants (d^2 c4, d^3 c6) whenever that pair is
    realizable by an integral model; otherwise the model scaled by u = 2
    (always realizable) is returned.
    """
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"twist parameter must be a nonzero squarefree integer, got {d}")
    c4, c6 = E.c_invariants()
    M = model_from_invariants(d * d * c4, d ** 3 * c6)
    if M is None:
        M = model_from_invariants(16 * d * d * c4, 64 * d ** 3 * c6)
    assert M is not None
    return M


NONCYCLIC = "noncyclic"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SemistabilityDefect:
    """Order e of the inertia image controlling potential good reduction.

    e is 1, 2, 3, 4 or 6 when certified; NONCYCLIC would indicate a certified
    quaternion-or-larger inertia image (only reachable via config override in
    this implementation); UNKNOWN means the implemented criteria at ell = 2, 3
    are inconclusive.
    """

    e: Union[int, str]

    @property
    def known_cyclic(self) -> bool:
        return isinstance(self.e, int)


def _twist_reps(ell: int) -> list[int]:
    """Squarefree integers covering the nontrivial square classes of Q_ell^x."""
    if ell == 2:
        return [-1, 2, -2, 5, -5, 10, -10]
    r = smallest_nonresidue(ell)
    return [r, ell, r * ell] if r != ell else [ell]


def semistability_defect(E: WeierstrassCurve, ell: int) -> SemistabilityDefect:
    """Defect e at a prime of potentially good reduction.

    For ell >= 5 this is 12/gcd(v(Delta_min), 12).  For ell in {2, 3} the only
    implemented criterion is quadratic-twist search: if some quadratic twist
    of E has good reduction at ell the defect is 2 (or 1); otherwise UNKNOWN
    is returned rather than guessing among the wild possibilities.
    """
    red = local_reduction(E, ell)
    if red.potentially_multiplicative:
        raise ValueError(f"E has potentially multiplicative reduction at {ell}")
    if red.reduction_type == "good":
        return SemistabilityDefect(1)
    if ell >= 5:
        return SemistabilityDefect(12 // gcd(red.v_disc_min, 12))
    for d in _twist_reps(ell):
        if local_reduction(quadratic_twist(E, d), ell).reduction_type == "good":
            return SemistabilityDefect(2)
    return SemistabilityDefect(UNKNOWN)


@dataclass(frozen=True)
class Split:
    """The trivial local extension: K_v = Q_ell."""


@dataclass(frozen=True)
class Inert:
    """K_v is the unramified quadratic extension of Q_ell."""


@dataclass(frozen=True)
class Ramified:
    """K_v = Q_ell(sqrt(d)), ramified."""

    d: int


LocalExtension = Union[Split, Inert, Ramified]


def _ext_spec(ext: LocalExtension):
    """Map to the quadratic-extension descriptor of localarith (None for Split)."""
    if isinstance(ext, Split):
        return None
    if isinstance(ext, Inert):
        return UnramifiedQuadratic()
    return RamifiedQuadratic(ext.d)


@dataclass(frozen=True)
class KvReduction:
    reduction_type: str  # "good" | "multiplicative" | "additive" | "unknown"
    split: Optional[bool]


def reduction_over_Kv(E: WeierstrassCurve, ell: int, ext: LocalExtension,
                      defect: Optional[SemistabilityDefect] = None) -> KvReduction:
    """Reduction type of E over the local field K_v.

    Good reduction persists under any base change; potentially multiplicative
    types are resolved by the square class of -c6 over K_v; potentially good
    types at ell >= 5 (and tame cases at 2, 3) by comparing the defect e with
    the ramification of K_v.  A defect override may be passed in.
    """
    red = local_reduction(E, ell)
    if isinstance(ext, Split):
        return KvReduction(red.reduction_type, red.split)
    if isinstance(ext, Ramified):
        ok = (ext.d % ell == 0) if ell != 2 else (ext.d % 4 in (2, 3))
        if not ok or not is_squarefree(ext.d):
            raise ValueError(f"{ext} is not a ramified quadratic extension of Q_{ell}")
    if red.reduction_type == "good":
        return KvReduction("good", None)
    if red.potentially_multiplicative:
        c6 = invariants(red.minimal_model).c6
        ctype = quadratic_character_type(-c6, ell, _ext_spec(ext))
        if ctype == "trivial":
            return KvReduction("multiplicative", True)
        if ctype == "unramified":
            return KvReduction("multiplicative", False)
        return KvReduction("additive", None)
    # potentially good, additive over Q_ell
    if defect is None:
        defect = semistability_defect(E, ell)
    if not defect.known_cyclic:
        return KvReduction("unknown", None)
    e = defect.e
    if isinstance(ext, Inert):
        # K_v^ur = Q_ell^ur, so good reduction over K_v would force e = 1,
        # contradicting additive reduction over Q_ell.
        return KvReduction("additive", None)
    if e % ell != 0:
        # tame: the totally ramified cyclic degree-e extension of Q_ell^ur is
        # unique, so good reduction over K_v is exactly e | e(K_v) = 2.
        return KvReduction("good" if 2 % e == 0 else "additive", None)
    # wild ramified case (ell in {2, 3} with ell | e): not decided here
    return KvReduction("unknown", None)


@dataclass(frozen=True)
class FrobeniusData:
    ell: int
    p: int
    a_ell: int
    a_ell2: int
    ordinary: bool

    def point_count(self, q: int) -> int:
        if q == self.ell:
            return q + 1 - self.a_ell
        if q == self.ell ** 2:
            return q + 1 - self.a_ell2
        raise ValueError(f"q must be {self.ell} or {self.ell ** 2}")

    def anomalous_over(self, q: int) -> bool:
        return self.point_count(q) % self.p == 0


def count_points(E: WeierstrassCurve, ell: int) -> int:
    """#E~(F_ell) for a model with good reduction at ell, by enumeration."""
    a1, a2, a3, a4, a6 = (a % ell for a in E.ainvs())
    if ell == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y
                        - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    n += 1
        return n
    # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _ = E.b_invariants()
    n = 1
    half = (ell - 1) // 2
    for x in range(ell):
        rhs = (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % ell
        if rhs == 0:
            n += 1
        else:
            n += 1 + (1 if pow(rhs, half, ell) == 1 else -1)
    return n


def frobenius_data(E: WeierstrassCurve, ell: int, p: int) -> FrobeniusData:
    """Trace of Frobenius and ordinariness data at a good prime ell."""
    if ell > POINT_COUNT_BOUND:
        raise ValueError(f"ell = {ell} exceeds the counting bound {POINT_COUNT_BOUND}")
    red = local_reduction(E, ell)
    if red.reduction_type != "good":
        raise ValueError(f"E has bad reduction at {ell}")
    a = ell + 1 - count_points(red.minimal_model, ell)
    assert a * a <= 4 * ell, "Hasse bound violated: counting bug"
    return FrobeniusData(
        ell=ell,
        p=p,
        a_ell=a,
        a_ell2=a * a - 2 * ell,
        ordinary=(a % ell != 0),
    )


def good_twist_at(E: WeierstrassCurve, ell: int) -> Optional[int]:
    """A squarefree d with quadratic_twist(E, d) good at ell, if one exists."""
    for d in _twist_reps(ell):
        if local_reduction(quadratic_twist(E, d), ell).reduction_type == "good":
            return d
    return None
