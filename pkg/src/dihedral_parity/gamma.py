"""Analytic local constants gamma_u = log ratio of twisted local root numbers.

gamma_u is defined by (-1)^gamma_u = W(E/Q_u, tau_rho) / W(E/Q_u, tau_1) for
the two induced representations of the dihedral tower.  The engine never
evaluates a root number: it dispatches over the evaluated cases (Rohrlich's
root-number formulae combined with the dihedral character decompositions)
and reports Undetermined outside them.
"""

from __future__ import annotations

from typing import Union

from . import verdicts as V
from .curves import (
    Inert,
    KvReduction,
    SemistabilityDefect,
    WeierstrassCurve,
    local_reduction,
    reduction_over_Kv,
    semistability_defect,
)
from .tower import SPLIT, PrimeSite, TowerSpec, sites_above, validate_tower
from .verdicts import ConstantVerdict

INFINITE_PLACE = "infinity"
Place = Union[int, str]

CITATIONS = {
    V.SPLIT_PAIR: (
        "u splits in K: both induced local representations decompose as sums of "
        "conjugate characters and each root number is 1"),
    V.SELF_CONJ_UNRAMIFIED: (
        "v = v^c unramified in the cyclic layer: the two induced local "
        "representations are isomorphic, so the ratio is 1"),
    V.GOOD_OVER_KV: (
        "good reduction over K_v: by Rohrlich's good-reduction formula both root "
        "numbers equal det tau(-1), which agrees for the two twists"),
    V.POT_MULT_SPLIT: (
        "potentially multiplicative with split multiplicative reduction over K_v: "
        "Rohrlich's v(j)<0 formula gives ratio -1"),
    V.POT_MULT_NONSPLIT_OR_ADDITIVE: (
        "potentially multiplicative, not split multiplicative over K_v: "
        "Rohrlich's v(j)<0 formula gives ratio 1"),
    V.POT_GOOD_UNRAMIFIED_TAME: (
        "potentially good, residue characteristic at least 5, K_v/Q_ell "
        "unramified: the dihedral inner products cancel and the ratio is 1"),
    V.POT_GOOD_RAMIFIED_ABELIAN: (
        "potentially good above p with K_v/Q_p ramified: good reduction is "
        "acquired over an abelian extension of K_v, so both root numbers equal "
        "det tau(-1)"),
    V.POT_GOOD_WILD_CYCLIC_DEFECT: (
        "potentially good at residue characteristic 2 or 3 with cyclic inertia "
        "image of order dividing 6 (Kraus-type criterion): ratio is 1"),
    V.ARCHIMEDEAN: (
        "archimedean place: gamma = 0; documented extension, the finite-place "
        "case analysis does not cover infinity (p > 3 makes the local layer "
        "trivial there)"),
    V.UNCOVERED: "no evaluated case applies; no value is asserted",
}


def _verdict(value, tag, detail="") -> ConstantVerdict:
    return ConstantVerdict(value=value, case_tag=tag, citation=CITATIONS[tag],
                           detail=detail)


def _defect(E: WeierstrassCurve, T: TowerSpec, ell: int) -> SemistabilityDefect:
    ov = T.override_for(ell).defect
    if ov is not None:
        return SemistabilityDefect(ov)
    return semistability_defect(E, ell)


def _kv_reduction(E: WeierstrassCurve, T: TowerSpec, site: PrimeSite) -> KvReduction:
    ov = T.override_for(site.ell).reduction_over_Kv
    if ov is not None:
        return {
            "good": KvReduction("good", None),
            "multiplicative_split": KvReduction("multiplicative", True),
            "multiplicative_nonsplit": KvReduction("multiplicative", False),
            "additive": KvReduction("additive", None),
        }[ov]
    defect = None
    red = local_reduction(E, site.ell)
    if red.potentially_good and red.reduction_type != "good":
        defect = _defect(E, T, site.ell)
    return reduction_over_Kv(E, site.ell, site.local_extension(T.K), defect=defect)


def gamma(E: WeierstrassCurve, T: TowerSpec, u: Place) -> ConstantVerdict:
    """gamma_u for a rational prime u (or the infinite place)."""
    violations = validate_tower(T, E)
    if violations:
        raise ValueError("invalid tower: " + "; ".join(map(str, violations)))
    if u == INFINITE_PLACE:
        return _verdict(0, V.ARCHIMEDEAN)
    sites = sites_above(u, T.K)
    if sites[0].split_type == SPLIT:
        return _verdict(0, V.SPLIT_PAIR)
    site = sites[0]
    if not T.is_ramified_in_L(site):
        return _verdict(0, V.SELF_CONJ_UNRAMIFIED)

    # v = v^c, ramified in L/K.
    kv = _kv_reduction(E, T, site)
    red = local_reduction(E, site.ell)
    if kv.reduction_type == "good":
        detail = ""
        if red.reduction_type != "good":
            detail = "good reduction acquired over the ramified K_v"
        return _verdict(0, V.GOOD_OVER_KV, detail)
    if red.potentially_multiplicative:
        if kv.reduction_type == "multiplicative" and kv.split:
            return _verdict(1, V.POT_MULT_SPLIT)
        return _verdict(0, V.POT_MULT_NONSPLIT_OR_ADDITIVE)
    # potentially good, additive over K_v
    ell = site.ell
    if ell % 2 and ell % 3 and ell != T.p:
        return _verdict(0, V.POT_GOOD_UNRAMIFIED_TAME)
    if ell == T.p:
        if isinstance(site.local_extension(T.K), Inert):
            return _verdict(0, V.POT_GOOD_UNRAMIFIED_TAME)
        # ramified above p: abelian criterion q = p congruent to 1 mod e
        defect = _defect(E, T, ell)
        if defect.known_cyclic and (T.p - 1) % defect.e == 0:
            return _verdict(
                0, V.POT_GOOD_RAMIFIED_ABELIAN,
                detail=(f"tame abelian criterion used: residue size {T.p} is 1 mod "
                        f"e = {defect.e}, so the defect extension of K_v is abelian"))
        return _verdict(None, V.UNCOVERED,
                        detail="ramified above p and the abelian criterion fails "
                               "or the defect is unknown")
    # ell in {2, 3}
    defect = _defect(E, T, ell)
    if defect.known_cyclic and defect.e in (1, 2, 3, 4, 6):
        return _verdict(0, V.POT_GOOD_WILD_CYCLIC_DEFECT,
                        detail=f"inertia image certified cyclic of order {defect.e}")
    if kv.reduction_type == "unknown":
        return _verdict(None, V.UNCOVERED,
                        detail=f"reduction over K_v at {ell} undetermined")
    return _verdict(None, V.UNCOVERED,
                    detail=f"semistability defect at {ell} is {defect.e}")
