"""Verdict value objects shared by the two local-constant engines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

# Analytic case tags.
SPLIT_PAIR = "SplitPair"
SELF_CONJ_UNRAMIFIED = "SelfConjUnramified"
GOOD_OVER_KV = "GoodOverKv"
POT_MULT_SPLIT = "PotMultSplit"
POT_MULT_NONSPLIT_OR_ADDITIVE = "PotMultNonsplitOrAdditive"
POT_GOOD_UNRAMIFIED_TAME = "PotGoodUnramifiedTame"
POT_GOOD_RAMIFIED_ABELIAN = "PotGoodRamifiedAbelian"
POT_GOOD_WILD_CYCLIC_DEFECT = "PotGoodWildCyclicDefect"
UNCOVERED = "Uncovered"
ARCHIMEDEAN = "Archimedean"

# Arithmetic case tags.
PAIR_CANCELS = "PairCancels"
SPLITS_COMPLETELY = "SplitsCompletely"
GOOD_NOT_P = "GoodNotP"
GOOD_ORDINARY_P = "GoodOrdinaryP"
GOOD_SUPERSINGULAR_MR57 = "GoodSupersingularMR57"
ADDITIVE_NOT_P = "AdditiveNotP"
ADDITIVE_P_ORD_NONANOM = "AdditiveP_OrdNonAnom"


@dataclass(frozen=True)
class ConstantVerdict:
    """A value of a local constant in Z/2Z, or Undetermined (value None)."""

    value: Optional[int]
    case_tag: str
    citation: str
    detail: str = ""

    def __post_init__(self):
        if self.value not in (0, 1, None):
            raise ValueError("value must be 0, 1 or None")
        if (self.value is None) != (self.case_tag in (UNCOVERED,)):
            raise ValueError("value is determined iff the case is covered")

    @property
    def determined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class DeltaVerdict:
    """Arithmetic local constant verdict.

    For a split pair {v, v^c} only the pair sum is asserted (pair_sum = 0,
    value None with case PairCancels); for self-conjugate sites value is the
    individual delta_v or None when undetermined.
    """

    value: Optional[int]
    case_tag: str
    citation: str
    detail: str = ""
    pair_sum: Optional[int] = None

    @property
    def determined(self) -> bool:
        return self.value is not None or self.pair_sum is not None

    def contribution(self) -> Optional[int]:
        """Contribution of this verdict to a sum over sites (per split pair
        the PairCancels verdict counts once as the pair sum)."""
        if self.value is not None:
            return self.value
        return self.pair_sum
