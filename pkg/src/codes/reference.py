"""
Reference parameter sets with their known weight distributions and R-set sizes.

The `suite` command reproduces each of these end to end.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from src.algebra.specdist import RSetSizes
from src.codes.types import CodeFamily


@dataclass(frozen=True)
class ReferenceCase:
    name: str
    family: CodeFamily
    p: int
    m: int
    k: int
    counts: Dict[int, int]
    minimum_distance: int
    dimension: int

    @property
    def params(self) -> Tuple[int, int, int]:
        return self.p, self.m, self.k


REFERENCE_CASES: Tuple[ReferenceCase, ...] = (
    ReferenceCase(
        name="c1-3-6-1", family=CodeFamily.C1, p=3, m=6, k=1,
        counts={0: 1, 432: 6006, 477: 275184, 486: 118664, 504: 122850, 513: 8736},
        minimum_distance=432, dimension=12,
    ),
    ReferenceCase(
        name="c1-5-4-1", family=CodeFamily.C1, p=5, m=4, k=1,
        counts={0: 1, 475: 2496, 480: 75400, 500: 63024, 505: 249600, 600: 104},
        minimum_distance=475, dimension=8,
    ),
    ReferenceCase(
        name="c2-3-6-2", family=CodeFamily.C2, p=3, m=6, k=2,
        counts={0: 1, 468: 364, 476: 728, 494: 728, 504: 364, 728: 2},
        minimum_distance=468, dimension=7,
    ),
    ReferenceCase(
        name="c2-3-8-1", family=CodeFamily.C2, p=3, m=8, k=1,
        counts={0: 1, 4292: 3280, 4320: 4920, 4400: 9840, 4536: 1640, 6560: 2},
        minimum_distance=4292, dimension=9,
    ),
    ReferenceCase(
        name="c2-3-6-3", family=CodeFamily.C2, p=3, m=6, k=3,
        counts={0: 1, 476: 52, 504: 26, 728: 2},
        minimum_distance=476, dimension=4,
    ),
)

# Closed-form R-set sizes for parameter sets covering every case label
REFERENCE_RSETS: Dict[Tuple[int, int, int], RSetSizes] = {
    (3, 3, 1): RSetSizes(r0_plus=13, r0_minus=13),
    (3, 6, 1): RSetSizes(r0_minus=546, r1_plus=182),
    (3, 6, 2): RSetSizes(r0_plus=364, r0_minus=364),
    (5, 4, 1): RSetSizes(r0_plus=520, r1_minus=104),
    (3, 2, 1): RSetSizes(r0_minus=6, r1_plus=2),
    (3, 6, 3): RSetSizes(r0_minus=702, r1_plus=26),
    (3, 8, 1): RSetSizes(r0_plus=4920, r1_minus=1640),
}
