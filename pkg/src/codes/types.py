"""
Data types for the trace-code families and their weight distributions.
"""

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.errors import InvalidParameterError


class CodeFamily(str, Enum):
    """
    C1: codewords (Tr(a x^(p^k+1) + b x)) over x in F_{p^m}*, a, b in F_{p^m}.
    C2: codewords (Tr(a x^(p^k+1)) - lam) over x in F_{p^m}*, a in F_{p^m}, lam in F_p.
    """
    C1 = "C1"
    C2 = "C2"

    @classmethod
    def parse(cls, value: Any) -> 'CodeFamily':
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise InvalidParameterError(f"unknown code family {value!r}; use c1 or c2")


@dataclass(frozen=True)
class CodeSpec:
    family: CodeFamily
    p: int
    m: int
    k: int
    n: int
    dimension: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "p": self.p,
            "m": self.m,
            "k": self.k,
            "n": self.n,
            "dimension": self.dimension,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CodeSpec':
        return cls(
            family=CodeFamily.parse(data["family"]),
            p=int(data["p"]),
            m=int(data["m"]),
            k=int(data["k"]),
            n=int(data["n"]),
            dimension=int(data["dimension"]),
        )


@dataclass
class WeightDistribution:
    """
    Exact weight distribution: weight -> number of codewords of that weight.

    Zero counts are dropped and keys are kept in ascending order.
    """
    spec: CodeSpec
    counts: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for w, c in sorted(self.counts.items()):
            w, c = int(w), int(c)
            if c < 0:
                raise InvalidParameterError(f"negative count {c} for weight {w}")
            if not 0 <= w <= self.spec.n:
                raise InvalidParameterError(f"weight {w} outside [0, {self.spec.n}]")
            if c:
                cleaned[w] = c
        self.counts = cleaned

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def first_moment(self) -> int:
        return sum(w * c for w, c in self.counts.items())

    @property
    def nonzero_weights(self) -> List[int]:
        return [w for w in self.counts if w > 0]

    @property
    def minimum_distance(self) -> Optional[int]:
        weights = self.nonzero_weights
        return weights[0] if weights else None

    @property
    def parameters(self) -> Tuple[int, int, Optional[int]]:
        """[n, dimension, d]."""
        return self.spec.n, self.spec.dimension, self.minimum_distance

    def same_counts(self, other: 'WeightDistribution') -> bool:
        return self.spec == other.spec and self.counts == other.counts

    def to_dict(self) -> Dict[str, Any]:
        data = self.spec.to_dict()
        data["weights"] = [{"w": w, "count": c} for w, c in self.counts.items()]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'WeightDistribution':
        return cls(
            spec=CodeSpec.from_dict(data),
            counts={int(e["w"]): int(e["count"]) for e in data["weights"]},
        )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["w", "count"])
        for w, c in self.counts.items():
            writer.writerow([w, c])
        return buffer.getvalue()

    def to_table(self) -> str:
        width = max([len("weight")] + [len(str(w)) for w in self.counts])
        lines = [f"{'weight':>{width}}  count"]
        lines.extend(f"{w:>{width}}  {c}" for w, c in self.counts.items())
        return "\n".join(lines) + "\n"


@dataclass
class TheoreticalWD(WeightDistribution):
    """A closed-form distribution together with the parameter case and formula used."""
    case: str = ""
    formula: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["case"] = self.case
        data["formula"] = self.formula
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TheoreticalWD':
        base = WeightDistribution.from_dict(data)
        return cls(spec=base.spec, counts=base.counts, case=data["case"], formula=data["formula"])
