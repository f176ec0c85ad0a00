"""
Data models for the exponent calculus.
"""

import json
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple


@dataclass(frozen=True)
class DerivedConstants:
    """c_i sequence with the exponent C_R and threshold exponent eps_R."""
    r_values: Tuple[float, ...]
    c_sequence: Tuple[float, ...]
    C_R: Optional[float]
    eps_R: Optional[float]
    valid: bool
    reason: str

    @property
    def k(self) -> int:
        return len(self.r_values) + 1

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["r_values"] = list(self.r_values)
        data["c_sequence"] = list(self.c_sequence)
        data["k"] = self.k
        return data

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DerivedConstants":
        return cls(
            r_values=tuple(data["r_values"]),
            c_sequence=tuple(data["c_sequence"]),
            C_R=data.get("C_R"),
            eps_R=data.get("eps_R"),
            valid=bool(data["valid"]),
            reason=data.get("reason", ""),
        )
