from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Any


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    NUMERIC_GRID = "numeric_grid"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class MeasureResult:
    """Value of a (anti)classicality measure and where it is attained.

    Only the argmax fields relevant to the measure are set; the others stay
    ``None``. ``achieved_tol`` is an estimate of the absolute error of
    ``value``. ``details`` carries diagnostics such as the truncation
    dimension, the list of local maxima found, or whether the search hit
    the ``eta`` cap.
    """

    value: float
    method: Method
    achieved_tol: float = 0.0
    argmax_eta: float | None = None
    argmax_alpha_sq: float | None = None
    argmax_n: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0 + 1e-9:
            raise ValueError(f"measure value {self.value!r} outside [0, 1]")

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["method"] = self.method.value
        return out
