"""Classification verdicts, certificates and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mpf

from .._precision import fmt_decimal
from ..rotation import PairPresentation, Rotation3
from ..scalar.poly import PolyQ
from .trace import TraceInterval, TraceValue

FINITE = "finite"
COMMUTATIVE_INFINITE = "commutative_infinite"
AXIS_INFINITE = "axis_infinite"
DENSE = "dense"
HEURISTIC = "heuristic"
VERDICTS = (FINITE, COMMUTATIVE_INFINITE, AXIS_INFINITE, DENSE, HEURISTIC)

# rule names
COMMUTATIVE = "commutative"
HALF_TURNS_RATIONAL = "half_turns_rational_axis_angle"
HALF_TURNS_IRRATIONAL = "half_turns_irrational_axis_angle"
RATIONAL_TRACE = "rational_trace_outside_S"
DENSE_CRITERIA = "dense_criteria"
EVEN_ORDERS = "even_orders_irrational_axis_angle"
ORDER_4N = "order_4n_orthogonal_axes"
FINITE_CLOSURE = "finite_closure"
INFINITE_FINITE_ORDERS = "infinite_with_finite_order_generators"
HALF_TURN_ORTHOGONAL = "half_turn_orthogonal_to_infinite_order"
HALF_TURN_OBLIQUE = "half_turn_oblique_to_infinite_order"
IRRATIONAL_GENERATOR = "irrational_generator"
SINGLE_GENERATOR = "single_generator"
HEURISTIC_RULE = "heuristic"

# rules whose witnesses are two elements meeting the three density conditions
ABC_RULES = (RATIONAL_TRACE, DENSE_CRITERIA, HALF_TURN_OBLIQUE, IRRATIONAL_GENERATOR)

LEAN_DENSE = "dense"
LEAN_FINITE = "finite"
LEAN_UNKNOWN = "unknown"


@dataclass(frozen=True)
class Certificate:
    rule: str
    witnesses: tuple[tuple[str, object], ...] = ()
    text: str = ""

    def get(self, label, default=None):
        for k, v in self.witnesses:
            if k == label:
                return v
        return default

    def to_json(self) -> dict:
        items = list(self.witnesses)
        if self.text:
            items.append(("summary", self.text))
        return {"rule": self.rule, "witnesses": [{"label": k, "value": witness_json(v)} for k, v in items]}


def witness_json(v):
    if isinstance(v, Rotation3):
        return v.to_json()
    if isinstance(v, PolyQ):
        return v.to_json()
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return v
    if isinstance(v, (float, mpf)):
        return fmt_decimal(v)
    if isinstance(v, (list, tuple)):
        return [witness_json(x) for x in v]
    return str(v)


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str
    certificate: Certificate
    trace: TraceValue
    in_S: bool | None
    interval: TraceInterval | None
    order: int | None = None
    klein_type: str | None = None
    leaning: str | None = None
    evidence: tuple[tuple[str, object], ...] = ()
    notes: tuple[str, ...] = ()
    pair: PairPresentation | None = field(default=None, compare=False, repr=False)

    @property
    def is_decided(self) -> bool:
        return self.verdict != HEURISTIC

    def verdict_class(self) -> str:
        return f"{self.verdict}:{self.leaning}" if self.verdict == HEURISTIC else self.verdict

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "order": self.order,
            "klein_type": self.klein_type,
            "certificate": self.certificate.to_json(),
            "trace": fmt_decimal(self.trace.value),
            "trace_exact": None if self.trace.rational is None else str(self.trace.rational),
            "in_S": self.in_S,
            "interval": None if self.interval is None else self.interval.to_json(),
        }
        if self.verdict == HEURISTIC:
            extra = [("leaning", self.leaning)] + [(f"evidence:{k}", v) for k, v in self.evidence]
            out["certificate"]["witnesses"] += [{"label": k, "value": witness_json(v)} for k, v in extra]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)
