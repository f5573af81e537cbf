"""Violation reports shared by every checker."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .exact.scalar import scalar_str
from .exact.tensor import Tensor, witnesses

DEFAULT_DIM_CAP = 8


class InvalidInput(ValueError):
    """Input structure is inconsistent (shapes, failed preconditions)."""


class DimensionCapExceeded(InvalidInput):
    pass


class RegularityRequired(InvalidInput):
    """An inverse twist map was needed but the twist is singular."""


def dim_cap() -> int:
    raw = os.environ.get("HLTS_DIM_CAP")
    return int(raw) if raw else DEFAULT_DIM_CAP


def require_cap(dim: int, what: str = "exhaustive check"):
    cap = dim_cap()
    if dim > cap:
        raise DimensionCapExceeded(f"{what}: dimension {dim} exceeds cap {cap} (set HLTS_DIM_CAP)")


@dataclass(frozen=True)
class Violation:
    tag: str
    witness: tuple
    lhs: tuple
    rhs: tuple
    derived: bool = False

    def to_json(self) -> dict:
        return {
            "identity": self.tag,
            "witness": list(self.witness),
            "lhs": [scalar_json(x) for x in self.lhs],
            "rhs": [scalar_json(x) for x in self.rhs],
            "derived": self.derived,
        }

    def __str__(self):
        lhs = ", ".join(scalar_str(x) for x in self.lhs)
        rhs = ", ".join(scalar_str(x) for x in self.rhs)
        mark = " [derived identity]" if self.derived else ""
        return f"{self.tag} at {self.witness}: lhs=({lhs}) rhs=({rhs}){mark}"


def scalar_json(x):
    from fractions import Fraction

    from .exact.scalar import format_scalar
    from .exact.trunc import TruncPoly

    if isinstance(x, TruncPoly):
        return [format_scalar(c) for c in x.coeffs]
    return format_scalar(Fraction(x))


@dataclass
class ViolationReport:
    """Outcome of one checker: ``passed`` iff no violations were recorded."""

    subject: str = ""
    violations: list = field(default_factory=list)
    checked: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def compare(self, tag: str, lhs: Tensor, rhs: Tensor, derived: bool = False):
        """Record every basis tuple where the two sides differ."""
        self.checked.append(tag)
        for w in witnesses(lhs, rhs):
            self.violations.append(Violation(tag, w, lhs.value(w), rhs.value(w), derived))
        return self

    def vanishes(self, tag: str, expr: Tensor, derived: bool = False):
        return self.compare(tag, expr, Tensor.zero(expr.in_dims, expr.out_dim), derived)

    def extend(self, other: "ViolationReport", prefix: str = ""):
        self.checked.extend(prefix + t for t in other.checked)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.tag, v.witness, v.lhs, v.rhs, v.derived))
        return self

    def tags(self) -> list:
        seen = []
        for v in self.violations:
            if v.tag not in seen:
                seen.append(v.tag)
        return seen

    def first(self, tag: str):
        return next((v for v in self.violations if v.tag == tag), None)

    def sorted(self) -> "ViolationReport":
        order = {t: n for n, t in enumerate(self.checked)}
        vs = sorted(self.violations, key=lambda v: (order.get(v.tag, len(order)), v.tag, v.witness))
        return ViolationReport(self.subject, vs, list(self.checked))

    def to_json(self) -> dict:
        r = self.sorted()
        return {
            "subject": r.subject,
            "passed": r.passed,
            "checked": r.checked,
            "violation_count": len(r.violations),
            "violations": [v.to_json() for v in r.violations],
        }

    def summary(self, limit: int = 20) -> str:
        r = self.sorted()
        head = f"{r.subject or 'check'}: {'PASS' if r.passed else 'FAIL'}"
        if r.passed:
            return head + f" ({len(r.checked)} identities)"
        lines = [head + f" ({len(r.violations)} violations in {', '.join(r.tags())})"]
        for v in r.violations[:limit]:
            lines.append("  " + str(v))
        if len(r.violations) > limit:
            lines.append(f"  ... {len(r.violations) - limit} more")
        return "\n".join(lines)
