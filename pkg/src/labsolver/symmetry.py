"""Template-adjusted lex-leader symmetry breaking.

Each non-identity element g of the 8-element symmetry group contributes one
constraint: the search only accepts assignments s whose template-primed
image s'_i = t_i * s_i is lexicographically no greater than the primed
image of g applied to s.  In primed coordinates the template itself becomes
the all-(+1) vector, which is lexicographically least, so the template (the
value-ordering's first leaf) always survives and exactly one member of each
symmetry class does.

Constraints are evaluated on partial assignments (0 = unassigned) with a
three-way outcome; only a definite violation may prune.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .sequences import (
    SYMMETRY_GROUP,
    Sequence,
    SymmetryElement,
    apply_symmetry,
    is_skew,
)
from .templates import Template


class LexStatus(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


def transform_by_template(values, template: Template) -> tuple[int, ...]:
    """Primed coordinates: multiply positionwise by the template.

    Unassigned entries (0) stay unassigned.  The transform is an involution
    and maps the template itself to all +1.
    """
    if len(values) != len(template):
        raise ValueError(
            f"length mismatch: {len(values)} values vs {len(template)} template"
        )
    return tuple(v * t for v, t in zip(values, template.values))


@dataclass(frozen=True)
class LexLeaderCheck:
    """One lex-leader constraint, with the comparison tables precomputed.

    Position i compares lhs_sign[i]*s[i] against rhs_sign[i]*s[perm[i]],
    where +1 precedes -1.
    """

    symmetry: SymmetryElement
    template: Template
    perm: tuple[int, ...]
    lhs_sign: tuple[int, ...]
    rhs_sign: tuple[int, ...]

    @classmethod
    def build(cls, symmetry: SymmetryElement, template: Template) -> "LexLeaderCheck":
        if symmetry.is_identity:
            raise ValueError("lex-leader checks are built for non-identity elements")
        n = len(template)
        perm = tuple(symmetry.source_index(i, n) for i in range(n))
        lhs = tuple(template.values)
        rhs = tuple(template[i] * symmetry.output_sign(i) for i in range(n))
        return cls(symmetry, template, perm, lhs, rhs)


def lex_leader_checks(
    template: Template,
    symmetries: tuple[SymmetryElement, ...] | None = None,
) -> tuple[LexLeaderCheck, ...]:
    """The 7 checks for a problem instance (or a restricted subset)."""
    if symmetries is None:
        symmetries = tuple(g for g in SYMMETRY_GROUP if not g.is_identity)
    return tuple(LexLeaderCheck.build(g, template) for g in symmetries)


def lex_leader_satisfied(partial, check: LexLeaderCheck) -> LexStatus:
    """Evaluate one check on a partial assignment (0 = unassigned).

    Scans for the first position where the two sides differ; if any
    position up to there involves an unassigned variable the outcome is not
    yet determined.  Returns VIOLATED only when the comparison is already
    decided strictly against the constraint.
    """
    perm = check.perm
    lhs_sign = check.lhs_sign
    rhs_sign = check.rhs_sign
    for i in range(len(perm)):
        a = partial[i]
        b = partial[perm[i]]
        if a == 0 or b == 0:
            return LexStatus.UNDETERMINED
        la = lhs_sign[i] * a
        rb = rhs_sign[i] * b
        if la == rb:
            continue
        # +1 precedes -1, so numerically greater means lexicographically
        # smaller on this position.
        return LexStatus.SATISFIED if la > rb else LexStatus.VIOLATED
    return LexStatus.SATISFIED


def should_check(depth: int, n: int) -> bool:
    """Check lex-leaders only at even depths down to n/2 (depth counted in
    individual variable assignments)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return depth % 2 == 0 and depth <= n // 2


def skew_preserving_symmetries(probe: Sequence) -> tuple[SymmetryElement, ...]:
    """Non-identity elements that keep the probe skew-symmetric.

    The skew sieve restricts search to a structured class; only symmetries
    mapping the class to itself may break symmetry there.  The probe is a
    known skew-symmetric sequence of the target length.
    """
    if not is_skew(probe):
        raise ValueError("probe sequence is not skew-symmetric")
    return tuple(
        g
        for g in SYMMETRY_GROUP
        if not g.is_identity and is_skew(apply_symmetry(probe, g))
    )
