"""Branch-and-bound driver.

Branching follows the outermost-first pair order (s1, sN), (s2, sN-1), ...
with a middle singleton for odd N.  In skew mode the same pairs are walked
but the suffix member of each pair is forced by the skew relation, so each
unit has two children instead of four.  At every node the per-lag bound is
compared against the incumbent threshold; energies within a length class
agree mod 4 (mod 8 for skew-symmetric sequences), so an incumbent with
energy E lets the search demand E-4 (E-8) from then on.  Value ordering
tries the template-agreeing combination first, and template-adjusted
lex-leader checks prune symmetric duplicates at even depths down to N/2.

Two engines implement the identical tree walk: a readable recursive one in
this module built on bounds.PartialState, and a compiled kernel in
labsolver._kernel used by default.  Node counts and results agree exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .bounds import PartialState
from .symmetry import (
    LexStatus,
    lex_leader_checks,
    lex_leader_satisfied,
    should_check,
    skew_preserving_symmetries,
)
from .templates import Template, build_skew_template, build_template
from .sequences import Sequence

_HUGE = 1 << 62
_TIME_CHECK_INTERVAL = 1 << 16  # nodes between wall-clock checks

GENERAL_DECREMENT = 4
SKEW_DECREMENT = 8


class ConvergenceRecord(NamedTuple):
    nodes: int        # node count when the incumbent improved
    elapsed: float    # wall-clock seconds, best effort
    energy: int


@dataclass
class SearchConfig:
    n: int
    mode: str = "general"  # "general" | "skew"
    use_template: bool = True
    use_symmetry: bool = True
    use_cancellations: bool = True
    use_reinforcements: bool = True
    baseline_bound: bool = False
    node_limit: int | None = None
    time_limit: float | None = None
    template_override: Template | None = None
    engine: str = "auto"  # "auto" | "compiled" | "python"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode not in ("general", "skew"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "skew" and self.n % 2 == 0:
            raise ValueError("skew mode requires odd n")
        if self.engine not in ("auto", "compiled", "python"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")

    @property
    def decrement(self) -> int:
        return SKEW_DECREMENT if self.mode == "skew" else GENERAL_DECREMENT


@dataclass
class SearchResult:
    best: Sequence
    energy: int
    merit_factor: float
    nodes: int
    proven_optimal: bool
    convergence: list[ConvergenceRecord] = field(default_factory=list)
    elapsed: float = 0.0


def count_distinct_incumbent_energies(result: SearchResult) -> int:
    return len({rec.energy for rec in result.convergence})


def branch_order(n: int, mode: str = "general") -> tuple[tuple[int, ...], ...]:
    """Branching units in outermost-first order (0-based positions).

    Pairs (i, n-1-i) from the outside in, then the middle singleton for odd
    n.  Skew mode walks the same positions; there the second member of each
    pair is forced rather than branched on.
    """
    units: list[tuple[int, ...]] = []
    i, j = 0, n - 1
    while i < j:
        units.append((i, j))
        i += 1
        j -= 1
    if i == j:
        units.append((i,))
    return tuple(units)


def skew_mirror_sign(pos: int, n: int) -> int:
    """Sign linking position pos to its mirror n-1-pos under the skew
    relation s[c+i] = (-1)^i s[c-i] with c the center."""
    c = (n - 1) // 2
    return -1 if (c - pos) % 2 else 1


def child_values(
    unit: tuple[int, ...],
    n: int,
    mode: str = "general",
    template: Template | None = None,
) -> tuple[tuple[int, ...], ...]:
    """Ordered value combinations for one branching unit.

    The template-agreeing combination comes first; without a template the
    base value is +1.  General pairs branch four ways ((+,+), (+,-), (-,+),
    (-,-) relative to the base); skew pairs and singletons branch two ways.
    """
    base = [template[p] if template is not None else 1 for p in unit]
    if len(unit) == 1:
        return ((base[0],), (-base[0],))
    bi, bj = base
    if mode == "skew":
        sign = skew_mirror_sign(unit[0], n)
        return ((bi, sign * bi), (-bi, -sign * bi))
    return ((bi, bj), (bi, -bj), (-bi, bj), (-bi, -bj))


def ordering_template(cfg: SearchConfig) -> Template:
    """The template driving value ordering and the lex-leader transform.

    Without ``use_template`` this degrades to all +1: default value order
    and plain (unadjusted) lex-leader constraints.
    """
    if not cfg.use_template:
        return Template((1,) * cfg.n)
    if cfg.template_override is not None:
        if len(cfg.template_override) != cfg.n:
            raise ValueError(
                f"template override has length {len(cfg.template_override)},"
                f" need {cfg.n}"
            )
        return cfg.template_override
    if cfg.mode == "skew":
        return build_skew_template((cfg.n + 1) // 2)
    return build_template(cfg.n)


def symmetry_checks(cfg: SearchConfig, template: Template):
    """Lex-leader checks for this run; in skew mode restricted to the
    symmetries that keep the embedded skew probe skew-symmetric."""
    if not cfg.use_symmetry:
        return ()
    if cfg.mode == "skew":
        probe = build_skew_template((cfg.n + 1) // 2).values
        return lex_leader_checks(template, skew_preserving_symmetries(probe))
    return lex_leader_checks(template)


class _LimitReached(Exception):
    pass


def _solve_python(
    cfg: SearchConfig,
    sink: Callable[[ConvergenceRecord], None] | None,
) -> SearchResult:
    n = cfg.n
    units = branch_order(n, cfg.mode)
    template = ordering_template(cfg)
    checks = symmetry_checks(cfg, template)
    combos = [
        child_values(u, n, cfg.mode, template if cfg.use_template else None)
        for u in units
    ]
    st = PartialState(
        n,
        use_cancellations=cfg.use_cancellations,
        use_reinforcements=cfg.use_reinforcements,
    )
    decrement = cfg.decrement
    start = time.monotonic()

    nodes = 0
    threshold = _HUGE
    best_energy = _HUGE
    best_seq: tuple[int, ...] = ()
    convergence: list[ConvergenceRecord] = []

    def rec(d: int, assigned: int) -> None:
        nonlocal nodes, threshold, best_energy, best_seq
        if cfg.node_limit is not None and nodes >= cfg.node_limit:
            raise _LimitReached
        if (
            cfg.time_limit is not None
            and nodes % _TIME_CHECK_INTERVAL == 0
            and time.monotonic() - start > cfg.time_limit
        ):
            raise _LimitReached
        nodes += 1
        lb = st.baseline_lower_bound() if cfg.baseline_bound else st.lower_bound()
        if lb >= threshold:
            return
        if d == len(units):
            best_energy = lb  # bound is exact on full assignments
            best_seq = tuple(st.spins)
            threshold = best_energy - decrement + 1
            record = ConvergenceRecord(
                nodes, time.monotonic() - start, best_energy
            )
            convergence.append(record)
            if sink is not None:
                sink(record)
            return
        if checks and 0 < assigned and should_check(assigned, n):
            for check in checks:
                if lex_leader_satisfied(st.spins, check) is LexStatus.VIOLATED:
                    return
        unit = units[d]
        for values in combos[d]:
            for pos, v in zip(unit, values):
                st.assign(pos, v)
            rec(d + 1, assigned + len(unit))
            for pos in reversed(unit):
                st.unassign(pos)

    proven = True
    try:
        rec(0, 0)
    except _LimitReached:
        proven = False

    elapsed = time.monotonic() - start
    if not best_seq:
        raise RuntimeError("search terminated before reaching any leaf")
    merit = n * n / (2.0 * best_energy) if best_energy else math.inf
    return SearchResult(
        best=best_seq,
        energy=int(best_energy),
        merit_factor=merit,
        nodes=nodes,
        proven_optimal=proven,
        convergence=convergence,
        elapsed=elapsed,
    )


def solve(
    cfg: SearchConfig,
    sink: Callable[[ConvergenceRecord], None] | None = None,
) -> SearchResult:
    """Run the branch-and-bound search described by ``cfg``.

    Returns the optimal sequence with proven_optimal=True when the tree is
    exhausted within the configured limits, otherwise the best incumbent.
    Improvements are reported through ``sink`` as they are found.
    """
    engine = cfg.engine
    if engine in ("auto", "compiled"):
        try:
            from . import _kernel
        except ImportError:
            _kernel = None
        if _kernel is not None and _kernel.HAVE_NUMBA:
            return _kernel.solve_compiled(cfg, sink)
        if engine == "compiled":
            raise RuntimeError("compiled engine requested but numba is unavailable")
    return _solve_python(cfg, sink)
