"""Compiled search engine (numba).

Same tree walk as search._solve_python, restated over flat arrays with an
explicit stack so the whole hot loop jits.  The driver runs the kernel in
node-count chunks: between chunks it drains new incumbents to the caller's
sink, stamps wall-clock times, and enforces node/time limits.  Kernel state
lives entirely in the passed-in arrays, so a chunk boundary is invisible to
the search and node counts are independent of chunking.

State mirrors bounds.PartialState: per-lag computable sums t, uncomputable
counts u, credited cancellation/reinforcement pairs keyed by (lag, middle
position), and the all-(+1) completion sums for the baseline bound.
"""

from __future__ import annotations

import time

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via engine fallback
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


_HUGE = 1 << 62
_CHUNK = 1 << 16

_PH_ENTER = 0
_PH_ADVANCE = 1
_PH_RETURN = 2
_PH_DONE = 3


@njit(cache=True)
def _assign(spins, t, u, cancel, reinf, arb, pair, n, pos, value,
            track_pairs, track_arb):
    spins[pos] = value
    for k in range(1, n):
        left = pos - k
        right = pos + k
        if left >= 0:
            sl = spins[left]
            if sl != 0:
                t[k] += value * sl
                u[k] -= 1
                if track_arb:
                    arb[k] -= sl
            elif track_arb:
                arb[k] += value - 1
        if right < n:
            sr = spins[right]
            if sr != 0:
                t[k] += value * sr
                u[k] -= 1
                if track_arb:
                    arb[k] -= sr
            elif track_arb:
                arb[k] += value - 1
        if track_pairs:
            pt = pair[k, pos]
            if pt != 0:
                if pt == 1:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                pair[k, pos] = 0
            far = pos + 2 * k
            if far < n and spins[pos + k] == 0 and spins[far] != 0:
                if value != spins[far]:
                    pair[k, pos + k] = 1
                    cancel[k] += 1
                else:
                    pair[k, pos + k] = 2
                    reinf[k] += 1
            far = pos - 2 * k
            if far >= 0 and spins[pos - k] == 0 and spins[far] != 0:
                if value != spins[far]:
                    pair[k, pos - k] = 1
                    cancel[k] += 1
                else:
                    pair[k, pos - k] = 2
                    reinf[k] += 1


@njit(cache=True)
def _unassign(spins, t, u, cancel, reinf, arb, pair, n, pos,
              track_pairs, track_arb):
    value = spins[pos]
    for k in range(1, n):
        left = pos - k
        right = pos + k
        if left >= 0:
            sl = spins[left]
            if sl != 0:
                t[k] -= value * sl
                u[k] += 1
                if track_arb:
                    arb[k] += sl
            elif track_arb:
                arb[k] -= value - 1
        if right < n:
            sr = spins[right]
            if sr != 0:
                t[k] -= value * sr
                u[k] += 1
                if track_arb:
                    arb[k] += sr
            elif track_arb:
                arb[k] -= value - 1
        if track_pairs:
            far = pos + 2 * k
            if far < n and spins[pos + k] == 0 and spins[far] != 0:
                if pair[k, pos + k] == 1:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                pair[k, pos + k] = 0
            far = pos - 2 * k
            if far >= 0 and spins[pos - k] == 0 and spins[far] != 0:
                if pair[k, pos - k] == 1:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                pair[k, pos - k] = 0
            if (left >= 0 and right < n and spins[left] != 0
                    and spins[right] != 0):
                if spins[left] != spins[right]:
                    pair[k, pos] = 1
                    cancel[k] += 1
                else:
                    pair[k, pos] = 2
                    reinf[k] += 1
    spins[pos] = 0


@njit(cache=True)
def _exact_bound(n, t, u, cancel, reinf, use_cancel, use_reinf, limit):
    total = 0
    for k in range(1, n):
        tk = t[k]
        floor = (n - k) & 1
        if use_reinf and (tk & 1) == 0 and u[k] == 2 * (cancel[k] + reinf[k]):
            if (tk - 2 * reinf[k]) & 3:
                floor = 2
        if use_cancel:
            f = u[k] - 2 * cancel[k]
        else:
            f = u[k]
        v = tk if tk >= 0 else -tk
        v -= f
        if v < floor:
            v = floor
        total += v * v
        if total >= limit:
            return total
    return total


@njit(cache=True)
def _baseline_bound(n, t, u, arb, limit):
    total = 0
    for k in range(1, n):
        ck = t[k] + arb[k]
        if ck < 0:
            ck = -ck
        v = ck - 2 * u[k]
        floor = (n - k) & 1
        if v < floor:
            v = floor
        total += v * v
        if total >= limit:
            return total
    return total


@njit(cache=True)
def _lex_violated(spins, lhs_sign, perm, rhs_sign, n):
    for i in range(n):
        a = spins[i]
        if a == 0:
            return False
        b = spins[perm[i]]
        if b == 0:
            return False
        la = lhs_sign[i] * a
        rb = rhs_sign[i] * b
        if la == rb:
            continue
        # +1 precedes -1: numerically greater is lexicographically smaller.
        return la < rb
    return False


@njit(cache=True)
def _run(n, num_units, kind, pos_a, pos_b, base_a, base_b, mirror_sign,
         lhs_sign, perm, rhs_sign, n_checks, half_n,
         use_cancel, use_reinf, baseline, track_pairs, track_arb, decrement,
         spins, t, u, cancel, reinf, arb, pair,
         combo_next, ctl, best_seq, conv_nodes, conv_energy, node_limit):
    """Advance the search until done (0) or the node budget is hit (1)."""
    while True:
        ph = ctl[0]
        if ph == _PH_ENTER:
            if ctl[2] >= node_limit:
                return 1
            ctl[2] += 1
            if baseline:
                lb = _baseline_bound(n, t, u, arb, ctl[5])
            else:
                lb = _exact_bound(n, t, u, cancel, reinf,
                                  use_cancel, use_reinf, ctl[5])
            prune = lb >= ctl[5]
            if not prune and ctl[1] == num_units:
                # Full assignment; the bound is the exact energy here.
                ctl[4] = lb
                ctl[5] = lb - decrement + 1
                for i in range(n):
                    best_seq[i] = spins[i]
                conv_nodes[ctl[6]] = ctl[2]
                conv_energy[ctl[6]] = lb
                ctl[6] += 1
                prune = True
            if not prune and n_checks > 0:
                ac = ctl[3]
                if ac > 0 and (ac & 1) == 0 and ac <= half_n:
                    for ci in range(n_checks):
                        if _lex_violated(spins, lhs_sign, perm[ci],
                                         rhs_sign[ci], n):
                            prune = True
                            break
            if prune:
                ctl[0] = _PH_RETURN
            else:
                combo_next[ctl[1]] = 0
                ctl[0] = _PH_ADVANCE
        elif ph == _PH_ADVANCE:
            d = ctl[1]
            c = combo_next[d]
            kd = kind[d]
            ncomb = 4 if kd == 0 else 2
            if c >= ncomb:
                ctl[0] = _PH_RETURN
            else:
                combo_next[d] = c + 1
                if kd == 0:
                    v1 = base_a[d] * (1 - 2 * ((c >> 1) & 1))
                    v2 = base_b[d] * (1 - 2 * (c & 1))
                    _assign(spins, t, u, cancel, reinf, arb, pair, n,
                            pos_a[d], v1, track_pairs, track_arb)
                    _assign(spins, t, u, cancel, reinf, arb, pair, n,
                            pos_b[d], v2, track_pairs, track_arb)
                    ctl[3] += 2
                elif kd == 1:
                    v1 = base_a[d] * (1 - 2 * c)
                    _assign(spins, t, u, cancel, reinf, arb, pair, n,
                            pos_a[d], v1, track_pairs, track_arb)
                    ctl[3] += 1
                else:
                    v1 = base_a[d] * (1 - 2 * c)
                    _assign(spins, t, u, cancel, reinf, arb, pair, n,
                            pos_a[d], v1, track_pairs, track_arb)
                    _assign(spins, t, u, cancel, reinf, arb, pair, n,
                            pos_b[d], mirror_sign[d] * v1,
                            track_pairs, track_arb)
                    ctl[3] += 2
                ctl[1] = d + 1
                ctl[0] = _PH_ENTER
        elif ph == _PH_RETURN:
            d = ctl[1]
            if d == 0:
                ctl[0] = _PH_DONE
                return 0
            pd = d - 1
            if kind[pd] == 1:
                _unassign(spins, t, u, cancel, reinf, arb, pair, n,
                          pos_a[pd], track_pairs, track_arb)
                ctl[3] -= 1
            else:
                _unassign(spins, t, u, cancel, reinf, arb, pair, n,
                          pos_b[pd], track_pairs, track_arb)
                _unassign(spins, t, u, cancel, reinf, arb, pair, n,
                          pos_a[pd], track_pairs, track_arb)
                ctl[3] -= 2
            ctl[1] = pd
            ctl[0] = _PH_ADVANCE
        else:
            return 0


def solve_compiled(cfg, sink=None):
    """Run a search on the compiled kernel; same contract as search.solve."""
    import math

    from .search import (
        ConvergenceRecord,
        SearchResult,
        branch_order,
        ordering_template,
        skew_mirror_sign,
        symmetry_checks,
    )

    n = cfg.n
    units = branch_order(n, cfg.mode)
    template = ordering_template(cfg)
    checks = symmetry_checks(cfg, template)

    num_units = len(units)
    kind = np.zeros(num_units, dtype=np.int64)
    pos_a = np.zeros(num_units, dtype=np.int64)
    pos_b = np.zeros(num_units, dtype=np.int64)
    base_a = np.ones(num_units, dtype=np.int64)
    base_b = np.ones(num_units, dtype=np.int64)
    mirror = np.ones(num_units, dtype=np.int64)
    for d, unit in enumerate(units):
        pos_a[d] = unit[0]
        if len(unit) == 1:
            kind[d] = 1
            pos_b[d] = -1
        else:
            kind[d] = 2 if cfg.mode == "skew" else 0
            pos_b[d] = unit[1]
            mirror[d] = skew_mirror_sign(unit[0], n)
            if cfg.use_template:
                base_b[d] = template[unit[1]]
        if cfg.use_template:
            base_a[d] = template[unit[0]]

    n_checks = len(checks)
    lhs_sign = np.array(template.values, dtype=np.int64)
    perm = np.zeros((n_checks, n), dtype=np.int64)
    rhs_sign = np.zeros((n_checks, n), dtype=np.int64)
    for ci, check in enumerate(checks):
        perm[ci, :] = check.perm
        rhs_sign[ci, :] = check.rhs_sign

    spins = np.zeros(n, dtype=np.int8)
    t = np.zeros(n, dtype=np.int64)
    u = np.zeros(n, dtype=np.int64)
    arb = np.zeros(n, dtype=np.int64)
    for k in range(1, n):
        u[k] = n - k
        arb[k] = n - k
    cancel = np.zeros(n, dtype=np.int64)
    reinf = np.zeros(n, dtype=np.int64)
    pair = np.zeros((n, n), dtype=np.int8)
    combo_next = np.zeros(num_units + 1, dtype=np.int64)
    ctl = np.zeros(8, dtype=np.int64)
    ctl[4] = _HUGE
    ctl[5] = _HUGE
    best_seq = np.zeros(n, dtype=np.int64)
    decrement = cfg.decrement
    max_records = n * n * n // (3 * decrement) + 8
    conv_nodes = np.zeros(max_records, dtype=np.int64)
    conv_energy = np.zeros(max_records, dtype=np.int64)

    track_pairs = (cfg.use_cancellations or cfg.use_reinforcements) and (
        not cfg.baseline_bound
    )
    track_arb = cfg.baseline_bound

    start = time.monotonic()
    convergence: list[ConvergenceRecord] = []
    reported = 0
    proven = True
    while True:
        budget = int(ctl[2]) + _CHUNK
        if cfg.node_limit is not None:
            budget = min(budget, cfg.node_limit)
        status = _run(
            n, num_units, kind, pos_a, pos_b, base_a, base_b, mirror,
            lhs_sign, perm, rhs_sign, n_checks, n // 2,
            cfg.use_cancellations, cfg.use_reinforcements,
            cfg.baseline_bound, track_pairs, track_arb, decrement,
            spins, t, u, cancel, reinf, arb, pair,
            combo_next, ctl, best_seq, conv_nodes, conv_energy, budget,
        )
        now = time.monotonic()
        while reported < int(ctl[6]):
            record = ConvergenceRecord(
                int(conv_nodes[reported]), now - start,
                int(conv_energy[reported]),
            )
            convergence.append(record)
            if sink is not None:
                sink(record)
            reported += 1
        if status == 0:
            break
        if cfg.node_limit is not None and int(ctl[2]) >= cfg.node_limit:
            proven = False
            break
        if cfg.time_limit is not None and now - start > cfg.time_limit:
            proven = False
            break

    if int(ctl[6]) == 0:
        raise RuntimeError("search terminated before reaching any leaf")
    best_energy = int(ctl[4])
    merit = n * n / (2.0 * best_energy) if best_energy else math.inf
    return SearchResult(
        best=tuple(int(v) for v in best_seq),
        energy=best_energy,
        merit_factor=merit,
        nodes=int(ctl[2]),
        proven_optimal=proven,
        convergence=convergence,
        elapsed=time.monotonic() - start,
    )
