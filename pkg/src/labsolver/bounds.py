"""Incremental per-lag bound state for partially assigned sequences.

For a partial assignment, each lag k splits its products s[i]*s[i+k] into
computable (both ends assigned, summed in t_k) and uncomputable ones.  The
certified worst case per lag is

    l_k = max(b_k, |t_k| - f_k)

where f_k counts uncomputable products not covered by a cancellation pair
and b_k is the parity floor (N-k odd forces |C_k| >= 1).  Two uncomputable
products sharing an unassigned middle variable q form a pair (q-k, q, q+k):
a *cancellation* when the assigned outer values differ (the pair sums to 0,
so both products leave f_k), a *reinforcement* when they agree (the pair
sums to +-2).  When every uncomputable product at lag k sits in such a pair
and t_k is even, C_k = t_k + (sum of pair contributions) is congruent to
t_k + 2*r mod 4 with r reinforcement pairs; if that class is 2 mod 4 then
|C_k| >= 2 and the floor rises to b_k = 2.

The total bound sum(l_k^2) never exceeds the energy of any completion, and
equals it exactly once every position is assigned.

Positions are assigned outermost-first: the assigned set is always a prefix
plus a suffix, growing pairwise from both ends (stack discipline for
backtracking).  Each assign/unassign touches every lag once with O(1) work.
"""

from __future__ import annotations

from typing import NamedTuple

_NO_PAIR = 0
_CANCEL = 1
_REINFORCE = 2


class LagBound(NamedTuple):
    value: int  # certified lower bound on |C_k|
    floor: int  # parity floor b_k: 0, 1, or 2


class PartialState:
    """Mutable bound bookkeeping for one search line (single-writer).

    ``use_cancellations`` and ``use_reinforcements`` gate how much of the
    tracked pairing information the bound evaluation may use; tracking
    itself is unconditional so toggling is purely an evaluation choice.
    """

    def __init__(self, n: int, *, use_cancellations: bool = True,
                 use_reinforcements: bool = True) -> None:
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.use_cancellations = use_cancellations
        self.use_reinforcements = use_reinforcements
        self.spins = [0] * n
        # Lag-indexed arrays, slot 0 unused.
        self._t = [0] * n                     # sum of computable products
        self._u = [0] * n                     # count of uncomputable products
        self._cancel = [0] * n                # credited cancellation pairs
        self._reinf = [0] * n                 # credited reinforcement pairs
        self._arb = [0] * n                   # completion sum, unassigned -> +1
        for k in range(1, n):
            self._u[k] = n - k
            self._arb[k] = n - k
        self._pair = [[_NO_PAIR] * n for _ in range(n)]  # [lag][middle pos]
        self._prefix = 0      # positions 0 .. _prefix-1 assigned
        self._suffix = 0      # positions n-_suffix .. n-1 assigned
        self._stack: list[int] = []

    # -- inspection ---------------------------------------------------------

    @property
    def assigned_count(self) -> int:
        return len(self._stack)

    @property
    def is_complete(self) -> bool:
        return len(self._stack) == self.n

    def is_assigned(self, pos: int) -> bool:
        return self.spins[pos] != 0

    def partial_sum(self, k: int) -> int:
        """t_k: sum of computable products at lag k."""
        self._check_lag(k)
        return self._t[k]

    def free_count(self, k: int) -> int:
        """f_k: uncomputable products minus cancellation-pair members."""
        self._check_lag(k)
        return self._u[k] - 2 * self._cancel[k]

    def cancel_pairs(self, k: int) -> int:
        self._check_lag(k)
        return self._cancel[k]

    def reinforce_pairs(self, k: int) -> int:
        self._check_lag(k)
        return self._reinf[k]

    def fully_paired(self, k: int) -> bool:
        """True iff every uncomputable product at lag k sits in exactly one
        credited pair.  Pairs are disjoint, so this is a count identity."""
        self._check_lag(k)
        return self._u[k] == 2 * (self._cancel[k] + self._reinf[k])

    def _check_lag(self, k: int) -> None:
        if not 1 <= k < self.n:
            raise ValueError(f"lag must be in 1..{self.n - 1}, got {k}")

    # -- mutation ------------------------------------------------------------

    def assign(self, pos: int, value: int) -> None:
        """Assign the next outermost position (or its pair partner).

        Moves newly computable products into t_k, credits newly completed
        cancellation/reinforcement pairs, and un-credits pairs whose middle
        variable is ``pos`` (their products enter t_k normally).
        """
        if value != 1 and value != -1:
            raise ValueError("value must be +1 or -1")
        n = self.n
        if not 0 <= pos < n or self.spins[pos] != 0:
            raise ValueError(f"position {pos} is not assignable")
        if pos == self._prefix and self._prefix <= self._suffix:
            self._prefix += 1
        elif pos == n - 1 - self._suffix and self._suffix <= self._prefix:
            self._suffix += 1
        else:
            raise ValueError(
                f"position {pos} violates outermost-first assignment order"
            )
        self._stack.append(pos)
        spins = self.spins
        spins[pos] = value
        t, u, arb = self._t, self._u, self._arb
        cancel, reinf, pair = self._cancel, self._reinf, self._pair
        for k in range(1, n):
            left = pos - k
            right = pos + k
            if left >= 0:
                sl = spins[left]
                if sl != 0:
                    t[k] += value * sl
                    u[k] -= 1
                    arb[k] -= sl
                else:
                    arb[k] += value - 1
            if right < n:
                sr = spins[right]
                if sr != 0:
                    t[k] += value * sr
                    u[k] -= 1
                    arb[k] -= sr
                else:
                    arb[k] += value - 1
            # A pair with middle pos is no longer a pair of uncomputable
            # products; both members just moved into t_k above.
            row = pair[k]
            if row[pos] != _NO_PAIR:
                if row[pos] == _CANCEL:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                row[pos] = _NO_PAIR
            # pos may complete a triple (pos, pos+k, pos+2k) or
            # (pos-2k, pos-k, pos) whose middle is still unassigned.
            far = pos + 2 * k
            if far < n and spins[pos + k] == 0 and spins[far] != 0:
                if value != spins[far]:
                    row[pos + k] = _CANCEL
                    cancel[k] += 1
                else:
                    row[pos + k] = _REINFORCE
                    reinf[k] += 1
            far = pos - 2 * k
            if far >= 0 and spins[pos - k] == 0 and spins[far] != 0:
                if value != spins[far]:
                    row[pos - k] = _CANCEL
                    cancel[k] += 1
                else:
                    row[pos - k] = _REINFORCE
                    reinf[k] += 1

    def unassign(self, pos: int) -> None:
        """Exact inverse of the most recent assign (stack discipline)."""
        if not self._stack or self._stack[-1] != pos:
            raise ValueError(
                f"position {pos} is not the most recent assignment"
            )
        n = self.n
        spins = self.spins
        value = spins[pos]
        t, u, arb = self._t, self._u, self._arb
        cancel, reinf, pair = self._cancel, self._reinf, self._pair
        for k in range(1, n):
            left = pos - k
            right = pos + k
            if left >= 0:
                sl = spins[left]
                if sl != 0:
                    t[k] -= value * sl
                    u[k] += 1
                    arb[k] += sl
                else:
                    arb[k] -= value - 1
            if right < n:
                sr = spins[right]
                if sr != 0:
                    t[k] -= value * sr
                    u[k] += 1
                    arb[k] += sr
                else:
                    arb[k] -= value - 1
            # Pairs credited when pos completed a triple: the surrounding
            # state is back to what it was then, so re-derive and remove.
            row = pair[k]
            far = pos + 2 * k
            if far < n and spins[pos + k] == 0 and spins[far] != 0:
                if row[pos + k] == _CANCEL:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                row[pos + k] = _NO_PAIR
            far = pos - 2 * k
            if far >= 0 and spins[pos - k] == 0 and spins[far] != 0:
                if row[pos - k] == _CANCEL:
                    cancel[k] -= 1
                else:
                    reinf[k] -= 1
                row[pos - k] = _NO_PAIR
            # Re-credit the pair whose middle is pos, if its outer ends are
            # both assigned (it was credited before pos was assigned).
            if left >= 0 and right < n and spins[left] != 0 and spins[right] != 0:
                if spins[left] != spins[right]:
                    row[pos] = _CANCEL
                    cancel[k] += 1
                else:
                    row[pos] = _REINFORCE
                    reinf[k] += 1
        spins[pos] = 0
        self._stack.pop()
        if pos == self._prefix - 1:
            self._prefix -= 1
        else:
            self._suffix -= 1

    # -- bounds ---------------------------------------------------------------

    def lag_bound(self, k: int) -> LagBound:
        """Certified lower bound on |C_k| over all completions."""
        self._check_lag(k)
        t = self._t[k]
        floor = (self.n - k) & 1
        if self.use_reinforcements and t % 2 == 0 and self.fully_paired(k):
            paired_free = 2 * self._reinf[k]
            if (t - paired_free) & 3:
                floor = 2
        if self.use_cancellations:
            f = self._u[k] - 2 * self._cancel[k]
        else:
            f = self._u[k]
        value = (t if t >= 0 else -t) - f
        if value < floor:
            value = floor
        return LagBound(value, floor)

    def lower_bound(self) -> int:
        """sum(l_k^2): a lower bound on the energy of every completion,
        exact once the assignment is complete."""
        return sum(self.lag_bound(k).value ** 2 for k in range(1, self.n))

    def baseline_lower_bound(self) -> int:
        """Arbitrary-completion bound: finish with +1 everywhere, then allow
        each uncomputable product to move |C_k| by at most 2."""
        n = self.n
        total = 0
        for k in range(1, n):
            ck = self._t[k] + self._arb[k]
            if ck < 0:
                ck = -ck
            value = ck - 2 * self._u[k]
            floor = (n - k) & 1
            if value < floor:
                value = floor
            total += value * value
        return total
