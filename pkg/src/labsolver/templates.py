"""Value-ordering templates cut from embedded low-energy sequences.

A template assigns every position a preferred first value.  Templates come
from the middle of a known longer low-energy sequence of matching parity
(odd targets from the length-67 source, even targets from the length-68
source), and for skew-symmetric search from a length-119 skew-symmetric
sequence whose free half is embedded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .sequences import Sequence, decode_rle, expand_skew

# Run-length encodings of the embedded source sequences.  The odd source has
# length 67 and energy 241; the even source length 68 and energy 250; the
# skew source expands to length 119 with energy 835.
ODD_SOURCE_RLE = "12112111211222B2221111111112224542"
EVEN_SOURCE_RLE = "11111111141147232123251412112221212"
SKEW_SOURCE_FREE_RLE = "11331111311332321211561311512"


@dataclass(frozen=True)
class Template:
    """Per-position preferred first values for a fixed problem size."""

    values: Sequence

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("template must be non-empty")
        for v in self.values:
            if v != 1 and v != -1:
                raise ValueError("template values must be +1 or -1")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def middle_extract(seq: Sequence, n: int) -> Sequence:
    """The middle n values of seq; requires matching parity."""
    length = len(seq)
    if n < 1 or n > length:
        raise ValueError(f"cannot extract {n} values from length {length}")
    if (length - n) % 2 != 0:
        raise ValueError(
            f"middle extraction of {n} from length {length} is off-center"
        )
    offset = (length - n) // 2
    return seq[offset : offset + n]


@lru_cache(maxsize=None)
def _odd_source() -> Sequence:
    return decode_rle(ODD_SOURCE_RLE, leading=1)


@lru_cache(maxsize=None)
def _even_source() -> Sequence:
    return decode_rle(EVEN_SOURCE_RLE, leading=1)


@lru_cache(maxsize=None)
def skew_source() -> Sequence:
    """The full length-119 skew-symmetric source sequence."""
    return expand_skew(decode_rle(SKEW_SOURCE_FREE_RLE, leading=1))


def build_template(n: int) -> Template:
    """Template for general search: middle n values of the parity-matched
    embedded source.  Odd n up to 67, even n up to 68."""
    source = _odd_source() if n % 2 else _even_source()
    if n < 1 or n > len(source):
        raise ValueError(
            f"no embedded template source covers n={n}"
            f" (parity limit {len(source)})"
        )
    return Template(middle_extract(source, n))


def build_skew_template(n_free: int) -> Template:
    """Template for skew-symmetric search over n_free free variables.

    Returns the full-length template for N = 2*n_free - 1, taken as the
    middle N values of the expanded length-119 skew source.  Only the first
    n_free values order the search; the rest are mirrored by the sieve.
    """
    if n_free < 1:
        raise ValueError("n_free must be >= 1")
    n = 2 * n_free - 1
    source = skew_source()
    if n > len(source):
        raise ValueError(
            f"skew template source covers N <= {len(source)}, got N={n}"
        )
    return Template(middle_extract(source, n))


def template_from_sequence(seq: Sequence, n: int) -> Template:
    """Template from a user-supplied sequence via middle extraction."""
    return Template(middle_extract(seq, n))
