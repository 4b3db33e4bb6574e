import pytest

from labsolver.sequences import decode_rle, energy, expand_skew, is_skew, merit_factor
from labsolver.templates import (
    SKEW_SOURCE_FREE_RLE,
    Template,
    build_skew_template,
    build_template,
    middle_extract,
    skew_source,
    template_from_sequence,
)


def test_full_odd_source():
    tpl = build_template(67)
    assert len(tpl) == 67
    assert energy(tpl.values) == 241
    assert merit_factor(tpl.values) == pytest.approx(9.31, abs=0.005)


def test_full_even_source():
    tpl = build_template(68)
    assert len(tpl) == 68
    assert energy(tpl.values) == 250
    assert merit_factor(tpl.values) == pytest.approx(9.25, abs=0.005)


def test_single_middle_element():
    odd = build_template(67).values
    assert build_template(1).values == (odd[33],)


def test_extraction_is_nested():
    for parity_max in (67, 68):
        big = build_template(parity_max).values
        for n in range(parity_max % 2 or 2, parity_max + 1, 2):
            tpl = build_template(n).values
            off = (parity_max - n) // 2
            assert tpl == big[off : off + n]


@pytest.mark.parametrize("n", [0, -3, 69, 70, 71])
def test_out_of_range_sizes_rejected(n):
    with pytest.raises(ValueError):
        build_template(n)


def test_skew_template_full_length():
    tpl = build_skew_template(60)
    assert len(tpl) == 119
    assert energy(tpl.values) == 835
    assert merit_factor(tpl.values) == pytest.approx(8.48, abs=0.005)
    assert is_skew(tpl.values)


def test_skew_source_expansion_is_skew():
    src = skew_source()
    assert src == expand_skew(decode_rle(SKEW_SOURCE_FREE_RLE))
    assert is_skew(src)


def test_skew_template_single_element():
    assert build_skew_template(1).values == (skew_source()[59],)


def test_skew_template_is_centered_extraction():
    src = skew_source()
    tpl = build_skew_template(37)  # N = 73
    off = (119 - 73) // 2
    assert tpl.values == src[off : off + 73]
    # Centered extraction of a skew-symmetric sequence stays skew-symmetric.
    assert is_skew(tpl.values)


def test_skew_template_budget():
    with pytest.raises(ValueError):
        build_skew_template(61)  # N = 121 > 119
    with pytest.raises(ValueError):
        build_skew_template(0)


def test_template_validation():
    with pytest.raises(ValueError):
        Template(())
    with pytest.raises(ValueError):
        Template((1, 0, 1))


def test_template_from_sequence():
    seq = decode_rle("21141")
    assert template_from_sequence(seq, 9).values == seq
    assert template_from_sequence(seq, 3).values == seq[3:6]
    with pytest.raises(ValueError):
        template_from_sequence(seq, 8)  # parity mismatch is off-center
    with pytest.raises(ValueError):
        template_from_sequence(seq, 11)


def test_middle_extract_arithmetic():
    assert middle_extract((1, 2, 3, 4, 5), 3) == (2, 3, 4)
    assert middle_extract((1, 2, 3, 4), 2) == (2, 3)
