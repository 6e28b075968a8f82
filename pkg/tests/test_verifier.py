import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from figprimes import build_set
from figprimes.exceptions import FigurateRangeError
from figprimes.verifier import (
    DecompositionRecord,
    count_representations,
    verify_range,
    witness_for,
    witness_trace,
)

from oracles import min_witness_oracle, representations_oracle


@pytest.mark.parametrize("n, a, b", [(2, 1, 1), (12, 1, 11), (26, 1, 25)])
def test_witness_examples(small_set, n, a, b):
    assert witness_for(small_set, n) == DecompositionRecord(n, a, b)


@pytest.mark.parametrize("n, expected", [(8, 7), (24, 12), (25, 10)])
def test_count_examples(small_set, n, expected):
    assert count_representations(small_set, n) == expected


def test_witness_and_count_against_oracle(small_set, oracle_5000):
    for n in range(2, 2001):
        w = witness_for(small_set, n)
        assert (None if w is None else (w.a, w.b)) == min_witness_oracle(oracle_5000, n)
        assert count_representations(small_set, n) == representations_oracle(oracle_5000, n)


def test_range_errors(small_set):
    for bad in (1, 0, small_set.max_n + 1):
        with pytest.raises(FigurateRangeError):
            witness_for(small_set, bad)
        with pytest.raises(FigurateRangeError):
            count_representations(small_set, bad)
    with pytest.raises(FigurateRangeError):
        verify_range(small_set, 1, 10)
    with pytest.raises(FigurateRangeError):
        verify_range(small_set, 20, 10)


def test_decomposition_record_invariants():
    with pytest.raises(ValueError):
        DecompositionRecord(10, 6, 4)
    with pytest.raises(ValueError):
        DecompositionRecord(10, 3, 8)


def test_equivalence_and_symmetry_to_10k():
    s = build_set(10_000)
    for n in range(2, 10_001):
        cnt = count_representations(s, n)
        assert (witness_for(s, n) is not None) == (cnt > 0)
        if n % 2:
            assert cnt % 2 == 0
        else:
            assert cnt % 2 == int(s.flags[n // 2])


def test_verify_small_ranges(small_set):
    rep = verify_range(small_set, 12, 12, keep_witnesses=True)
    assert rep.exceptions == [] and rep.checked == 1
    assert list(rep.witnesses()) == [DecompositionRecord(12, 1, 11)]
    rep = verify_range(build_set(10_000), 2, 10_000)
    assert rep.exceptions == [] and rep.checked == 9_999
    assert sum(rep.min_witness_histogram.values()) == 9_999


def test_verify_matches_per_target_scan(small_set):
    rep = verify_range(small_set, 2, 3000, chunk_size=257, keep_witnesses=True)
    for rec in rep.witnesses():
        assert witness_for(small_set, rec.n) == rec


def test_exceptions_detected_on_sparse_set():
    # only 1 and 2 are members: 2, 3, 4 decompose, nothing above does
    from figprimes.membership import FigurateSet

    sparse = FigurateSet.from_values(20, [1, 2])
    rep = verify_range(sparse, 2, 20, chunk_size=4)
    assert rep.exceptions == list(range(5, 21))
    for n in rep.exceptions:
        assert witness_for(sparse, n) is None
        assert all(not ok for _, _, ok in rep.traces[n])
    assert rep.traces[7] == witness_trace(sparse, 7) == [(1, 6, False), (2, 5, False)]


def test_jobs_do_not_change_report(medium_set):
    one = verify_range(medium_set, 2, 20_001, jobs=1, chunk_size=3000)
    many = verify_range(medium_set, 2, 20_001, jobs=3, chunk_size=3000)
    assert one.to_json(timing=False) == many.to_json(timing=False)


def test_report_serialisation(small_set):
    rep = verify_range(small_set, 2, 100, keep_witnesses=True)
    d = json.loads(rep.to_json())
    assert list(d) == ["lo", "hi", "checked", "exceptions", "min_witness_histogram", "seconds"]
    assert "seconds" not in json.loads(rep.to_json(timing=False))
    lines = rep.witness_csv().splitlines()
    assert lines[0] == "n,a,b" and lines[1] == "2,1,1" and len(lines) == 100


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5000), st.integers(0, 300))
def test_chunking_is_invisible(lo, span):
    s = build_set(5300)
    hi = min(lo + span, 5300)
    a = verify_range(s, lo, hi, chunk_size=17, keep_witnesses=True)
    b = verify_range(s, lo, hi, keep_witnesses=True)
    assert a.to_dict(timing=False) == b.to_dict(timing=False)
    assert np.array_equal(a.min_a, b.min_a)
