import json
from itertools import islice

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupsemi.errors import Unsupported
from groupsemi.series import (
    ArithmeticTail,
    GreedySelector,
    IncreasingGapTail,
    SeriesMonolithicKind,
    StructuredSeries,
    check_facts,
    gap_subsequence,
    load_series_spec,
    min_gap_analysis,
    prefix_sum_identity,
    series_from_spec,
    series_irreducible_cert,
    series_monolithic_cert,
    validate_certificate,
    weak_goldbach_series,
)

ALL_TWOS = {"tail": {"type": "arithmetic", "start": 0, "gap": 1, "coeffs": [2]}}
ODD_TAIL = {"head": [[0, 3], [1, 3]], "tail": {"type": "arithmetic", "start": 3, "gap": 2, "coeffs": [2]}}
ODD_TAIL_EVEN = {"head": [[0, 2], [1, 2]], "tail": {"type": "arithmetic", "start": 3, "gap": 2, "coeffs": [2]}}
TRIANGULAR = {"tail": {"type": "increasing", "start": 0, "gap0": 1, "inc": 1, "coeffs": [1]}}


def S(spec):
    return series_from_spec(spec)


# streams ---------------------------------------------------------------------


def test_prefix_examples():
    f = StructuredSeries((), ArithmeticTail(0, 2, (1,)))
    assert f.prefix(4) == [(0, 1), (2, 1), (4, 1), (6, 1)]
    assert f.prefix(0) == []
    g = StructuredSeries(((0, 3),), IncreasingGapTail(1, 1, 1, (5,)))
    assert g.prefix(4) == [(0, 3), (1, 5), (2, 5), (4, 5)]
    assert [e for e, _ in S(TRIANGULAR).prefix(6)] == [0, 1, 3, 6, 10, 15]


def test_periodic_coefficients():
    f = S({"tail": {"type": "arithmetic", "start": 2, "gap": 3, "coeffs": [1, 2, 3]}})
    assert [c for _, c in f.prefix(7)] == [1, 2, 3, 1, 2, 3, 1]


@pytest.mark.parametrize(
    "spec",
    [
        {"head": [[0, 1], [0, 2]], "tail": {"type": "arithmetic", "start": 3, "gap": 1}},
        {"head": [[5, 1]], "tail": {"type": "arithmetic", "start": 3, "gap": 1}},
        {"tail": {"type": "arithmetic", "start": 0, "gap": 0}},
        {"tail": {"type": "increasing", "start": 0, "gap0": 1, "inc": 0}},
        {"tail": {"type": "arithmetic", "start": 0, "gap": 1, "coeffs": [0]}},
        {"tail": {"type": "geometric", "start": 0}},
        {"tail": {"type": "arithmetic", "start": 0, "gap": 1, "step": 2}},
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(ValueError):
        series_from_spec(spec)


def test_spec_round_trip(tmp_path):
    f = S(ODD_TAIL)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_spec()))
    assert load_series_spec(path).prefix(20) == f.prefix(20)


def test_closed_form_gaps_match_stream():
    f = S({"head": [[0, 1], [4, 2]], "tail": {"type": "increasing", "start": 6, "gap0": 3, "inc": 2, "coeffs": [1]}})
    exps = [e for e, _ in f.prefix(40)]
    assert [f.gap(i) for i in range(39)] == [b - a for a, b in zip(exps, exps[1:])]


# greedy subsequence ----------------------------------------------------------------


@pytest.mark.parametrize(
    "exps, expected",
    [
        ([0, 1, 2, 3, 5, 8, 13], [0, 1, 3, 5]),
        (list(range(15)), [0, 1, 3, 6, 10]),
        ([0, 1, 3, 7, 15], [0, 1, 2, 3, 4]),
    ],
)
def test_gap_subsequence_examples(exps, expected):
    assert list(gap_subsequence(exps))[: len(expected)] == expected


def test_gap_subsequence_is_lazy():
    from itertools import count

    assert list(islice(gap_subsequence(count()), 5)) == [0, 1, 3, 6, 10]


@given(st.lists(st.integers(1, 20), min_size=2, max_size=200), st.integers(-50, 50))
def test_gap_subsequence_properties(steps, start):
    exps = [start]
    for s in steps:
        exps.append(exps[-1] + s)
    idx = list(gap_subsequence(exps))
    assert idx[:2] == [0, 1]
    assert all(a < b for a, b in zip(idx, idx[1:]))
    gaps = [exps[b] - exps[a] for a, b in zip(idx, idx[1:])]
    assert all(a < b for a, b in zip(gaps, gaps[1:]))


def test_selector_rejects_small_steps():
    sel = GreedySelector()
    assert [sel.offer(g) for g in (0, 2, 3, 4, 5, 6)] == [True, True, False, False, True, False]


# minimum gaps and certificates ---------------------------------------------------------


@pytest.mark.parametrize(
    "spec, delta, finite, from_index",
    [
        (ALL_TWOS, 1, (), 0),
        (ODD_TAIL, 1, (0,), None),
        (TRIANGULAR, 1, (0,), None),
        ({"head": [[0, 1], [2, 1]], "tail": {"type": "arithmetic", "start": 3, "gap": 1}}, 1, (1,), 2),
        ({"head": [[0, 1], [1, 1]], "tail": {"type": "increasing", "start": 2, "gap0": 1, "inc": 2}}, 1, (0, 1, 2), None),
    ],
)
def test_min_gap_analysis(spec, delta, finite, from_index):
    d, idx = min_gap_analysis(S(spec))
    assert d == delta and idx.finite == finite and idx.from_index == from_index


@pytest.mark.parametrize(
    "spec, kind",
    [
        (TRIANGULAR, SeriesMonolithicKind.INCREASING_GAPS),
        ({"head": [[0, 1]], "tail": {"type": "arithmetic", "start": 1, "gap": 3}}, SeriesMonolithicKind.FIRST_GAP_MINIMAL),
        ({"tail": {"type": "arithmetic", "start": 0, "gap": 2}}, None),
        (ALL_TWOS, None),
    ],
)
def test_series_monolithic_cert(spec, kind):
    cert = series_monolithic_cert(S(spec))
    assert (cert.kind if cert else None) == kind


@pytest.mark.parametrize(
    "spec, certified",
    [
        (TRIANGULAR, True),
        ({"head": [[0, 2]], "tail": {"type": "arithmetic", "start": 1, "gap": 3, "coeffs": [2]}}, False),
        ({"head": [[0, 2], [1, 1]], "tail": {"type": "increasing", "start": 3, "gap0": 2, "inc": 1, "coeffs": [2]}}, True),
        (ODD_TAIL, True),
        (ODD_TAIL_EVEN, False),
    ],
)
def test_series_irreducible_cert(spec, certified):
    assert (series_irreducible_cert(S(spec)) is not None) is certified


@pytest.mark.parametrize("spec", [ALL_TWOS, ODD_TAIL, TRIANGULAR])
def test_facts_survive_sampling(spec):
    assert check_facts(S(spec)) == []


def test_increasing_index_scans_back_into_head():
    f = S({"head": [[0, 1], [1, 1], [3, 1]], "tail": {"type": "increasing", "start": 6, "gap0": 4, "inc": 1}})
    assert f.facts.gaps_strictly_increasing_after == 0


# decomposition -------------------------------------------------------------------------


def _verify(f, dec, depth=64, sample=256):
    same, _ = prefix_sum_identity(f, dec.summands, depth)
    assert same
    for s, c in zip(dec.summands, dec.certificates):
        assert validate_certificate(s, c, sample) == []


def test_case_two_fixture():
    f = S(ALL_TWOS)
    dec = weak_goldbach_series(f)
    assert len(dec) == 3
    _verify(f, dec)
    for depth in (1, 2, 5, 17, 128, 256):
        assert prefix_sum_identity(f, dec.summands, depth)[0]


def test_case_one_fixture():
    f = S(ODD_TAIL_EVEN)
    dec = weak_goldbach_series(f)
    assert len(dec) == 2
    _verify(f, dec)
    p, q = dec.summands
    assert p.prefix(2) == [(0, 2), (1, 2)]
    assert dec.certificates[0].kind is SeriesMonolithicKind.FIRST_GAP_MINIMAL
    assert dec.certificates[1].kind is SeriesMonolithicKind.INCREASING_GAPS


def test_case_one_construction_on_irreducible_input():
    f = S(ODD_TAIL)
    assert len(weak_goldbach_series(f)) == 1
    dec = weak_goldbach_series(f, shortcut=False)
    assert len(dec) == 2
    assert dec.summands[0].prefix(2) == [(0, 3), (1, 3)]
    _verify(f, dec)


def test_shortcut_returns_input():
    f = S({"head": [[0, 2], [1, 1]], "tail": {"type": "increasing", "start": 3, "gap0": 2, "inc": 1, "coeffs": [2]}})
    dec = weak_goldbach_series(f)
    assert dec.summands == [f]


def test_finite_summand_from_increasing_tail():
    f = S({"tail": {"type": "increasing", "start": 0, "gap0": 1, "inc": 1, "coeffs": [2]}})
    dec = weak_goldbach_series(f)
    assert len(dec) == 2
    assert dec.summands[0].prefix(10) == [(0, 2), (1, 2), (3, 1), (6, 1)]
    _verify(f, dec)


def test_summands_restart():
    dec = weak_goldbach_series(S(ALL_TWOS))
    for s in dec.summands:
        assert s.prefix(50) == s.prefix(50)


def test_derived_input_refused():
    dec = weak_goldbach_series(S(ALL_TWOS))
    with pytest.raises(Unsupported):
        weak_goldbach_series(dec.summands[0])
    with pytest.raises(Unsupported):
        min_gap_analysis(dec.summands[0])


def _specs():
    coeffs = st.lists(st.integers(1, 4), min_size=1, max_size=3)
    head = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=4)
    arithmetic = st.fixed_dictionaries({"type": st.just("arithmetic"), "gap": st.integers(1, 4), "coeffs": coeffs})
    increasing = st.fixed_dictionaries(
        {"type": st.just("increasing"), "gap0": st.integers(1, 4), "inc": st.integers(1, 3), "coeffs": coeffs}
    )

    def build(h, tail, tail_step):
        e = 0
        out = []
        for step, c in h:
            out.append([e, c])
            e += step
        tail = dict(tail, start=e + tail_step - 1 if out else e)
        return {"head": out, "tail": tail}

    return st.builds(build, head, st.one_of(arithmetic, increasing), st.integers(1, 4))


@given(_specs())
@settings(max_examples=150, deadline=None)
def test_random_series_decompose(spec):
    f = series_from_spec(spec)
    dec = weak_goldbach_series(f)
    assert 1 <= len(dec) <= 3
    _verify(f, dec, depth=48, sample=96)
    dec2 = weak_goldbach_series(f, shortcut=False)
    _verify(f, dec2, depth=48, sample=96)
    if not min_gap_analysis(f)[1].infinite:
        assert len(dec2) == 2
    else:
        assert len(dec2) == 3
