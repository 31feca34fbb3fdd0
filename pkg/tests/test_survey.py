from fractions import Fraction

import pytest

import sumfree.survey as survey
from sumfree.groups import cyclic, parse_subset
from sumfree.search import SearchConfig
from sumfree.survey import (
    CSV_HEADER,
    SearchCache,
    SurveyRecord,
    VerificationError,
    check_sumfree_bounds,
    read_csv,
    read_jsonl,
    shifted_argmin,
    survey_shifted,
    verify_range,
    write_csv,
    write_jsonl,
)

F = Fraction


def test_verify_range_sum_free_table():
    records = verify_range(1, 2, 1, 10)
    assert [r.n for r in records] == list(range(1, 11))
    expected = [F(0), F(1, 2), F(1, 3), F(1, 2), F(2, 5), F(1, 2), F(2, 7), F(1, 2), F(1, 3), F(1, 2)]
    assert [r.formula_value for r in records] == expected
    assert [r.oracle_value for r in records] == expected


def test_verify_range_small_cases():
    (rec,) = verify_range(1, 3, 4, 4)
    assert rec.formula_value == rec.oracle_value == F(1, 4)
    (rec,) = verify_range(2, 3, 1, 1)
    assert rec.formula_value == rec.oracle_value == 0


def test_verify_range_rejects_bad_range():
    with pytest.raises(ValueError):
        verify_range(1, 2, 5, 4)
    with pytest.raises(ValueError):
        verify_range(1, 2, 0, 4)


def test_verify_range_reports_first_mismatch(monkeypatch):
    real = survey.lambda_cyclic

    class Wrong:
        def __init__(self, value):
            self.value = value

    def fake(k, l, n):
        res = real(k, l, n)
        return Wrong(res.value + 1) if n == 5 else res

    monkeypatch.setattr(survey, "lambda_cyclic", fake)
    with pytest.raises(VerificationError) as info:
        verify_range(1, 2, 1, 8)
    assert info.value.n == 5
    assert [r.n for r in info.value.records] == [1, 2, 3, 4, 5]


def test_verify_range_flags_order_cap():
    records = verify_range(1, 2, 7, 9, SearchConfig(max_group_order=8))
    assert [r.flag for r in records] == [None, None, "order-cap"]
    assert records[2].oracle_value is None


def test_verify_range_flags_incomplete():
    records = verify_range(1, 3, 40, 40, SearchConfig(node_budget=20, symmetry_reduction=False))
    assert records[0].flag == "incomplete"
    assert records[0].oracle_value is None


def test_survey_shifted_small_table():
    records = survey_shifted(1, 2, 1, 6)
    assert [r.shifted_value for r in records] == [F(0), F(0), F(1, 3), F(1, 4), F(1, 5), F(1, 3)]
    assert [r.shifted_equals_bound for r in records] == [False, False, True, False, False, True]
    assert str(records[5].witness) == "{2,3}"
    assert shifted_argmin(records) == (5, F(1, 5))
    assert shifted_argmin(records, skip_zero=False) == (1, F(0))


def test_survey_shifted_multiples_of_three_reach_bound():
    records = survey_shifted(1, 2, 3, 18, step=3)
    assert [r.n for r in records] == [3, 6, 9, 12, 15, 18]
    assert all(r.shifted_equals_bound for r in records)


def test_survey_shifted_single():
    (rec,) = survey_shifted(2, 3, 5, 5)
    assert rec.shifted_value == F(1, 5) and rec.shifted_equals_bound
    assert str(rec.witness) == "{2}"


def test_check_sumfree_bounds():
    records = verify_range(1, 2, 1, 10)
    assert check_sumfree_bounds(records)
    assert not check_sumfree_bounds(records, exclude_trivial=False)
    assert not check_sumfree_bounds([SurveyRecord(4, 1, 2, F(1, 4))])
    assert check_sumfree_bounds([])
    with pytest.raises(ValueError):
        check_sumfree_bounds([SurveyRecord(4, 1, 3, F(1, 4))])


def _sample_records():
    return verify_range(1, 2, 1, 6) + survey_shifted(2, 3, 4, 10) + [
        SurveyRecord(7, 1, 2, F(2, 7), flag="order-cap")
    ]


def test_csv_round_trip():
    records = _sample_records()
    text = write_csv(records)
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert text.splitlines()[1] == "1,1,2,0/1,0/1,,,{}"
    back = read_csv(text)
    # the flag is JSON-only
    assert back == [SurveyRecord(**{**r.__dict__, "flag": None}) for r in records]
    assert write_csv(back) == text


def test_csv_row_with_shift_fields():
    (rec,) = survey_shifted(1, 2, 6, 6)
    assert rec.to_csv_row() == ["6", "1", "2", "1/2", "", "1/3", "true", "{2,3}"]


def test_jsonl_round_trip():
    records = _sample_records()
    text = write_jsonl(records)
    assert len(text.splitlines()) == len(records)
    back = read_jsonl(text)
    assert back == records
    assert write_jsonl(back) == text


def test_read_csv_rejects_wrong_header():
    with pytest.raises(ValueError):
        read_csv("a,b\n1,2\n")


def test_cache_resumes_without_searching(tmp_path, monkeypatch):
    cache = SearchCache(tmp_path)
    first = survey_shifted(1, 2, 1, 9, cache=cache)
    assert cache.path(1, 2, (0, 1)).exists()
    assert len(cache.path(1, 2, (0, 1)).read_text().splitlines()) == 9

    def boom(*args, **kwargs):
        raise AssertionError("search should have been served from the cache")

    monkeypatch.setattr(survey, "max_shifted_sum_free", boom)
    monkeypatch.setattr(survey, "max_sum_free", boom)
    again = survey_shifted(1, 2, 1, 9, cache=SearchCache(tmp_path))
    assert again == first


def test_cache_is_append_only_and_keyed(tmp_path):
    cache = SearchCache(tmp_path)
    verify_range(1, 3, 1, 5, cache=cache)
    verify_range(1, 3, 3, 8, cache=cache)
    lines = cache.path(1, 3, (0,)).read_text().splitlines()
    assert len(lines) == 8
    assert not cache.path(1, 3, (0, 1)).exists()
    hit = SearchCache(tmp_path).get(1, 3, (0,), 8)
    assert hit["max_cardinality"] == 2
    assert parse_subset(hit["witness"], cyclic(8)).cardinality == 2


def test_incomplete_results_not_cached(tmp_path):
    cache = SearchCache(tmp_path)
    verify_range(1, 3, 40, 40, SearchConfig(node_budget=20, symmetry_reduction=False), cache=cache)
    assert cache.get(1, 3, (0,), 40) is None
