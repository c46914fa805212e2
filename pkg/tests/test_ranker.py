import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.jsonl import dumps_record
from src.matcher import MatchRecord
from src.ranker import RankedAttributes, aggregate


def _records(category_id: str, name: str, scores: list[float], enquiry: str = "e") -> list:
    return [
        MatchRecord(
            enquiry_id=f"{enquiry}{i}",
            category_id=category_id,
            sentence_index=0,
            attribute_name=name,
            score=score,
        )
        for i, score in enumerate(scores)
    ]


def test_empty_input():
    assert aggregate([]) == []


def test_count_then_mean_score():
    matches = (
        _records("c", "first", [0.8] * 10)
        + _records("c", "high", [0.9] * 7)
        + _records("c", "low", [0.8] * 7)
    )
    [ranking] = aggregate(matches, top_k=2)

    assert ranking.selected == ("first", "high")
    assert [entry.attribute_name for entry in ranking.entries] == ["first", "high", "low"]
    assert [entry.match_count for entry in ranking.entries] == [10, 7, 7]
    assert ranking.entries[1].mean_score == pytest.approx(0.9)


def test_six_single_matches_select_five():
    matches = [
        record
        for name in ("f", "e", "d", "c", "b", "a")
        for record in _records("c", name, [0.8])
    ]
    [ranking] = aggregate(matches, top_k=5)
    assert ranking.selected == ("a", "b", "c", "d", "e")
    assert len(ranking.entries) == 6


def test_categories_sorted_and_independent():
    matches = _records("z", "color", [0.9]) + _records("a", "size", [0.8, 0.85])
    rankings = aggregate(matches)
    assert [ranking.category_id for ranking in rankings] == ["a", "z"]
    assert rankings[0].selected == ("size",)


def test_count_unit_enquiries():
    # trois correspondances pour "color", mais dans une seule enquête
    matches = _records("c", "color", [0.9, 0.9, 0.9], enquiry="one")
    matches = [m.model_copy(update={"enquiry_id": "one"}) for m in matches]
    matches += _records("c", "size", [0.8, 0.8], enquiry="other")

    by_records = aggregate(matches, count_unit="records")[0]
    by_enquiries = aggregate(matches, count_unit="enquiries")[0]
    assert by_records.selected == ("color", "size")
    assert by_enquiries.selected == ("size", "color")
    assert by_enquiries.entries[1].match_count == 1


def test_min_evidence():
    [ranking] = aggregate(_records("c", "color", [0.9, 0.8]), min_evidence=3)
    assert ranking.selected == ()
    assert ranking.entries[0].match_count == 2


def test_serialized_ranking():
    [ranking] = aggregate(_records("c", "color", [0.9, 0.8]), method="wordvec")
    record = json.loads(dumps_record(ranking))

    assert record["category_id"] == "c"
    assert record["method"] == "wordvec"
    assert record["selected"] == ["color"]
    assert record["full_ranking"] == [
        {"attribute": "color", "match_count": 2, "mean_score": 0.85}
    ]
    reloaded = RankedAttributes.model_validate(record)
    assert reloaded.selected == ranking.selected
    assert reloaded.entries[0].attribute_name == "color"


names = st.sampled_from(["color", "size", "material", "weight", "style", "brand", "grade"])
match_records = st.builds(
    MatchRecord,
    enquiry_id=st.sampled_from(["e1", "e2", "e3"]),
    category_id=st.sampled_from(["c1", "c2"]),
    sentence_index=st.integers(min_value=0, max_value=3),
    attribute_name=names,
    score=st.floats(min_value=0.75, max_value=1.0),
)


@given(st.lists(match_records, max_size=40), st.randoms(use_true_random=False))
def test_aggregate_properties(matches, random):
    rankings = aggregate(matches, top_k=3)

    shuffled = list(matches)
    random.shuffle(shuffled)
    assert aggregate(shuffled, top_k=3) == rankings

    for ranking in rankings:
        in_category = [m for m in matches if m.category_id == ranking.category_id]
        assert sum(entry.match_count for entry in ranking.entries) == len(in_category)
        assert len(ranking.selected) <= 3
        assert all(entry.match_count > 0 for entry in ranking.entries)
        keys = [(-e.match_count, -e.mean_score, e.attribute_name) for e in ranking.entries]
        assert keys == sorted(keys)
