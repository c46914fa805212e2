import pytest

from src.core.errors import DataLoadError
from src.kg_store import KGLoader, dump_categories
from tests.conftest import CATEGORY_RECORDS, write_jsonl


@pytest.fixture
def loader(logger):
    return KGLoader(logger)


def test_load_categories_normalizes_names(loader, kg_files):
    categories = loader.load_categories(kg_files["categories"])

    assert [schema.category_id for schema in categories] == ["bags", "phones"]
    bags = loader.categories["bags"]
    assert bags.attribute_keys() == {"color", "material", "weight"}
    color = next(attribute for attribute in bags.attributes if attribute.key == "color")
    assert color.raw_name == "Color"
    assert color.values == {"red", "blue", "black"}


def test_attribute_without_values_is_dropped(loader, tmp_path):
    path = write_jsonl(
        tmp_path / "categories.jsonl",
        [
            {
                "category_id": "c",
                "attributes": [{"name": "size", "values": ["  "]}, {"name": "a", "values": ["x"]}],
            }
        ],
    )
    [schema] = loader.load_categories(path)
    assert schema.attribute_keys() == {"a"}
    assert loader.stats.dropped_attributes == 1


def test_duplicate_attribute_rejected(loader, tmp_path):
    path = write_jsonl(
        tmp_path / "categories.jsonl",
        [
            {"category_id": "ok", "attributes": []},
            {
                "category_id": "c",
                "attributes": [
                    {"name": "Color", "values": ["x"]},
                    {"name": "color ", "values": ["y"]},
                ],
            },
        ],
    )
    with pytest.raises(DataLoadError) as error:
        loader.load_categories(path)
    assert error.value.line_number == 2
    assert error.value.exit_code == 2


def test_malformed_json_reports_line(loader, tmp_path):
    path = tmp_path / "categories.jsonl"
    path.write_text('{"category_id": "a"}\n{not json\n', encoding="utf-8")
    with pytest.raises(DataLoadError) as error:
        loader.load_categories(path)
    assert error.value.line_number == 2
    assert str(path) in str(error.value)


def test_enquiries_with_unknown_category_are_skipped(loader, kg_files, tmp_path):
    loader.load_categories(kg_files["categories"])
    path = write_jsonl(
        tmp_path / "enquiries.jsonl",
        [
            {"enquiry_id": "1", "category_id": "bags", "text": "red bag"},
            {"enquiry_id": "2", "category_id": "unknown", "text": "hello"},
        ],
    )
    enquiries = loader.load_enquiries(path)
    assert [enquiry.enquiry_id for enquiry in enquiries] == ["1"]
    assert enquiries[0].raw_text == "red bag"
    assert loader.stats.skipped_enquiries == 1


def test_ground_truth_names_are_normalized(loader, kg_files):
    loader.load_categories(kg_files["categories"])
    truths = {truth.category_id: truth for truth in loader.load_ground_truth(kg_files["labels"])}
    assert truths["bags"].important_attributes == {"color", "material"}
    assert truths["phones"].important_attributes == {"product type", "voltage"}


@pytest.mark.parametrize(
    ("record", "message"),
    [
        ({"category_id": "missing", "important_attributes": ["color"]}, "unknown category"),
        ({"category_id": "bags", "important_attributes": []}, "no important attributes"),
        ({"category_id": "bags", "important_attributes": ["size"]}, "unknown attributes"),
    ],
)
def test_invalid_ground_truth(loader, kg_files, tmp_path, record, message):
    loader.load_categories(kg_files["categories"])
    path = write_jsonl(tmp_path / "labels.jsonl", [record])
    with pytest.raises(DataLoadError, match=message):
        loader.load_ground_truth(path)


def test_dump_categories_reloads(loader, kg_files, tmp_path):
    categories = loader.load_categories(kg_files["categories"])
    target = tmp_path / "dumped.jsonl"

    assert dump_categories(categories, target) == len(CATEGORY_RECORDS)
    assert KGLoader(loader.logger).load_categories(target) == categories
