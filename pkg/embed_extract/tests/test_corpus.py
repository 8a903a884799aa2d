import pytest

from embed_extract.corpus import UnitCorpus, read_units_jsonl


def test_corpus_validation():
    with pytest.raises(ValueError, match="at least one"):
        UnitCorpus(units=[])
    with pytest.raises(ValueError, match="duplicate labels"):
        UnitCorpus(units=[("a", "x"), ("a", "y")])
    with pytest.raises(ValueError, match="empty text"):
        UnitCorpus(units=[("a", "   ")])
    with pytest.raises(ValueError, match="label"):
        UnitCorpus(units=[("", "x")])


def test_corpus_accessors_keep_order():
    c = UnitCorpus(units=[("b", "second"), ("a", "first")])
    assert c.labels == ["b", "a"]
    assert c.texts == ["second", "first"]
    assert len(c) == 2


def test_read_units_jsonl(tmp_path):
    p = tmp_path / "u.jsonl"
    p.write_text('{"label": "p1", "text": "one"}\n'
                 '\n'
                 '{"label": "p2", "text": "two", "extra": 1}\n')
    c = read_units_jsonl(p)
    assert c.units == [("p1", "one"), ("p2", "two")]


def test_read_units_jsonl_errors(tmp_path):
    bad_json = tmp_path / "a.jsonl"
    bad_json.write_text('{"label": "p1", "text": "one"}\nnot json\n')
    with pytest.raises(ValueError, match=":2:"):
        read_units_jsonl(bad_json)

    missing = tmp_path / "b.jsonl"
    missing.write_text('{"label": "p1"}\n')
    with pytest.raises(ValueError, match="'label' and 'text'"):
        read_units_jsonl(missing)

    empty = tmp_path / "c.jsonl"
    empty.write_text("\n\n")
    with pytest.raises(ValueError, match="no units"):
        read_units_jsonl(empty)
