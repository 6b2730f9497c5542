import collections

import pytest

from artifact import catalog
from artifact.catalog import (ExpectedAction, InconclusiveError, check_involution, check_nontrivial,
                              derivations, is_involution, load_catalog, record, verify_expected_actions,
                              verify_rel_y_ij, yij_table, yij_word)
from artifact.pi1 import make_group

RECORDS = load_catalog()

# Records whose words fail; analysis in notes/decisions.md.
INVOLUTION_DEFECTS = {
    "4;8,2": "word squares to a non-inner class (finite quotient invariant)",
    "5;2": "depends on the stored Y_{5,3}, which is not a crosscap slide of crosscap 5",
}


def _param(rec, defects):
    if rec.label in defects:
        return pytest.param(rec, marks=pytest.mark.xfail(strict=True, reason=defects[rec.label]), id=rec.label)
    return pytest.param(rec, id=rec.label)


def test_counts_by_genus():
    counts = collections.Counter(r.genus for r in RECORDS)
    assert [counts[g] for g in (2, 3, 4, 5)] == [5, 3, 14, 8]


def test_shared_and_identity_words():
    assert record("2;4").word_text == record("2;5").word_text == "1"
    assert [r.label for r in RECORDS if r.word_text == "id"] == ["2;2"]


def test_record_lookup_unknown():
    with pytest.raises(KeyError):
        record("9;9")


def test_is_involution_examples():
    assert is_involution("y", 2)
    assert is_involution("id", 2)
    assert not is_involution("1", 3)


def test_is_involution_inconclusive_raises():
    with pytest.raises(InconclusiveError):
        is_involution(record("4;5").word, bound=0, power_bound=0)
    assert is_involution(record("4;5").word)


@pytest.mark.parametrize("rec", [_param(r, INVOLUTION_DEFECTS) for r in RECORDS])
def test_involution(rec):
    res = check_involution(rec)
    assert res.status == "pass", res.detail


@pytest.mark.parametrize("rec", [pytest.param(r, id=r.label) for r in RECORDS])
def test_nontrivial_except_identity_record(rec):
    assert check_nontrivial(rec).status == "pass"


@pytest.mark.parametrize("rec", [pytest.param(r, id=r.label) for r in RECORDS if r.expected_actions])
def test_expected_actions(rec):
    results = verify_expected_actions(rec)
    assert all(r.status == "pass" for r in results), [(r.check_id, r.detail) for r in results]
    assert all(r.witness["length"] <= 16 for r in results if r.kind == "curve_action")


@pytest.mark.parametrize("rec", [pytest.param(r, id=r.label) for r in RECORDS if r.expected_actions])
def test_expected_actions_respect_sidedness(rec):
    G = make_group(rec.genus)
    for a in rec.expected_actions:
        assert G.orientation_character(a.source.element) == G.orientation_character(a.target.element)


def test_expected_action_parse():
    a = ExpectedAction.parse("a1>g3,5'")
    assert a.inverted and str(a.target) == "g3,5" and str(a) == "a1>g3,5'"


def test_yij_known_values():
    assert yij_word(2, 3, 4).text == "12y'2'1'"
    assert yij_word(1, 2, 4).text == "y"
    assert yij_word(4, 3, 4).text == "23121y1'2'1'3'2'"
    assert catalog._inv_text(catalog._split_letters(yij_word(5, 1, 5).text)) == "4'3'2'1'y1234"


@pytest.mark.parametrize("g", [3, 4])
def test_rel_y_ij(g):
    assert all(r.status == "pass" for r in verify_rel_y_ij(g))


def test_rel_y_ij_genus_five():
    results = {r.check_id: r.status for r in verify_rel_y_ij(5)}
    assert {k for k, v in results.items() if v != "pass"} == {"yij:5:5,3"}
    assert len(yij_table(5)) == len(results)


@pytest.mark.parametrize("d", derivations(), ids=lambda d: d.check_id)
def test_derivation(d):
    assert catalog._check_derivation(d, 16, 8).status == "pass"


def test_check_result_json_shape():
    res = check_involution(record("3;1"))
    doc = res.to_json()
    assert set(doc) >= {"check_id", "kind", "inputs", "status", "elapsed_ms"}
    assert doc["check_id"] == "involution:3;1"


def test_bad_catalog_file(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("2;1 | y | 0 + 2 1 | 2 0 1 | |\n")
    with pytest.raises(ValueError):
        load_catalog(str(p))
    p.write_text("2;1 | q | 0 + 2 1 | 2 0 1 | | |\n")
    with pytest.raises(ValueError):
        load_catalog(str(p))
