import itertools

import pytest
from hypothesis import given, strategies as st

from artifact.nec import (BlowupKind, FixedPointProfile, NecError, NecSignature, NskMap, RefinedKind, blowup,
                          blowup_flow, classify, expand_row, fixed_point_profile, load_table2, m_count,
                          n_count, named_classes, refined_blowup, surface_genus, topologically_conjugate)

ROWS = load_table2()
ALL_MAPS = [m for r in ROWS for m in expand_row(r)]
NAMED = {k: v for g in (2, 3, 4, 5) for k, v in named_classes(g, ROWS).items()}


@pytest.mark.parametrize("sig, genus", [((0, "+", 2, 1), 2), ((3, "-", 0, 0), 4), ((1, "+", 1, 1), 5)])
def test_surface_genus(sig, genus):
    assert surface_genus(NecSignature(*sig)) == genus


def test_signature_validation():
    for bad in [(0, "-", 1, 1), (0, "*", 1, 1), (-1, "+", 0, 0)]:
        with pytest.raises(NecError):
            NecSignature(*bad)
    assert str(NecSignature(0, "+", 2, 1)) == "(0,+,[2,2],{(-)})"


def test_nsk_map_validation():
    sig = NecSignature(0, "+", 2, 1)
    NskMap(sig, (1, 1, 0, 1))
    with pytest.raises(NecError):
        NskMap(sig, (1, 1, 0))  # wrong count
    with pytest.raises(NecError):
        NskMap(sig, (0, 1, 0, 1))  # cone generator not sent to X
    with pytest.raises(NecError):
        NskMap(sig, (1, 1, 1, 1))  # long relation fails


def test_named_conjugacy_examples():
    assert not topologically_conjugate(NAMED["4;2,1"], NAMED["4;2,2"])
    assert (n_count(NAMED["4;2,1"]), n_count(NAMED["4;2,2"])) == (0, 2)
    assert not topologically_conjugate(NAMED["4;9,1"], NAMED["4;9,3"])
    assert (m_count(NAMED["4;9,1"]), m_count(NAMED["4;9,3"])) == (1, 2)
    assert topologically_conjugate(NAMED["4;7"], NAMED["4;7"])


def test_m_count_needs_nonorientable_quotient():
    with pytest.raises(NecError):
        m_count(NAMED["2;1"])


def test_profiles():
    assert fixed_point_profile(NAMED["4;2,2"]).as_tuple() == (2, 2, 0)
    assert fixed_point_profile(NAMED["5;3,2"]).as_tuple() == (1, 1, 2)
    assert fixed_point_profile(NAMED["4;7"]).as_tuple() == (2, 0, 0)


def test_blowup_examples():
    assert blowup(NecSignature(0, "+", 2, 1), BlowupKind.ON_CURVE) == NecSignature(0, "+", 3, 1)
    assert blowup(NecSignature(2, "-", 2, 0), "isolated") == NecSignature(2, "-", 1, 1)
    with pytest.raises(NecError):
        blowup(NecSignature(1, "-", 0, 1), BlowupKind.ISOLATED)
    with pytest.raises(NecError):
        blowup(NecSignature(1, "-", 2, 0), BlowupKind.ON_CURVE)


def test_refined_blowup_examples():
    assert refined_blowup(FixedPointProfile(2, 0, 2), "isolated").as_tuple() == (1, 1, 2)
    assert refined_blowup(FixedPointProfile(2, 2, 0), "isolated").as_tuple() == (1, 3, 0)
    with pytest.raises(NecError):
        refined_blowup(FixedPointProfile(3, 0, 0), RefinedKind.ON_ONE_SIDED)


def test_flow_edges():
    edges = {(e.source, e.kind, e.target): e for e in blowup_flow(2) + blowup_flow(4)}
    e = edges[("2;1", RefinedKind.ON_TWO_SIDED, "3;1")]
    assert e.coarse_kind is BlowupKind.ON_CURVE and e.target_signature == NecSignature(0, "+", 3, 1)
    assert ("4;2,1", RefinedKind.ISOLATED, "5;3,2") in edges
    assert edges[("4;7", RefinedKind.ISOLATED, "5;6")].target_signature == NecSignature(2, "-", 1, 1)
    with pytest.raises(NecError):
        blowup_flow(3)


@pytest.mark.parametrize("g, n", [(2, 5), (3, 3), (4, 14), (5, 8)])
def test_class_counts(g, n):
    assert len(classify([m for m in ALL_MAPS if m.genus == g])) == n


def test_row_eight_splits_by_m():
    row8 = next(r for r in ROWS if r.genus == 4 and r.name == "4;8")
    assert sorted(m_count(c[0]) % 2 for c in classify(expand_row(row8))) == [0, 1]
    assert m_count(NAMED["4;8,1"]) == 0 and m_count(NAMED["4;8,2"]) == 1


def test_every_row_consistent():
    for row in ROWS:
        for theta in expand_row(row):
            assert theta.genus == row.genus == theta.signature.genus


def test_conjugacy_is_an_equivalence():
    for a, b in itertools.product(ALL_MAPS, repeat=2):
        ab = topologically_conjugate(a, b)
        assert ab == topologically_conjugate(b, a)
        if ab:
            assert a.genus == b.genus
    assert all(topologically_conjugate(a, a) for a in ALL_MAPS)
    for a, b, c in itertools.product(ALL_MAPS[:40], repeat=3):
        if topologically_conjugate(a, b) and topologically_conjugate(b, c):
            assert topologically_conjugate(a, c)


def test_table_parse_errors(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("2 | 1 | 0 + 2 1 | 2;1 | X X 1 Q\n")
    with pytest.raises(NecError):
        load_table2(str(p))
    p.write_text("2 | 1 | 0 + 2 1 | 2;1\n")
    with pytest.raises(NecError):
        load_table2(str(p))


profiles = st.builds(FixedPointProfile, st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))


@given(profiles, st.sampled_from(list(RefinedKind)), st.integers(0, 3), st.sampled_from("+-"))
def test_refined_blowup_projects_onto_blowup(p, kind, h, sign):
    if sign == "-" and h == 0:
        h = 1
    sig = NecSignature(h, sign, p.isolated, p.one_sided + p.two_sided)
    try:
        q = refined_blowup(p, kind)
    except NecError:
        return
    new = blowup(sig, kind.coarse)
    assert (new.r, new.k) == (q.isolated, q.one_sided + q.two_sided)
    assert surface_genus(new) == surface_genus(sig) + 1
