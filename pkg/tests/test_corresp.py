import pytest

from ordrank import corresp
from ordrank.corresp import (TrivialRing, UnknownExample, gallery, gallery_names, phi_G, phi_K,
                             verify_fact33, verify_rank_correspondence)
from ordrank.hahn import ValuationRing, convex_rings
from ordrank.linorder import EndSegment
from ordrank.oag import CATALOG_BASES, ImproperSubgroup, OAGroup, Q, Z, Z_loc, all_groups


@pytest.mark.parametrize("G", [OAGroup([Z_loc(2), Z_loc(3)]), OAGroup([Q]), OAGroup.power(Z, 4)], ids=str)
def test_verify_examples(G):
    rep = verify_rank_correspondence(G, seed=3)
    assert rep.passed, rep.as_record()
    assert len(rep.field_rank) == len(rep.group_rank) == len(rep.order_rank) == G.size


def test_contract_alias():
    assert verify_fact33 is verify_rank_correspondence


def test_phi_G_inverts_the_subgroup_construction():
    for G in all_groups(3, CATALOG_BASES):
        for s in range(1, G.size + 1):
            assert phi_G(G.subgroup(s)) == EndSegment(frozenset(range(s, G.size)))
        with pytest.raises(ImproperSubgroup):
            phi_G(G.whole)


def test_phi_K_recovers_the_subgroup():
    import random
    rng = random.Random(1)
    for G in all_groups(2, CATALOG_BASES):
        for O in convex_rings(G):
            assert phi_K(O, samples=20, rng=rng) == O.subgroup
        with pytest.raises(TrivialRing):
            phi_K(ValuationRing(G.whole))


def test_composite_map_onto_index_rank():
    G = OAGroup([Z, Q, Z])
    images = [phi_G(phi_K(O)) for O in convex_rings(G)]
    assert images == corresp.linorder.rank(G.index)


def test_report_record_shape():
    rec = verify_rank_correspondence(OAGroup.power(Z, 2)).as_record()
    assert rec["verdict"] == "PASS" and rec["lengths"] == [2, 2, 2]
    assert set(rec["verdicts"]) == {"phi_K", "phi_G", "spine"}


@pytest.mark.parametrize("name", gallery_names())
def test_gallery_items_hold(name):
    rep = gallery(name, seed=0)
    assert rep.ok, rep.as_record()
    assert all(c.label in ("VERIFIED", "EVIDENCE", "OUT-OF-SCOPE") for c in rep.claims)
    # nothing in the gallery may claim non-definability outright
    assert not any(c.label == "VERIFIED" and "not definable" in c.text for c in rep.claims)


def test_gallery_specifics():
    mixed = gallery("mixed-2-3")
    assert mixed.claims[0].detail["subgroup"] == "Σ{1}"
    cursed = gallery("cursed-0-vs-0")
    assert any("zsum" in c.text or "wsum" in c.text for c in cursed.claims if c.label == "EVIDENCE")
    defin = gallery("cursed-0-vs-1").claims[0]
    assert defin.detail["status"] == "DefinableParamFree"
    qq = gallery("q-oplus-q")
    assert [c.ok for c in qq.claims[:3]] == [True, True, True]


def test_unknown_gallery_item():
    with pytest.raises(UnknownExample):
        gallery("nope")
