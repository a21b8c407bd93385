"""Corpus enumeration counts, sampling, and the property-suite runner."""
import pytest

from emcat.harness import (
    Corpus,
    PROPERTIES,
    cat_corpus,
    corrupt_instance,
    enumerate_categories,
    enumerate_graphs,
    enumerate_maps,
    enumerate_posets,
    finset_corpus,
    gph_corpus,
    graph_iso_classes,
    instance_registry,
    pos_corpus,
    poset_iso_classes,
    run_theorem_suite,
    standard_corpora,
)
from emcat.instances import chain, finset_instance


# enumeration counts

def test_category_counts():
    # the empty category appears only at the zero bound
    assert len(enumerate_categories(0, 0)) == 1
    assert len(enumerate_categories(1, 1)) == 1
    # monoids of order 1..3: 1 + 2 + 7
    assert len(enumerate_categories(1, 3)) == 10
    assert len(enumerate_categories(2, 3)) == 14


def test_categories_are_deduplicated_up_to_iso():
    cats = enumerate_categories(2, 3)
    assert len({(c.n_obj, c.n_arr) for c in cats}) < len(cats)
    for c in cats:
        assert c.n_obj >= 1


def test_labeled_poset_counts():
    # 1, 1, 3, 19, 219 labeled posets on 0..4 elements
    for n, want in enumerate([1, 1, 3, 19, 219]):
        assert len(enumerate_posets(n)) == want


def test_poset_iso_class_counts():
    # 1, 1, 2, 5, 16 unlabeled posets on 0..4 elements
    for n, want in enumerate([1, 1, 2, 5, 16]):
        assert len(poset_iso_classes(enumerate_posets(n))) == want


def test_acyclic_graph_iso_classes():
    total = []
    for n in range(5):
        total.extend(graph_iso_classes(enumerate_graphs(n)))
    assert len(total) == 41


def test_monotone_map_count():
    pl = instance_registry()["pos"]
    two = chain(2)
    assert len(pl.maps(two, two, 10 ** 6)) == 3


def test_enumerate_maps_tags_endpoints():
    fs = finset_instance()
    spaces = finset_corpus(2).spaces
    for cm in enumerate_maps(fs, spaces):
        assert fs.dom(cm.map) == spaces[cm.src]
        assert fs.cod(cm.map) == spaces[cm.tgt]


# corpora

def test_cat_corpus_shape():
    c = cat_corpus()
    assert c.instance == "cat"
    assert len(c.spaces) == 22
    assert not c.sampled
    assert any(s.n_obj == 0 for s in c.spaces)


def test_pos_corpus_sampling_flag():
    full = pos_corpus(max_n=3, max_maps=10 ** 6)
    capped = pos_corpus(max_n=3, max_maps=120)
    assert not full.sampled
    assert capped.sampled
    assert len(capped.maps) == 120
    # once the cap covers the inhabited (src, tgt) pairs, stratification
    # keeps every pair represented
    full_pairs = {(m.src, m.tgt) for m in full.maps}
    kept_pairs = {(m.src, m.tgt) for m in capped.maps}
    assert kept_pairs == full_pairs


def test_pos_corpus_sampling_is_seed_stable():
    a = pos_corpus(max_n=3, max_maps=50, seed=7)
    b = pos_corpus(max_n=3, max_maps=50, seed=7)
    c = pos_corpus(max_n=3, max_maps=50, seed=8)
    assert a.maps == b.maps
    assert a.maps != c.maps


def test_standard_corpora_cover_all_instances():
    corp = standard_corpora(max_pos=3, max_nodes=3, max_size=3)
    assert set(corp) == {"cat", "pos", "pos-comp", "gph", "finset"}
    assert corp["pos"].spaces == corp["pos-comp"].spaces


# suite runner

def small_corpora():
    return standard_corpora(max_pos=3, max_nodes=3, max_size=3,
                            max_cat_obj=2, max_cat_arr=3)


def test_suite_passes_on_small_corpora():
    rep = run_theorem_suite(small_corpora(), max_cases=25)
    assert rep.passed()
    assert len(rep.results) == len(PROPERTIES)
    assert all(r.status in ("pass", "skip") for r in rep.results)


def test_suite_render_is_deterministic():
    corp = small_corpora()
    a = run_theorem_suite(corp, property_filter="FS-*", max_cases=40)
    b = run_theorem_suite(corp, property_filter="FS-*", max_cases=40)
    assert a.render() == b.render()
    assert a.render().endswith("\n")


def test_property_filter_selects_by_glob():
    rep = run_theorem_suite(small_corpora(), property_filter="POW-*",
                            max_cases=10)
    assert [r.id for r in rep.results] == ["POW-01", "POW-02", "POW-03",
                                           "POW-04"]


def test_corrupted_instance_is_caught():
    corp = {"finset": finset_corpus(3)}
    bad = corrupt_instance(instance_registry()["finset"])
    rep = run_theorem_suite(corp, property_filter="FS-01", max_cases=60,
                            instances={"finset": bad})
    (res,) = rep.results
    assert res.status == "fail"
    assert res.counterexample is not None
    assert res.counterexample["instance"] == "finset"
    assert not rep.passed()


def test_missing_instances_pass_vacuously():
    rep = run_theorem_suite({}, property_filter="THM-00")
    (res,) = rep.results
    assert res.status == "pass"
    assert res.instances == ()
    assert res.reason == "0 instances"


def test_empty_corpus_reports_zero_instances():
    empty = Corpus("finset", (), (), "0", 0, False)
    rep = run_theorem_suite({"finset": empty}, property_filter="INS-08")
    (res,) = rep.results
    assert res.status == "pass"
    assert res.cases == 0
    assert res.reason == "0 instances"


def test_sampled_flag_surfaces_in_results():
    rep = run_theorem_suite(small_corpora(), property_filter="FS-0[12]",
                            max_cases=5)
    assert all(r.sampled for r in rep.results)


def test_property_ids_are_unique_and_sorted_in_report():
    ids = [p.id for p in PROPERTIES]
    assert len(set(ids)) == len(ids)
    rep = run_theorem_suite({}, max_cases=1)
    assert [r.id for r in rep.results] == sorted(ids)
