from __future__ import annotations

import random

import pytest

from hiertag.baselines import (
    SYNTHETIC_ROOT,
    HeymannParams,
    SchmitzParams,
    cosine_similarities,
    extract_heymann,
    extract_schmitz,
    strip_synthetic_root,
)
from hiertag.corpus import build_cooccurrence, corpus_from_object_lists
from hiertag.hierarchy import Hierarchy


def _network(objects):
    return build_cooccurrence(corpus_from_object_lists(objects))


def _nested():
    return _network([["a"]] * 100 + [["a", "b"]] * 50 + [["a", "b", "c"]] * 25)


def test_heymann_nested_corpus_gives_rooted_chain():
    h = extract_heymann(_nested())
    assert h.roots == (SYNTHETIC_ROOT,)
    assert set(h.edges) == {(SYNTHETIC_ROOT, "a"), ("a", "b"), ("b", "c")}
    assert h.is_tree()


def test_heymann_rejects_reserved_tag_name():
    network = _network([["a", SYNTHETIC_ROOT]] * 3)
    with pytest.raises(ValueError, match="reserved"):
        extract_heymann(network)


def test_strip_synthetic_root():
    stripped = strip_synthetic_root(extract_heymann(_nested()))
    assert SYNTHETIC_ROOT not in stripped.tags
    assert set(stripped.edges) == {("a", "b"), ("b", "c")}
    assert stripped.roots == ("a",)
    # hierarchies without the synthetic root pass through untouched
    plain = Hierarchy(("x", "y"), (("x", "y"),))
    assert strip_synthetic_root(plain) == plain


def test_heymann_closeness_variant_agrees_on_nested_corpus():
    h = extract_heymann(_nested(), HeymannParams(centrality_kind="closeness"))
    assert set(h.edges) == {(SYNTHETIC_ROOT, "a"), ("a", "b"), ("b", "c")}


def test_heymann_unknown_centrality_is_rejected():
    with pytest.raises(ValueError, match="centrality"):
        HeymannParams(centrality_kind="pagerank")


def test_heymann_dissimilar_tags_fall_back_to_synthetic_root():
    network = _network([["a", "b"]] * 20 + [["c", "d"]] * 20)
    h = extract_heymann(network)
    assert set(h.edges) == {
        (SYNTHETIC_ROOT, "a"),
        ("a", "b"),
        (SYNTHETIC_ROOT, "c"),
        ("c", "d"),
    }


def test_heymann_high_threshold_flattens_the_tree():
    # no pair reaches similarity 0.7 in the nested corpus
    h = extract_heymann(_nested(), HeymannParams(similarity_threshold=0.7))
    assert all(parent == SYNTHETIC_ROOT for parent, _ in h.edges)


def test_cosine_similarity_values():
    sims = _nested().adj  # just to pin index layout
    network = _nested()
    a = network.names.index("a")
    b = network.names.index("b")
    # Q_ab / sqrt(Q_a * Q_b) = 75 / sqrt(175 * 75)
    assert cosine_similarities(network)[a][b] == pytest.approx(75 / (175 * 75) ** 0.5)
    assert sims[a][b] == 75


def test_schmitz_nested_corpus_prunes_transitive_link():
    # a subsumes both b and c, but a -> c is implied by a -> b -> c
    h = extract_schmitz(_nested())
    assert set(h.edges) == {("a", "b"), ("b", "c")}
    assert h.roots == ("a",)


def test_schmitz_min_cooccurrence_boundary():
    network = _network([["x", "y"]] * 10 + [["y"]] * 3)
    assert set(extract_schmitz(network).edges) == {("y", "x")}
    weak = _network([["x", "y"]] * 9 + [["y"]] * 3 + [["x"]] * 1)
    assert extract_schmitz(weak).edges == frozenset()


def test_schmitz_subsumption_boundary_is_inclusive():
    # P(x|y) = 16/20 = 0.8 exactly, P(y|x) = 0.4
    network = _network([["x", "y"]] * 16 + [["y"]] * 4 + [["x"]] * 24)
    assert set(extract_schmitz(network).edges) == {("x", "y")}


def test_schmitz_mutual_subsumption_gives_no_link():
    # both conditionals sit at 0.8, so neither direction qualifies
    network = _network([["x", "y"]] * 16 + [["x"]] * 4 + [["y"]] * 4)
    assert extract_schmitz(network).edges == frozenset()


def test_schmitz_multi_parent_keeps_heavier_parent():
    objects = (
        [["p1", "p2", "c"]] * 24
        + [["p1", "c"]] * 6
        + [["p1"]] * 40
        + [["p2"]] * 40
    )
    h = extract_schmitz(_network(objects))
    assert set(h.edges) == {("p1", "c")}


def test_schmitz_multi_parent_tie_takes_first_seen_tag():
    objects = [["p1", "p2", "c"]] * 30 + [["p1"]] * 40 + [["p2"]] * 40
    h = extract_schmitz(_network(objects))
    assert set(h.edges) == {("p1", "c")}


def _random_objects(rng, n_tags, n_objects):
    names = [f"t{k:02d}" for k in range(n_tags)]
    return [rng.sample(names, rng.randint(1, min(4, n_tags))) for _ in range(n_objects)]


def test_schmitz_output_is_forest_with_heavier_parents():
    rng = random.Random(14)
    for _ in range(30):
        network = _network(_random_objects(rng, rng.randint(2, 25), rng.randint(10, 200)))
        h = extract_schmitz(network)
        assert h.is_forest()
        for parent, child in h.edges:
            assert network.freq[network.names.index(parent)] > network.freq[
                network.names.index(child)
            ]


def test_heymann_output_is_always_a_tree():
    rng = random.Random(25)
    for _ in range(30):
        network = _network(_random_objects(rng, rng.randint(1, 25), rng.randint(5, 150)))
        h = extract_heymann(network)
        assert h.is_tree()
        assert h.n_tags == network.n_tags + 1


def test_schmitz_default_params():
    params = SchmitzParams()
    assert params.t_subsume == 0.8
    assert params.min_cooccurrence == 10
