import warnings

import pytest
from hypothesis import given, strategies as st

from qmap.model import (CausalLink, CognitiveMap, Concept, DecisionFrame, QmapWarning, Role,
                        Simplex, SimplicialFamily, to_simplicial_family, validate_map)


def chain(*ids):
    return CognitiveMap("chain", tuple(Concept(i) for i in ids),
                        tuple(CausalLink(a, b) for a, b in zip(ids, ids[1:])))


def test_valid_chain_has_no_violations():
    assert validate_map(chain("a", "b", "c")) == []


def test_empty_map_is_valid():
    assert validate_map(CognitiveMap("empty")) == []


def test_dangling_endpoint():
    m = CognitiveMap("m", (Concept("a"), Concept("b")), (CausalLink("a", "zzz"),))
    (v,) = validate_map(m)
    assert v.kind == "dangling endpoint"
    assert "zzz" in v.message and "a->zzz" in v.location


def test_self_loop():
    m = CognitiveMap("m", (Concept("a"),), (CausalLink("a", "a"),))
    assert [v.kind for v in validate_map(m)] == ["self-loop"]


def test_duplicate_concepts_and_links_reported():
    m = CognitiveMap("m", (Concept("a"), Concept("a"), Concept("b")),
                     (CausalLink("a", "b"), CausalLink("a", "b", "Positive")))
    kinds = sorted(v.kind for v in validate_map(m))
    assert kinds == ["duplicate concept", "duplicate link"]


def test_map_equality_ignores_input_order():
    a = CognitiveMap("m", (Concept("b"), Concept("a")), (CausalLink("b", "a"), CausalLink("a", "b")))
    b = CognitiveMap("m", (Concept("a"), Concept("b")), (CausalLink("a", "b"), CausalLink("b", "a")))
    assert a == b


def test_concept_label_defaults_to_id():
    assert Concept("x").label == "x"
    assert Concept("x", role="EvokedAlternative").role is Role.EVOKED_ALTERNATIVE


def frame(rels, alts=("EA1", "EA2", "EA3"), cons=("P1", "P2", "P3")):
    return DecisionFrame("f", alts, cons, rels)


def test_one_to_one_frame_gives_points():
    fam = to_simplicial_family(frame({("EA1", "P1"), ("EA2", "P2"), ("EA3", "P3")}))
    assert len(fam) == 3
    assert all(s.dimension == 0 for s in fam)


def test_fig2c_like_frame_gives_four_triangles(fig2c_sets):
    rels = {(ea, p) for ea, ps in fig2c_sets.items() for p in ps}
    f = DecisionFrame("c", tuple(fig2c_sets), tuple(f"P{i}" for i in range(1, 8)), rels)
    fam = to_simplicial_family(f)
    assert fam.names == ["EA1", "EA2", "EA3", "EA4"]
    assert [s.dimension for s in fam] == [2, 2, 2, 2]
    assert fam.vertex_universe == {f"P{i}" for i in range(1, 8)}


def test_alternative_without_relations_is_omitted_with_warning():
    f = DecisionFrame("f", ("EA1",), ("P1",), frozenset())
    with pytest.warns(QmapWarning, match="EA1"):
        fam = to_simplicial_family(f)
    assert len(fam) == 0


def test_duplicate_relations_deduplicated_with_warning():
    with pytest.warns(QmapWarning, match="duplicate"):
        f = frame([("EA1", "P1"), ("EA1", "P1")])
    assert f.relations == {("EA1", "P1")}


@pytest.mark.parametrize("rels, alts, cons", [
    ({("EA1", "P9")}, ("EA1",), ("P1",)),
    ({("EA9", "P1")}, ("EA1",), ("P1",)),
    (set(), ("X",), ("X",)),
    (set(), ("EA1", "EA1"), ("P1",)),
])
def test_invalid_frames_rejected(rels, alts, cons):
    with pytest.raises(ValueError):
        DecisionFrame("bad", alts, cons, rels)


def test_simplex_must_be_non_empty():
    with pytest.raises(ValueError):
        Simplex("s", frozenset())
    with pytest.raises(ValueError):
        SimplicialFamily((Simplex("s", {"a"}), Simplex("s", {"b"})))


relations = st.sets(st.tuples(st.sampled_from([f"EA{i}" for i in range(5)]),
                              st.sampled_from([f"P{i}" for i in range(6)])))


@given(relations)
def test_vertex_slots_equal_relation_count(rels):
    f = DecisionFrame("f", tuple(f"EA{i}" for i in range(5)), tuple(f"P{i}" for i in range(6)), rels)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QmapWarning)
        fam = to_simplicial_family(f)
        again = to_simplicial_family(f)
        assert sum(s.dimension + 1 for s in fam) == len(rels)
        assert fam == again
        assert to_simplicial_family(fam.to_frame()) == fam
