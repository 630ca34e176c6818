import pytest
from hypothesis import given, settings, strategies as st

from qmap.metrics import counts
from qmap.model import to_simplicial_family, validate_map
from qmap.qengine import complexity, connected_parts, structure_vector
from qmap.rng import PCG32
from qmap.synth import (ShockSpec, fig2a, gen_motif_map, gen_preset, gen_random_frame,
                        gen_random_map, inject_shock)


def test_pcg32_reference_stream():
    # first outputs of the reference pcg32 demo, seed 42, stream 54
    rng = PCG32(42, 54)
    assert [rng.next_u32() for _ in range(6)] == [
        0xA15C02B7, 0x7B47F409, 0xBA1D3330, 0x83D2F293, 0xBFA4784B, 0xCBED606E]


def test_pcg32_draws():
    rng = PCG32(1)
    xs = [rng.below(7) for _ in range(2000)]
    assert set(xs) == set(range(7))
    s = PCG32(5).sample(10, 10)
    assert sorted(s) == list(range(10))
    assert 0 <= PCG32(3).random() < 1
    with pytest.raises(ValueError):
        PCG32(0).sample(3, 4)


@pytest.mark.parametrize("case, sv, c", [
    ("fig2a:3", (), 0), ("fig2b", (1, 1), 3), ("fig2c", (1, 2), 2)])
def test_presets(case, sv, c):
    fam = to_simplicial_family(gen_preset(case))
    assert structure_vector(fam).counts == sv
    assert complexity(fam) == c


def test_preset_errors():
    for bad in ("fig2a:0", "fig2d", "fig2a"):
        with pytest.raises(ValueError):
            gen_preset(bad)
    assert len(fig2a(10).relations) == 10


def block_complexity(a, c):
    """Complete a x c block: every simplex is the same (c-1)-face."""
    if a < 2:
        return 0.0
    return sum((q + 1) / 1 for q in range(c))


def test_random_frame_disconnected_blocks():
    f = gen_random_frame(4, 4, 2, 0.0, seed=11)
    fam = to_simplicial_family(f)
    parts = connected_parts(fam)
    assert [p.names for p in parts] == [["EA1", "EA3"], ["EA2", "EA4"]]
    # each block: 2 identical edges {P_j, P_j+2}: s = (1, 1), C = 3
    assert complexity(fam) == 2 * block_complexity(2, 2) == 6


def test_random_frame_complete():
    f = gen_random_frame(5, 4, 2, 1.0, seed=0)
    assert len(f.relations) == 20
    fam = to_simplicial_family(f)
    assert structure_vector(fam).counts == (1, 1, 1, 1)


def test_random_frame_deterministic_and_validated():
    assert gen_random_frame(6, 7, 3, 0.3, 42) == gen_random_frame(6, 7, 3, 0.3, 42)
    assert gen_random_frame(6, 7, 3, 0.3, 42) != gen_random_frame(6, 7, 3, 0.3, 43)
    with pytest.raises(ValueError):
        gen_random_frame(2, 5, 3, 0.1, 0)
    with pytest.raises(ValueError):
        gen_random_frame(5, 5, 2, 1.5, 0)


def test_random_map():
    m = gen_random_map(30, 100, 9)
    assert counts(m)[:2] == (30, 100)
    assert validate_map(m) == []
    assert m == gen_random_map(30, 100, 9)
    with pytest.raises(ValueError):
        gen_random_map(3, 7, 0)


def test_motif_map():
    m = gen_motif_map({"path:3": 2, "cycle:2": 1, "complete:3": 1, "edge": 1}, 20)
    assert counts(m)[:2] == (20, 4 + 2 + 6 + 1)
    assert validate_map(m) == []
    with pytest.raises(ValueError):
        gen_motif_map({"path:3": 3}, 5)
    with pytest.raises(ValueError):
        gen_motif_map({"star:3": 1})


def ten_link_map():
    return gen_random_map(6, 10, 4)


def test_shock_identity():
    m = ten_link_map()
    assert inject_shock(m, ShockSpec(), 1) == m


def test_shock_link_removal_floor():
    out = inject_shock(ten_link_map(), ShockSpec(link_removal_fraction=0.4), 1)
    assert len(out.links) == 6
    assert len(out.concepts) == 6
    assert {l.pair for l in out.links} <= {l.pair for l in ten_link_map().links}
    assert len(inject_shock(gen_random_map(20, 100, 0), ShockSpec(0.29), 0).links) == 71


def test_shock_injection():
    m = gen_random_map(5, 6, 2)
    out = inject_shock(m, ShockSpec(inject_concept=("PoisonPills", 3)), 7)
    assert len(out.concepts) == 6 and len(out.links) == 9
    new = [l for l in out.links if l.source == "PoisonPills"]
    assert len(new) == 3
    assert validate_map(out) == []


def test_shock_concept_removal_drops_incident_links():
    m = gen_random_map(10, 40, 3)
    out = inject_shock(m, ShockSpec(concept_removal_fraction=0.5), 3)
    assert len(out.concepts) == 5
    ids = set(out.concept_ids)
    assert all(l.source in ids and l.target in ids for l in out.links)


def test_shock_spec_parse():
    s = ShockSpec.parse("links=0.4,concepts=0.1,inject=Poison Pills:3")
    assert s == ShockSpec(0.4, 0.1, ("Poison Pills", 3))
    for bad in ("links=2", "foo=1", "inject=X:-1"):
        with pytest.raises(ValueError):
            ShockSpec.parse(bad)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 12), st.floats(0, 1), st.floats(0, 1),
       st.integers(0, 5))
def test_shock_output_valid_and_deterministic(seed, n, fl, fc, k):
    m = gen_random_map(n, min(n * (n - 1), 2 * n), seed)
    spec = ShockSpec(fl, fc, ("iso.0", k))
    out = inject_shock(m, spec, seed)
    assert validate_map(out) == []
    assert out == inject_shock(m, spec, seed)
