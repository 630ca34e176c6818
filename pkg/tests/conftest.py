import pytest

from qmap.model import SimplicialFamily
from qmap.rng import PCG32


def random_family(seed: int, max_simplices: int = 8, max_vertices: int = 10) -> SimplicialFamily:
    """Small random family: up to 8 non-empty simplices over up to 10 vertices."""
    rng = PCG32(seed, stream=7)
    n_vertices = 1 + rng.below(max_vertices)
    n_simplices = 1 + rng.below(max_simplices)
    sets = {}
    for i in range(n_simplices):
        size = 1 + rng.below(n_vertices)
        sets[f"S{i}"] = [f"v{k}" for k in rng.sample(n_vertices, size)]
    return SimplicialFamily.from_sets(sets)


@pytest.fixture
def fig2c_sets():
    return {"EA1": {"P1", "P2", "P3"}, "EA2": {"P2", "P3", "P4"},
            "EA3": {"P4", "P5", "P6"}, "EA4": {"P5", "P6", "P7"}}


# Disruption series built from disjoint motifs on 200 concepts. The calm map
# has 100 links and distance sum 141; the shocked map has 57 links and
# distance sum 300, so density falls by 43% and closeness by 53%. Calm
# periods add a few extra edges (+k links, +k distance sum).
CALM = {"path:3": 17, "path:4": 1, "cycle:2": 31, "edge": 1}
SHOCKED = {"path:8": 2, "path:7": 1, "path:4": 5, "path:3": 2, "edge": 18}
EXTRA_EDGES = [3, 5, 2, 0, None, 0, 4, 1]  # None marks the shocked period
SHOCK_INDEX = 4


def disruption_maps():
    from qmap.synth import gen_motif_map
    maps = []
    for t, k in enumerate(EXTRA_EDGES):
        period = str(2015 + t)
        motifs = SHOCKED if k is None else {**CALM, "path:2": k}
        maps.append(gen_motif_map(motifs, 200, map_id=f"p{period}", period=period))
    return maps


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
