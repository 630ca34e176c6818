"""Deterministic generators for frames and maps, and shock injection.

All randomness comes from :class:`qmap.rng.PCG32`, so every output is a pure
function of the parameters and the seed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping

from .model import CausalLink, CognitiveMap, Concept, DecisionFrame
from .rng import PCG32

# Minimal families realizing the stylized cases: (b) one cluster overlapping
# on an edge, (c) two such clusters joined through a single vertex.
_FIG2B = {"EA1": ("P1", "P2", "P3"), "EA2": ("P2", "P3", "P4")}
_FIG2C = {**_FIG2B, "EA3": ("P4", "P5", "P6"), "EA4": ("P5", "P6", "P7")}


def _frame_from_sets(frame_id: str, sets: Mapping[str, tuple[str, ...]]) -> DecisionFrame:
    pcs = sorted({p for ps in sets.values() for p in ps}, key=lambda p: int(p[1:]))
    return DecisionFrame(frame_id, tuple(sets), tuple(pcs),
                         frozenset((ea, pc) for ea, ps in sets.items() for pc in ps))


def fig2a(n: int) -> DecisionFrame:
    """``n`` alternatives, each linked to its own consequence."""
    if n < 1:
        raise ValueError("fig2a needs n >= 1")
    return _frame_from_sets(f"fig2a-{n}", {f"EA{i}": (f"P{i}",) for i in range(1, n + 1)})


def fig2b_like() -> DecisionFrame:
    return _frame_from_sets("fig2b", _FIG2B)


def fig2c_like() -> DecisionFrame:
    return _frame_from_sets("fig2c", _FIG2C)


def gen_preset(case: str) -> DecisionFrame:
    """Preset by name: ``fig2a:N``, ``fig2b`` or ``fig2c``."""
    m = re.fullmatch(r"fig2a:(\d+)", case)
    if m:
        return fig2a(int(m.group(1)))
    if case == "fig2b":
        return fig2b_like()
    if case == "fig2c":
        return fig2c_like()
    raise ValueError(f"unknown preset {case!r} (expected fig2a:N, fig2b or fig2c)")


def gen_random_frame(n_alternatives: int, n_consequences: int, n_clusters: int,
                     cross_link_prob: float, seed: int) -> DecisionFrame:
    """Clustered random frame.

    Alternatives and consequences are dealt round-robin into ``n_clusters``
    clusters. Inside a cluster every alternative is related to every
    consequence; each cross-cluster pair, visited alternative-major, is
    related with probability ``cross_link_prob``.
    """
    if not 1 <= n_clusters <= min(n_alternatives, n_consequences):
        raise ValueError("need 1 <= n_clusters <= min(n_alternatives, n_consequences)")
    if not 0.0 <= cross_link_prob <= 1.0:
        raise ValueError("cross_link_prob must lie in [0, 1]")
    rng = PCG32(seed)
    alts = [f"EA{i}" for i in range(1, n_alternatives + 1)]
    cons = [f"P{j}" for j in range(1, n_consequences + 1)]
    rels = set()
    for i, ea in enumerate(alts):
        for j, pc in enumerate(cons):
            if i % n_clusters == j % n_clusters or rng.random() < cross_link_prob:
                rels.add((ea, pc))
    name = f"random-{n_alternatives}x{n_consequences}-k{n_clusters}-s{seed}"
    return DecisionFrame(name, tuple(alts), tuple(cons), frozenset(rels))


def gen_random_map(n_concepts: int, n_links: int, seed: int,
                   map_id: str | None = None, period: str | None = None) -> CognitiveMap:
    """Uniform random simple digraph with exactly ``n_links`` links.

    Ordered pair number ``k`` in ``range(n * (n - 1))`` is source
    ``k // (n - 1)`` and the ``k % (n - 1)``-th other concept as target.
    """
    n = n_concepts
    if n < 0 or n_links < 0:
        raise ValueError("sizes must be non-negative")
    if n_links > n * (n - 1):
        raise ValueError(f"at most {n * (n - 1)} links fit on {n} concepts")
    rng = PCG32(seed)
    ids = [f"C{i}" for i in range(1, n + 1)]
    links = []
    for k in rng.sample(n * (n - 1), n_links):
        i, r = divmod(k, n - 1)
        j = r if r < i else r + 1
        links.append(CausalLink(ids[i], ids[j]))
    return CognitiveMap(map_id or f"random-{n}-{n_links}-s{seed}",
                        tuple(Concept(c) for c in ids), tuple(links), period)


_MOTIF = re.compile(r"(edge|path|cycle|complete)(?::(\d+))?")


def gen_motif_map(motifs: Mapping[str, int], n_concepts: int | None = None,
                  map_id: str = "motifs", period: str | None = None) -> CognitiveMap:
    """Disjoint union of small directed motifs, padded with isolated concepts.

    Motif keys are ``edge``, ``path:m``, ``cycle:m`` and ``complete:m``
    (m nodes each); values are copies. Being disjoint, every motif adds its
    own links and its own distance sum, which makes link counts and
    closeness of the union easy to control exactly.
    """
    concepts, links = [], []
    for idx, (key, copies) in enumerate(motifs.items()):
        m = _MOTIF.fullmatch(key)
        if not m:
            raise ValueError(f"bad motif {key!r}")
        kind, size = m.group(1), int(m.group(2) or 2)
        if kind == "edge":
            kind, size = "path", 2
        if size < 2:
            raise ValueError(f"motif {key!r} needs at least 2 nodes")
        for c in range(copies):
            ids = [f"{kind}{size}.{idx}.{c}.{i}" for i in range(size)]
            concepts += ids
            if kind == "path":
                pairs = zip(ids, ids[1:])
            elif kind == "cycle":
                pairs = zip(ids, ids[1:] + ids[:1])
            else:
                pairs = [(a, b) for a in ids for b in ids if a != b]
            links += [CausalLink(a, b) for a, b in pairs]
    if n_concepts is not None:
        if n_concepts < len(concepts):
            raise ValueError(f"motifs already use {len(concepts)} concepts")
        concepts += [f"iso.{i}" for i in range(n_concepts - len(concepts))]
    return CognitiveMap(map_id, tuple(Concept(c) for c in concepts), tuple(links), period)


@dataclass(frozen=True)
class ShockSpec:
    link_removal_fraction: float = 0.0
    concept_removal_fraction: float = 0.0
    inject_concept: tuple[str, int] | None = None

    def __post_init__(self):
        for name in ("link_removal_fraction", "concept_removal_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.inject_concept is not None:
            label, count = self.inject_concept
            if not label or count < 0:
                raise ValueError("inject_concept needs a label and attach_count >= 0")

    @classmethod
    def parse(cls, text: str) -> "ShockSpec":
        """Parse ``links=0.4,concepts=0.1,inject=Label:3`` (any subset)."""
        kw: dict = {}
        for part in filter(None, text.split(",")):
            key, _, val = part.partition("=")
            if key == "links":
                kw["link_removal_fraction"] = float(val)
            elif key == "concepts":
                kw["concept_removal_fraction"] = float(val)
            elif key == "inject":
                label, _, count = val.rpartition(":")
                if not label:
                    label, count = val, "0"
                kw["inject_concept"] = (label, int(count))
            else:
                raise ValueError(f"unknown shock field {key!r}")
        return cls(**kw)


def _portion(fraction: float, n: int) -> int:
    # floor, tolerant of binary rounding (0.29 * 100 == 28.999...)
    return min(n, math.floor(fraction * n + 1e-9))


def inject_shock(cmap: CognitiveMap, spec: ShockSpec, seed: int) -> CognitiveMap:
    """Disrupt a map: drop links, then concepts, then add a new concept.

    ``floor(fraction * count)`` links and then concepts (with their incident
    links) are removed uniformly at random. An injected concept becomes the
    source of ``attach_count`` links to randomly chosen surviving concepts
    (fewer if not enough remain).
    """
    rng = PCG32(seed)
    links = list(cmap.links)
    drop = set(rng.sample(len(links), _portion(spec.link_removal_fraction, len(links))))
    links = [l for i, l in enumerate(links) if i not in drop]

    concepts = list(cmap.concepts)
    drop = set(rng.sample(len(concepts), _portion(spec.concept_removal_fraction, len(concepts))))
    gone = {c.id for i, c in enumerate(concepts) if i in drop}
    concepts = [c for c in concepts if c.id not in gone]
    links = [l for l in links if l.source not in gone and l.target not in gone]

    if spec.inject_concept is not None:
        label, count = spec.inject_concept
        taken = {c.id for c in concepts}
        new_id, k = label, 1
        while new_id in taken:
            k += 1
            new_id = f"{label}#{k}"
        targets = rng.sample(len(concepts), min(count, len(concepts)))
        links += [CausalLink(new_id, concepts[i].id) for i in targets]
        concepts.append(Concept(new_id, label))
    return cmap.replace(concepts=tuple(concepts), links=tuple(links))
