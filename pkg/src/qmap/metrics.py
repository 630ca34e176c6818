"""Structural metrics of cognitive maps: counts, density and closeness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .model import CognitiveMap

LmaxMode = Literal["paper", "directed"]


@dataclass(frozen=True)
class Closeness:
    per_concept: dict[str, float]
    average: float
    reachable_pair_fraction: float


@dataclass(frozen=True)
class MapMetrics:
    num_concepts: int
    num_links: int
    links_per_concept: float | None
    density: float | None
    avg_closeness: float | None
    reachable_pair_fraction: float | None

    def as_dict(self) -> dict:
        return {
            "n_concepts": self.num_concepts,
            "n_links": self.num_links,
            "ratio": self.links_per_concept,
            "density": self.density,
            "avg_closeness": self.avg_closeness,
            "reachable_pair_fraction": self.reachable_pair_fraction,
        }


def counts(cmap: CognitiveMap) -> tuple[int, int, float | None]:
    """(|C|, |L|, |L|/|C|); the ratio is None for an empty map."""
    nc, nl = len(cmap.concepts), len(cmap.links)
    return nc, nl, (nl / nc if nc else None)


def max_links(n_concepts: int, mode: LmaxMode = "paper") -> int:
    """Denominator of the density.

    ``"paper"`` uses n(n-1)/2 as printed in the original formula even though
    links are directed, so a complete digraph has density 2. ``"directed"``
    uses n(n-1).
    """
    if mode == "paper":
        return n_concepts * (n_concepts - 1) // 2
    if mode == "directed":
        return n_concepts * (n_concepts - 1)
    raise ValueError(f"unknown lmax mode {mode!r}")


def density(cmap: CognitiveMap, lmax: LmaxMode = "paper") -> float | None:
    n = len(cmap.concepts)
    if n < 2:
        return None
    return len(cmap.links) / max_links(n, lmax)


def successors(cmap: CognitiveMap, undirected: bool = False) -> list[list[int]]:
    """Adjacency lists over concept positions (sorted id order)."""
    index = {cid: i for i, cid in enumerate(cmap.concept_ids)}
    succ: list[list[int]] = [[] for _ in index]
    try:
        for l in cmap.links:
            a, b = index[l.source], index[l.target]
            succ[a].append(b)
            if undirected:
                succ[b].append(a)
    except KeyError as exc:
        raise ValueError(f"link endpoint {exc.args[0]!r} is not a concept") from None
    return succ


def distance_levels(succ: list[list[int]]):
    """Yield, for d = 1, 2, ..., one bitmask per node of the nodes at distance d.

    Bit j of ``level[i]`` is set when the shortest path i -> j has exactly d
    hops. A node's next level is the union of its successors' current
    levels minus everything it has already reached, so every source
    advances together and each step costs one big-integer OR per link.
    """
    n = len(succ)
    frontier = [1 << i for i in range(n)]
    seen = frontier[:]
    while True:
        nxt = []
        for i in range(n):
            acc = 0
            for j in succ[i]:
                acc |= frontier[j]
            nxt.append(acc & ~seen[i])
        if not any(nxt):
            return
        for i in range(n):
            seen[i] |= nxt[i]
        frontier = nxt
        yield nxt


def distance_matrix(cmap: CognitiveMap, undirected: bool = False) -> list[list[float]]:
    """Hop-count shortest paths; ``math.inf`` marks unreachable pairs."""
    n = len(cmap.concepts)
    dist = [[0.0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for d, level in enumerate(distance_levels(successors(cmap, undirected)), start=1):
        for i, mask in enumerate(level):
            row = dist[i]
            while mask:
                low = mask & -mask
                row[low.bit_length() - 1] = d
                mask ^= low
    return dist


def _distance_sums(cmap: CognitiveMap, undirected: bool):
    """Per source: sum of finite distances to others and number reached."""
    n = len(cmap.concepts)
    sums = [0] * n
    reached = [0] * n
    for d, level in enumerate(distance_levels(successors(cmap, undirected)), start=1):
        for i, mask in enumerate(level):
            if mask:
                k = bin(mask).count("1")
                sums[i] += d * k
                reached[i] += k
    return sums, reached


def closeness(cmap: CognitiveMap, undirected: bool = False) -> Closeness | None:
    """Per-concept and aggregate closeness over reachable ordered pairs.

    The aggregate is (|C| - 1) divided by the sum of all finite distances
    between distinct concepts. Unreachable pairs are left out of the sum
    and the share of pairs that were reachable is returned alongside, so
    on a strongly connected map the fraction is 1 and the full double sum
    is used. With no reachable pair at all the average is 0.
    """
    n = len(cmap.concepts)
    if n < 2:
        return None
    row_sums, reached = _distance_sums(cmap, undirected)
    per = [(n - 1) / s if s else 0.0 for s in row_sums]
    total = sum(row_sums)
    return Closeness(
        per_concept=dict(zip(cmap.concept_ids, per)),
        average=(n - 1) / total if total else 0.0,
        reachable_pair_fraction=sum(reached) / (n * (n - 1)),
    )


def map_metrics(cmap: CognitiveMap, lmax: LmaxMode = "paper",
                undirected: bool = False) -> MapMetrics:
    nc, nl, ratio = counts(cmap)
    cl = closeness(cmap, undirected)
    return MapMetrics(
        num_concepts=nc,
        num_links=nl,
        links_per_concept=ratio,
        density=density(cmap, lmax),
        avg_closeness=cl.average if cl else None,
        reachable_pair_fraction=cl.reachable_pair_fraction if cl else None,
    )
