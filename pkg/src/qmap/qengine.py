"""Q-Analysis of simplicial families: q-connectivity, structure vectors, complexity.

Two conventions for counting classes at level q are supported:

``"paper"`` (default)
    only classes of two or more simplices joined through shared faces of
    dimension >= q are counted. This is the reading under which the
    stylized families with structure vectors (1, 1) and (1, 2) yield
    complexities 3 and 2.
``"atkin"``
    every simplex of dimension >= q is a member of some class, so an
    unconnected simplex counts as a singleton class.

In both conventions the top level Q is the largest face shared by two
distinct simplices.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Literal

from .model import Simplex, SimplicialFamily
from .unionfind import UnionFind

Convention = Literal["paper", "atkin"]
CONVENTIONS = ("paper", "atkin")


@dataclass(frozen=True)
class StructureVector:
    counts: tuple[int, ...] = ()

    @property
    def Q(self) -> int:
        """Top level; -1 when no two simplices share a vertex."""
        return len(self.counts) - 1

    def __len__(self):
        return len(self.counts)

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"


@dataclass(frozen=True)
class QClasses:
    level: int
    classes: tuple[tuple[str, ...], ...] = ()

    def __len__(self):
        return len(self.classes)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def shared_face_dim(a: Simplex, b: Simplex) -> int | None:
    """Dimension of the common face of ``a`` and ``b``, or None if disjoint."""
    n = len(a.vertices & b.vertices)
    return n - 1 if n else None


def shared_faces(family: SimplicialFamily) -> dict[tuple[str, str], int]:
    """Shared-face dimension for every pair of distinct simplices that meet.

    Pairs are enumerated through a vertex index, so only intersecting pairs
    are visited. Keys are (name_i, name_j) with name_i < name_j.
    """
    by_vertex: dict[str, list[str]] = defaultdict(list)
    for s in family.simplices:  # sorted by name
        for v in s.vertices:
            by_vertex[v].append(s.name)
    common: dict[tuple[str, str], int] = defaultdict(int)
    for names in by_vertex.values():
        for pair in combinations(names, 2):
            common[pair] += 1
    return {pair: n - 1 for pair, n in common.items()}


def top_level(family: SimplicialFamily) -> int:
    """Q: largest shared-face dimension over distinct pairs, -1 if none."""
    return max(shared_faces(family).values(), default=-1)


def _sorted_classes(groups) -> tuple[tuple[str, ...], ...]:
    return tuple(sorted(tuple(sorted(g)) for g in groups))


def _classes_from_edges(family, q, faces, convention):
    members = ([s.name for s in family.simplices if s.dimension >= q]
               if convention == "atkin" else [])
    uf = UnionFind(members)
    for (a, b), d in faces.items():
        if d >= q:
            uf.union(a, b)
    groups = uf.groups()
    if convention == "paper":
        groups = [g for g in groups if len(g) >= 2]
    return _sorted_classes(groups)


def q_components(family: SimplicialFamily, q: int,
                 convention: Convention = "paper") -> QClasses:
    """q-connected classes of ``family``, sorted by smallest member name."""
    if q < 0:
        raise ValueError("q must be >= 0")
    _check_convention(convention)
    faces = shared_faces(family)
    if q > max(faces.values(), default=-1):
        return QClasses(q)
    return QClasses(q, _classes_from_edges(family, q, faces, convention))


def q_components_oracle(family: SimplicialFamily, q: int,
                        convention: Convention = "paper") -> QClasses:
    """Reference version of :func:`q_components`.

    Builds the explicit q-nearness graph by comparing every pair of
    simplices, then labels components breadth-first.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    _check_convention(convention)
    simplices = list(family.simplices)
    n = len(simplices)
    adj: list[list[int]] = [[] for _ in range(n)]
    top = -1
    for i in range(n):
        for j in range(i + 1, n):
            d = shared_face_dim(simplices[i], simplices[j])
            if d is None:
                continue
            top = max(top, d)
            if d >= q:
                adj[i].append(j)
                adj[j].append(i)
    if q > top:
        return QClasses(q)

    seen = [False] * n
    groups = []
    for start in range(n):
        if seen[start] or simplices[start].dimension < q:
            continue
        seen[start] = True
        comp = [start]
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    todo.append(v)
        if len(comp) >= 2 or convention == "atkin":
            groups.append([simplices[k].name for k in comp])
    return QClasses(q, _sorted_classes(groups))


def structure_vector(family: SimplicialFamily,
                     convention: Convention = "paper") -> StructureVector:
    """Class counts s_0..s_Q.

    Empty when no two simplices share a vertex. Levels are computed in one
    sweep from Q down to 0, adding shared-face edges to a union-find as
    their dimension is reached.
    """
    _check_convention(convention)
    return _sweep(family, shared_faces(family), convention)[0]


def _sweep(family, faces, convention, record_levels=False):
    top = max(faces.values(), default=-1)
    if top < 0:
        return StructureVector(), []
    by_dim: dict[int, list[tuple[str, str]]] = defaultdict(list)
    for pair, d in faces.items():
        by_dim[d].append(pair)
    by_simplex_dim: dict[int, list[str]] = defaultdict(list)
    for s in family.simplices:
        by_simplex_dim[min(s.dimension, top)].append(s.name)

    uf = UnionFind()
    counts = [0] * (top + 1)
    levels = [None] * (top + 1)
    for q in range(top, -1, -1):
        if convention == "atkin":
            for name in by_simplex_dim.get(q, ()):
                uf.add(name)
        for a, b in by_dim.get(q, ()):
            uf.union(a, b)
        if convention == "atkin":
            counts[q] = uf.n_sets
        else:
            counts[q] = uf.n_sets_at_least(2)
        if record_levels:
            groups = uf.groups()
            if convention == "paper":
                groups = [g for g in groups if len(g) >= 2]
            levels[q] = QClasses(q, _sorted_classes(groups))
    return StructureVector(tuple(counts)), levels


def all_levels(family: SimplicialFamily,
               convention: Convention = "paper") -> list[QClasses]:
    """Classes at every level 0..Q (empty list when Q is undefined)."""
    _check_convention(convention)
    return _sweep(family, shared_faces(family), convention, record_levels=True)[1]


def connected_parts(family: SimplicialFamily) -> list[SimplicialFamily]:
    """Split into 0-connectivity components, isolated simplices included."""
    uf = UnionFind(family.names)
    for a, b in shared_faces(family):
        uf.union(a, b)
    return [family.subfamily(g) for g in _sorted_classes(uf.groups())]


def complexity_from_vector(sv: StructureVector) -> float:
    """Sum of (q + 1) / s_q over the levels with a non-zero count."""
    return sum((q + 1) / s for q, s in enumerate(sv.counts) if s)


def complexity(family: SimplicialFamily, convention: Convention = "paper",
               vector: Callable[..., StructureVector] = structure_vector) -> float:
    """Complexity of a simplicial family.

    The family is split into its vertex-connected parts and the per-part
    complexities are added. A lone simplex has an empty structure vector and
    contributes nothing, so a family of one-to-one links scores zero.

    Summing one global structure vector is not equivalent: two disjoint
    copies of the (1, 1) family give s = (2, 2) and 1/2 + 2/2 = 1.5, while
    the parts add up to 3 + 3 = 6.
    """
    _check_convention(convention)
    return sum(complexity_from_vector(vector(part, convention))
               for part in connected_parts(family) if len(part) >= 2)
