"""Core domain types: cognitive maps, decision frames and simplicial families."""

from __future__ import annotations

import enum
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable


class QmapWarning(UserWarning):
    """Non-fatal data problem (dropped duplicates, empty alternatives)."""


class Role(str, enum.Enum):
    EVOKED_ALTERNATIVE = "EvokedAlternative"
    PERCEIVED_CONSEQUENCE = "PerceivedConsequence"
    PLAIN = "Plain"


class Sign(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    UNSIGNED = "Unsigned"


@dataclass(frozen=True, order=True)
class Concept:
    id: str
    label: str = ""
    role: Role = Role.PLAIN

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.id)
        object.__setattr__(self, "role", Role(self.role))


@dataclass(frozen=True, order=True)
class CausalLink:
    source: str
    target: str
    sign: Sign = Sign.UNSIGNED

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign(self.sign))

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class CognitiveMap:
    """Directed graph of concepts and causal links.

    Construction never rejects a map: invariant violations are reported by
    :func:`validate_map` so that broken maps can still be inspected.
    Concepts are kept sorted by id and links by (source, target), which makes
    equality independent of input order.
    """

    map_id: str
    concepts: tuple[Concept, ...] = ()
    links: tuple[CausalLink, ...] = ()
    period: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(sorted(self.concepts)))
        object.__setattr__(self, "links", tuple(sorted(self.links)))

    @property
    def concept_ids(self) -> list[str]:
        return [c.id for c in self.concepts]

    def replace(self, **changes) -> "CognitiveMap":
        fields = dict(map_id=self.map_id, concepts=self.concepts,
                      links=self.links, period=self.period)
        fields.update(changes)
        return CognitiveMap(**fields)


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    message: str

    def __str__(self):
        return f"{self.location}: {self.kind}: {self.message}"


def validate_map(cmap: CognitiveMap) -> list[Violation]:
    """Return one :class:`Violation` per broken invariant; empty when valid."""
    out = []
    ids = Counter(c.id for c in cmap.concepts)
    for i, c in enumerate(cmap.concepts):
        if not c.id:
            out.append(Violation("empty id", f"concepts[{i}]", "concept id is empty"))
    for cid, n in sorted(ids.items()):
        if n > 1 and cid:
            out.append(Violation("duplicate concept", f"concept {cid!r}",
                                 f"id occurs {n} times"))
    pairs = Counter(link.pair for link in cmap.links)
    for i, link in enumerate(cmap.links):
        loc = f"links[{i}] {link.source}->{link.target}"
        if link.source == link.target:
            out.append(Violation("self-loop", loc, "link source equals target"))
        for end in (link.source, link.target):
            if end not in ids:
                out.append(Violation("dangling endpoint", loc,
                                     f"unknown concept {end!r}"))
                break
    for pair, n in sorted(pairs.items()):
        if n > 1:
            out.append(Violation("duplicate link", f"{pair[0]}->{pair[1]}",
                                 f"pair occurs {n} times"))
    return out


def _as_concepts(items, role: Role) -> tuple[Concept, ...]:
    return tuple(c if isinstance(c, Concept) else Concept(str(c), role=role)
                 for c in items)


@dataclass(frozen=True)
class DecisionFrame:
    """Evoked alternatives linked to perceived consequences.

    ``relations`` may be given as any iterable of (alternative, consequence)
    pairs; repeated pairs are dropped with a :class:`QmapWarning`. Unlike
    maps, frames are checked on construction and raise ``ValueError``.
    """

    frame_id: str
    alternatives: tuple[Concept, ...]
    consequences: tuple[Concept, ...]
    relations: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        alts = _as_concepts(self.alternatives, Role.EVOKED_ALTERNATIVE)
        cons = _as_concepts(self.consequences, Role.PERCEIVED_CONSEQUENCE)
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "consequences", cons)

        raw = [tuple(r) for r in self.relations]
        rels = frozenset(raw)
        if len(rels) < len(raw):
            dups = sorted(p for p, n in Counter(raw).items() if n > 1)
            warnings.warn(f"frame {self.frame_id!r}: dropped duplicate relations {dups}",
                          QmapWarning, stacklevel=3)
        object.__setattr__(self, "relations", rels)

        alt_ids = [c.id for c in alts]
        con_ids = [c.id for c in cons]
        for ids, what in ((alt_ids, "alternative"), (con_ids, "consequence")):
            if any(not i for i in ids):
                raise ValueError(f"empty {what} id")
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate {what} ids")
        shared = set(alt_ids) & set(con_ids)
        if shared:
            raise ValueError(f"ids used as both alternative and consequence: {sorted(shared)}")
        a, c = set(alt_ids), set(con_ids)
        for ea, pc in sorted(rels):
            if ea not in a:
                raise ValueError(f"relation ({ea}, {pc}) references undeclared alternative {ea!r}")
            if pc not in c:
                raise ValueError(f"relation ({ea}, {pc}) references undeclared consequence {pc!r}")

    @property
    def alternative_ids(self) -> list[str]:
        return [c.id for c in self.alternatives]

    @property
    def consequence_ids(self) -> list[str]:
        return [c.id for c in self.consequences]

    def to_map(self) -> CognitiveMap:
        """The bipartite cognitive map induced by the frame."""
        links = [CausalLink(ea, pc) for ea, pc in self.relations]
        return CognitiveMap(self.frame_id, self.alternatives + self.consequences, links)


@dataclass(frozen=True, order=True)
class Simplex:
    name: str
    vertices: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not self.vertices:
            raise ValueError(f"simplex {self.name!r} has no vertices")

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class SimplicialFamily:
    """Named simplices, kept sorted by name."""

    simplices: tuple[Simplex, ...] = ()

    def __post_init__(self):
        simplices = tuple(sorted(self.simplices, key=lambda s: s.name))
        names = [s.name for s in simplices]
        if len(set(names)) != len(names):
            raise ValueError("simplex names must be unique")
        object.__setattr__(self, "simplices", simplices)

    @classmethod
    def from_sets(cls, sets: dict[str, Iterable[str]]) -> "SimplicialFamily":
        return cls(tuple(Simplex(k, frozenset(v)) for k, v in sets.items()))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.simplices]

    @property
    def vertex_universe(self) -> frozenset[str]:
        return frozenset().union(*(s.vertices for s in self.simplices))

    def subfamily(self, names: Iterable[str]) -> "SimplicialFamily":
        keep = set(names)
        return SimplicialFamily(tuple(s for s in self.simplices if s.name in keep))

    def to_frame(self, frame_id: str = "family") -> DecisionFrame:
        return DecisionFrame(
            frame_id,
            alternatives=tuple(self.names),
            consequences=tuple(sorted(self.vertex_universe)),
            relations=frozenset((s.name, v) for s in self.simplices for v in s.vertices),
        )


def to_simplicial_family(frame: DecisionFrame) -> SimplicialFamily:
    """One simplex per alternative, its vertices being the related consequences.

    Alternatives without any relation cannot form a simplex; they are skipped
    and reported through a :class:`QmapWarning`.
    """
    verts: dict[str, set[str]] = {ea: set() for ea in frame.alternative_ids}
    for ea, pc in frame.relations:
        verts[ea].add(pc)
    empty = [ea for ea, vs in verts.items() if not vs]
    if empty:
        warnings.warn(f"frame {frame.frame_id!r}: alternatives without consequences "
                      f"omitted: {', '.join(empty)}", QmapWarning, stacklevel=2)
    return SimplicialFamily(tuple(Simplex(ea, frozenset(vs))
                                  for ea, vs in verts.items() if vs))
