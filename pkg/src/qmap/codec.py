"""Reading and writing maps, frames, manifests, reports and plots.

Every JSON document carries ``"format": "qmap/1"``. Loaders reject unknown
fields and report the offending location; savers emit a canonical layout
(fixed key order, sorted links and relations, two-space indent) so that
equal objects always serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import os
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .model import (CausalLink, CognitiveMap, Concept, DecisionFrame, QmapWarning,
                    Role, Sign)
from .series import DisruptionReport, MetricSeries

FORMAT = "qmap/1"
CSV_COLUMNS = ("period", "n_concepts", "n_links", "ratio", "density",
               "avg_closeness", "complexity", "flags")

_FORMAT_FIELD = {"const": FORMAT}
_ID = {"type": "string", "minLength": 1}

MAP_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["map_id", "concepts", "links"],
    "properties": {
        "format": _FORMAT_FIELD,
        "map_id": {"type": "string"},
        "period": {"type": ["string", "null"]},
        "concepts": {"type": "array", "items": {
            "type": "object",
            "additionalProperties": False,
            "required": ["id"],
            "properties": {
                "id": _ID,
                "label": {"type": "string"},
                "role": {"enum": [r.value for r in Role]},
            },
        }},
        "links": {"type": "array", "items": {
            "type": "object",
            "additionalProperties": False,
            "required": ["source", "target"],
            "properties": {
                "source": _ID,
                "target": _ID,
                "sign": {"enum": [s.value for s in Sign]},
            },
        }},
    },
}

FRAME_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["frame_id", "alternatives", "consequences", "relations"],
    "properties": {
        "format": _FORMAT_FIELD,
        "frame_id": {"type": "string"},
        "alternatives": {"type": "array", "items": _ID},
        "consequences": {"type": "array", "items": _ID},
        "relations": {"type": "array", "items": {
            "type": "array", "items": _ID, "minItems": 2, "maxItems": 2}},
    },
}

MANIFEST_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["entries"],
    "properties": {
        "format": _FORMAT_FIELD,
        "entries": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "additionalProperties": False,
            "required": ["period", "map"],
            "properties": {
                "period": {"type": "string", "minLength": 1},
                "map": {"type": "string", "minLength": 1},
                "frame": {"type": ["string", "null"], "minLength": 1},
            },
        }},
    },
}


class SchemaError(ValueError):
    """A file does not match its schema; ``locator`` points at the problem."""

    def __init__(self, path, locator: str, message: str):
        self.path = str(path)
        self.locator = locator
        super().__init__(f"{self.path}: {locator}: {message}")


_TYPES = {"object": dict, "array": list, "string": str, "null": type(None)}


def _check(doc, schema):
    """First violation of ``schema`` in ``doc`` as (path parts, message), or None.

    Covers exactly the keywords used by the schemas in this module. Path
    parts are collected innermost first while the error propagates, so a
    valid document costs no string building.
    """
    types = schema.get("type")
    if types is not None:
        types = [types] if isinstance(types, str) else types
        if not isinstance(doc, tuple(_TYPES[t] for t in types)):
            return [], f"expected {' or '.join(types)}, got {type(doc).__name__}"
    if "const" in schema and doc != schema["const"]:
        return [], f"expected {schema['const']!r}, got {doc!r}"
    if "enum" in schema and doc not in schema["enum"]:
        return [], f"{doc!r} is not one of {schema['enum']}"
    if isinstance(doc, str) and len(doc) < schema.get("minLength", 0):
        return [], "empty string"
    if isinstance(doc, dict):
        props = schema.get("properties", {})
        for name in schema.get("required", ()):
            if name not in doc:
                return [], f"missing field {name!r}"
        if schema.get("additionalProperties") is False and not doc.keys() <= props.keys():
            return [], f"unknown field {sorted(doc.keys() - props.keys())[0]!r}"
        for name, sub in props.items():
            if name in doc:
                err = _check(doc[name], sub)
                if err:
                    err[0].append(f".{name}")
                    return err
    if isinstance(doc, list):
        if len(doc) < schema.get("minItems", 0):
            return [], f"needs at least {schema['minItems']} item(s)"
        if len(doc) > schema.get("maxItems", len(doc)):
            return [], f"allows at most {schema['maxItems']} item(s)"
        items = schema.get("items")
        if items:
            for i, x in enumerate(doc):
                err = _check(x, items)
                if err:
                    err[0].append(f"[{i}]")
                    return err
    return None


def _read_json(path, schema) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    err = _check(doc, schema)
    if err:
        parts, message = err
        raise SchemaError(path, "$" + "".join(reversed(parts)), message)
    return doc


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# maps

def map_to_dict(cmap: CognitiveMap) -> dict:
    return {
        "format": FORMAT,
        "map_id": cmap.map_id,
        "period": cmap.period,
        "concepts": [{"id": c.id, "label": c.label, "role": c.role.value}
                     for c in cmap.concepts],
        "links": [{"source": l.source, "target": l.target, "sign": l.sign.value}
                  for l in cmap.links],
    }


def dump_map(cmap: CognitiveMap) -> str:
    return _dumps(map_to_dict(cmap))


def save_map(cmap: CognitiveMap, path) -> None:
    _write(path, dump_map(cmap))


def _dedupe_links(links: list[CausalLink], where) -> list[CausalLink]:
    seen: dict[tuple[str, str], CausalLink] = {}
    for link in links:
        if link.pair in seen:
            warnings.warn(f"{where}: duplicate link {link.source}->{link.target} dropped",
                          QmapWarning, stacklevel=3)
            continue
        seen[link.pair] = link
    return list(seen.values())


def load_map(path) -> CognitiveMap:
    """Load a map from canonical JSON, or from a ``source,target[,sign]`` CSV."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_edge_csv(path)
    doc = _read_json(path, MAP_SCHEMA)
    concepts = tuple(Concept(c["id"], c.get("label", ""), c.get("role", Role.PLAIN))
                     for c in doc["concepts"])
    links = [CausalLink(l["source"], l["target"], l.get("sign", Sign.UNSIGNED))
             for l in doc["links"]]
    return CognitiveMap(doc["map_id"], concepts, tuple(_dedupe_links(links, path)),
                        doc.get("period"))


def _load_edge_csv(path: Path) -> CognitiveMap:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {"source", "target"} <= set(reader.fieldnames):
            raise SchemaError(path, "header", "expected columns source,target[,sign]")
        extra = set(reader.fieldnames) - {"source", "target", "sign"}
        if extra:
            raise SchemaError(path, "header", f"unknown columns {sorted(extra)}")
        links, ids = [], {}
        for row in reader:
            line = f"line {reader.line_num}"
            src, dst = (row["source"] or "").strip(), (row["target"] or "").strip()
            if not src or not dst:
                raise SchemaError(path, line, "empty source or target")
            sign = (row.get("sign") or "Unsigned").strip()
            try:
                links.append(CausalLink(src, dst, sign))
            except ValueError:
                raise SchemaError(path, line, f"bad sign {sign!r}") from None
            ids.setdefault(src, None)
            ids.setdefault(dst, None)
    return CognitiveMap(path.stem, tuple(Concept(i) for i in ids),
                        tuple(_dedupe_links(links, path)))


# frames

def frame_to_dict(frame: DecisionFrame) -> dict:
    return {
        "format": FORMAT,
        "frame_id": frame.frame_id,
        "alternatives": frame.alternative_ids,
        "consequences": frame.consequence_ids,
        "relations": [list(r) for r in sorted(frame.relations)],
    }


def dump_frame(frame: DecisionFrame) -> str:
    return _dumps(frame_to_dict(frame))


def save_frame(frame: DecisionFrame, path) -> None:
    _write(path, dump_frame(frame))


def load_frame(path) -> DecisionFrame:
    doc = _read_json(path, FRAME_SCHEMA)
    rels = [tuple(r) for r in doc["relations"]]
    alts, cons = set(doc["alternatives"]), set(doc["consequences"])
    for i, (ea, pc) in enumerate(rels):
        if ea not in alts:
            raise SchemaError(path, f"$.relations[{i}][0]", f"undeclared alternative {ea!r}")
        if pc not in cons:
            raise SchemaError(path, f"$.relations[{i}][1]", f"undeclared consequence {pc!r}")
    try:
        return DecisionFrame(doc["frame_id"], tuple(doc["alternatives"]),
                             tuple(doc["consequences"]), rels)
    except ValueError as exc:
        raise SchemaError(path, "$", str(exc)) from None


# manifests

@dataclass(frozen=True)
class ManifestEntry:
    period: str
    map_path: Path
    frame_path: Path | None = None


@dataclass(frozen=True)
class SeriesManifest:
    entries: tuple[ManifestEntry, ...]

    def __post_init__(self):
        periods = [e.period for e in self.entries]
        if len(set(periods)) != len(periods):
            raise ValueError("duplicate period labels in manifest")


def load_series(path) -> SeriesManifest:
    """Load a manifest; relative file paths resolve against its directory."""
    path = Path(path)
    doc = _read_json(path, MANIFEST_SCHEMA)
    base = path.parent
    seen = set()
    entries = []
    for i, e in enumerate(doc["entries"]):
        if e["period"] in seen:
            raise SchemaError(path, f"$.entries[{i}].period", f"duplicate period {e['period']!r}")
        seen.add(e["period"])
        frame = e.get("frame")
        entries.append(ManifestEntry(e["period"], base / e["map"],
                                     base / frame if frame else None))
    return SeriesManifest(tuple(entries))


def save_series(manifest: SeriesManifest, path) -> None:
    base = Path(path).parent

    def rel(p):
        return Path(os.path.relpath(p, base)).as_posix()

    doc = {"format": FORMAT, "entries": [
        {"period": e.period, "map": rel(e.map_path),
         "frame": rel(e.frame_path) if e.frame_path else None}
        for e in manifest.entries]}
    _write(path, _dumps(doc))


# reports

def _flags_by_period(report: DisruptionReport | None) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for f in report.flags if report else ():
        out.setdefault(f.period, []).append(f.metric)
    return out


def report_to_dict(series: MetricSeries, report: DisruptionReport | None = None) -> dict:
    flagged = _flags_by_period(report)
    rows = []
    for e in series.entries:
        row = {"period": e.period, **e.metrics.as_dict(), "complexity": e.complexity,
               "flags": flagged.get(e.period, [])}
        rows.append(row)
    doc: dict[str, Any] = {"format": FORMAT, "periods": rows, "averages": series.averages}
    if report is not None:
        doc["detection"] = {
            "threshold": report.threshold,
            "baseline": report.baseline,
            "flags": [{"period": f.period, "metric": f.metric,
                       "relative_drop": f.relative_drop, "baseline": f.baseline,
                       "direction": f.direction} for f in report.flags],
        }
    return doc


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def report_to_csv(series: MetricSeries, report: DisruptionReport | None = None) -> str:
    flagged = _flags_by_period(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for e in series.entries:
        m = e.metrics
        w.writerow([e.period, m.num_concepts, m.num_links, _fmt(m.links_per_concept),
                    _fmt(m.density), _fmt(m.avg_closeness), _fmt(e.complexity),
                    ";".join(flagged.get(e.period, []))])
    return buf.getvalue()


def format_report(series: MetricSeries, report: DisruptionReport | None = None,
                  fmt: str = "json") -> str:
    """Serialize a series (and its flags) as JSON or CSV.

    JSON keeps floats at full round-trip precision; CSV cells use six
    significant digits. Both are byte-deterministic.
    """
    if fmt == "json":
        return _dumps(report_to_dict(series, report))
    if fmt == "csv":
        return report_to_csv(series, report)
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(series: MetricSeries, report: DisruptionReport | None,
                 fmt: str, path) -> None:
    if not series.entries:
        raise ValueError("nothing to report")
    _write(path, format_report(series, report, fmt))


# plots

_W, _PANEL_H, _PAD_L, _PAD_R, _PAD_T, _GAP = 640, 180, 70, 70, 30, 40
_PANELS = (
    ("Concepts and links", [("n_concepts", "#000000"), ("n_links", "#1a9641")], "ratio"),
    ("Density", [("density", "#2c7bb6")], None),
    ("Average closeness", [("avg_closeness", "#d7191c")], None),
    ("Complexity", [("complexity", "#7b3294")], None),
)


def _scale(values):
    vals = [v for v in values if v is not None]
    lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)
    lo = min(lo, 0.0)
    if hi <= lo:
        hi = lo + 1.0
    return lo, hi


def _num(x: float) -> str:
    return f"{x:.6g}"


def render_plot_svg(series: MetricSeries) -> str:
    """Static SVG in the style of a metrics-over-time chart.

    Each metric gets a solid ``polyline`` of its values and a dotted one at
    its overall average; the links-per-concept ratio is drawn thick on the
    first panel with its own right-hand scale. Polylines carry
    ``data-metric`` and ``data-kind`` (series, average, ratio) attributes.
    Periods with a missing value split the line.
    """
    periods = series.periods
    panels = [p for p in _PANELS
              if any(v is not None for name, _ in p[1] for v in series.values(name))]
    n = len(periods)
    plot_w = _W - _PAD_L - _PAD_R
    height = _PAD_T + len(panels) * (_PANEL_H + _GAP) + 20

    def x_at(i):
        return _PAD_L + (plot_w * i / (n - 1) if n > 1 else plot_w / 2)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{height}" '
           f'viewBox="0 0 {_W} {height}" font-family="sans-serif" font-size="11">',
           f'<rect width="{_W}" height="{height}" fill="#ffffff"/>']

    def polyline(values, y, color, metric, kind, width=1.5, dash=None):
        runs, cur = [], []
        for i, v in enumerate(values):
            if v is None:
                if cur:
                    runs.append(cur)
                cur = []
            else:
                cur.append(f"{_num(x_at(i))},{_num(y(v))}")
        if cur:
            runs.append(cur)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        for run in runs:
            out.append(f'<polyline data-metric="{metric}" data-kind="{kind}" '
                       f'points="{" ".join(run)}" fill="none" stroke="{color}" '
                       f'stroke-width="{width}"{extra}/>')

    for k, (title, metrics, ratio) in enumerate(panels):
        top = _PAD_T + k * (_PANEL_H + _GAP)
        bottom = top + _PANEL_H
        lo, hi = _scale([v for name, _ in metrics for v in series.values(name)])

        def y(v, lo=lo, hi=hi, top=top):
            return top + _PANEL_H * (1 - (v - lo) / (hi - lo))

        out.append(f'<g data-panel="{k}">')
        out.append(f'<text x="{_PAD_L}" y="{top - 8}" font-weight="bold">{title}</text>')
        out.append(f'<rect x="{_PAD_L}" y="{top}" width="{plot_w}" height="{_PANEL_H}" '
                   f'fill="none" stroke="#999999"/>')
        out.append(f'<text x="{_PAD_L - 6}" y="{top + 4}" text-anchor="end">{_num(hi)}</text>')
        out.append(f'<text x="{_PAD_L - 6}" y="{bottom}" text-anchor="end">{_num(lo)}</text>')
        for i, p in enumerate(periods):
            out.append(f'<text x="{_num(x_at(i))}" y="{bottom + 14}" '
                       f'text-anchor="middle">{_xml(p)}</text>')
        for name, color in metrics:
            values = series.values(name)
            if all(v is None for v in values):
                continue
            polyline(values, y, color, name, "series")
            avg = series.averages.get(name)
            if avg is not None:
                polyline([avg] * n, y, color, name, "average", width=1, dash="2,3")
        if ratio:
            values = series.values(ratio)
            rlo, rhi = _scale(values)

            def ry(v, rlo=rlo, rhi=rhi, top=top):
                return top + _PANEL_H * (1 - (v - rlo) / (rhi - rlo))

            polyline(values, ry, "#000000", ratio, "ratio", width=3)
            out.append(f'<text x="{_W - _PAD_R + 6}" y="{top + 4}">{_num(rhi)}</text>')
            out.append(f'<text x="{_W - _PAD_R + 6}" y="{bottom}">{_num(rlo)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _xml(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def render_plot(series: MetricSeries, path) -> None:
    _write(path, render_plot_svg(series))
