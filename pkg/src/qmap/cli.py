"""``qmap`` command line.

Exit codes: 0 success, 1 map validation failure, 2 I/O or schema error
(also usage errors), 3 disruption flagged by ``qmap series``.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

from . import codec, synth
from .metrics import map_metrics
from .model import to_simplicial_family, validate_map
from .qengine import CONVENTIONS, all_levels, complexity, connected_parts, structure_vector
from .series import Baseline, MetricSeries, SeriesEntry, build_series, detect_disruption

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_DISRUPTION = 0, 1, 2, 3


class CliError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _fmt_c(c: float) -> str:
    return f"{c:.6g}"


def cmd_analyze(args) -> int:
    cmap = codec.load_map(args.map)
    problems = validate_map(cmap)
    if problems:
        for v in problems:
            print(f"{args.map}: {v}", file=sys.stderr)
        return EXIT_INVALID
    metrics = map_metrics(cmap, args.lmax, args.undirected)
    series = MetricSeries((SeriesEntry(cmap.period or cmap.map_id, metrics),))
    _emit(codec.format_report(series, None, args.format), args.out)
    return EXIT_OK


def cmd_complexity(args) -> int:
    frame = codec.load_frame(args.frame)
    family = to_simplicial_family(frame)
    conv = args.convention
    c = complexity(family, conv)
    sv = structure_vector(family, conv)
    lines = [f"C = {_fmt_c(c)}, s = {sv}", f"Q = {sv.Q if len(sv) else 'undefined'}"]
    if args.explain:
        parts = connected_parts(family)
        for k, part in enumerate(parts):
            names = ", ".join(part.names)
            if len(part) < 2:
                lines.append(f"part {k} [{names}]: isolated, contributes 0")
                continue
            psv = structure_vector(part, conv)
            lines.append(f"part {k} [{names}]: s = {psv}, "
                         f"C = {_fmt_c(complexity(part, conv))}")
            for level in all_levels(part, conv):
                classes = "; ".join("{" + ", ".join(cl) + "}" for cl in level.classes)
                lines.append(f"  q = {level.level}: {len(level)} class(es) {classes}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_series(args) -> int:
    manifest = codec.load_series(args.manifest)
    maps, frames = [], []
    for e in manifest.entries:
        cmap = codec.load_map(e.map_path)
        problems = validate_map(cmap)
        if problems:
            for v in problems:
                print(f"{e.map_path}: {v}", file=sys.stderr)
            return EXIT_INVALID
        maps.append(cmap)
        frames.append(codec.load_frame(e.frame_path) if e.frame_path else None)
    series = build_series(maps, frames, [e.period for e in manifest.entries],
                          args.lmax, args.undirected, args.convention)
    if len(series) < 2:
        raise CliError("disruption detection needs at least two periods")
    report = detect_disruption(series, args.threshold, Baseline.parse(args.baseline),
                               two_sided=args.two_sided)
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    _emit(codec.format_report(series, report, fmt), args.out)
    if args.plot:
        codec.render_plot(series, args.plot)
    for f in report.flags:
        print(f"disruption: {f.period} {f.metric} {f.direction} "
              f"{f.relative_drop:.1%} vs baseline {f.baseline:.6g}", file=sys.stderr)
    return EXIT_DISRUPTION if report.flags else EXIT_OK


def _random_target(text: str):
    kind, _, params = text.partition(":")
    vals = [p for p in params.split(",") if p]
    try:
        if kind == "frame" and len(vals) == 4:
            return "frame", (int(vals[0]), int(vals[1]), int(vals[2]), float(vals[3]))
        if kind == "map" and len(vals) == 2:
            return "map", (int(vals[0]), int(vals[1]))
    except ValueError:
        pass
    raise CliError(f"bad --random {text!r}; expected frame:A,C,K,P or map:N,L")


def cmd_gen(args) -> int:
    shock = synth.ShockSpec.parse(args.shock) if args.shock else None
    if args.preset:
        if shock:
            raise CliError("shocks apply to maps, not frames; "
                           "use --random map:N,L or --input with --shock")
        text = codec.dump_frame(synth.gen_preset(args.preset))
    elif args.random:
        kind, params = _random_target(args.random)
        if kind == "frame":
            if shock:
                raise CliError("shocks apply to maps, not frames")
            text = codec.dump_frame(synth.gen_random_frame(*params, seed=args.seed))
        else:
            cmap = synth.gen_random_map(*params, seed=args.seed)
            if shock:
                cmap = synth.inject_shock(cmap, shock, args.seed)
            text = codec.dump_map(cmap)
    else:
        if not shock:
            raise CliError("--input needs --shock")
        cmap = synth.inject_shock(codec.load_map(args.input), shock, args.seed)
        text = codec.dump_map(cmap)
    _emit(text, args.out)
    return EXIT_OK


def _unit_interval(text: str) -> float:
    x = float(text)
    if not 0 < x < 1:
        raise argparse.ArgumentTypeError("threshold must lie in (0, 1)")
    return x


def build_parser() -> argparse.ArgumentParser:
    env_conv = os.environ.get("QMAP_CONVENTION", "paper")
    p = argparse.ArgumentParser(prog="qmap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def metric_opts(sp):
        sp.add_argument("--lmax", choices=("paper", "directed"), default="paper",
                        help="density denominator: n(n-1)/2 (paper) or n(n-1)")
        sp.add_argument("--undirected", action="store_true",
                        help="ignore link direction for distances")

    a = sub.add_parser("analyze", help="metrics of one cognitive map")
    a.add_argument("map")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.add_argument("--out")
    metric_opts(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("complexity", help="Q-analysis of a decision frame")
    c.add_argument("frame")
    c.add_argument("--convention", choices=CONVENTIONS, default=env_conv)
    c.add_argument("--explain", action="store_true", help="list classes per level")
    c.add_argument("--out")
    c.set_defaults(func=cmd_complexity)

    s = sub.add_parser("series", help="metric series and disruption flags")
    s.add_argument("manifest")
    s.add_argument("--threshold", type=_unit_interval, default=0.30)
    s.add_argument("--baseline", default="prev", help="prev, trailing:K or overall")
    s.add_argument("--two-sided", action="store_true", help="flag rises as well as drops")
    s.add_argument("--plot", help="write an SVG chart here")
    s.add_argument("--out", help="report path (.csv or .json)")
    s.add_argument("--format", choices=("json", "csv"))
    s.add_argument("--convention", choices=CONVENTIONS, default=env_conv)
    metric_opts(s)
    s.set_defaults(func=cmd_series)

    g = sub.add_parser("gen", help="generate frames or maps")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="fig2a:N, fig2b or fig2c")
    src.add_argument("--random", help="frame:A,C,K,P or map:N,L")
    src.add_argument("--input", help="existing map to shock")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--shock", help="links=F,concepts=F,inject=LABEL:K (maps only)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "convention", "paper") not in CONVENTIONS:
        parser.error(f"QMAP_CONVENTION must be one of {CONVENTIONS}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            code = args.func(args)
        except (OSError, codec.SchemaError, CliError, ValueError) as exc:
            code = EXIT_IO
            message = f"qmap: error: {exc}"
        else:
            message = None
    for w in caught:
        print(f"qmap: warning: {w.message}", file=sys.stderr)
    if message:
        print(message, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
