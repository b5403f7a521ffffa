"""Command-line interface.

Subcommands cover the whole flow: generate or check logs, condense to
bursts, build the operation graph, render stills or frame sequences,
segment, and export the JSON artifacts the viewer consumes. Input and
output default to stdin/stdout via "-"; exit code 0 on success, 1 on
validation errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .burst import condense
from .editlog import INSERT, EditLog, LogError, generate_random_log, \
    parse_log, replay_naive, serialize_log
from .graph import DaySessionRule, atomic_bursts, build, export_graph
from .layout import LayoutParams, compute_layout, export_layout
from .render import RenderOptions, render_frames, render_svg
from .segment import compute_stats, segment_by_branches, segments_to_json, \
    stats_table, stats_to_json

BURSTS_SCHEMA = "scriptgrove-bursts/1"

PALETTE_ENV = "SCRIPTGROVE_PALETTE"


def _read_log(path: str) -> EditLog:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_log(data)


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _write_json(path: str, obj: dict) -> None:
    _write_bytes(path, (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8"))


def _load_palette(args) -> tuple[str, ...] | None:
    path = args.palette_file or os.environ.get(PALETTE_ENV)
    if not path:
        return None
    colors = json.loads(Path(path).read_text("utf-8"))
    if not isinstance(colors, list) or not all(isinstance(c, str) for c in colors):
        raise ValueError(f"palette file {path} must hold a JSON array of color strings")
    return tuple(colors)


def _layout_params(args) -> LayoutParams:
    palette = _load_palette(args)
    kwargs = dict(
        unit_arc_len=args.unit, base_radius=args.base_radius,
        phototropism=args.kappa, dead_radius_ratio=args.dead_radius_ratio,
        dead_opacity=args.dead_opacity,
    )
    if palette is not None:
        kwargs["palette"] = palette
    return LayoutParams(**kwargs)


def _render_options(args) -> RenderOptions:
    return RenderOptions(
        width=args.width, height=args.height, background=args.background,
        margin=args.margin,
        frame_interval_ms=getattr(args, "frame_interval", 1000),
        include_labels=args.labels,
    )


def _bursts_and_graph(args, log: EditLog):
    bursts = atomic_bursts(log) if args.atomic else condense(log, idle_ms=args.idle_ms)
    g = build(bursts, log.created_at, session_rule=DaySessionRule(args.timezone),
              doc_id=log.doc_id)
    return bursts, g


def _add_input(p):
    p.add_argument("input", nargs="?", default="-",
                   help="edit log (JSONL), - for stdin")


def _add_output(p, what: str):
    p.add_argument("-o", "--output", default="-", help=f"{what}, - for stdout")


def _add_build_flags(p):
    p.add_argument("--idle-ms", type=int, default=None,
                   help="close a burst after this much idle time")
    p.add_argument("--atomic", action="store_true",
                   help="one graph operation per atomic edit (skip condensing)")
    p.add_argument("--timezone", default="UTC",
                   help="timezone for session (calendar day) grouping")


def _add_layout_flags(p):
    p.add_argument("--kappa", type=float, default=0.3,
                   help="phototropism: 0 radial growth, 1 straight up")
    p.add_argument("--unit", type=float, default=2.0, help="arc length per character, px")
    p.add_argument("--base-radius", type=float, default=12.0, help="starting glyph radius, px")
    p.add_argument("--dead-radius-ratio", type=float, default=0.8)
    p.add_argument("--dead-opacity", type=float, default=0.25)
    p.add_argument("--palette-file", default=None,
                   help=f"JSON array of 8 colors (default: ${PALETTE_ENV} or built-in)")


def _add_render_flags(p):
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--background", default="#ffffff")
    p.add_argument("--margin", type=float, default=20.0)
    p.add_argument("--labels", action="store_true", help="draw node ids")


def cmd_gen(args) -> int:
    log = generate_random_log(args.seed, args.ops, typo_rate=args.typo_rate,
                              doc_id=args.doc_id)
    _write_bytes(args.output, serialize_log(log).encode("utf-8"))
    return 0


def cmd_check(args) -> int:
    log = _read_log(args.input)
    final = replay_naive(log)
    print(f"{len(log.edits)} edits, final length {len(final)}")
    return 0


def _burst_record(b) -> dict:
    rec = {
        "kind": b.kind, "start_time": b.start_time, "end_time": b.end_time,
        "anchor_offset": b.anchor_offset, "atomic_count": b.atomic_count,
    }
    if b.kind == INSERT:
        rec["text"] = b.text
    else:
        rec["length"] = b.length
    return rec


def cmd_condense(args) -> int:
    log = _read_log(args.input)
    bursts = condense(log, idle_ms=args.idle_ms)
    _write_json(args.output, {
        "schema": BURSTS_SCHEMA,
        "doc_id": log.doc_id,
        "created_at": log.created_at,
        "bursts": [_burst_record(b) for b in bursts],
    })
    return 0


def cmd_build(args) -> int:
    log = _read_log(args.input)
    _, g = _bursts_and_graph(args, log)
    _write_json(args.output, export_graph(g))
    return 0


def cmd_render(args) -> int:
    log = _read_log(args.input)
    _, g = _bursts_and_graph(args, log)
    params = _layout_params(args)
    layouts = compute_layout(g, params=params)
    _write_bytes(args.output, render_svg(layouts, params, _render_options(args)))
    return 0


def cmd_frames(args) -> int:
    log = _read_log(args.input)
    _, g = _bursts_and_graph(args, log)
    params = _layout_params(args)
    frames = render_frames(g, params=params, options=_render_options(args))
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(frames):
        (outdir / f"{i:04d}.svg").write_bytes(frame)
    print(f"wrote {len(frames)} frames to {outdir}")
    return 0


def cmd_segment(args) -> int:
    log = _read_log(args.input)
    _, g = _bursts_and_graph(args, log)
    segments = segment_by_branches(g, depth=args.depth)
    _write_json(args.output, segments_to_json(g, segments, args.depth))
    return 0


def cmd_stats(args) -> int:
    log = _read_log(args.input)
    bursts, g = _bursts_and_graph(args, log)
    stats = compute_stats(log, bursts, g)
    if args.format == "table":
        _write_bytes(args.output, stats_table(stats, log.doc_id, args.description).encode("utf-8"))
    else:
        _write_json(args.output, stats_to_json(stats, log.doc_id, args.description))
    return 0


def cmd_export(args) -> int:
    log = _read_log(args.input)
    _, g = _bursts_and_graph(args, log)
    params = _layout_params(args)
    layouts = compute_layout(g, params=params)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, obj in (("graph.json", export_graph(g)),
                      ("layout.json", export_layout(g, layouts, params))):
        (outdir / name).write_bytes(
            (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8"))
    print(f"wrote graph.json and layout.json to {outdir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scriptgrove",
        description="Edit-log analysis and organic tree visualization of writing process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random edit log")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ops", type=int, default=200)
    p.add_argument("--typo-rate", type=float, default=0.0)
    p.add_argument("--doc-id", default=None)
    _add_output(p, "log file")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="validate a log and report its size")
    _add_input(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("condense", help="condense a log into keystroke bursts")
    _add_input(p)
    _add_output(p, "bursts JSON")
    p.add_argument("--idle-ms", type=int, default=None)
    p.set_defaults(func=cmd_condense)

    p = sub.add_parser("build", help="build the operation graph")
    _add_input(p)
    _add_output(p, "graph JSON")
    _add_build_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("render", help="render the tree to SVG")
    _add_input(p)
    _add_output(p, "SVG file")
    _add_build_flags(p)
    _add_layout_flags(p)
    _add_render_flags(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("frames", help="render a frame sequence")
    _add_input(p)
    p.add_argument("-o", "--outdir", required=True, help="output directory")
    p.add_argument("--frame-interval", type=int, default=1000,
                   help="milliseconds of document time per frame")
    _add_build_flags(p)
    _add_layout_flags(p)
    _add_render_flags(p)
    p.set_defaults(func=cmd_frames)

    p = sub.add_parser("segment", help="segment the final text by branches")
    _add_input(p)
    _add_output(p, "segments JSON")
    p.add_argument("--depth", type=int, default=1, help="branch cut level")
    _add_build_flags(p)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("stats", help="writing-process statistics")
    _add_input(p)
    _add_output(p, "report")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--description", default="", help="free-text label for the table")
    _add_build_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="write graph.json and layout.json for the viewer")
    _add_input(p)
    p.add_argument("-o", "--outdir", required=True, help="output directory")
    _add_build_flags(p)
    _add_layout_flags(p)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
