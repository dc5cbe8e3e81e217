"""Command-line interface: plan, render, synth, inspect.

Units at this boundary are degrees and seconds; everything internal is
radians. Configuration precedence is built-in defaults < config file
(flat ``key = value`` lines) < command-line flags. Exit codes: 0 success,
1 input/parse error, 2 processing error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import frameio, synth
from .planner import (
    PlannerConfig,
    ShotType,
    edit_from_json,
    edit_to_json,
    plan_edit,
    type_cap,
)
from .renderer import RenderSpec, render_contact_sheet, render_edit
from .saliency import ClassPriors, PreferenceMap, SaliencyWeights, TypeWeights
from .sphere import angular_distance
from .tracks import TrackParseError, TrackSet, parse_tracks

log = logging.getLogger("autocine")

_FOV_KEYS = {f"fov_{t.value}_deg": t for t in ShotType}
_PLANNER_FLOAT_KEYS = (
    "shot_len_s",
    "type_quota",
    "jump_cut_min_angle_deg",
    "jump_cut_fov_delta_deg",
    "jump_cut_penalty",
    "max_cam_speed_dps",
    "max_pan_speed_dps",
    "viewport_aspect",
    "cluster_angle_deg",
    "pan_min_sep_deg",
    "pan_max_sep_deg",
    "tracking_min_presence",
    "track_smooth_alpha",
    "nbhd_ref_deg",
)
_PLANNER_INT_KEYS = (
    "hyps_per_type",
    "max_consecutive_same_type",
    "rng_seed",
    "visited_history",
    "motion_gap_frames",
)


def parse_config_file(text: str) -> dict[str, str]:
    """Flat key = value lines; '#' starts a comment."""
    out: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {ln}: expected 'key = value', got {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip().strip('"')
    return out


def build_configs(
    file_cfg: dict[str, str], args: argparse.Namespace
) -> tuple[PlannerConfig, SaliencyWeights, ClassPriors]:
    """Merge defaults, config file and flags into the three config objects."""
    cfg = PlannerConfig()
    updates: dict = {}
    for key in _PLANNER_FLOAT_KEYS:
        if key in file_cfg:
            updates[key] = float(file_cfg[key])
    for key in _PLANNER_INT_KEYS:
        if key in file_cfg:
            updates[key] = int(file_cfg[key])
    fovs = dict(cfg.fov_deg)
    for key, stype in _FOV_KEYS.items():
        if key in file_cfg:
            fovs[stype] = float(file_cfg[key])

    flag_map = {
        "shot_len": "shot_len_s",
        "hyps_per_type": "hyps_per_type",
        "type_quota": "type_quota",
        "seed": "rng_seed",
    }
    for flag, key in flag_map.items():
        v = getattr(args, flag, None)
        if v is not None:
            updates[key] = v
    for t in (ShotType.TRACKING, ShotType.STATIC, ShotType.MEDIUM, ShotType.PAN):
        v = getattr(args, f"fov_{t.value}", None)
        if v is not None:
            fovs[t] = v
    updates["fov_deg"] = fovs
    cfg = replace(cfg, **updates)

    weights = SaliencyWeights()
    per_type = dict(weights.per_type)
    for t in ShotType:
        key = f"weights.{t.value}"
        if key in file_cfg:
            parts = [float(x) for x in file_cfg[key].split(",")]
            if len(parts) != 5:
                raise ValueError(f"{key}: expected 5 comma-separated weights")
            per_type[t] = TypeWeights(*parts)
    size_ref = float(file_cfg.get("size_ref", weights.size_ref))
    motion_ref = float(file_cfg.get("motion_ref", weights.motion_ref))
    weights = SaliencyWeights(per_type, size_ref, motion_ref)

    priors = ClassPriors()
    prior_map = dict(priors.priors)
    default_prior = priors.default_prior
    for key, val in file_cfg.items():
        if key.startswith("prior."):
            label = key[len("prior."):]
            if label == "default":
                default_prior = float(val)
            else:
                prior_map[label] = float(val)
    priors = ClassPriors(prior_map, default_prior)
    return cfg, weights, priors


def _load_tracks(path: str, fps_override: float | None) -> TrackSet:
    with open(path, "rb") as fh:
        ts = parse_tracks(fh.read())
    if fps_override is not None:
        ts = TrackSet(fps_override, ts.width, ts.height, ts.n_frames, ts.tracks)
    return ts


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        file_cfg = parse_config_file(Path(args.config).read_text()) if args.config else {}
        cfg, weights, priors = build_configs(file_cfg, args)
        ts = _load_tracks(args.tracks, args.fps)
        prefs = None
        if args.prefs:
            prefs = PreferenceMap.from_json(Path(args.prefs).read_bytes())
    except (OSError, ValueError, TrackParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        edit = plan_edit(ts, cfg, weights, priors, prefs)
        frameio.write_bytes_atomic(edit_to_json(edit), args.edl)
    except Exception as exc:
        print(f"planning error: {exc}", file=sys.stderr)
        return 2

    labels = {t.id: t.class_label for t in ts.tracks}
    print(f"{'shot':>4}  {'frames':>11}  {'type':<11} {'fov':>5}  {'score':>7}  focus")
    for i, shot in enumerate(edit.shots):
        classes = sorted({labels[t] for t in shot.chosen.focus_ids})
        print(
            f"{i:>4}  {shot.start_frame:>5}-{shot.end_frame:<5}  "
            f"{shot.chosen.shot_type.value:<11} {math.degrees(shot.chosen.hfov):>5.1f}  "
            f"{shot.chosen.score:>7.4f}  {','.join(classes) or '-'}"
        )
    log.info("wrote edit list to %s", args.edl)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    try:
        edit = edit_from_json(Path(args.edl).read_bytes())
        raw_dims = _parse_raw_size(args.raw_size) if args.raw_size else None
        frames = frameio.open_frame_source(args.frames, raw_dims)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    spec = RenderSpec(args.out_width, args.out_height)
    try:
        if len(frames) != edit.n_frames:
            raise ValueError(
                f"frame count mismatch: source has {len(frames)}, edit covers {edit.n_frames}"
            )
        out_dir = Path(args.out)
        n_done = 0
        for _ in frameio.write_frame_sequence(render_edit(frames, edit, spec), out_dir, args.format):
            n_done += 1
            if n_done % 50 == 0:
                log.info("rendered %d/%d frames", n_done, edit.n_frames)
        sheet = render_contact_sheet(frames, edit, spec)
        sheet_path = Path(args.sheet) if args.sheet else out_dir / f"contact_sheet.{args.format}"
        frameio.write_image(sheet, sheet_path)
    except Exception as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 2
    log.info("rendered %d frames into %s", edit.n_frames, args.out)
    return 0


def _parse_raw_size(text: str) -> tuple[int, int, int]:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise ValueError(f"--raw-size must be WxHxN, got {text!r}")
    return int(parts[0]), int(parts[1]), int(parts[2])


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        if args.spec:
            spec = synth.load_synth_spec(Path(args.spec).read_bytes())
        else:
            spec = synth.demo_spec()
        overrides = {}
        if args.duration is not None:
            overrides["duration_s"] = args.duration
        if args.fps is not None:
            overrides["fps"] = args.fps
        if args.width is not None:
            overrides["width"] = args.width
        if overrides:
            spec = replace(spec, **overrides)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        out_dir = Path(args.out)
        frames = synth.SynthFrames(spec)
        for i, _ in enumerate(
            frameio.write_frame_sequence((frames[f].pixels for f in range(len(frames))), out_dir, args.format)
        ):
            if (i + 1) % 100 == 0:
                log.info("synthesized %d/%d frames", i + 1, spec.n_frames)
        from .tracks import tracks_to_json

        tracks_path = Path(args.tracks_out) if args.tracks_out else out_dir / "tracks.json"
        frameio.write_bytes_atomic(tracks_to_json(synth.generate_tracks(spec)), tracks_path)
    except Exception as exc:
        print(f"synth error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {spec.n_frames} frames and tracks to {args.out}")
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    try:
        edit = edit_from_json(Path(args.edl).read_bytes())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    cfg_doc = edit.provenance.get("config", {})
    jc_angle = float(cfg_doc.get("jump_cut_min_angle_deg", 30.0))
    jc_fov = float(cfg_doc.get("jump_cut_fov_delta_deg", 20.0))
    quota = float(cfg_doc.get("type_quota", 0.4))
    max_run = int(cfg_doc.get("max_consecutive_same_type", 2))

    print(f"shots: {len(edit.shots)}, frames: {edit.n_frames}")
    hist: dict[str, int] = {}
    for shot in edit.shots:
        hist[shot.chosen.shot_type.value] = hist.get(shot.chosen.shot_type.value, 0) + 1
    print("type histogram:")
    for t in ShotType:
        if t.value in hist:
            print(f"  {t.value:<11} {hist[t.value]}")

    jc_violations = []
    for i in range(1, len(edit.shots)):
        prev, cur = edit.shots[i - 1], edit.shots[i]
        d = math.degrees(
            angular_distance(cur.chosen.keyframes[0], prev.chosen.keyframes[-1])
        )
        dfov = abs(math.degrees(cur.chosen.hfov) - math.degrees(prev.chosen.hfov))
        if d < jc_angle and dfov < jc_fov:
            jc_violations.append((i, d, dfov))

    cap = type_cap(quota, len(edit.shots))
    over_quota = [t for t, n in hist.items() if n > cap]
    run_len = 1
    max_seen = 1 if edit.shots else 0
    for i in range(1, len(edit.shots)):
        if edit.shots[i].chosen.shot_type == edit.shots[i - 1].chosen.shot_type:
            run_len += 1
        else:
            run_len = 1
        max_seen = max(max_seen, run_len)

    fallbacks = edit.provenance.get("fallback_events", [])
    forced = edit.provenance.get("forced_jump_cut_events", [])
    print(f"limiter fallbacks: {len(fallbacks)}, forced jump cuts: {len(forced)}")
    print(f"quota cap {cap}: {'OK' if not over_quota else 'EXCEEDED by ' + ','.join(over_quota)}")
    print(f"longest same-type run: {max_seen} (max {max_run})")
    if jc_violations:
        print(f"jump-cut audit: {len(jc_violations)} violation(s)")
        for i, d, dfov in jc_violations:
            print(f"  shot {i}: distance {d:.1f} deg, fov delta {dfov:.1f} deg")
    else:
        print("jump-cut audit: 0 violations")
    for i, shot in enumerate(edit.shots):
        start = shot.chosen.keyframes[0]
        end = shot.chosen.keyframes[-1]
        print(
            f"  shot {i}: {shot.chosen.shot_type.value:<11} frames {shot.start_frame}-{shot.end_frame} "
            f"fov {math.degrees(shot.chosen.hfov):.1f} score {shot.chosen.score:.4f} "
            f"path ({math.degrees(start.yaw):.1f},{math.degrees(start.pitch):.1f})->"
            f"({math.degrees(end.yaw):.1f},{math.degrees(end.pitch):.1f}) "
            f"focus {list(shot.chosen.focus_ids)}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autocine",
        description="Plan and render an automatically edited 2D video from a 360° video plus object tracks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="plan an edit list from a track file")
    p_plan.add_argument("--tracks", required=True, help="track file (JSON)")
    p_plan.add_argument("--prefs", help="preference file (JSON) enabling recommender shots")
    p_plan.add_argument("--edl", required=True, help="output edit-list path (JSON)")
    p_plan.add_argument("--config", help="key = value config file")
    p_plan.add_argument("--shot-len", type=float, help="shot length in seconds (default 3)")
    p_plan.add_argument("--fps", type=float, help="override the track file's fps")
    p_plan.add_argument("--fov-tracking", type=float, help="tracking-shot FOV in degrees (default 75)")
    p_plan.add_argument("--fov-static", type=float, help="static-shot FOV in degrees (default 115)")
    p_plan.add_argument("--fov-medium", type=float, help="medium-shot FOV in degrees (default 90)")
    p_plan.add_argument("--fov-pan", type=float, help="pan-shot FOV in degrees (default 90)")
    p_plan.add_argument("--hyps-per-type", type=int, help="hypotheses per shot type (2-4, default 3)")
    p_plan.add_argument("--type-quota", type=float, help="max fraction per shot type (default 0.4)")
    p_plan.add_argument("--seed", type=int, help="random seed recorded in provenance")
    p_plan.set_defaults(func=cmd_plan)

    p_render = sub.add_parser("render", help="render an edit list to 2D frames")
    p_render.add_argument("--frames", required=True, help="frame directory or raw RGB24 file")
    p_render.add_argument("--raw-size", help="WxHxN dimensions when --frames is a raw file")
    p_render.add_argument("--edl", required=True, help="edit-list file from 'plan'")
    p_render.add_argument("--out", required=True, help="output frame directory")
    p_render.add_argument("--sheet", help="contact sheet path (default <out>/contact_sheet.<fmt>)")
    p_render.add_argument("--out-width", type=int, default=1280)
    p_render.add_argument("--out-height", type=int, default=720)
    p_render.add_argument("--format", choices=("png", "ppm"), default="png")
    p_render.set_defaults(func=cmd_render)

    p_synth = sub.add_parser("synth", help="generate a synthetic scene with ground-truth tracks")
    p_synth.add_argument("--out", required=True, help="output directory")
    p_synth.add_argument("--spec", help="scene description file (JSON); default demo scene")
    p_synth.add_argument("--duration", type=float, help="scene length in seconds")
    p_synth.add_argument("--fps", type=float, help="frames per second")
    p_synth.add_argument("--width", type=int, help="equirect width in pixels (height = width/2)")
    p_synth.add_argument("--format", choices=("png", "ppm"), default="png")
    p_synth.add_argument("--tracks-out", help="track file path (default <out>/tracks.json)")
    p_synth.set_defaults(func=cmd_synth)

    p_inspect = sub.add_parser("inspect", help="report statistics and audits for an edit list")
    p_inspect.add_argument("--edl", required=True)
    p_inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("AUTOCINE_LOG", "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
