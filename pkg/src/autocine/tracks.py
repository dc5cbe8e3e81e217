"""Object tracks on the sphere and per-shot object statistics.

Tracks arrive as a JSON file of per-frame bounding boxes in equirect pixel
coordinates (see ``parse_tracks`` for the schema). Boxes may wrap the yaw
seam: x + w may exceed the frame width. From the boxes inside one shot
window this module computes, per object, its average spherical size, average
motion magnitude, neighbourhood score (isolation) and visited score
(visibility in recent shots), plus presence and mean center.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .sphere import (
    HALF_PI,
    TWO_PI,
    SphericalPoint,
    Viewport,
    angular_distance,
    gnomonic_project,
    pix_to_sph,
    rect_solid_angle_fraction,
)

if TYPE_CHECKING:
    from .planner import Shot


class TrackParseError(ValueError):
    """Track file violates the schema; the message names the offending path."""


@dataclass(frozen=True)
class TrackBox:
    """One detection: top-left corner and size in continuous equirect pixels."""

    frame: int
    x: float
    y: float
    w_px: float
    h_px: float


@dataclass(frozen=True)
class ObjectTrack:
    id: int
    class_label: str
    boxes: tuple[TrackBox, ...]

    def boxes_by_frame(self) -> dict[int, TrackBox]:
        return {b.frame: b for b in self.boxes}


@dataclass(frozen=True)
class TrackSet:
    fps: float
    width: int
    height: int
    n_frames: int
    tracks: tuple[ObjectTrack, ...]


@dataclass(frozen=True)
class ShotObjectStats:
    """The per-object measures driving saliency for one shot window."""

    track_id: int
    avg_size: float        # solid-angle fraction in [0, 1]
    motion_mag: float      # degrees/second, >= 0
    nbhd_score: float      # [0, 1], 1 = isolated
    visited_score: float   # [0, 1], 1 = fully visible in recent shots
    presence: float        # fraction of shot frames with a box
    mean_center: SphericalPoint

    def __post_init__(self) -> None:
        for name in ("avg_size", "nbhd_score", "visited_score", "presence"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")
        if self.motion_mag < 0.0:
            raise ValueError(f"motion_mag {self.motion_mag} negative")


def _require(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise TrackParseError(f"{path}: {msg}")


def _number(obj: dict, key: str, path: str) -> float:
    _require(key in obj, path, f"missing field '{key}'")
    v = obj[key]
    _require(isinstance(v, (int, float)) and not isinstance(v, bool), f"{path}.{key}", "must be a number")
    return float(v)


def _integer(obj: dict, key: str, path: str) -> int:
    _require(key in obj, path, f"missing field '{key}'")
    v = obj[key]
    _require(isinstance(v, int) and not isinstance(v, bool), f"{path}.{key}", "must be an integer")
    return v


def parse_tracks(data: bytes | str) -> TrackSet:
    """Parse and validate a track file.

    Schema (JSON, UTF-8)::

        {"fps": number, "width": int, "height": int, "n_frames": int,
         "tracks": [{"id": int, "class": str,
                     "boxes": [{"f": int, "x": number, "y": number,
                                "w": number, "h": number}, ...]}, ...]}

    Raises TrackParseError naming the offending JSON path on any violation.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise TrackParseError(f"(root): invalid JSON: {e}") from e
    _require(isinstance(doc, dict), "(root)", "must be a JSON object")

    fps = _number(doc, "fps", "(root)")
    _require(fps > 0, "fps", f"must be > 0, got {fps}")
    width = _integer(doc, "width", "(root)")
    height = _integer(doc, "height", "(root)")
    _require(width > 0 and height > 0, "width", "frame size must be positive")
    _require(width == 2 * height, "width", f"width {width} must equal 2*height ({2 * height})")
    n_frames = _integer(doc, "n_frames", "(root)")
    _require(n_frames >= 0, "n_frames", f"must be >= 0, got {n_frames}")

    _require("tracks" in doc, "(root)", "missing field 'tracks'")
    raw_tracks = doc["tracks"]
    _require(isinstance(raw_tracks, list), "tracks", "must be a list")

    tracks: list[ObjectTrack] = []
    seen_ids: set[int] = set()
    for i, rt in enumerate(raw_tracks):
        tpath = f"tracks[{i}]"
        _require(isinstance(rt, dict), tpath, "must be an object")
        tid = _integer(rt, "id", tpath)
        _require(tid not in seen_ids, f"{tpath}.id", f"duplicate track id {tid}")
        seen_ids.add(tid)
        _require("class" in rt, tpath, "missing field 'class'")
        label = rt["class"]
        _require(isinstance(label, str), f"{tpath}.class", "must be a string")
        _require("boxes" in rt, tpath, "missing field 'boxes'")
        raw_boxes = rt["boxes"]
        _require(isinstance(raw_boxes, list), f"{tpath}.boxes", "must be a list")

        boxes: list[TrackBox] = []
        prev_frame = -1
        for j, rb in enumerate(raw_boxes):
            bpath = f"{tpath}.boxes[{j}]"
            _require(isinstance(rb, dict), bpath, "must be an object")
            f = _integer(rb, "f", bpath)
            _require(f >= 0, f"{bpath}.f", f"frame {f} negative")
            _require(f < n_frames, f"{bpath}.f", f"frame {f} outside video range [0, {n_frames})")
            _require(
                f > prev_frame,
                f"{bpath}.f",
                f"frames must be strictly increasing, got {f} after {prev_frame}",
            )
            prev_frame = f
            x = _number(rb, "x", bpath)
            y = _number(rb, "y", bpath)
            w = _number(rb, "w", bpath)
            h = _number(rb, "h", bpath)
            _require(0.0 <= x < width, f"{bpath}.x", f"{x} outside [0, {width})")
            _require(0.0 < w <= width, f"{bpath}.w", f"{w} outside (0, {width}]")
            _require(y >= 0.0, f"{bpath}.y", f"{y} negative")
            _require(h > 0.0, f"{bpath}.h", f"{h} must be > 0")
            _require(y + h <= height, f"{bpath}.h", f"box bottom {y + h} exceeds height {height}")
            boxes.append(TrackBox(f, x, y, w, h))
        tracks.append(ObjectTrack(tid, label, tuple(boxes)))

    return TrackSet(fps, width, height, n_frames, tuple(tracks))


def tracks_to_json(ts: TrackSet) -> bytes:
    """Serialize a TrackSet back to the track-file schema."""
    doc = {
        "fps": ts.fps,
        "width": ts.width,
        "height": ts.height,
        "n_frames": ts.n_frames,
        "tracks": [
            {
                "id": t.id,
                "class": t.class_label,
                "boxes": [
                    {"f": b.frame, "x": b.x, "y": b.y, "w": b.w_px, "h": b.h_px}
                    for b in t.boxes
                ],
            }
            for t in ts.tracks
        ],
    }
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def box_center(b: TrackBox, w: int, h: int) -> SphericalPoint:
    """Spherical direction of the box center; x wraps across the yaw seam."""
    cx = (b.x + 0.5 * b.w_px) % w
    cy = b.y + 0.5 * b.h_px
    return pix_to_sph(cx, cy, w, h)


def box_size(b: TrackBox, w: int, h: int) -> float:
    """Solid-angle fraction of the box's lat/long extent on the sphere."""
    yaw_left = TWO_PI * b.x / w - math.pi
    span = TWO_PI * b.w_px / w
    pitch_top = HALF_PI - math.pi * b.y / h
    pitch_bot = HALF_PI - math.pi * (b.y + b.h_px) / h
    return rect_solid_angle_fraction(yaw_left, yaw_left + span, pitch_bot, pitch_top)


def _spherical_centroid(points: Sequence[SphericalPoint]) -> SphericalPoint:
    sx = sy = sz = 0.0
    for p in points:
        vx, vy, vz = p.unit_vector()
        sx += vx
        sy += vy
        sz += vz
    norm = math.sqrt(sx * sx + sy * sy + sz * sz)
    if norm < 1e-9:
        # antipodally balanced set: no meaningful mean, keep the first point
        return points[0]
    return SphericalPoint.from_unit_vector(sx, sy, sz)


def compute_shot_stats(
    ts: TrackSet,
    shot_start: int,
    shot_end: int,
    history: Sequence["Shot"],
    *,
    d_ref_deg: float = 30.0,
    history_shots: int = 3,
    max_motion_gap: int = 5,
    aspect: float = 16.0 / 9.0,
) -> list[ShotObjectStats]:
    """Compute the per-object measures for one shot window [shot_start, shot_end).

    motion_mag averages the center's angular speed over consecutive present
    frames, skipping occlusion gaps longer than max_motion_gap frames.
    nbhd_score is the mean nearest-neighbour distance over frames shared with
    other objects, normalized by d_ref_deg and clamped; an object alone in
    every frame scores 1. visited_score is the fraction of the object's
    present frames within the last history_shots shots whose center fell
    inside that shot's viewport; it is 0 with empty history.
    """
    if not 0 <= shot_start < shot_end <= ts.n_frames:
        raise ValueError(f"shot window [{shot_start}, {shot_end}) outside video [0, {ts.n_frames})")

    w, h = ts.width, ts.height
    d_ref = math.radians(d_ref_deg)

    in_window: dict[int, list[TrackBox]] = {}
    centers: dict[tuple[int, int], SphericalPoint] = {}
    for t in ts.tracks:
        sel = [b for b in t.boxes if shot_start <= b.frame < shot_end]
        if sel:
            in_window[t.id] = sel
            for b in sel:
                centers[(t.id, b.frame)] = box_center(b, w, h)

    # frame -> ids present, for nearest-neighbour lookups
    frame_ids: dict[int, list[int]] = {}
    for (tid, f) in centers:
        frame_ids.setdefault(f, []).append(tid)

    recent = list(history[-history_shots:]) if history_shots > 0 else []
    by_frame_all = {t.id: t.boxes_by_frame() for t in ts.tracks}

    out: list[ShotObjectStats] = []
    for tid in sorted(in_window):
        boxes = in_window[tid]
        n_present = len(boxes)
        pts = [centers[(tid, b.frame)] for b in boxes]

        avg_size = sum(box_size(b, w, h) for b in boxes) / n_present

        speeds = []
        for b0, b1 in zip(boxes, boxes[1:]):
            gap = b1.frame - b0.frame
            if gap > max_motion_gap:
                continue
            dist = angular_distance(centers[(tid, b0.frame)], centers[(tid, b1.frame)])
            speeds.append(dist / gap)
        motion_mag = math.degrees(sum(speeds) / len(speeds) * ts.fps) if speeds else 0.0

        nn_dists = []
        for b in boxes:
            others = [o for o in frame_ids[b.frame] if o != tid]
            if others:
                c = centers[(tid, b.frame)]
                nn_dists.append(min(angular_distance(c, centers[(o, b.frame)]) for o in others))
        if nn_dists:
            nbhd_score = min(1.0, max(0.0, (sum(nn_dists) / len(nn_dists)) / d_ref))
        else:
            nbhd_score = 1.0

        samples = inside = 0
        track_frames = by_frame_all[tid]
        for shot in recent:
            hyp = shot.chosen
            for f in range(shot.start_frame, shot.end_frame):
                b = track_frames.get(f)
                if b is None:
                    continue
                samples += 1
                vp = Viewport(hyp.keyframes[f - shot.start_frame], hyp.hfov, aspect)
                uv = gnomonic_project(vp, box_center(b, w, h))
                if uv is not None and abs(uv[0]) <= 1.0 and abs(uv[1]) <= 1.0:
                    inside += 1
        visited_score = inside / samples if samples else 0.0

        out.append(
            ShotObjectStats(
                track_id=tid,
                avg_size=min(1.0, avg_size),
                motion_mag=motion_mag,
                nbhd_score=nbhd_score,
                visited_score=visited_score,
                presence=n_present / (shot_end - shot_start),
                mean_center=_spherical_centroid(pts),
            )
        )
    return out
