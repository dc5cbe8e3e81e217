"""Synthetic equirectangular scenes with exact ground-truth tracks.

Actors are flat-shaded lat/long rectangles moving at constant angular
velocity over a smooth gradient background. The emitted track file is the
exact continuous-coordinate rectangle that was rasterized, so planner and
renderer behavior can be checked against known geometry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .sphere import HALF_PI, TWO_PI, EquirectFrame, SphericalPoint, sph_to_pix
from .tracks import ObjectTrack, TrackBox, TrackSet


@dataclass(frozen=True)
class SynthActor:
    class_label: str
    yaw_deg: float
    pitch_deg: float
    vyaw_dps: float = 0.0
    vpitch_dps: float = 0.0
    size_deg: float = 20.0          # angular box width
    height_deg: float | None = None  # angular box height, defaults to width
    color: tuple[int, int, int] = (200, 60, 60)

    def __post_init__(self) -> None:
        if not 0.0 < self.size_deg <= 360.0:
            raise ValueError("size_deg must be in (0, 360]")
        h = self.height_deg if self.height_deg is not None else self.size_deg
        if not 0.0 < h < 180.0:
            raise ValueError("height_deg must be in (0, 180)")

    @property
    def box_height_deg(self) -> float:
        return self.height_deg if self.height_deg is not None else self.size_deg


@dataclass(frozen=True)
class SynthSpec:
    duration_s: float = 10.0
    fps: float = 25.0
    width: int = 1024
    actors: tuple[SynthActor, ...] = ()

    def __post_init__(self) -> None:
        if self.duration_s <= 0 or self.fps <= 0:
            raise ValueError("duration_s and fps must be > 0")
        if self.width < 2 or self.width % 2:
            raise ValueError("width must be an even positive pixel count")

    @property
    def height(self) -> int:
        return self.width // 2

    @property
    def n_frames(self) -> int:
        return max(1, round(self.duration_s * self.fps))


def load_synth_spec(data: bytes | str) -> SynthSpec:
    """Parse a scene description file (JSON mirror of SynthSpec)."""
    doc = json.loads(data)
    actors = tuple(
        SynthActor(
            class_label=a.get("class", "object"),
            yaw_deg=float(a.get("yaw_deg", 0.0)),
            pitch_deg=float(a.get("pitch_deg", 0.0)),
            vyaw_dps=float(a.get("vyaw_dps", 0.0)),
            vpitch_dps=float(a.get("vpitch_dps", 0.0)),
            size_deg=float(a.get("size_deg", 20.0)),
            height_deg=float(a["height_deg"]) if "height_deg" in a else None,
            color=tuple(a.get("color", (200, 60, 60))),
        )
        for a in doc.get("actors", [])
    )
    return SynthSpec(
        duration_s=float(doc.get("duration_s", 10.0)),
        fps=float(doc.get("fps", 25.0)),
        width=int(doc.get("width", 1024)),
        actors=actors,
    )


def actor_box(actor: SynthActor, t: float, width: int, height: int) -> tuple[float, float, float, float]:
    """Continuous (x, y, w, h) equirect rectangle of an actor at time t.

    x is the left edge in [0, W); x + w exceeds W when the box wraps the yaw
    seam. The pitch extent is clamped so the box never crosses a pole.
    """
    half_w = 0.5 * math.radians(actor.size_deg)
    half_h = 0.5 * math.radians(actor.box_height_deg)
    cyaw = math.radians(actor.yaw_deg + actor.vyaw_dps * t)
    cpitch = math.radians(actor.pitch_deg + actor.vpitch_dps * t)
    cpitch = min(HALF_PI - half_h, max(-HALF_PI + half_h, cpitch))

    x_left, _ = sph_to_pix(SphericalPoint(cyaw - half_w, 0.0), width, height)
    _, y_top = sph_to_pix(SphericalPoint(0.0, cpitch + half_h), width, height)
    w_px = (2.0 * half_w) / TWO_PI * width
    h_px = (2.0 * half_h) / math.pi * height
    return x_left, y_top, w_px, h_px


def generate_tracks(spec: SynthSpec) -> TrackSet:
    """Exact ground-truth tracks for every actor, one box per frame."""
    w, h = spec.width, spec.height
    tracks = []
    for tid, actor in enumerate(spec.actors):
        boxes = []
        for f in range(spec.n_frames):
            x, y, bw, bh = actor_box(actor, f / spec.fps, w, h)
            boxes.append(TrackBox(f, x, y, bw, bh))
        tracks.append(ObjectTrack(tid, actor.class_label, tuple(boxes)))
    return TrackSet(spec.fps, w, h, spec.n_frames, tuple(tracks))


def _background(width: int, height: int) -> np.ndarray:
    """Smooth deterministic gradient: hue drifts with yaw, value with pitch."""
    x = np.arange(width, dtype=np.float64) / width
    y = np.arange(height, dtype=np.float64) / height
    shape = (height, width)
    r = np.broadcast_to(40.0 + 150.0 * x[None, :], shape)
    g = np.broadcast_to(40.0 + 150.0 * y[:, None], shape)
    b = 90.0 + 60.0 * np.sin(2.0 * math.pi * x)[None, :] + 40.0 * y[:, None]
    img = np.stack([r, g, b], axis=2)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def _draw_rect(img: np.ndarray, x: float, y: float, w: float, h: float, color) -> None:
    height, width = img.shape[:2]
    y0 = max(0, round(y))
    y1 = min(height, round(y + h))
    if y1 <= y0:
        return
    x0 = round(x)
    x1 = round(x + w)
    col = np.asarray(color, dtype=np.uint8)
    if x1 <= width:
        img[y0:y1, x0:x1] = col
    else:  # seam wrap: split into the right and left slices
        img[y0:y1, x0:width] = col
        img[y0:y1, 0 : x1 - width] = col


class SynthFrames:
    """Lazily rendered frame source for a synthetic scene."""

    def __init__(self, spec: SynthSpec):
        self.spec = spec
        self._bg = _background(spec.width, spec.height)

    def __len__(self) -> int:
        return self.spec.n_frames

    def __getitem__(self, f: int) -> EquirectFrame:
        if not 0 <= f < len(self):
            raise IndexError(f)
        img = self._bg.copy()
        t = f / self.spec.fps
        for actor in self.spec.actors:
            x, y, w, h = actor_box(actor, t, self.spec.width, self.spec.height)
            _draw_rect(img, x, y, w, h, actor.color)
        return EquirectFrame(img)


def demo_spec(duration_s: float = 10.0, fps: float = 25.0, width: int = 1024) -> SynthSpec:
    """A small default scene: two movers plus a static group off to the side."""
    return SynthSpec(
        duration_s=duration_s,
        fps=fps,
        width=width,
        actors=(
            SynthActor("human", -60.0, 0.0, vyaw_dps=18.0, size_deg=24.0, color=(220, 70, 60)),
            SynthActor("dog", 150.0, -12.0, vyaw_dps=-10.0, size_deg=16.0, color=(230, 180, 40)),
            SynthActor("human", 60.0, 6.0, size_deg=20.0, color=(70, 140, 220)),
            SynthActor("human", 82.0, -4.0, size_deg=20.0, color=(90, 200, 120)),
            SynthActor("bicycle", 100.0, 2.0, size_deg=18.0, color=(180, 90, 200)),
        ),
    )
