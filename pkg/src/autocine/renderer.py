"""Render perspective viewports out of equirectangular frames.

Inverse mapping: every output pixel is unprojected to a sphere direction,
mapped to continuous equirect coordinates and bilinearly sampled. Columns
wrap across the yaw seam; rows clamp at the poles.

The production path is vectorized and uses 12-bit fixed-point bilinear
weights, which stays within one intensity level of exact float64 sampling;
shots with a static center reuse the previous frame's sampling map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .planner import EditList
from .sphere import EquirectFrame, Viewport

_FIX_BITS = 12
_FIX_ONE = 1 << _FIX_BITS


@dataclass(frozen=True)
class RenderSpec:
    """Output raster geometry. Sampling is bilinear; out-of-FOV samples would
    be black but cannot occur for hfov < 180 degrees."""

    out_width: int = 1280
    out_height: int = 720

    def __post_init__(self) -> None:
        if self.out_width < 1 or self.out_height < 1:
            raise ValueError("output size must be positive")

    @property
    def aspect(self) -> float:
        return self.out_width / self.out_height


def _tangent_grids(hfov: float, aspect: float, w: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel tangent-plane offsets along the camera right/up axes."""
    vfov = 2.0 * math.atan(math.tan(0.5 * hfov) / aspect)
    u = (2.0 * (np.arange(w, dtype=np.float64) + 0.5) / w - 1.0) * math.tan(0.5 * hfov)
    v = (1.0 - 2.0 * (np.arange(h, dtype=np.float64) + 0.5) / h) * math.tan(0.5 * vfov)
    return np.broadcast_to(u, (h, w)), np.broadcast_to(v[:, None], (h, w))


class _SampleMap:
    """Flat gather indices and fixed-point weights for one viewport pose."""

    __slots__ = ("i00", "i01", "i10", "i11", "fx", "fy")

    def __init__(self, eq_w: int, eq_h: int, x: np.ndarray, y: np.ndarray):
        xs = np.mod(x - 0.5, eq_w)
        ys = np.clip(y - 0.5, 0.0, eq_h - 1.0)
        x0 = xs.astype(np.int32)
        y0 = ys.astype(np.int32)
        self.fx = np.rint((xs - x0) * _FIX_ONE).astype(np.uint32)[..., None]
        self.fy = np.rint((ys - y0) * _FIX_ONE).astype(np.uint32)[..., None]
        x1 = x0 + 1
        x1[x1 == eq_w] = 0  # yaw seam wrap
        y1 = np.minimum(y0 + 1, eq_h - 1)  # pole clamp
        self.i00 = (y0 * eq_w + x0).ravel()
        self.i01 = (y0 * eq_w + x1).ravel()
        self.i10 = (y1 * eq_w + x0).ravel()
        self.i11 = (y1 * eq_w + x1).ravel()

    def sample(self, pixels: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
        flat = pixels.reshape(-1, 3)
        p00 = flat.take(self.i00, axis=0).reshape(out_h, out_w, 3).astype(np.uint32)
        p01 = flat.take(self.i01, axis=0).reshape(out_h, out_w, 3).astype(np.uint32)
        p10 = flat.take(self.i10, axis=0).reshape(out_h, out_w, 3).astype(np.uint32)
        p11 = flat.take(self.i11, axis=0).reshape(out_h, out_w, 3).astype(np.uint32)
        top = p00 * (_FIX_ONE - self.fx) + p01 * self.fx
        bot = p10 * (_FIX_ONE - self.fx) + p11 * self.fx
        # max term is 255 << 24 ~ 4.28e9, just inside uint32
        val = (top * (_FIX_ONE - self.fy) + bot * self.fy + (1 << (2 * _FIX_BITS - 1))) >> (
            2 * _FIX_BITS
        )
        return val.astype(np.uint8)


def _build_map(
    eq_w: int, eq_h: int, v: Viewport, gx: np.ndarray, gy: np.ndarray
) -> _SampleMap:
    f, r, u_axis = v.basis()
    dx = f[0] + gx * r[0] + gy * u_axis[0]
    dy = f[1] + gx * r[1] + gy * u_axis[1]
    dz = f[2] + gx * r[2] + gy * u_axis[2]
    yaw = np.arctan2(dy, dx)
    pitch = np.arctan2(dz, np.hypot(dx, dy))
    x_img = (yaw + math.pi) * eq_w / (2.0 * math.pi)
    y_img = (0.5 * math.pi - pitch) * eq_h / math.pi
    return _SampleMap(eq_w, eq_h, x_img, y_img)


def render_viewport(frame: EquirectFrame, v: Viewport, spec: RenderSpec) -> np.ndarray:
    """Render one viewport; returns an (out_height, out_width, 3) uint8 image."""
    if abs(v.aspect - spec.aspect) > 1e-6:
        raise ValueError(
            f"viewport aspect {v.aspect:.6f} does not match output {spec.aspect:.6f}"
        )
    gx, gy = _tangent_grids(v.hfov, v.aspect, spec.out_width, spec.out_height)
    smap = _build_map(frame.width, frame.height, v, gx, gy)
    return smap.sample(frame.pixels, spec.out_height, spec.out_width)


def render_edit(
    frames: Sequence[EquirectFrame], edit: EditList, spec: RenderSpec
) -> Iterator[np.ndarray]:
    """Render every frame of an edit, in frame order.

    The frame source must expose len() and integer indexing. The frame count
    is checked against the edit before any output is produced.
    """
    if len(frames) != edit.n_frames:
        raise ValueError(
            f"frame source has {len(frames)} frames but edit covers {edit.n_frames}"
        )
    aspect = spec.aspect
    for shot in edit.shots:
        gx, gy = _tangent_grids(shot.chosen.hfov, aspect, spec.out_width, spec.out_height)
        prev_center = None
        smap = None
        for i, f in enumerate(range(shot.start_frame, shot.end_frame)):
            center = shot.chosen.keyframes[i]
            if smap is None or center != prev_center:
                vp = Viewport(center, shot.chosen.hfov, aspect)
                smap = _build_map(frames[f].width, frames[f].height, vp, gx, gy)
                prev_center = center
            yield smap.sample(frames[f].pixels, spec.out_height, spec.out_width)


def _thumb_indices(start: int, end: int, k: int) -> list[int]:
    """k frame indices spanning [start, end-1] inclusive (start, middle, end)."""
    n = end - start
    if k <= 1 or n == 1:
        return [start + (n - 1) // 2] * max(1, k)
    return [start + round(i * (n - 1) / (k - 1)) for i in range(k)]


def _resize(img: np.ndarray, w: int, h: int) -> np.ndarray:
    from PIL import Image

    return np.asarray(Image.fromarray(img).resize((w, h), Image.BILINEAR))


def render_contact_sheet(
    frames: Sequence[EquirectFrame],
    edit: EditList,
    spec: RenderSpec,
    thumbs_per_shot: int = 3,
) -> np.ndarray:
    """Preview grid: input thumbnails on top, one row of rendered thumbnails
    per shot below, each row sampled at the shot's start, middle and end."""
    cell_h = 120
    margin = 4
    rend_w = round(cell_h * spec.aspect)
    equi_w = 2 * cell_h
    cell_w = max(rend_w, equi_w)
    rows = 1 + len(edit.shots)
    cols = max(1, thumbs_per_shot)
    sheet = np.zeros(
        (rows * cell_h + (rows + 1) * margin, cols * cell_w + (cols + 1) * margin, 3),
        dtype=np.uint8,
    )

    def paste(row: int, col: int, thumb: np.ndarray) -> None:
        th, tw = thumb.shape[:2]
        y = margin + row * (cell_h + margin) + (cell_h - th) // 2
        x = margin + col * (cell_w + margin) + (cell_w - tw) // 2
        sheet[y : y + th, x : x + tw] = thumb

    n_total = len(frames)
    for col, f in enumerate(_thumb_indices(0, n_total, cols)):
        paste(0, col, _resize(frames[f].pixels, equi_w, cell_h))

    thumb_spec = RenderSpec(rend_w, cell_h)
    for row, shot in enumerate(edit.shots, start=1):
        for col, f in enumerate(_thumb_indices(shot.start_frame, shot.end_frame, cols)):
            vp = Viewport(
                shot.chosen.keyframes[f - shot.start_frame], shot.chosen.hfov, thumb_spec.aspect
            )
            paste(row, col, render_viewport(frames[f], vp, thumb_spec))
    return sheet
