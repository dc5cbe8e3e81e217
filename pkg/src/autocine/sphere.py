"""Spherical geometry for equirectangular 360° video.

Conventions used throughout the package:

* yaw: longitude in radians, normalized to [-pi, pi). yaw 0 is the center
  column of the equirectangular frame and increases rightward.
* pitch: latitude in radians in [-pi/2, pi/2], +pi/2 at the top row.
* 3D unit vectors: x toward (yaw 0, pitch 0), y toward (yaw pi/2, pitch 0),
  z toward the north pole. All projection math goes through unit vectors so
  there is no pole singularity.
* Continuous pixel coordinates: pixel i covers [i, i+1) with its center
  at i + 0.5.
* Camera roll is fixed to 0 (level horizon).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def _wrap_yaw(yaw: float) -> float:
    """Normalize an angle into [-pi, pi)."""
    y = (yaw + math.pi) % TWO_PI - math.pi
    # % can return TWO_PI - eps for tiny negative inputs, mapping to +pi
    return -math.pi if y >= math.pi else y


@dataclass(frozen=True)
class SphericalPoint:
    """A direction on the unit sphere (yaw, pitch in radians)."""

    yaw: float
    pitch: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.yaw) or not math.isfinite(self.pitch):
            raise ValueError(f"non-finite angles ({self.yaw}, {self.pitch})")
        if not -HALF_PI <= self.pitch <= HALF_PI:
            raise ValueError(f"pitch {self.pitch} outside [-pi/2, pi/2]")
        object.__setattr__(self, "yaw", _wrap_yaw(self.yaw))

    @staticmethod
    def from_unit_vector(x: float, y: float, z: float) -> "SphericalPoint":
        h = math.hypot(x, y)
        if h == 0.0 and z == 0.0:
            raise ValueError("zero vector has no direction")
        return SphericalPoint(math.atan2(y, x), math.atan2(z, h))

    def unit_vector(self) -> tuple[float, float, float]:
        cp = math.cos(self.pitch)
        return (cp * math.cos(self.yaw), cp * math.sin(self.yaw), math.sin(self.pitch))


@dataclass(frozen=True)
class Viewport:
    """A virtual perspective camera: center direction, horizontal FOV, aspect.

    The vertical FOV is derived from hfov and the width/height aspect; roll
    is always 0.
    """

    center: SphericalPoint
    hfov: float
    aspect: float

    def __post_init__(self) -> None:
        if not 0.0 < self.hfov < math.pi:
            raise ValueError(f"hfov {self.hfov} outside (0, pi)")
        if not self.aspect > 0.0:
            raise ValueError(f"aspect {self.aspect} must be > 0")

    @property
    def vfov(self) -> float:
        return 2.0 * math.atan(math.tan(0.5 * self.hfov) / self.aspect)

    def basis(self) -> tuple[tuple[float, float, float], ...]:
        """Orthonormal (forward, right, up) camera frame with zero roll.

        right is the horizontal limit of z-hat x forward, which stays defined
        when the center sits on a pole.
        """
        f = self.center.unit_vector()
        r = (-math.sin(self.center.yaw), math.cos(self.center.yaw), 0.0)
        u = (
            f[1] * r[2] - f[2] * r[1],
            f[2] * r[0] - f[0] * r[2],
            f[0] * r[1] - f[1] * r[0],
        )
        return f, r, u


@dataclass(frozen=True, eq=False)
class EquirectFrame:
    """One equirectangular RGB frame: uint8 pixels of shape (height, width, 3)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError("pixels must be an (H, W, 3) array")
        h, w = self.pixels.shape[:2]
        if w != 2 * h:
            raise ValueError(f"equirect frame must be 2:1, got {w}x{h}")
        if self.pixels.dtype != np.uint8:
            raise ValueError("pixels must be uint8")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def pix_to_sph(x: float, y: float, w: int, h: int) -> SphericalPoint:
    """Map a continuous equirect pixel coordinate to a sphere direction."""
    if w != 2 * h:
        raise ValueError(f"equirect frame must be 2:1, got {w}x{h}")
    if not (0.0 <= x < w) or not (0.0 <= y < h):
        raise ValueError(f"pixel ({x}, {y}) outside [0,{w}) x [0,{h})")
    return SphericalPoint(TWO_PI * x / w - math.pi, HALF_PI - math.pi * y / h)


def sph_to_pix(p: SphericalPoint, w: int, h: int) -> tuple[float, float]:
    """Map a sphere direction to continuous equirect pixel coordinates."""
    x = (p.yaw + math.pi) * w / TWO_PI
    y = (HALF_PI - p.pitch) * h / math.pi
    return x, y


def angular_distance(a: SphericalPoint, b: SphericalPoint) -> float:
    """Great-circle distance in radians, in [0, pi]."""
    va = a.unit_vector()
    vb = b.unit_vector()
    cx = va[1] * vb[2] - va[2] * vb[1]
    cy = va[2] * vb[0] - va[0] * vb[2]
    cz = va[0] * vb[1] - va[1] * vb[0]
    cross = math.sqrt(cx * cx + cy * cy + cz * cz)
    dot = va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2]
    return math.atan2(cross, dot)


def slerp(a: SphericalPoint, b: SphericalPoint, t: float) -> SphericalPoint:
    """Point at parameter t on the minor great-circle arc from a to b.

    Constant angular speed in t; t=0 gives a, t=1 gives b. Antipodal
    endpoints have no unique arc and are rejected.
    """
    omega = angular_distance(a, b)
    if omega >= math.pi - 1e-6:
        raise ValueError("slerp endpoints are (nearly) antipodal")
    if omega < 1e-12:
        return a
    va = a.unit_vector()
    vb = b.unit_vector()
    sin_omega = math.sin(omega)
    wa = math.sin((1.0 - t) * omega) / sin_omega
    wb = math.sin(t * omega) / sin_omega
    return SphericalPoint.from_unit_vector(
        wa * va[0] + wb * vb[0],
        wa * va[1] + wb * vb[1],
        wa * va[2] + wb * vb[2],
    )


#: Sentinel returned by gnomonic_project for points in the rear hemisphere.
BEHIND = None


def gnomonic_project(v: Viewport, p: SphericalPoint) -> tuple[float, float] | None:
    """Rectilinear projection of p onto the viewport's tangent plane.

    Returns normalized coordinates (u, v_img) where |u| <= 1 iff p lies
    within the horizontal FOV and |v_img| <= 1 iff within the vertical FOV;
    +u is rightward (increasing yaw at the center), +v_img is upward.
    Returns None (``BEHIND``) for points 90° or more from the center.
    """
    f, r, u_axis = v.basis()
    vp = p.unit_vector()
    d = vp[0] * f[0] + vp[1] * f[1] + vp[2] * f[2]
    if d <= 0.0:
        return BEHIND
    x = (vp[0] * r[0] + vp[1] * r[1] + vp[2] * r[2]) / d
    y = (vp[0] * u_axis[0] + vp[1] * u_axis[1] + vp[2] * u_axis[2]) / d
    return x / math.tan(0.5 * v.hfov), y / math.tan(0.5 * v.vfov)


def gnomonic_unproject(v: Viewport, u: float, v_img: float) -> SphericalPoint:
    """Inverse of gnomonic_project for points in the front hemisphere."""
    f, r, u_axis = v.basis()
    tx = u * math.tan(0.5 * v.hfov)
    ty = v_img * math.tan(0.5 * v.vfov)
    return SphericalPoint.from_unit_vector(
        f[0] + tx * r[0] + ty * u_axis[0],
        f[1] + tx * r[1] + ty * u_axis[1],
        f[2] + tx * r[2] + ty * u_axis[2],
    )


def rect_solid_angle_fraction(
    yaw1: float, yaw2: float, pitch1: float, pitch2: float
) -> float:
    """Fraction of the sphere covered by a lat/long rectangle.

    The yaw interval runs eastward from yaw1 to yaw2 and may cross the
    ±pi seam; a zero yaw difference means the full circle. Returns 0 for a
    zero-height rectangle.
    """
    if not (-HALF_PI <= pitch1 <= HALF_PI and -HALF_PI <= pitch2 <= HALF_PI):
        raise ValueError(f"pitch bounds ({pitch1}, {pitch2}) outside [-pi/2, pi/2]")
    if pitch1 > pitch2:
        raise ValueError(f"pitch1 {pitch1} must not exceed pitch2 {pitch2}")
    if pitch1 == pitch2:
        return 0.0
    span = (yaw2 - yaw1) % TWO_PI
    if span == 0.0:
        span = TWO_PI
    omega = span * (math.sin(pitch2) - math.sin(pitch1))
    return omega / (4.0 * math.pi)
