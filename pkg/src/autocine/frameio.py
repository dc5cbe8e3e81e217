"""Image and frame-sequence I/O.

Frame sequences are directories of numbered images (frame_000000.png or
.ppm) or one raw interleaved RGB24 file with externally supplied dimensions.
All writes go through a temp file and an atomic rename so an interrupted run
never leaves partial outputs behind.
"""

from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .sphere import EquirectFrame

FRAME_PATTERN = "frame_%06d"
_FRAME_RE = re.compile(r"^frame_(\d{6})\.(png|ppm)$")


def write_ppm(img: np.ndarray, path: Path | str) -> None:
    path = Path(path)
    h, w = img.shape[:2]
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())
    os.replace(tmp, path)


def write_png(img: np.ndarray, path: Path | str) -> None:
    from PIL import Image

    path = Path(path)
    tmp = path.with_name(path.name + ".tmp.png")
    Image.fromarray(img).save(tmp, format="PNG")
    os.replace(tmp, path)


def write_image(img: np.ndarray, path: Path | str) -> None:
    """Write a PNG or binary PPM depending on the file extension."""
    suffix = Path(path).suffix.lower()
    if suffix == ".ppm":
        write_ppm(img, path)
    elif suffix == ".png":
        write_png(img, path)
    else:
        raise ValueError(f"unsupported image format '{suffix}' (use .png or .ppm)")


def read_image(path: Path | str) -> np.ndarray:
    from PIL import Image

    with Image.open(path) as im:
        return np.asarray(im.convert("RGB"))


class FrameDirSource:
    """Numbered image files in a directory, ordered by frame index."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        entries = []
        for name in os.listdir(self.directory):
            m = _FRAME_RE.match(name)
            if m:
                entries.append((int(m.group(1)), name))
        if not entries:
            raise FileNotFoundError(f"no frame_NNNNNN.png/.ppm files in {self.directory}")
        entries.sort()
        self._names = [n for _, n in entries]

    def __len__(self) -> int:
        return len(self._names)

    def __getitem__(self, i: int) -> EquirectFrame:
        return EquirectFrame(read_image(self.directory / self._names[i]))


class RawRgbSource:
    """A single raw RGB24 file holding n_frames interleaved frames."""

    def __init__(self, path: Path | str, width: int, height: int, n_frames: int):
        self.path = Path(path)
        self.width = width
        self.height = height
        self.n_frames = n_frames
        expected = width * height * 3 * n_frames
        actual = self.path.stat().st_size
        if actual != expected:
            raise ValueError(
                f"{self.path}: size {actual} does not match {width}x{height}x{n_frames} RGB24 ({expected})"
            )
        self._mm = np.memmap(self.path, dtype=np.uint8, mode="r").reshape(
            n_frames, height, width, 3
        )

    def __len__(self) -> int:
        return self.n_frames

    def __getitem__(self, i: int) -> EquirectFrame:
        return EquirectFrame(np.array(self._mm[i]))


def open_frame_source(path: Path | str, raw_dims: tuple[int, int, int] | None = None):
    """Open a directory of numbered frames, or a raw RGB24 file when
    raw_dims = (width, height, n_frames) is given."""
    path = Path(path)
    if path.is_dir():
        return FrameDirSource(path)
    if raw_dims is None:
        raise ValueError(f"{path} is not a directory; raw input needs explicit dimensions")
    return RawRgbSource(path, *raw_dims)


def write_frame_sequence(
    images: Iterable[np.ndarray], out_dir: Path | str, fmt: str = "png"
) -> Iterator[Path]:
    """Write numbered frames into out_dir, yielding each path as it lands."""
    if fmt not in ("png", "ppm"):
        raise ValueError(f"unsupported frame format '{fmt}'")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, img in enumerate(images):
        path = out_dir / f"{FRAME_PATTERN % i}.{fmt}"
        write_image(img, path)
        yield path


def write_bytes_atomic(data: bytes, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)
