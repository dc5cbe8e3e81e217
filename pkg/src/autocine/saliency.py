"""Object saliency: how interesting an object is for a given shot type.

Each shot type weights the object measures differently (a tracking shot
favors large, moving, isolated objects; a static shot favors groups and
novelty). The score is a convex combination of the normalized measures and
a class prior, scaled by the object's presence in the window. The
recommender type additionally re-weights by externally supplied user
preferences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .tracks import ShotObjectStats


class ShotType(Enum):
    """The supported shot types; declaration order is the tie-break priority."""

    TRACKING = "tracking"
    STATIC = "static"
    MEDIUM = "medium"
    PAN = "pan"
    RECOMMENDER = "recommender"


SHOT_TYPE_RANK = {t: i for i, t in enumerate(ShotType)}


@dataclass(frozen=True)
class TypeWeights:
    """Weights of the five saliency factors for one shot type; sum to 1."""

    w_class: float
    w_size: float
    w_motion: float
    w_nbhd: float
    w_novel: float

    def __post_init__(self) -> None:
        vals = (self.w_class, self.w_size, self.w_motion, self.w_nbhd, self.w_novel)
        if any(v < 0.0 for v in vals):
            raise ValueError(f"weights must be >= 0, got {vals}")
        if abs(sum(vals) - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(vals)}")


def _default_per_type() -> dict[ShotType, TypeWeights]:
    return {
        ShotType.TRACKING: TypeWeights(0.15, 0.25, 0.30, 0.20, 0.10),
        ShotType.STATIC: TypeWeights(0.25, 0.25, 0.10, 0.05, 0.35),
        ShotType.MEDIUM: TypeWeights(0.25, 0.30, 0.15, 0.20, 0.10),
        ShotType.PAN: TypeWeights(0.20, 0.20, 0.20, 0.10, 0.30),
        ShotType.RECOMMENDER: TypeWeights(0.15, 0.25, 0.30, 0.20, 0.10),
    }


@dataclass(frozen=True)
class SaliencyWeights:
    """Per-shot-type factor weights plus the size/motion normalization scales."""

    per_type: dict[ShotType, TypeWeights] = field(default_factory=_default_per_type)
    size_ref: float = 0.02    # solid-angle fraction at which size saturates
    motion_ref: float = 20.0  # deg/s at which motion saturates

    def __post_init__(self) -> None:
        if self.size_ref <= 0.0 or self.motion_ref <= 0.0:
            raise ValueError("size_ref and motion_ref must be > 0")
        missing = [t for t in ShotType if t not in self.per_type]
        if missing:
            raise ValueError(f"missing weights for shot types {missing}")


def _default_priors() -> dict[str, float]:
    return {"human": 1.0, "dog": 0.8, "cat": 0.8, "bicycle": 0.6, "car": 0.6}


@dataclass(frozen=True)
class ClassPriors:
    """Per-class interest prior in [0, 1]; unknown classes get default_prior."""

    priors: dict[str, float] = field(default_factory=_default_priors)
    default_prior: float = 0.4

    def __post_init__(self) -> None:
        for label, p in self.priors.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"prior for '{label}' {p} outside [0, 1]")
        if not 0.0 <= self.default_prior <= 1.0:
            raise ValueError(f"default prior {self.default_prior} outside [0, 1]")

    def get(self, class_label: str) -> float:
        return self.priors.get(class_label, self.default_prior)


@dataclass(frozen=True)
class PreferenceMap:
    """User preference per track id and/or class, in [0, 1]; id beats class."""

    by_track: dict[int, float] = field(default_factory=dict)
    by_class: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, p in list(self.by_track.items()) + list(self.by_class.items()):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"preference for {key!r} {p} outside [0, 1]")

    def lookup(self, track_id: int, class_label: str) -> float | None:
        if track_id in self.by_track:
            return self.by_track[track_id]
        return self.by_class.get(class_label)

    @staticmethod
    def from_json(data: bytes | str) -> "PreferenceMap":
        """Parse a preference file: {"by_track": {"<id>": num}, "by_class": {...}}."""
        doc = json.loads(data)
        if not isinstance(doc, dict):
            raise ValueError("preference file must be a JSON object")
        by_track = {int(k): float(v) for k, v in doc.get("by_track", {}).items()}
        by_class = {str(k): float(v) for k, v in doc.get("by_class", {}).items()}
        return PreferenceMap(by_track, by_class)


def saliency(
    stats: ShotObjectStats,
    class_label: str,
    shot_type: ShotType,
    weights: SaliencyWeights,
    priors: ClassPriors,
    prefs: PreferenceMap | None = None,
) -> float:
    """Scalar interest of one object for one shot type, in [0, 1].

    Size and motion saturate at size_ref / motion_ref, neighbourhood counts
    as-is and the complement of visited_score rewards novelty. The combined
    score is scaled by presence so briefly-seen objects cannot dominate.
    Recommender saliency is multiplied by (0.5 + 0.5*pref), with pref
    defaulting to 0.5 for objects the preference map does not mention.
    """
    if shot_type is ShotType.RECOMMENDER and prefs is None:
        raise ValueError("recommender saliency requires a PreferenceMap")
    w = weights.per_type[shot_type]
    s = (
        w.w_class * priors.get(class_label)
        + w.w_size * min(stats.avg_size / weights.size_ref, 1.0)
        + w.w_motion * min(stats.motion_mag / weights.motion_ref, 1.0)
        + w.w_nbhd * stats.nbhd_score
        + w.w_novel * (1.0 - stats.visited_score)
    )
    s *= stats.presence
    if shot_type is ShotType.RECOMMENDER:
        pref = prefs.lookup(stats.track_id, class_label)
        if pref is None:
            pref = 0.5
        s *= 0.5 + 0.5 * pref
    return min(1.0, max(0.0, s))
