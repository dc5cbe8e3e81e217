"""autocine: automatic cinematography for equirectangular 360° video.

Plans a sequence of virtual-camera shots from object tracks (saliency-scored
shot hypotheses with continuity rules) and renders the chosen viewport path
into ordinary 2D frames.
"""

from .planner import (
    EditList,
    PlannerConfig,
    Shot,
    ShotHypothesis,
    ShotType,
    edit_from_json,
    edit_to_json,
    plan_edit,
)
from .renderer import RenderSpec, render_contact_sheet, render_edit, render_viewport
from .saliency import ClassPriors, PreferenceMap, SaliencyWeights, TypeWeights, saliency
from .sphere import EquirectFrame, SphericalPoint, Viewport
from .tracks import (
    ObjectTrack,
    ShotObjectStats,
    TrackBox,
    TrackSet,
    compute_shot_stats,
    parse_tracks,
)

__version__ = "0.1.0"

__all__ = [
    "ClassPriors",
    "EditList",
    "EquirectFrame",
    "ObjectTrack",
    "PlannerConfig",
    "PreferenceMap",
    "RenderSpec",
    "SaliencyWeights",
    "Shot",
    "ShotHypothesis",
    "ShotObjectStats",
    "ShotType",
    "SphericalPoint",
    "TrackBox",
    "TrackSet",
    "TypeWeights",
    "Viewport",
    "compute_shot_stats",
    "edit_from_json",
    "edit_to_json",
    "parse_tracks",
    "plan_edit",
    "render_contact_sheet",
    "render_edit",
    "render_viewport",
    "saliency",
]
