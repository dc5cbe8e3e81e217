"""Greedy shot-by-shot planning of the virtual camera path.

The video is split into fixed-length shot windows. For every window the
planner computes object statistics, generates a handful of camera-path
hypotheses per shot type, scores each hypothesis by how much object saliency
it keeps inside the viewport (minus a jump-cut penalty against the previous
shot), and picks the best one subject to the shot-type occurrence limiter.
The chosen shot is appended to the history, which feeds the next window's
visited scores. There is no lookahead.

Shot types and their roles:

* tracking: follows one large, moving, isolated object (75° FOV).
* static: fixed wide framing of an object group (115° FOV).
* medium: fixed framing of a single subject (90° FOV).
* pan: constant-speed sweep between two object groups (90° FOV).
* recommender: tracking/static framing re-weighted by user preferences.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .saliency import (
    SHOT_TYPE_RANK,
    ClassPriors,
    PreferenceMap,
    SaliencyWeights,
    ShotType,
    saliency,
)
from .sphere import SphericalPoint, Viewport, angular_distance, gnomonic_project, slerp
from .tracks import ShotObjectStats, TrackSet, box_center, compute_shot_stats, tracks_to_json


def _default_fovs() -> dict[ShotType, float]:
    return {
        ShotType.TRACKING: 75.0,
        ShotType.STATIC: 115.0,
        ShotType.MEDIUM: 90.0,
        ShotType.PAN: 90.0,
        ShotType.RECOMMENDER: 75.0,
    }


@dataclass(frozen=True)
class PlannerConfig:
    """All planner knobs. Angles in degrees, times in seconds at this level."""

    shot_len_s: float = 3.0
    fov_deg: dict[ShotType, float] = field(default_factory=_default_fovs)
    hyps_per_type: int = 3
    type_quota: float = 0.4
    max_consecutive_same_type: int = 2
    jump_cut_min_angle_deg: float = 30.0
    jump_cut_fov_delta_deg: float = 20.0
    jump_cut_penalty: float = 0.5
    max_cam_speed_dps: float = 60.0
    max_pan_speed_dps: float = 30.0
    rng_seed: int = 0
    # framing / statistics plumbing
    viewport_aspect: float = 16.0 / 9.0
    cluster_angle_deg: float = 40.0
    pan_min_sep_deg: float = 40.0
    pan_max_sep_deg: float = 120.0
    tracking_min_presence: float = 0.8
    track_smooth_alpha: float = 0.3  # per-frame smoothing constant at 25 fps
    nbhd_ref_deg: float = 30.0
    visited_history: int = 3
    motion_gap_frames: int = 5

    def __post_init__(self) -> None:
        if self.shot_len_s <= 0:
            raise ValueError("shot_len_s must be > 0")
        if not 0.0 < self.type_quota <= 1.0:
            raise ValueError("type_quota must be in (0, 1]")
        for t in ShotType:
            if t not in self.fov_deg:
                raise ValueError(f"missing FOV for shot type {t}")
            if not 0.0 < self.fov_deg[t] < 180.0:
                raise ValueError(f"FOV for {t} must be in (0, 180) degrees")
        for name in (
            "max_consecutive_same_type",
            "jump_cut_min_angle_deg",
            "jump_cut_fov_delta_deg",
            "jump_cut_penalty",
            "max_cam_speed_dps",
            "max_pan_speed_dps",
            "viewport_aspect",
            "cluster_angle_deg",
            "nbhd_ref_deg",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if not 0.0 < self.track_smooth_alpha <= 1.0:
            raise ValueError("track_smooth_alpha must be in (0, 1]")
        if self.visited_history < 0 or self.motion_gap_frames < 0:
            raise ValueError("visited_history and motion_gap_frames must be >= 0")
        object.__setattr__(self, "hyps_per_type", min(4, max(2, self.hyps_per_type)))

    def hfov_rad(self, shot_type: ShotType) -> float:
        return math.radians(self.fov_deg[shot_type])

    def snapshot(self) -> dict:
        return {
            "shot_len_s": self.shot_len_s,
            "fov_deg": {t.value: self.fov_deg[t] for t in ShotType},
            "hyps_per_type": self.hyps_per_type,
            "type_quota": self.type_quota,
            "max_consecutive_same_type": self.max_consecutive_same_type,
            "jump_cut_min_angle_deg": self.jump_cut_min_angle_deg,
            "jump_cut_fov_delta_deg": self.jump_cut_fov_delta_deg,
            "jump_cut_penalty": self.jump_cut_penalty,
            "max_cam_speed_dps": self.max_cam_speed_dps,
            "max_pan_speed_dps": self.max_pan_speed_dps,
            "rng_seed": self.rng_seed,
            "viewport_aspect": self.viewport_aspect,
            "cluster_angle_deg": self.cluster_angle_deg,
            "pan_min_sep_deg": self.pan_min_sep_deg,
            "pan_max_sep_deg": self.pan_max_sep_deg,
            "tracking_min_presence": self.tracking_min_presence,
            "track_smooth_alpha": self.track_smooth_alpha,
            "nbhd_ref_deg": self.nbhd_ref_deg,
            "visited_history": self.visited_history,
            "motion_gap_frames": self.motion_gap_frames,
        }


@dataclass
class ShotHypothesis:
    """One candidate camera path for a shot window."""

    shot_type: ShotType
    keyframes: tuple[SphericalPoint, ...]  # one viewport center per frame
    hfov: float
    focus_ids: tuple[int, ...]
    score: float = 0.0
    jump_cut: bool = False  # violates the jump-cut rule against the previous shot
    gen_index: int = 0


@dataclass(frozen=True)
class Shot:
    """A chosen shot: frame window [start_frame, end_frame) plus its hypothesis."""

    start_frame: int
    end_frame: int
    chosen: ShotHypothesis

    def __post_init__(self) -> None:
        if self.end_frame <= self.start_frame:
            raise ValueError("shot window is empty")
        if len(self.chosen.keyframes) != self.end_frame - self.start_frame:
            raise ValueError(
                f"keyframe count {len(self.chosen.keyframes)} != window length "
                f"{self.end_frame - self.start_frame}"
            )


@dataclass(frozen=True)
class EditList:
    """The planner's output: shots tiling the frame range, plus provenance."""

    shots: tuple[Shot, ...]
    provenance: dict

    def __post_init__(self) -> None:
        expect = 0
        for s in self.shots:
            if s.start_frame != expect:
                raise ValueError(f"shots do not tile: expected start {expect}, got {s.start_frame}")
            expect = s.end_frame

    @property
    def n_frames(self) -> int:
        return self.shots[-1].end_frame if self.shots else 0


def type_cap(quota: float, k: int) -> int:
    """Max occurrences of one type among k shots: ceil(quota*k).

    quota is quantized to 1/1000 so the cap is exact integer arithmetic and
    independently reproducible.
    """
    qm = round(quota * 1000)
    return (qm * k + 999) // 1000


def shot_windows(n_frames: int, fps: float, shot_len_s: float) -> list[tuple[int, int]]:
    """Partition [0, n_frames) into shot windows; the last one takes the remainder."""
    if n_frames < 1:
        raise ValueError("video has no frames")
    length = max(1, round(shot_len_s * fps))
    return [(i, min(i + length, n_frames)) for i in range(0, n_frames, length)]


def _safe_slerp(a: SphericalPoint, b: SphericalPoint, t: float) -> SphericalPoint:
    if angular_distance(a, b) >= math.pi - 1e-6:
        return b if t >= 0.5 else a
    return slerp(a, b, t)


def _dense_center_path(
    boxes_by_frame: dict[int, SphericalPoint], window: tuple[int, int]
) -> list[SphericalPoint]:
    """Per-frame object center, slerped across gaps, held at the ends."""
    s, e = window
    present = sorted(boxes_by_frame)
    path: list[SphericalPoint] = []
    k = 0
    for f in range(s, e):
        while k + 1 < len(present) and present[k + 1] <= f:
            k += 1
        if f <= present[0]:
            path.append(boxes_by_frame[present[0]])
        elif f >= present[-1]:
            path.append(boxes_by_frame[present[-1]])
        else:
            f0, f1 = present[k], present[k + 1]
            t = (f - f0) / (f1 - f0)
            path.append(_safe_slerp(boxes_by_frame[f0], boxes_by_frame[f1], t))
    return path


def _smooth_and_clamp(
    path: Sequence[SphericalPoint], fps: float, cfg: PlannerConfig
) -> tuple[SphericalPoint, ...]:
    """Exponential smoothing followed by a hard per-frame speed clamp."""
    alpha = 1.0 - (1.0 - cfg.track_smooth_alpha) ** (25.0 / fps)
    smoothed = [path[0]]
    for p in path[1:]:
        smoothed.append(_safe_slerp(smoothed[-1], p, alpha))
    max_step = math.radians(cfg.max_cam_speed_dps) / fps
    out = [smoothed[0]]
    for p in smoothed[1:]:
        d = angular_distance(out[-1], p)
        out.append(p if d <= max_step else _safe_slerp(out[-1], p, max_step / d))
    return tuple(out)


def _focus_inside(
    stats: Sequence[ShotObjectStats], center: SphericalPoint, hfov: float, aspect: float
) -> tuple[int, ...]:
    vp = Viewport(center, hfov, aspect)
    ids = []
    for st in stats:
        uv = gnomonic_project(vp, st.mean_center)
        if uv is not None and abs(uv[0]) <= 1.0 and abs(uv[1]) <= 1.0:
            ids.append(st.track_id)
    return tuple(sorted(ids))


def _static_candidates(
    stats: Sequence[ShotObjectStats], sal: dict[int, float], cfg: PlannerConfig
) -> list[tuple[SphericalPoint, float]]:
    """Framing candidates: cluster centroids plus the saliency-weighted centroid.

    Returns (center, saliency mass) pairs, strongest first, deduplicated
    within 1 degree.
    """
    if not stats:
        return []
    thr = math.radians(cfg.cluster_angle_deg)
    n = len(stats)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if angular_distance(stats[i].mean_center, stats[j].mean_center) <= thr:
                parent[find(i)] = find(j)

    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)

    def centroid(members: list[int], weights: list[float]) -> SphericalPoint:
        total = sum(weights)
        if total <= 1e-12:
            weights = [1.0] * len(members)
            total = float(len(members))
        sx = sy = sz = 0.0
        for m, wgt in zip(members, weights):
            vx, vy, vz = stats[m].mean_center.unit_vector()
            sx += wgt * vx
            sy += wgt * vy
            sz += wgt * vz
        norm = math.sqrt(sx * sx + sy * sy + sz * sz)
        if norm < 1e-9:
            return stats[members[0]].mean_center
        return SphericalPoint.from_unit_vector(sx, sy, sz)

    ranked = sorted(
        clusters.values(),
        key=lambda ms: (-sum(sal[stats[m].track_id] for m in ms), min(stats[m].track_id for m in ms)),
    )
    cands = [
        (centroid(ms, [1.0] * len(ms)), sum(sal[stats[m].track_id] for m in ms)) for ms in ranked
    ]
    all_members = list(range(n))
    cands.append(
        (centroid(all_members, [sal[stats[m].track_id] for m in all_members]), sum(sal.values()))
    )

    dedup: list[tuple[SphericalPoint, float]] = []
    for c, wgt in cands:
        if all(angular_distance(c, d) > math.radians(1.0) for d, _ in dedup):
            dedup.append((c, wgt))
    return dedup


def _pan_path(
    a: SphericalPoint, b: SphericalPoint, n: int, fps: float, cfg: PlannerConfig
) -> tuple[SphericalPoint, ...]:
    """Constant-speed sweep a->b, dwelling at the endpoints when it ends early.

    The sweep speed is capped; if even a full-window sweep at the cap cannot
    reach b, the path moves toward b for the whole window and stops short.
    """
    if n == 1:
        return (a,)
    theta = angular_distance(a, b)
    if theta < 1e-12:
        return tuple([a] * n)
    max_pan = math.radians(min(cfg.max_pan_speed_dps, cfg.max_cam_speed_dps))
    window_s = (n - 1) / fps
    move_s = theta / max_pan
    path = []
    if move_s >= window_s:
        reach = (max_pan * window_s) / theta
        for f in range(n):
            path.append(_safe_slerp(a, b, reach * f / (n - 1)))
    else:
        dwell = 0.5 * (window_s - move_s)
        for f in range(n):
            u = min(1.0, max(0.0, (f / fps - dwell) / move_s))
            path.append(_safe_slerp(a, b, u))
    return tuple(path)


def generate_hypotheses(
    shot_type: ShotType,
    stats: Sequence[ShotObjectStats],
    ts: TrackSet,
    window: tuple[int, int],
    cfg: PlannerConfig,
    weights: SaliencyWeights,
    priors: ClassPriors,
    prefs: PreferenceMap | None = None,
) -> list[ShotHypothesis]:
    """Unscored camera-path candidates of one shot type for one window.

    Returns at most cfg.hyps_per_type hypotheses; an empty list when the
    type has no eligible target. Only static and pan fall back to a
    forward-facing fixed framing when the window holds no objects at all.
    """
    if shot_type is ShotType.RECOMMENDER and prefs is None:
        return []
    s, e = window
    n = e - s
    hfov = cfg.hfov_rad(shot_type)
    labels = {t.id: t.class_label for t in ts.tracks}
    sal = {
        st.track_id: saliency(st, labels[st.track_id], shot_type, weights, priors, prefs)
        for st in stats
    }
    limit = cfg.hyps_per_type

    def tracked_path(track_id: int) -> tuple[SphericalPoint, ...]:
        track = next(t for t in ts.tracks if t.id == track_id)
        centers = {
            b.frame: box_center(b, ts.width, ts.height) for b in track.boxes if s <= b.frame < e
        }
        return _smooth_and_clamp(_dense_center_path(centers, window), ts.fps, cfg)

    def moving_targets() -> list[ShotObjectStats]:
        elig = [
            st
            for st in stats
            if st.presence >= cfg.tracking_min_presence and st.motion_mag > 0.0
        ]
        elig.sort(key=lambda st: (-sal[st.track_id], st.track_id))
        return elig

    def static_hyps(as_type: ShotType) -> list[ShotHypothesis]:
        out = []
        for center, _ in _static_candidates(stats, sal, cfg):
            out.append(
                ShotHypothesis(
                    as_type,
                    tuple([center] * n),
                    cfg.hfov_rad(as_type),
                    _focus_inside(stats, center, cfg.hfov_rad(as_type), cfg.viewport_aspect),
                )
            )
        return out

    if shot_type is ShotType.TRACKING:
        return [
            ShotHypothesis(shot_type, tracked_path(st.track_id), hfov, (st.track_id,))
            for st in moving_targets()[:limit]
        ]

    if shot_type is ShotType.STATIC:
        if not stats:
            forward = SphericalPoint(0.0, 0.0)
            return [ShotHypothesis(shot_type, tuple([forward] * n), hfov, ())]
        return static_hyps(shot_type)[:limit]

    if shot_type is ShotType.MEDIUM:
        ranked = sorted(stats, key=lambda st: (-sal[st.track_id], st.track_id))
        return [
            ShotHypothesis(
                shot_type,
                tuple([st.mean_center] * n),
                hfov,
                (st.track_id,),
            )
            for st in ranked[:limit]
        ]

    if shot_type is ShotType.PAN:
        if not stats:
            forward = SphericalPoint(0.0, 0.0)
            return [ShotHypothesis(shot_type, tuple([forward] * n), hfov, ())]
        cands = _static_candidates(stats, sal, cfg)
        pairs = []
        for i in range(len(cands)):
            for j in range(i + 1, len(cands)):
                sep = angular_distance(cands[i][0], cands[j][0])
                if math.radians(cfg.pan_min_sep_deg) <= sep <= math.radians(cfg.pan_max_sep_deg):
                    pairs.append((-(cands[i][1] + cands[j][1]), i, j))
        pairs.sort()
        out = []
        for _, i, j in pairs[:limit]:
            path = _pan_path(cands[i][0], cands[j][0], n, ts.fps, cfg)
            focus = sorted(
                set(_focus_inside(stats, path[0], hfov, cfg.viewport_aspect))
                | set(_focus_inside(stats, path[-1], hfov, cfg.viewport_aspect))
            )
            out.append(ShotHypothesis(shot_type, path, hfov, tuple(focus)))
        return out

    # recommender: tracking-style then static-style framings under
    # preference-weighted saliency
    out = [
        ShotHypothesis(shot_type, tracked_path(st.track_id), hfov, (st.track_id,))
        for st in moving_targets()[:limit]
    ]
    out.extend(static_hyps(shot_type))
    return out[:limit]


def is_jump_cut(h: ShotHypothesis, prev_shot: Shot | None, cfg: PlannerConfig) -> bool:
    """True when cutting from prev_shot to h lands on nearly the same framing."""
    if prev_shot is None:
        return False
    d = angular_distance(h.keyframes[0], prev_shot.chosen.keyframes[-1])
    return d < math.radians(cfg.jump_cut_min_angle_deg) and abs(
        h.hfov - prev_shot.chosen.hfov
    ) < math.radians(cfg.jump_cut_fov_delta_deg)


def score_hypothesis(
    h: ShotHypothesis,
    stats: Sequence[ShotObjectStats],
    ts: TrackSet,
    window: tuple[int, int],
    prev_shot: Shot | None,
    cfg: PlannerConfig,
    weights: SaliencyWeights,
    priors: ClassPriors,
    prefs: PreferenceMap | None = None,
) -> float:
    """Mean covered saliency per frame, minus the jump-cut penalty, floored at 0.

    An object counts as covered in a frame when it has a box there and its
    center projects inside the hypothesis viewport.
    """
    s, e = window
    n = e - s
    labels = {t.id: t.class_label for t in ts.tracks}
    sal = {
        st.track_id: saliency(st, labels[st.track_id], h.shot_type, weights, priors, prefs)
        for st in stats
    }
    boxes = {
        st.track_id: {
            b.frame: b
            for b in next(t for t in ts.tracks if t.id == st.track_id).boxes
            if s <= b.frame < e
        }
        for st in stats
    }
    total = 0.0
    for i, f in enumerate(range(s, e)):
        vp = Viewport(h.keyframes[i], h.hfov, cfg.viewport_aspect)
        for st in stats:
            b = boxes[st.track_id].get(f)
            if b is None:
                continue
            uv = gnomonic_project(vp, box_center(b, ts.width, ts.height))
            if uv is not None and abs(uv[0]) <= 1.0 and abs(uv[1]) <= 1.0:
                total += sal[st.track_id]
    base = total / n
    if is_jump_cut(h, prev_shot, cfg):
        base -= cfg.jump_cut_penalty
    return max(0.0, base)


class SelectionResult(NamedTuple):
    chosen: ShotHypothesis
    fallback: bool          # the occurrence limiter left nothing to choose from
    forced_jump_cut: bool   # every candidate violated the jump-cut rule
    survivors: int          # pool size after the limiter filter


def select_shot(
    hypotheses: Sequence[ShotHypothesis],
    type_counts: dict[ShotType, int],
    consecutive_run: tuple[ShotType | None, int],
    cfg: PlannerConfig,
) -> SelectionResult:
    """Pick the best hypothesis subject to the occurrence limiter.

    Hypotheses whose type would exceed the quota cap or extend a same-type
    run past the maximum are excluded first (if that empties the pool, the
    limiter is ignored and the fallback recorded). Among the remaining,
    jump-cut violators are only eligible when nothing else is left. Ties on
    score break by shot-type declaration order, then generation index.
    """
    if not hypotheses:
        raise ValueError("no hypotheses to select from")
    shots_so_far = sum(type_counts.values())
    cap = type_cap(cfg.type_quota, shots_so_far + 1)
    last_type, run_len = consecutive_run
    survivors = [
        h
        for h in hypotheses
        if type_counts.get(h.shot_type, 0) + 1 <= cap
        and not (h.shot_type == last_type and run_len >= cfg.max_consecutive_same_type)
    ]
    fallback = not survivors
    pool = survivors if survivors else list(hypotheses)
    clean = [h for h in pool if not h.jump_cut]
    forced = not clean
    finalists = clean if clean else pool
    chosen = min(finalists, key=lambda h: (-h.score, SHOT_TYPE_RANK[h.shot_type], h.gen_index))
    return SelectionResult(chosen, fallback, forced and chosen.jump_cut, len(survivors))


def plan_edit(
    ts: TrackSet,
    cfg: PlannerConfig | None = None,
    weights: SaliencyWeights | None = None,
    priors: ClassPriors | None = None,
    prefs: PreferenceMap | None = None,
) -> EditList:
    """Plan the whole video, one shot window at a time.

    Deterministic for fixed inputs and config; the recommender type only
    participates when a preference map is supplied.
    """
    cfg = cfg or PlannerConfig()
    weights = weights or SaliencyWeights()
    priors = priors or ClassPriors()
    windows = shot_windows(ts.n_frames, ts.fps, cfg.shot_len_s)

    history: list[Shot] = []
    counts: dict[ShotType, int] = {}
    last_type: ShotType | None = None
    run_len = 0
    fallback_events: list[dict] = []
    forced_jump_cuts: list[dict] = []

    for idx, (s, e) in enumerate(windows):
        stats = compute_shot_stats(
            ts,
            s,
            e,
            history,
            d_ref_deg=cfg.nbhd_ref_deg,
            history_shots=cfg.visited_history,
            max_motion_gap=cfg.motion_gap_frames,
            aspect=cfg.viewport_aspect,
        )
        prev = history[-1] if history else None
        pool: list[ShotHypothesis] = []
        for t in ShotType:
            if t is ShotType.RECOMMENDER and prefs is None:
                continue
            pool.extend(generate_hypotheses(t, stats, ts, (s, e), cfg, weights, priors, prefs))
        for gi, h in enumerate(pool):
            h.gen_index = gi
            h.score = score_hypothesis(h, stats, ts, (s, e), prev, cfg, weights, priors, prefs)
            h.jump_cut = is_jump_cut(h, prev, cfg)
        result = select_shot(pool, counts, (last_type, run_len), cfg)
        if result.fallback:
            fallback_events.append({"shot": idx, "survivors": result.survivors})
        if result.forced_jump_cut:
            forced_jump_cuts.append({"shot": idx, "survivors": result.survivors})
        chosen = result.chosen
        history.append(Shot(s, e, chosen))
        counts[chosen.shot_type] = counts.get(chosen.shot_type, 0) + 1
        run_len = run_len + 1 if chosen.shot_type == last_type else 1
        last_type = chosen.shot_type

    provenance = {
        "config": cfg.snapshot(),
        "input_digest": hashlib.sha256(tracks_to_json(ts)).hexdigest(),
        "fps": ts.fps,
        "fallback_events": fallback_events,
        "forced_jump_cut_events": forced_jump_cuts,
    }
    return EditList(tuple(history), provenance)


def edit_to_json(edit: EditList) -> bytes:
    """Serialize an edit list to its JSON file format (degrees, 6 decimals)."""
    prov = {k: v for k, v in edit.provenance.items() if k != "config"}
    doc = {
        "config": edit.provenance.get("config", {}),
        "provenance": prov,
        "shots": [
            {
                "start": s.start_frame,
                "end": s.end_frame,
                "type": s.chosen.shot_type.value,
                "fov_deg": round(math.degrees(s.chosen.hfov), 6),
                "score": round(s.chosen.score, 6),
                "focus_ids": list(s.chosen.focus_ids),
                "path": [
                    {
                        "f": s.start_frame + i,
                        "yaw_deg": round(math.degrees(p.yaw), 6),
                        "pitch_deg": round(math.degrees(p.pitch), 6),
                    }
                    for i, p in enumerate(s.chosen.keyframes)
                ],
            }
            for s in edit.shots
        ],
    }
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def edit_from_json(data: bytes | str) -> EditList:
    """Load an edit list written by edit_to_json; validates tiling and paths."""
    doc = json.loads(data)
    if not isinstance(doc, dict) or "shots" not in doc:
        raise ValueError("edit list must be a JSON object with a 'shots' list")
    by_value = {t.value: t for t in ShotType}
    shots = []
    for i, sh in enumerate(doc["shots"]):
        try:
            stype = by_value[sh["type"]]
            start, end = int(sh["start"]), int(sh["end"])
            path = tuple(
                SphericalPoint(math.radians(p["yaw_deg"]), math.radians(p["pitch_deg"]))
                for p in sh["path"]
            )
            hyp = ShotHypothesis(
                stype,
                path,
                math.radians(float(sh["fov_deg"])),
                tuple(int(x) for x in sh.get("focus_ids", [])),
                score=float(sh.get("score", 0.0)),
            )
            shots.append(Shot(start, end, hyp))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"shots[{i}]: {exc}") from exc
    provenance = dict(doc.get("provenance", {}))
    provenance["config"] = doc.get("config", {})
    return EditList(tuple(shots), provenance)
