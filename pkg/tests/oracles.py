"""Independent brute-force reference implementations used by the test suite.

Everything here is deliberately written from the definitions with plain
Python loops and its own trigonometry (haversine distances, explicit
rotation matrices), so agreement with the production code is a meaningful
cross-check rather than a tautology.
"""

from __future__ import annotations

import math


def wrap_angle(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def pix_angles(x: float, y: float, w: int, h: int) -> tuple[float, float]:
    return 2.0 * math.pi * x / w - math.pi, 0.5 * math.pi - math.pi * y / h


def box_center_angles(box, w: int, h: int) -> tuple[float, float]:
    cx = (box.x + 0.5 * box.w_px) % w
    cy = box.y + 0.5 * box.h_px
    return pix_angles(cx, cy, w, h)


def haversine(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Great-circle distance from (yaw, pitch) pairs, by the haversine formula."""
    (y1, p1), (y2, p2) = a, b
    s = math.sin(0.5 * (p2 - p1)) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(
        0.5 * (y2 - y1)
    ) ** 2
    return 2.0 * math.asin(min(1.0, math.sqrt(s)))


def box_solid_fraction(box, w: int, h: int) -> float:
    """Closed-form integral of cos(pitch) over the box's lat/long extent."""
    span = 2.0 * math.pi * box.w_px / w
    top = 0.5 * math.pi - math.pi * box.y / h
    bottom = 0.5 * math.pi - math.pi * (box.y + box.h_px) / h
    return span * (math.sin(top) - math.sin(bottom)) / (4.0 * math.pi)


def inside_viewport(
    cam: tuple[float, float], hfov: float, aspect: float, p: tuple[float, float]
) -> bool:
    """Frustum test built from explicit rotation matrices."""
    cy, cp = cam
    py, pp = p
    v = (math.cos(pp) * math.cos(py), math.cos(pp) * math.sin(py), math.sin(pp))
    # undo camera yaw about z
    q1 = (
        v[0] * math.cos(cy) + v[1] * math.sin(cy),
        -v[0] * math.sin(cy) + v[1] * math.cos(cy),
        v[2],
    )
    # undo camera pitch about y (camera forward ends up on +x)
    q2 = (
        q1[0] * math.cos(cp) + q1[2] * math.sin(cp),
        q1[1],
        -q1[0] * math.sin(cp) + q1[2] * math.cos(cp),
    )
    if q2[0] <= 0.0:
        return False
    vfov = 2.0 * math.atan(math.tan(0.5 * hfov) / aspect)
    return abs(q2[1] / q2[0]) <= math.tan(0.5 * hfov) and abs(q2[2] / q2[0]) <= math.tan(
        0.5 * vfov
    )


def shot_stats_reference(
    ts,
    shot_start: int,
    shot_end: int,
    history,
    d_ref_deg: float = 30.0,
    history_shots: int = 3,
    max_motion_gap: int = 5,
    aspect: float = 16.0 / 9.0,
) -> dict[int, dict[str, float]]:
    """Direct-summation version of the per-object shot statistics.

    Returns {track_id: {avg_size, motion_mag, nbhd_score, visited_score,
    presence, mean_yaw, mean_pitch}} for tracks present in the window.
    """
    w, h = ts.width, ts.height
    out: dict[int, dict[str, float]] = {}
    window = range(shot_start, shot_end)

    for track in ts.tracks:
        boxes = [b for b in track.boxes if shot_start <= b.frame < shot_end]
        if not boxes:
            continue

        sizes = [box_solid_fraction(b, w, h) for b in boxes]
        avg_size = sum(sizes) / len(sizes)

        speeds = []
        for k in range(len(boxes) - 1):
            gap = boxes[k + 1].frame - boxes[k].frame
            if gap > max_motion_gap:
                continue
            d = haversine(box_center_angles(boxes[k], w, h), box_center_angles(boxes[k + 1], w, h))
            speeds.append(d / gap)
        motion = math.degrees(sum(speeds) / len(speeds) * ts.fps) if speeds else 0.0

        nn = []
        for b in boxes:
            me = box_center_angles(b, w, h)
            best = None
            for other in ts.tracks:
                if other.id == track.id:
                    continue
                ob = next((x for x in other.boxes if x.frame == b.frame), None)
                if ob is None:
                    continue
                d = haversine(me, box_center_angles(ob, w, h))
                best = d if best is None else min(best, d)
            if best is not None:
                nn.append(best)
        if nn:
            nbhd = min(1.0, max(0.0, (sum(nn) / len(nn)) / math.radians(d_ref_deg)))
        else:
            nbhd = 1.0

        samples = inside = 0
        for shot in list(history)[-history_shots:]:
            for f in range(shot.start_frame, shot.end_frame):
                b = next((x for x in track.boxes if x.frame == f), None)
                if b is None:
                    continue
                samples += 1
                cam = shot.chosen.keyframes[f - shot.start_frame]
                if inside_viewport(
                    (cam.yaw, cam.pitch), shot.chosen.hfov, aspect, box_center_angles(b, w, h)
                ):
                    inside += 1
        visited = inside / samples if samples else 0.0

        sx = sy = sz = 0.0
        for b in boxes:
            yaw, pitch = box_center_angles(b, w, h)
            sx += math.cos(pitch) * math.cos(yaw)
            sy += math.cos(pitch) * math.sin(yaw)
            sz += math.sin(pitch)
        norm = math.sqrt(sx * sx + sy * sy + sz * sz)
        if norm < 1e-9:
            mean_yaw, mean_pitch = box_center_angles(boxes[0], w, h)
        else:
            mean_yaw = math.atan2(sy, sx)
            mean_pitch = math.atan2(sz, math.hypot(sx, sy))

        out[track.id] = {
            "avg_size": min(1.0, avg_size),
            "motion_mag": motion,
            "nbhd_score": nbhd,
            "visited_score": visited,
            "presence": len(boxes) / len(window),
            "mean_yaw": wrap_angle(mean_yaw),
            "mean_pitch": mean_pitch,
        }
    return out


def quota_cap_reference(quota: float, k: int) -> int:
    """ceil(quota*k) with the quota quantized to thousandths, exact integers."""
    qm = round(quota * 1000)
    return -((-qm * k) // 1000)


def select_reference(hypotheses, type_counts, last_type, run_len, cfg):
    """Independent re-implementation of the selection rule by explicit scan.

    Filters types over quota or over the consecutive-run cap (falling back
    to everything when that empties the pool), then prefers hypotheses that
    do not violate the jump-cut rule, then takes the best score with ties
    broken by type declaration order and generation index.
    """
    from autocine.saliency import SHOT_TYPE_RANK

    n_prior = sum(type_counts.values())
    cap = quota_cap_reference(cfg.type_quota, n_prior + 1)
    allowed = []
    for hyp in hypotheses:
        if type_counts.get(hyp.shot_type, 0) + 1 > cap:
            continue
        if hyp.shot_type == last_type and run_len >= cfg.max_consecutive_same_type:
            continue
        allowed.append(hyp)
    if not allowed:
        allowed = list(hypotheses)
    preferred = [hyp for hyp in allowed if not hyp.jump_cut] or allowed
    best = None
    for hyp in preferred:
        if best is None:
            best = hyp
            continue
        if hyp.score > best.score:
            best = hyp
        elif hyp.score == best.score:
            if SHOT_TYPE_RANK[hyp.shot_type] < SHOT_TYPE_RANK[best.shot_type] or (
                hyp.shot_type == best.shot_type and hyp.gen_index < best.gen_index
            ):
                best = hyp
    return best


def plan_sequence_reference(ts, cfg, weights, priors, prefs=None):
    """Re-run the iterative shot selection with independent bookkeeping.

    Hypothesis generation and scoring are the library's own (they have their
    own oracles); the window iteration, jump-cut flagging, occurrence
    limiting and argmax selection are re-implemented here and enumerated
    explicitly.
    """
    import math as _math

    from autocine.planner import Shot, ShotType, generate_hypotheses, score_hypothesis
    from autocine.tracks import compute_shot_stats

    length = max(1, round(cfg.shot_len_s * ts.fps))
    windows = [(i, min(i + length, ts.n_frames)) for i in range(0, ts.n_frames, length)]
    history = []
    counts = {}
    last = None
    run = 0
    seq = []
    for s, e in windows:
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
        pool = []
        for t in ShotType:
            if t is ShotType.RECOMMENDER and prefs is None:
                continue
            pool.extend(generate_hypotheses(t, stats, ts, (s, e), cfg, weights, priors, prefs))
        prev = history[-1] if history else None
        for gi, hyp in enumerate(pool):
            hyp.gen_index = gi
            hyp.score = score_hypothesis(hyp, stats, ts, (s, e), prev, cfg, weights, priors, prefs)
            if prev is None:
                hyp.jump_cut = False
            else:
                d = haversine(
                    (hyp.keyframes[0].yaw, hyp.keyframes[0].pitch),
                    (prev.chosen.keyframes[-1].yaw, prev.chosen.keyframes[-1].pitch),
                )
                hyp.jump_cut = d < _math.radians(cfg.jump_cut_min_angle_deg) and abs(
                    hyp.hfov - prev.chosen.hfov
                ) < _math.radians(cfg.jump_cut_fov_delta_deg)
        best = select_reference(pool, counts, last, run, cfg)
        seq.append(best)
        history.append(Shot(s, e, best))
        counts[best.shot_type] = counts.get(best.shot_type, 0) + 1
        run = run + 1 if best.shot_type == last else 1
        last = best.shot_type
    return seq


def render_reference(frame, viewport, out_w: int, out_h: int):
    """Per-pixel float64 renderer: direct formula evaluation, no shortcuts."""
    import numpy as np

    from autocine.sphere import gnomonic_unproject, sph_to_pix

    eh, ew = frame.pixels.shape[:2]
    pix = frame.pixels
    out = np.zeros((out_h, out_w, 3), dtype=np.uint8)
    for i in range(out_h):
        v_img = 1.0 - 2.0 * (i + 0.5) / out_h
        for j in range(out_w):
            u = 2.0 * (j + 0.5) / out_w - 1.0
            p = gnomonic_unproject(viewport, u, v_img)
            x, y = sph_to_pix(p, ew, eh)
            xs = x - 0.5
            ys = min(max(y - 0.5, 0.0), eh - 1.0)
            x0 = math.floor(xs)
            tx = xs - x0
            y0 = math.floor(ys)
            ty = ys - y0
            x0w = int(x0) % ew
            x1w = (int(x0) + 1) % ew
            y0c = int(y0)
            y1c = min(y0c + 1, eh - 1)
            for c in range(3):
                val = (
                    (1 - tx) * (1 - ty) * float(pix[y0c, x0w, c])
                    + tx * (1 - ty) * float(pix[y0c, x1w, c])
                    + (1 - tx) * ty * float(pix[y1c, x0w, c])
                    + tx * ty * float(pix[y1c, x1w, c])
                )
                out[i, j, c] = min(255, max(0, round(val)))
    return out
