"""Timestamp association and closed-form similarity alignment of trajectories."""

import logging

from dataclasses import dataclass

import numpy as np

from .model import FloatArray, PoseSE3, Trajectory

LOG = logging.getLogger(__name__)

DEFAULT_MAX_GAP_NS = 50_000_000


class AlignmentInsufficientError(ValueError):
    """Too few associated poses to fit a similarity transform."""


class RankDeficiencyError(ValueError):
    """Associated positions are degenerate (coincident or collinear)."""


def associate(
    first: Trajectory, second: Trajectory, max_gap_ns: int = DEFAULT_MAX_GAP_NS
) -> list[tuple[int, int]]:
    """Greedy one-to-one pairing by nearest timestamp, sorted by index into `first`.

    Candidate pairs within `max_gap_ns` are taken closest first; each pose is
    used at most once.
    """
    ta = first.timestamps
    tb = second.timestamps

    candidates: list[tuple[int, int, int]] = []
    pos = np.searchsorted(tb, ta)
    for i, p in enumerate(pos.tolist()):
        for j in (p - 1, p):
            if 0 <= j < len(tb):
                gap = abs(int(ta[i]) - int(tb[j]))
                if gap <= max_gap_ns:
                    candidates.append((gap, i, j))

    candidates.sort()
    used_a: set[int] = set()
    used_b: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for _, i, j in candidates:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append((i, j))
    pairs.sort()
    return pairs


@dataclass(eq=False)
class SimilarityAlignment:
    scale: float
    rotation: FloatArray
    translation: FloatArray
    aligned: Trajectory
    """The estimate mapped into the reference frame."""

    pairs: list[tuple[int, int]]
    residual_rms: float
    """RMS position error (meters) over the associated pairs after alignment."""

    def transform(self) -> PoseSE3:
        return PoseSE3(self.rotation, self.translation)


def umeyama(source: FloatArray, target: FloatArray) -> tuple[float, FloatArray, FloatArray]:
    """Least-squares `s, R, t` minimizing `sum |target - (s R source + t)|^2`."""
    mu_s = source.mean(axis=0)
    mu_t = target.mean(axis=0)
    xs = source - mu_s
    xt = target - mu_t

    sv = np.linalg.svd(xs, compute_uv=False)
    if sv[0] <= 0.0 or sv[1] <= 1e-9 * sv[0]:
        raise RankDeficiencyError("Cannot align collinear or coincident positions")

    cov = xt.T @ xs / len(source)
    u, d, vt = np.linalg.svd(cov)
    s = np.eye(3)
    if np.linalg.det(u) * np.linalg.det(vt) < 0.0:
        s[2, 2] = -1.0
    r = u @ s @ vt
    var_s = float(np.mean(np.sum(xs * xs, axis=1)))
    scale = float(np.trace(np.diag(d) @ s) / var_s)
    t = mu_t - scale * (r @ mu_s)
    return scale, r, t


def align_similarity(est: Trajectory, ref: Trajectory, max_gap_ns: int = DEFAULT_MAX_GAP_NS) -> SimilarityAlignment:
    """Fit the similarity taking `est` positions onto `ref` positions."""
    pairs = associate(est, ref, max_gap_ns)
    if len(pairs) < 3:
        raise AlignmentInsufficientError(f"Alignment needs at least 3 associated poses, got {len(pairs)}")

    pe = est.positions()[[i for i, _ in pairs]]
    pr = ref.positions()[[j for _, j in pairs]]
    scale, r, t = umeyama(pe, pr)

    aligned = est.transformed(PoseSE3(r, t), scale)
    residual = aligned.positions()[[i for i, _ in pairs]] - pr
    rms = float(np.sqrt(np.mean(np.sum(residual * residual, axis=1))))
    LOG.debug(f"Aligned {len(pairs)} poses: scale {scale:.6g}, residual RMS {rms:.6g} m")
    return SimilarityAlignment(scale, r, t, aligned, pairs, rms)
