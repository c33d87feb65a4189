"""Two-view relative pose from matched image points.

The essential matrix follows `x_b^T E x_a = 0` for normalized homogeneous
points, with `X_b = R X_a + t`. The pose returned to callers is the pose of
camera B expressed in camera A, so a camera moving along +x yields a
translation of (1, 0, 0).
"""

import logging

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from scipy.optimize import least_squares
from scipy.spatial.transform import Rotation

from .model import FloatArray, Intrinsics, PoseSE3

LOG = logging.getLogger(__name__)

MIN_CORRESPONDENCES = 8


class InsufficientCorrespondencesError(ValueError):
    """Fewer point correspondences than the solver needs."""


class DegenerateGeometryError(ValueError):
    """No motion hypothesis explains the correspondences."""


@dataclass(frozen=True)
class RansacOptions:
    iterations: int = 500
    threshold_px: float = 1.5
    """Inlier threshold on the Sampson distance, in pixels."""

    seed: int = 42
    refine: bool = True
    """Refine the inlier model by minimizing the Sampson error."""

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError(f"RANSAC needs at least one iteration, got {self.iterations}")
        if not self.threshold_px > 0.0:
            raise ValueError(f"RANSAC threshold must be positive, got {self.threshold_px}")


@dataclass(eq=False)
class EssentialEstimate:
    essential: FloatArray
    rotation: FloatArray
    """Rotation taking camera A coordinates to camera B coordinates."""

    translation: FloatArray
    """Unit translation of the same transform."""

    inliers: npt.NDArray[np.bool_]


def _homogeneous(points: FloatArray) -> FloatArray:
    return np.column_stack([points, np.ones(len(points))])


def _to_normalized(points: FloatArray, intrinsics: Intrinsics) -> FloatArray:
    return np.column_stack(
        [(points[:, 0] - intrinsics.cx) / intrinsics.fx, (points[:, 1] - intrinsics.cy) / intrinsics.fy]
    )


def _conditioning(points: FloatArray) -> FloatArray:
    """Similarity moving the centroid to the origin with mean distance sqrt(2)."""
    centroid = points.mean(axis=0)
    spread = np.mean(np.linalg.norm(points - centroid, axis=1))
    s = np.sqrt(2.0) / spread if spread > 0.0 else 1.0
    return np.array([[s, 0.0, -s * centroid[0]], [0.0, s, -s * centroid[1]], [0.0, 0.0, 1.0]])


def project_essential(e: FloatArray) -> FloatArray:
    """Closest matrix with singular values (1, 1, 0)."""
    u, _, vt = np.linalg.svd(e)
    return u @ np.diag([1.0, 1.0, 0.0]) @ vt


def _rank_two(m: FloatArray) -> FloatArray:
    u, s, vt = np.linalg.svd(m)
    return u @ np.diag([s[0], s[1], 0.0]) @ vt


def eight_point(xa: FloatArray, xb: FloatArray) -> FloatArray:
    """Normalized 8-point estimate from >= 8 normalized image points."""
    ta = _conditioning(xa)
    tb = _conditioning(xb)
    a = (ta @ _homogeneous(xa).T).T
    b = (tb @ _homogeneous(xb).T).T

    design = np.column_stack(
        [
            b[:, 0] * a[:, 0],
            b[:, 0] * a[:, 1],
            b[:, 0],
            b[:, 1] * a[:, 0],
            b[:, 1] * a[:, 1],
            b[:, 1],
            a[:, 0],
            a[:, 1],
            np.ones(len(a)),
        ]
    )
    _, _, vt = np.linalg.svd(design)
    e = vt[-1].reshape(3, 3)
    e = tb.T @ _rank_two(e) @ ta
    return project_essential(e / np.linalg.norm(e))


def _fundamental(e: FloatArray, k_inv: FloatArray) -> FloatArray:
    return k_inv.T @ e @ k_inv


def sampson_residuals(f: FloatArray, pa: FloatArray, pb: FloatArray) -> FloatArray:
    """Signed first-order geometric error of each pixel correspondence."""
    ha = _homogeneous(pa)
    hb = _homogeneous(pb)
    fa = ha @ f.T
    fb = hb @ f
    num = np.sum(hb * fa, axis=1)
    den = fa[:, 0] ** 2 + fa[:, 1] ** 2 + fb[:, 0] ** 2 + fb[:, 1] ** 2
    return num / np.sqrt(np.maximum(den, 1e-300))


def _skew(t: FloatArray) -> FloatArray:
    return np.array([[0.0, -t[2], t[1]], [t[2], 0.0, -t[0]], [-t[1], t[0], 0.0]])


def triangulate(r: FloatArray, t: FloatArray, xa: FloatArray, xb: FloatArray) -> FloatArray:
    """Linear triangulation in camera A coordinates, one point per row."""
    pa = np.hstack([np.eye(3), np.zeros((3, 1))])
    pb = np.hstack([r, t.reshape(3, 1)])
    rows = np.stack(
        [
            xa[:, [0]] * pa[2] - pa[0],
            xa[:, [1]] * pa[2] - pa[1],
            xb[:, [0]] * pb[2] - pb[0],
            xb[:, [1]] * pb[2] - pb[1],
        ],
        axis=1,
    )
    _, _, vt = np.linalg.svd(rows)
    h = vt[:, -1, :]
    w = h[:, 3]
    w = np.where(np.abs(w) < 1e-12, np.copysign(1e-12, w), w)
    return h[:, :3] / w[:, None]


def decompose_essential(e: FloatArray, xa: FloatArray, xb: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Pick the (R, t) of the four decompositions with most points in front of both cameras."""
    u, _, vt = np.linalg.svd(e)
    if np.linalg.det(u) < 0:
        u = -u
    if np.linalg.det(vt) < 0:
        vt = -vt
    w = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])

    best: tuple[int, FloatArray, FloatArray] | None = None
    for r in (u @ w @ vt, u @ w.T @ vt):
        for t in (u[:, 2], -u[:, 2]):
            points = triangulate(r, t, xa, xb)
            depth_a = points[:, 2]
            depth_b = (points @ r.T + t)[:, 2]
            count = int(np.count_nonzero((depth_a > 0.0) & (depth_b > 0.0)))
            if best is None or count > best[0]:
                best = (count, r, t)

    assert best is not None
    if best[0] == 0:
        raise DegenerateGeometryError("No decomposition of the essential matrix places points in front of both cameras")
    return best[1], best[2]


def _unit_from_angles(theta: float, phi: float) -> FloatArray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _refine(
    r: FloatArray, t: FloatArray, pa: FloatArray, pb: FloatArray, k_inv: FloatArray
) -> tuple[FloatArray, FloatArray]:
    rotvec = Rotation.from_matrix(r).as_rotvec()
    theta = float(np.arccos(np.clip(t[2], -1.0, 1.0)))
    phi = float(np.arctan2(t[1], t[0]))

    def residuals(params: FloatArray) -> FloatArray:
        rr = Rotation.from_rotvec(params[:3]).as_matrix()
        tt = _unit_from_angles(params[3], params[4])
        return sampson_residuals(_fundamental(_skew(tt) @ rr, k_inv), pa, pb)

    x0 = np.concatenate([rotvec, [theta, phi]])
    result = least_squares(residuals, x0, method="lm")
    r_out = Rotation.from_rotvec(result.x[:3]).as_matrix()
    t_out = _unit_from_angles(float(result.x[3]), float(result.x[4]))
    return r_out, t_out


def estimate_essential(
    points_a: FloatArray, points_b: FloatArray, intrinsics: Intrinsics, ransac: RansacOptions = RansacOptions()
) -> EssentialEstimate:
    """RANSAC over the normalized 8-point solver, then refit and refine on the inliers."""
    pa = np.asarray(points_a, dtype=np.float64).reshape(-1, 2)
    pb = np.asarray(points_b, dtype=np.float64).reshape(-1, 2)
    if len(pa) != len(pb):
        raise ValueError(f"Point sets differ in size: {len(pa)} != {len(pb)}")
    if len(pa) < MIN_CORRESPONDENCES:
        raise InsufficientCorrespondencesError(
            f"Relative pose needs at least {MIN_CORRESPONDENCES} correspondences, got {len(pa)}"
        )

    xa = _to_normalized(pa, intrinsics)
    xb = _to_normalized(pb, intrinsics)
    k_inv = np.linalg.inv(intrinsics.matrix())
    threshold = ransac.threshold_px

    rng = np.random.default_rng(ransac.seed)
    best_inliers: npt.NDArray[np.bool_] | None = None
    best_count = -1
    for _ in range(ransac.iterations):
        sample = rng.choice(len(pa), MIN_CORRESPONDENCES, replace=False)
        e = eight_point(xa[sample], xb[sample])
        inliers = np.abs(sampson_residuals(_fundamental(e, k_inv), pa, pb)) <= threshold
        count = int(np.count_nonzero(inliers))
        if count > best_count:
            best_count, best_inliers = count, inliers
            if count == len(pa):
                break

    assert best_inliers is not None
    if best_count < MIN_CORRESPONDENCES:
        raise DegenerateGeometryError(f"Best motion hypothesis has only {best_count} inliers")

    e = eight_point(xa[best_inliers], xb[best_inliers])
    r, t = decompose_essential(e, xa[best_inliers], xb[best_inliers])
    if ransac.refine:
        r, t = _refine(r, t, pa[best_inliers], pb[best_inliers], k_inv)
    e = project_essential(_skew(t) @ r)

    LOG.debug(f"Essential estimate: {best_count}/{len(pa)} inliers")
    return EssentialEstimate(e, r, t / np.linalg.norm(t), best_inliers)


def estimate_relative_pose(
    points_a: FloatArray,
    points_b: FloatArray,
    intrinsics: Intrinsics,
    ransac: RansacOptions = RansacOptions(),
) -> PoseSE3:
    """Pose of camera B in camera A with unit-norm translation."""
    est = estimate_essential(points_a, points_b, intrinsics, ransac)
    r_ab = est.rotation.T
    t_ab = -(r_ab @ est.translation)
    return PoseSE3(r_ab, t_ab / np.linalg.norm(t_ab))


@dataclass(eq=False)
class PlanarMotion:
    pose: PoseSE3
    """Camera motion with identity rotation, in units of the plane depth."""

    inlier_ratio: float


def estimate_planar_motion(
    points_a: FloatArray, points_b: FloatArray, intrinsics: Intrinsics, threshold_px: float = 1.5
) -> PlanarMotion:
    """Translation-only image motion model for a camera moving parallel to a plane.

    The camera displacement is the negated median image flow divided by the
    focal length, expressed in units of the distance to the plane.
    """
    pa = np.asarray(points_a, dtype=np.float64).reshape(-1, 2)
    pb = np.asarray(points_b, dtype=np.float64).reshape(-1, 2)
    if len(pa) != len(pb):
        raise ValueError(f"Point sets differ in size: {len(pa)} != {len(pb)}")
    if len(pa) == 0:
        raise InsufficientCorrespondencesError("Planar motion needs at least one correspondence")

    flow = pb - pa
    median = np.median(flow, axis=0)
    inliers = np.linalg.norm(flow - median, axis=1) <= threshold_px
    translation = np.array([-median[0] / intrinsics.fx, -median[1] / intrinsics.fy, 0.0])
    return PlanarMotion(PoseSE3(np.eye(3), translation), float(np.mean(inliers)))
