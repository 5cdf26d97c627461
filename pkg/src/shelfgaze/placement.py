"""Monte Carlo search for the camera drop that best bisects gaze over a
population, plus the inverse solve: how far a given person should stand so
the configured camera lands on their bisector.

Sampling uses a counter-based uniform stream (Philox) pushed through the
inverse normal CDF, so results are reproducible bit-for-bit for a given
seed regardless of platform math-library quirks in rejection samplers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import AllSamplesRejectedError, NoValidDistanceError
from .geometry import MAX_EYE_HEIGHT_CM, PersonSample, ShelfConfig, angular_imbalance

RESIDUAL_GRID_STEP_CM = 0.1
RESIDUAL_REFINE_TOL_CM = 1e-4
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_U53 = 1 << 53


@dataclass(frozen=True)
class PopulationSpec:
    """Stature is Gaussian, standing distance uniform; both in centimeters."""

    height_mean_cm: float = 165.0
    height_std_cm: float = 6.0
    distance_min_cm: float = 75.0
    distance_max_cm: float = 150.0
    sample_count: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.height_std_cm <= 0:
            raise ValueError("height std must be positive")
        if not self.distance_min_cm < self.distance_max_cm:
            raise ValueError("distance range must satisfy min < max")
        if self.distance_min_cm <= 0:
            raise ValueError("distances must be positive")
        if self.sample_count < 1:
            raise ValueError("sample count must be at least 1")


@dataclass(frozen=True)
class PlacementResult:
    """Aggregate statistics of per-sample optimal camera drops.

    ``residual_db_cm`` is the alternative estimator: the drop minimizing the
    mean squared angular imbalance over the same samples. The two estimators
    target the same bisector optimum but are not identical.
    """

    mean_db_cm: float
    median_db_cm: float
    std_db_cm: float
    residual_db_cm: float
    rejected_samples: int
    sample_count: int

    def as_dict(self) -> dict:
        return {
            "mean_db_cm": self.mean_db_cm,
            "median_db_cm": self.median_db_cm,
            "std_db_cm": self.std_db_cm,
            "residual_db_cm": self.residual_db_cm,
            "rejected_samples": self.rejected_samples,
            "sample_count": self.sample_count,
        }


def _uniform01(gen: np.random.Generator, n: int) -> np.ndarray:
    # Midpoints of 2^53 buckets: strictly inside (0, 1), safe for ndtri.
    return (gen.integers(0, _U53, n).astype(np.float64) + 0.5) / _U53


def sample_population(
    cfg: ShelfConfig, pop: PopulationSpec
) -> tuple[np.ndarray, np.ndarray, int]:
    """Draw (eye heights, distances) for valid samples plus the rejected count.

    Rejection mirrors geometry.validate_person: eyes at or below the panel
    bottom, or beyond the sane height bound, are excluded rather than
    clamped.
    """
    gen = np.random.Generator(np.random.Philox(key=pop.seed))
    stature = pop.height_mean_cm + pop.height_std_cm * ndtri(_uniform01(gen, pop.sample_count))
    span = pop.distance_max_cm - pop.distance_min_cm
    distance = pop.distance_min_cm + span * _uniform01(gen, pop.sample_count)
    eye = stature - cfg.eye_crown_offset_cm
    valid = (eye > cfg.panel_bottom_height_cm) & (eye < MAX_EYE_HEIGHT_CM)
    rejected = int(pop.sample_count - valid.sum())
    return eye[valid], distance[valid], rejected


def _golden_min(f, a: float, b: float, tol: float) -> float:
    """Golden-section minimum of a unimodal f on [a, b] to absolute x tolerance."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def optimize_camera_drop(cfg: ShelfConfig, pop: PopulationSpec) -> PlacementResult:
    """Per-sample bisector drops aggregated over the population.

    Also runs the residual estimator: mean squared imbalance evaluated on a
    0.1 cm drop grid, refined once by golden section to 1e-4 cm.
    Deterministic for a fixed seed; samples are aggregated in draw order.
    """
    eye, distance, rejected = sample_population(cfg, pop)
    if eye.size == 0:
        raise AllSamplesRejectedError(
            f"all {pop.sample_count} samples failed geometry preconditions"
        )

    top = cfg.shelf_height_cm
    bottom = cfg.panel_bottom_height_cm
    ab = np.hypot(distance, top - eye)
    ac = np.hypot(distance, eye - bottom)
    db = cfg.panel_height_cm * ab / (ab + ac)

    # Residual estimator: the camera ray should bisect theta_top..theta_bottom,
    # so the squared residual is (theta_top + theta_bottom - 2*theta_cam)^2.
    theta_sum = np.arctan2(top - eye, distance) + np.arctan2(bottom - eye, distance)

    def mean_sq_residual(drop: float) -> float:
        theta_cam = np.arctan2(top - drop - eye, distance)
        r = theta_sum - 2.0 * theta_cam
        return float(np.mean(r * r))

    grid = np.arange(0.0, cfg.panel_height_cm + RESIDUAL_GRID_STEP_CM / 2, RESIDUAL_GRID_STEP_CM)
    values = np.array([mean_sq_residual(drop) for drop in grid])
    best = int(values.argmin())
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    residual_db = _golden_min(mean_sq_residual, float(lo), float(hi), RESIDUAL_REFINE_TOL_CM)

    return PlacementResult(
        mean_db_cm=float(db.mean()),
        median_db_cm=float(np.median(db)),
        std_db_cm=float(db.std()),
        residual_db_cm=residual_db,
        rejected_samples=rejected,
        sample_count=pop.sample_count,
    )


def recommended_distance(cfg: ShelfConfig, stature_cm: float) -> float:
    """Standing distance at which the configured camera bisects this person's gaze.

    Solving alpha1 = alpha2 for d with r = drop / (panel_height - drop)
    gives d^2 = (r^2 (h - bottom)^2 - (top - h)^2) / (1 - r^2); the same
    expression covers r > 1 after rearrangement. Raises NoValidDistanceError
    when no positive distance exists (person too short or too tall for the
    configured drop, or the camera sits exactly mid-panel).
    """
    h = stature_cm - cfg.eye_crown_offset_cm
    bottom = cfg.panel_bottom_height_cm
    if h <= bottom or h >= MAX_EYE_HEIGHT_CM:
        raise NoValidDistanceError(
            f"stature {stature_cm} cm yields eye height {h} cm outside"
            f" ({bottom}, {MAX_EYE_HEIGHT_CM})"
        )
    dc = cfg.panel_height_cm - cfg.camera_drop_cm
    if dc <= 0 or cfg.camera_drop_cm == dc:
        raise NoValidDistanceError(
            f"camera drop {cfg.camera_drop_cm} cm admits no unique bisector distance"
        )
    r = cfg.camera_drop_cm / dc
    d_sq = (r * r * (h - bottom) ** 2 - (cfg.shelf_height_cm - h) ** 2) / (1.0 - r * r)
    if d_sq <= 0:
        raise NoValidDistanceError(
            f"no positive distance puts the camera on the bisector for stature {stature_cm} cm"
        )
    return math.sqrt(d_sq)


STATUS_OK = "ok"
STATUS_NO_DISTANCE = "no_valid_distance"


@dataclass(frozen=True)
class DistanceRow:
    stature_cm: float
    distance_cm: float | None
    status: str


def distance_table(cfg: ShelfConfig, statures_cm: list[float]) -> list[DistanceRow]:
    """Recommended distance per stature; unreachable rows are marked, not dropped."""
    if not statures_cm:
        raise ValueError("stature list must be non-empty")
    rows = []
    for stature in statures_cm:
        try:
            rows.append(DistanceRow(stature, recommended_distance(cfg, stature), STATUS_OK))
        except NoValidDistanceError:
            rows.append(DistanceRow(stature, None, STATUS_NO_DISTANCE))
    return rows


def distance_table_csv(rows: list[DistanceRow]) -> str:
    """CSV in millimeters, matching the reporting unit of the printed table."""
    lines = ["stature_mm,distance_mm,status"]
    for row in rows:
        distance_mm = "" if row.distance_cm is None else f"{row.distance_cm * 10.0:.3f}"
        lines.append(f"{row.stature_cm * 10.0:g},{distance_mm},{row.status}")
    return "\n".join(lines) + "\n"


def imbalance_sweep(
    cfg: ShelfConfig, p: PersonSample, drops: list[float]
) -> list[tuple[float, float]]:
    """Signed imbalance at each candidate drop; crosses zero at the bisector."""
    return [(drop, angular_imbalance(cfg, p, drop)) for drop in drops]


def imbalance_sweep_csv(rows: list[tuple[float, float]]) -> str:
    lines = ["drop_cm,residual_rad"]
    lines.extend(f"{drop!r},{residual!r}" for drop, residual in rows)
    return "\n".join(lines) + "\n"
