"""
Rate region - information measures and achievable secrecy-rate regions

Every region is the polygon cut out of the first quadrant by two individual
rate bounds and one sum-rate bound. The Gaussian closure over the power box
is the convex hull of the vertex clouds of the sampled polygons.
All logarithms are base 2, so every rate is in bits per channel use.
"""

import math
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
import structlog
from scipy.special import entr

from secrecy.channel_model import validate_batw, validate_gtw
from utils.errors import DomainError
from utils.models import (
    BatwChannel,
    CapacitySet,
    PowerPoint,
    RatePair,
    RegionPolytope,
    RegionShape,
    StandardGtwChannel,
)

logger = structlog.get_logger()

_LN2 = float(np.log(2.0))
# Coincident / collinear vertices closer than this are merged.
VERTEX_TOL = 1e-12

ArrayLike = Union[float, np.ndarray]


def gauss_cap(x: float) -> float:
    """Gaussian capacity g(x) = 0.5 log2(1 + x)."""
    if not x >= 0:
        raise DomainError(f"gauss_cap needs x >= 0, got {x!r}")
    return 0.5 * float(np.log2(1.0 + x))


def bin_entropy(x: float) -> float:
    """Binary entropy in bits, with 0 log 0 = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"bin_entropy needs 0 <= x <= 1, got {x!r}")
    return float((entr(x) + entr(1.0 - x)) / _LN2)


def pos_part(x: float) -> float:
    return max(float(x), 0.0)


def _g(x: ArrayLike) -> ArrayLike:
    return 0.5 * np.log2(1.0 + x)


def check_power(ch: StandardGtwChannel, p: PowerPoint) -> None:
    """Raise DomainError unless p lies in the power box of ch."""
    if p.p_1 > ch.pmax_1 or p.p_2 > ch.pmax_2:
        raise DomainError(
            f"power ({p.p_1}, {p.p_2}) outside box [0, {ch.pmax_1}] x [0, {ch.pmax_2}]"
        )


def gtw_capacities(ch: StandardGtwChannel, p: PowerPoint) -> CapacitySet:
    """C_1 = g(P_1), C_2 = g(P_2) and the eavesdropper's C_W = g(h_1 P_1 + h_2 P_2)."""
    check_power(ch, p)
    return CapacitySet(
        c_1=gauss_cap(p.p_1),
        c_2=gauss_cap(p.p_2),
        c_w=gauss_cap(ch.h_1 * p.p_1 + ch.h_2 * p.p_2),
    )


def batw_capacities(ch: BatwChannel) -> CapacitySet:
    """C_k = 1 - h(eps_k) and C_W = 1 - h(eps_w)."""
    validate_batw(ch)
    return CapacitySet(
        c_1=1.0 - bin_entropy(ch.eps_1),
        c_2=1.0 - bin_entropy(ch.eps_2),
        c_w=1.0 - bin_entropy(ch.eps_w),
    )


def rho(ch: StandardGtwChannel, p: PowerPoint) -> float:
    """rho(P) = (1 + h_1 P_1 + h_2 P_2) / ((1 + P_1)(1 + P_2)); sum rate = -0.5 log2 rho."""
    return (1.0 + ch.h_1 * p.p_1 + ch.h_2 * p.p_2) / ((1.0 + p.p_1) * (1.0 + p.p_2))


def sum_rate(ch: StandardGtwChannel, p: PowerPoint) -> float:
    """
    Unclamped secrecy sum rate g(P_1) + g(P_2) - g(h_1 P_1 + h_2 P_2).

    May be negative; region constructors clamp it with pos_part.

    Raises:
        DomainError: if p lies outside the power box
    """
    caps = gtw_capacities(ch, p)
    return caps.c_1 + caps.c_2 - caps.c_w


def _candidate_vertices(c1: ArrayLike, c2: ArrayLike, s: ArrayLike) -> np.ndarray:
    """
    The five corner candidates of {R_k <= c_k, R_1 + R_2 <= s} in the first quadrant.

    Works elementwise on arrays; returns shape (..., 5, 2).
    """
    c1, c2, s = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (c1, c2, s)))
    a = np.minimum(c1, s)
    b = np.minimum(c2, s)
    zero = np.zeros_like(a)
    xs = np.stack([zero, a, a, np.minimum(s - b, c1), zero], axis=-1)
    ys = np.stack([zero, zero, np.minimum(s - a, c2), b, b], axis=-1)
    return np.stack([xs, ys], axis=-1)


Point = Tuple[float, float]


def _turns_left(o: Point, a: Point, b: Point) -> bool:
    # sine of the turn angle, so tiny regions keep their corners
    ux, uy = a[0] - o[0], a[1] - o[1]
    wx, wy = b[0] - o[0], b[1] - o[1]
    return ux * wy - uy * wx > VERTEX_TOL * math.hypot(ux, uy) * math.hypot(wx, wy)


def convex_hull(points: Union[np.ndarray, Iterable[Sequence[float]]]) -> RegionPolytope:
    """
    Convex hull by Andrew's monotone chain.

    Vertices come out counterclockwise from the lexicographically smallest
    point, which is (0,0) for every rate region. Collinear and coincident
    points are dropped.
    """
    cloud = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    pts = [(x, y) for x, y in cloud.tolist()]
    if len(pts) == 0:
        raise DomainError("convex_hull needs at least one point")

    if len(pts) == 1:
        hull = [pts[0]]
    else:
        lower = []
        for pt in pts:
            while len(lower) >= 2 and not _turns_left(lower[-2], lower[-1], pt):
                lower.pop()
            lower.append(pt)
        upper = []
        for pt in pts[::-1]:
            while len(upper) >= 2 and not _turns_left(upper[-2], upper[-1], pt):
                upper.pop()
            upper.append(pt)
        hull = lower[:-1] + upper[:-1]

    def apart(a: Point, b: Point) -> bool:
        return max(abs(a[0] - b[0]), abs(a[1] - b[1])) > VERTEX_TOL

    merged = [hull[0]]
    for pt in hull[1:]:
        if apart(pt, merged[-1]):
            merged.append(pt)
    if len(merged) > 1 and not apart(merged[-1], merged[0]):
        merged.pop()

    return RegionPolytope(vertices=[RatePair(r_1=x, r_2=y) for x, y in merged])


def _polygon(c1: float, c2: float, s: float) -> RegionPolytope:
    return convex_hull(_candidate_vertices(c1, c2, s))


def gtw_region_at_power(ch: StandardGtwChannel, p: PowerPoint) -> RegionPolytope:
    """
    Achievable secrecy region of the Gaussian channel at a fixed power pair.

    Args:
        ch: Standardized channel
        p: Power pair inside the box

    Returns:
        Polygon {R_k <= g(P_k), R_1 + R_2 <= [g(P_1) + g(P_2) - g(h_1 P_1 + h_2 P_2)]+}

    Raises:
        DomainError: if p lies outside the power box
    """
    validate_gtw(ch)
    caps = gtw_capacities(ch, p)
    return _polygon(caps.c_1, caps.c_2, pos_part(caps.c_1 + caps.c_2 - caps.c_w))


def batw_region(ch: BatwChannel) -> RegionPolytope:
    """Achievable secrecy region of the binary channel."""
    caps = batw_capacities(ch)
    return _polygon(caps.c_1, caps.c_2, pos_part(caps.c_1 + caps.c_2 - caps.c_w))


def gtw_region_closure(ch: StandardGtwChannel, grid: int) -> RegionPolytope:
    """
    Convex closure of the Gaussian regions over the power box.

    Samples a grid x grid lattice including both endpoints per axis, so the
    box corners are always among the samples.

    Args:
        ch: Standardized channel
        grid: Lattice points per axis (>= 2)

    Returns:
        Convex hull of every sampled region's vertices
    """
    if int(grid) != grid or grid < 2:
        raise DomainError(f"grid must be an integer >= 2, got {grid!r}")
    validate_gtw(ch)

    p1, p2 = np.meshgrid(
        np.linspace(0.0, ch.pmax_1, int(grid)),
        np.linspace(0.0, ch.pmax_2, int(grid)),
        indexing="ij",
    )
    c1 = _g(p1)
    c2 = _g(p2)
    s = np.maximum(c1 + c2 - _g(ch.h_1 * p1 + ch.h_2 * p2), 0.0)

    region = convex_hull(_candidate_vertices(c1, c2, s))
    logger.debug("region_closure_computed", grid=grid, vertices=len(region.vertices))
    return region


def contains(region: RegionPolytope, r: RatePair, tol: float = 0.0) -> bool:
    """
    True iff r lies in the region or within tol of its boundary.

    Polygons use a half-plane test per counterclockwise edge; the degenerate
    point and segment regions use Euclidean distance.
    """
    v = np.array([[q.r_1, q.r_2] for q in region.vertices], dtype=float)
    x = np.array([r.r_1, r.r_2], dtype=float)

    if np.any(np.all(v == x, axis=1)):
        return True
    if len(v) == 1:
        return bool(np.hypot(*(x - v[0])) <= tol)

    if len(v) == 2:
        d = v[1] - v[0]
        t = np.clip(np.dot(x - v[0], d) / np.dot(d, d), 0.0, 1.0)
        return bool(np.hypot(*(x - (v[0] + t * d))) <= tol)

    edges = np.roll(v, -1, axis=0) - v
    rel = x - v
    cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
    return bool(np.all(cross >= -tol * np.hypot(edges[:, 0], edges[:, 1])))


def region_shape(region: RegionPolytope) -> RegionShape:
    """Classify a region by its vertex structure."""
    v = region.vertices
    if len(v) == 1:
        return RegionShape.POINT
    if len(v) == 2:
        return RegionShape.SEGMENT
    if len(v) == 3:
        return RegionShape.TRIANGLE
    if len(v) == 5:
        return RegionShape.PENTAGON
    if len(v) == 4:
        axis_aligned = (
            abs(v[1].r_2) <= VERTEX_TOL
            and abs(v[2].r_1 - v[1].r_1) <= VERTEX_TOL
            and abs(v[3].r_1) <= VERTEX_TOL
            and abs(v[3].r_2 - v[2].r_2) <= VERTEX_TOL
        )
        return RegionShape.RECTANGLE if axis_aligned else RegionShape.QUADRILATERAL
    return RegionShape.POLYGON
