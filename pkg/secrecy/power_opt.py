"""
Power optimization - secrecy sum-rate and cooperative jamming

Closed-form optimal power allocations for the standardized Gaussian channel,
the KKT helper functions they are derived from, and exhaustive lattice
oracles used to check them independently.
"""

import math
from typing import Tuple

import numpy as np
import structlog

from secrecy.channel_model import validate_batw, validate_gtw
from secrecy.rate_region import (
    bin_entropy,
    check_power,
    convex_hull,
    gauss_cap,
    pos_part,
    sum_rate,
)
from utils.errors import DomainError
from utils.models import (
    BatwChannel,
    BatwJammingResult,
    CaseLabel,
    JammingAdvisory,
    PowerAllocation,
    PowerPoint,
    RegionPolytope,
    StandardGtwChannel,
)

logger = structlog.get_logger()


def _check_user(j: int) -> None:
    if j not in (1, 2):
        raise DomainError(f"user index must be 1 or 2, got {j!r}")


def _check_grid(grid: int) -> int:
    if int(grid) != grid or grid < 2:
        raise DomainError(f"grid must be an integer >= 2, got {grid!r}")
    return int(grid)


def phi(ch: StandardGtwChannel, p: PowerPoint, j: int) -> float:
    """Phi_j(P) = (1 + h_1 P_1 + h_2 P_2) / (1 + P_j)."""
    _check_user(j)
    p_j = p.p_1 if j == 1 else p.p_2
    return (1.0 + ch.h_1 * p.p_1 + ch.h_2 * p.p_2) / (1.0 + p_j)


def rho_dot(ch: StandardGtwChannel, p: PowerPoint, j: int) -> float:
    """
    Partial derivative of rho with respect to P_j.

    Equals (h_j - Phi_j(P)) / ((1 + P_1)(1 + P_2)), so its sign is the sign
    of h_j - Phi_j: user j is single-user decodable exactly when it is >= 0.
    """
    h_j = ch.h_1 if j == 1 else ch.h_2
    return (h_j - phi(ch, p, j)) / ((1.0 + p.p_1) * (1.0 + p.p_2))


def phi2(ch: StandardGtwChannel, p_2: float) -> float:
    """phi_2(P_2) = (1 + h_2 P_2) / (1 + P_2)."""
    return (1.0 + ch.h_2 * p_2) / (1.0 + p_2)


def phi2_dot(ch: StandardGtwChannel, p_2: float) -> float:
    """Derivative of phi_2: (h_2 - phi_2(P_2)) / (1 + P_2)."""
    return (ch.h_2 - phi2(ch, p_2)) / (1.0 + p_2)


def _swap_users(ch: StandardGtwChannel) -> StandardGtwChannel:
    return StandardGtwChannel(
        pmax_1=ch.pmax_2, pmax_2=ch.pmax_1,
        h_1=ch.h_2, h_2=ch.h_1,
        alpha_1=ch.alpha_2, alpha_2=ch.alpha_1,
    )


def _sum_rate_corner(ch: StandardGtwChannel) -> Tuple[float, float, CaseLabel]:
    # Closed form for h_1 <= h_2.
    if ch.h_1 <= 1.0 + ch.h_2 * ch.pmax_2 and ch.h_2 < 1.0 + ch.h_1 * ch.pmax_1:
        return ch.pmax_1, ch.pmax_2, CaseLabel.BOTH_MAX
    if ch.h_1 < 1.0 and ch.h_2 >= 1.0 + ch.h_1 * ch.pmax_1:
        return ch.pmax_1, 0.0, CaseLabel.USER1_MAX_USER2_ZERO
    return 0.0, 0.0, CaseLabel.BOTH_ZERO


def optimal_power(ch: StandardGtwChannel) -> PowerAllocation:
    """
    Secrecy sum-rate maximizing power allocation.

    A user transmits at full power as long as the eavesdropper cannot decode
    it by treating the other user as noise. Users are relabeled internally
    so that h_1 <= h_2; the result is reported in the caller's indices.

    If the full-power corner still yields a negative sum rate, every point
    of the box is dominated by (0,0) and BothZero is returned instead.

    Args:
        ch: Standardized channel

    Returns:
        Allocation, case label and clamped sum rate
    """
    validate_gtw(ch)
    swapped = ch.h_1 > ch.h_2
    p_1, p_2, label = _sum_rate_corner(_swap_users(ch) if swapped else ch)

    if swapped:
        p_1, p_2 = p_2, p_1
        if label == CaseLabel.USER1_MAX_USER2_ZERO:
            label = CaseLabel.USER2_MAX_USER1_ZERO

    point = PowerPoint(p_1=p_1, p_2=p_2)
    value = sum_rate(ch, point)

    if value < 0.0:
        logger.warning("full_power_corner_negative", h=(ch.h_1, ch.h_2),
                       pmax=(ch.pmax_1, ch.pmax_2), sum_rate=value)
        point, label, value = PowerPoint(p_1=0.0, p_2=0.0), CaseLabel.BOTH_ZERO, 0.0

    logger.debug("optimal_power_selected", case=label.value, p=(point.p_1, point.p_2))
    return PowerAllocation(p=point, case_label=label, objective_value=pos_part(value))


def classify_allocation(ch: StandardGtwChannel, p: PowerPoint, jamming: bool = False) -> CaseLabel:
    """Case label of a power pair by its position in the box."""
    at_zero = (p.p_1 == 0.0, p.p_2 == 0.0)
    at_max = (p.p_1 == ch.pmax_1, p.p_2 == ch.pmax_2)

    if jamming:
        if all(at_zero):
            return CaseLabel.JAM_BOTH_ZERO
        return CaseLabel.JAM_BOTH_MAX if all(at_max) else CaseLabel.INTERIOR

    if all(at_zero):
        return CaseLabel.BOTH_ZERO
    if all(at_max):
        return CaseLabel.BOTH_MAX
    if at_max[0] and at_zero[1]:
        return CaseLabel.USER1_MAX_USER2_ZERO
    if at_zero[0] and at_max[1]:
        return CaseLabel.USER2_MAX_USER1_ZERO
    return CaseLabel.INTERIOR


def _lattice(ch: StandardGtwChannel, grid: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.linspace(0.0, ch.pmax_1, grid), np.linspace(0.0, ch.pmax_2, grid)


def _lattice_argmin(values: np.ndarray, axis_1: np.ndarray, axis_2: np.ndarray) -> PowerPoint:
    # argmin returns the first minimum in C order: smallest p_1, then smallest p_2
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    return PowerPoint(p_1=float(axis_1[i]), p_2=float(axis_2[j]))


def optimal_power_oracle(ch: StandardGtwChannel, grid: int) -> PowerAllocation:
    """
    Exhaustive lattice minimizer of rho.

    Ties go to the smaller p_1, then the smaller p_2, so runs are reproducible.
    Box corners are lattice points, so the closed form is never beaten.
    """
    grid = _check_grid(grid)
    validate_gtw(ch)
    axis_1, axis_2 = _lattice(ch, grid)
    p1, p2 = np.meshgrid(axis_1, axis_2, indexing="ij")
    values = (1.0 + ch.h_1 * p1 + ch.h_2 * p2) / ((1.0 + p1) * (1.0 + p2))

    point = _lattice_argmin(values, axis_1, axis_2)
    return PowerAllocation(
        p=point,
        case_label=classify_allocation(ch, point),
        objective_value=pos_part(sum_rate(ch, point)),
    )


def lattice_gap_bound(ch: StandardGtwChannel, grid: int) -> float:
    """
    Lipschitz bound on the sum-rate loss of snapping to the lattice.

    |d/dP_k| of the sum rate is at most (1 + h_k) / (2 ln 2).
    """
    grid = _check_grid(grid)
    slope = [(1.0 + h) / (2.0 * math.log(2.0)) for h in (ch.h_1, ch.h_2)]
    return slope[0] * ch.pmax_1 / (grid - 1) + slope[1] * ch.pmax_2 / (grid - 1)


def jamming_rate(ch: StandardGtwChannel, p: PowerPoint) -> float:
    """
    User 1's secrecy rate while user 2 transmits Gaussian noise.

    Equals g(P_1) - g(h_1 P_1 / (1 + h_2 P_2)) = -0.5 log2(rho / phi_2); unclamped.

    Raises:
        DomainError: if p lies outside the power box
    """
    check_power(ch, p)
    return gauss_cap(p.p_1) - gauss_cap(ch.h_1 * p.p_1 / (1.0 + ch.h_2 * p.p_2))


def optimal_jamming(ch: StandardGtwChannel) -> PowerAllocation:
    """
    Optimal powers for cooperative jamming by user 2.

    Jam with full power whenever that stops user 1 from being single-user
    decodable (h_1 < 1 + h_2 Pmax_2); otherwise stay silent.
    """
    validate_gtw(ch)
    if ch.h_1 < 1.0 + ch.h_2 * ch.pmax_2:
        point, label = PowerPoint(p_1=ch.pmax_1, p_2=ch.pmax_2), CaseLabel.JAM_BOTH_MAX
    else:
        point, label = PowerPoint(p_1=0.0, p_2=0.0), CaseLabel.JAM_BOTH_ZERO

    return PowerAllocation(
        p=point,
        case_label=label,
        objective_value=pos_part(jamming_rate(ch, point)),
    )


def optimal_jamming_oracle(ch: StandardGtwChannel, grid: int) -> PowerAllocation:
    """Exhaustive lattice minimizer of rho / phi_2, same tie-break as the sum-rate oracle."""
    grid = _check_grid(grid)
    validate_gtw(ch)
    axis_1, axis_2 = _lattice(ch, grid)
    p1, p2 = np.meshgrid(axis_1, axis_2, indexing="ij")
    values = (1.0 + ch.h_1 * p1 + ch.h_2 * p2) / ((1.0 + p1) * (1.0 + ch.h_2 * p2))

    point = _lattice_argmin(values, axis_1, axis_2)
    return PowerAllocation(
        p=point,
        case_label=classify_allocation(ch, point, jamming=True),
        objective_value=pos_part(jamming_rate(ch, point)),
    )


def jamming_region(ch: StandardGtwChannel) -> RegionPolytope:
    """Rates reachable in jamming mode: user 1 up to its jamming rate, user 2 silent."""
    rate = optimal_jamming(ch).objective_value
    return convex_hull([(0.0, 0.0), (rate, 0.0)])


def jamming_advisory(ch: StandardGtwChannel) -> JammingAdvisory:
    """
    Compare transmitting (sum-rate optimum) with jamming for user 2.

    Reported only; nothing is switched automatically.
    """
    transmit = optimal_power(ch).objective_value
    jam = optimal_jamming(ch).objective_value  # user 2 contributes zero rate while jamming

    return JammingAdvisory(
        transmit_objective=transmit,
        jamming_objective=jam,
        recommendation="jam" if jam > transmit else "transmit",
        user2_single_user_decodable=ch.h_2 >= 1.0 + ch.h_1 * ch.pmax_1,
    )


def batw_jamming(ch: BatwChannel) -> BatwJammingResult:
    """
    Binary cooperative jamming.

    The user with the cleaner receiver link (smaller crossover) sends while
    the other transmits uniform random bits. The eavesdropper's view of the
    sender becomes pure noise and the partner strips the known jamming bits,
    so the sender reaches its capacity 1 - h(eps).

    Returns:
        Rate, whether the plain scheme's secret sum rate is zero, and the sender
    """
    validate_batw(ch)
    sender = 1 if ch.eps_1 <= ch.eps_2 else 2
    needed = bin_entropy(ch.eps_1) + bin_entropy(ch.eps_2) >= 1.0 + bin_entropy(ch.eps_w)

    return BatwJammingResult(
        rate=1.0 - bin_entropy(min(ch.eps_1, ch.eps_2)),
        jamming_needed=needed,
        sender=sender,
    )
