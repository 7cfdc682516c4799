"""
Channel model - parameter validation and standardization

Validates Gaussian and binary two-way wire-tap channels and maps a raw
Gaussian channel (arbitrary gains and noise variances) onto the standard
form with unit noises and unit main gains.
"""

import math
from typing import Iterable, Tuple

import structlog

from utils.errors import ChannelParameterError
from utils.models import BatwChannel, RawGtwChannel, StandardGtwChannel

logger = structlog.get_logger()


def _require(checks: Iterable[Tuple[str, float, bool, str]]) -> None:
    for field, value, ok, requirement in checks:
        if not (math.isfinite(value) and ok):
            raise ChannelParameterError(field, value, requirement)


def validate_raw(raw: RawGtwChannel) -> RawGtwChannel:
    """
    Check the invariants of a raw Gaussian channel.

    Main gains and noise variances must be strictly positive; tap gains and
    power limits may be zero.

    Raises:
        ChannelParameterError: naming the first offending field
    """
    _require([
        ("gain_main_1", raw.gain_main_1, raw.gain_main_1 > 0, "> 0"),
        ("gain_main_2", raw.gain_main_2, raw.gain_main_2 > 0, "> 0"),
        ("gain_tap_1", raw.gain_tap_1, raw.gain_tap_1 >= 0, ">= 0"),
        ("gain_tap_2", raw.gain_tap_2, raw.gain_tap_2 >= 0, ">= 0"),
        ("noise_var_1", raw.noise_var_1, raw.noise_var_1 > 0, "> 0"),
        ("noise_var_2", raw.noise_var_2, raw.noise_var_2 > 0, "> 0"),
        ("noise_var_tap", raw.noise_var_tap, raw.noise_var_tap > 0, "> 0"),
        ("pmax_1", raw.pmax_1, raw.pmax_1 >= 0, ">= 0"),
        ("pmax_2", raw.pmax_2, raw.pmax_2 >= 0, ">= 0"),
    ])
    return raw


def validate_gtw(ch: StandardGtwChannel) -> StandardGtwChannel:
    """Check the invariants of a standardized Gaussian channel."""
    _require([
        ("pmax_1", ch.pmax_1, ch.pmax_1 >= 0, ">= 0"),
        ("pmax_2", ch.pmax_2, ch.pmax_2 >= 0, ">= 0"),
        ("h_1", ch.h_1, ch.h_1 >= 0, ">= 0"),
        ("h_2", ch.h_2, ch.h_2 >= 0, ">= 0"),
        ("alpha_1", ch.alpha_1, ch.alpha_1 > 0, "> 0"),
        ("alpha_2", ch.alpha_2, ch.alpha_2 > 0, "> 0"),
    ])
    return ch


def validate_batw(ch: BatwChannel) -> BatwChannel:
    """
    Check the crossover probabilities of a binary channel.

    Receivers need eps_k in [0, 0.5); the eavesdropper may sit at 0.5,
    where it learns nothing.

    Returns:
        The channel unchanged

    Raises:
        ChannelParameterError: naming the offending field
    """
    _require([
        ("eps_1", ch.eps_1, 0.0 <= ch.eps_1 < 0.5, "0 <= eps_1 < 0.5"),
        ("eps_2", ch.eps_2, 0.0 <= ch.eps_2 < 0.5, "0 <= eps_2 < 0.5"),
        ("eps_w", ch.eps_w, 0.0 <= ch.eps_w <= 0.5, "0 <= eps_w <= 0.5"),
    ])
    return ch


def standardize(raw: RawGtwChannel) -> StandardGtwChannel:
    """
    Rescale a raw Gaussian channel to its standard form.

    Each user's codewords are scaled by the partner's main gain over the
    partner receiver's noise variance, so both legitimate links see unit
    gain and unit noise; the eavesdropper gains absorb the rest.

    Args:
        raw: Channel with arbitrary gains and noise variances

    Returns:
        Equivalent standardized channel

    Raises:
        ChannelParameterError: if raw violates its invariants
    """
    validate_raw(raw)

    standard = StandardGtwChannel(
        pmax_1=raw.gain_main_1 / raw.noise_var_2 * raw.pmax_1,
        pmax_2=raw.gain_main_2 / raw.noise_var_1 * raw.pmax_2,
        h_1=raw.gain_tap_1 * raw.noise_var_2 / (raw.gain_main_1 * raw.noise_var_tap),
        h_2=raw.gain_tap_2 * raw.noise_var_1 / (raw.gain_main_2 * raw.noise_var_tap),
        alpha_1=raw.noise_var_2 / (raw.gain_main_1 * raw.noise_var_1),
        alpha_2=raw.noise_var_1 / (raw.gain_main_2 * raw.noise_var_2),
    )

    logger.debug("channel_standardized", pmax=(standard.pmax_1, standard.pmax_2),
                 h=(standard.h_1, standard.h_2))
    return standard
