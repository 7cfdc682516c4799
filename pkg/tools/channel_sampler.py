"""
Channel Sampler - seeded random channels and schemes

Generates reproducible random inputs for property checks and batch runs.
"""

from typing import List

import numpy as np
import structlog

from utils.models import BatwChannel, PowerPoint, RawGtwChannel, SchemeConfig, StandardGtwChannel

logger = structlog.get_logger()


class ChannelSampler:
    """
    Draws random channels, power points and scheme configs from one seeded generator.
    """

    def __init__(self, seed: int = 0):
        """Initialize the sampler with numpy's default generator."""
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        logger.debug("channel_sampler_initialized", seed=seed)

    def random_gaussian(self, h_max: float = 10.0, pmax_max: float = 10.0) -> StandardGtwChannel:
        """
        Draw a standardized Gaussian channel.

        Args:
            h_max: Upper end of the uniform range for h_1, h_2
            pmax_max: Upper end of the uniform range for pmax_1, pmax_2

        Returns:
            StandardGtwChannel with unit self-gains
        """
        h_1, h_2 = self.rng.uniform(0.0, h_max, size=2)
        pmax_1, pmax_2 = self.rng.uniform(0.0, pmax_max, size=2)
        return StandardGtwChannel(pmax_1=pmax_1, pmax_2=pmax_2, h_1=h_1, h_2=h_2)

    def random_raw(self) -> RawGtwChannel:
        """Draw a raw Gaussian channel with log-uniform gains and variances."""
        positive = 10.0 ** self.rng.uniform(-1.0, 1.0, size=7)
        pmax_1, pmax_2 = self.rng.uniform(0.0, 10.0, size=2)
        return RawGtwChannel(
            gain_main_1=positive[0], gain_main_2=positive[1],
            gain_tap_1=positive[2], gain_tap_2=positive[3],
            noise_var_1=positive[4], noise_var_2=positive[5], noise_var_tap=positive[6],
            pmax_1=pmax_1, pmax_2=pmax_2,
        )

    def random_batw(self) -> BatwChannel:
        eps_1, eps_2 = self.rng.uniform(0.0, 0.5, size=2)
        eps_w = self.rng.uniform(0.0, 0.5)
        return BatwChannel(eps_1=eps_1, eps_2=eps_2, eps_w=eps_w)

    def random_interior_point(self, ch: StandardGtwChannel, margin: float = 1e-3) -> PowerPoint:
        """Power point strictly inside the box, at least margin * pmax_k from each face."""
        lo = np.array([ch.pmax_1, ch.pmax_2]) * margin
        hi = np.array([ch.pmax_1, ch.pmax_2]) * (1.0 - margin)
        p_1, p_2 = self.rng.uniform(lo, hi)
        return PowerPoint(p_1=p_1, p_2=p_2)

    def random_scheme_config(self, max_n: int = 8, max_book: int = 4, budget: int = 2 ** 26) -> SchemeConfig:
        """
        Draw a small scheme config that fits the enumeration budget.

        Sizes are drawn again until the enumeration cost fits.
        """
        while True:
            n = int(self.rng.integers(1, max_n + 1))
            m_1, m_2, mx_1, mx_2 = (int(x) for x in self.rng.integers(1, max_book + 1, size=4))
            seed = int(self.rng.integers(0, 2 ** 32))
            config = SchemeConfig(n=n, m_1=m_1, m_2=m_2, mx_1=mx_1, mx_2=mx_2, seed=seed, budget=budget)
            if config.enumeration_cost <= budget:
                return config

    def gaussian_batch(self, count: int = 200, **kwargs) -> List[StandardGtwChannel]:
        """
        Draw several Gaussian channels.

        Args:
            count: Number of channels

        Returns:
            List of channels
        """
        channels = [self.random_gaussian(**kwargs) for _ in range(count)]
        logger.info("generated_gaussian_channels", count=count, seed=self.seed)
        return channels

    def scheme_batch(self, count: int = 500, **kwargs) -> List[SchemeConfig]:
        configs = [self.random_scheme_config(**kwargs) for _ in range(count)]
        logger.info("generated_scheme_configs", count=count, seed=self.seed)
        return configs
