"""
Data models for the two-way wire-tap toolkit

Pydantic models for type safety and validation. Channel models only check
types and finiteness here; the range invariants live in secrecy.channel_model
so that the offending field can be reported with a domain-specific message.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

# All rates are bits per channel use; powers are standardized SNRs.
DEFAULT_BUDGET = 2 ** 28
MAX_BLOCK_LENGTH = 62

_VALUE_TYPE = ConfigDict(frozen=True, allow_inf_nan=False, use_enum_values=True)


class CaseLabel(str, Enum):
    """Provenance of a power allocation."""
    BOTH_MAX = "BothMax"
    USER1_MAX_USER2_ZERO = "User1MaxUser2Zero"
    USER2_MAX_USER1_ZERO = "User2MaxUser1Zero"
    BOTH_ZERO = "BothZero"
    JAM_BOTH_MAX = "JamBothMax"
    JAM_BOTH_ZERO = "JamBothZero"
    INTERIOR = "Interior"  # oracle lattice point off the box corners


class RegionShape(str, Enum):
    """Shape classes a single-power rate region can take."""
    POINT = "point"
    SEGMENT = "segment"
    TRIANGLE = "triangle"
    QUADRILATERAL = "quadrilateral"
    PENTAGON = "pentagon"
    RECTANGLE = "rectangle"
    POLYGON = "polygon"  # closures with more than five vertices


class RawGtwChannel(BaseModel):
    """Gaussian two-way wire-tap channel before standardization."""
    model_config = _VALUE_TYPE

    gain_main_1: float
    gain_main_2: float
    gain_tap_1: float
    gain_tap_2: float
    noise_var_1: float
    noise_var_2: float
    noise_var_tap: float
    pmax_1: float
    pmax_2: float


class StandardGtwChannel(BaseModel):
    """Standardized Gaussian channel: unit noises and unit main gains."""
    model_config = _VALUE_TYPE

    pmax_1: float
    pmax_2: float
    h_1: float
    h_2: float
    # Self-interference gains; receivers subtract their own signal so no rate uses them.
    alpha_1: float = 1.0
    alpha_2: float = 1.0


class BatwChannel(BaseModel):
    """Binary additive two-way wire-tap channel."""
    model_config = _VALUE_TYPE

    eps_1: float
    eps_2: float
    eps_w: float


class RatePair(BaseModel):
    """Rate pair in bits per channel use."""
    model_config = _VALUE_TYPE

    r_1: float = Field(ge=0.0)
    r_2: float = Field(ge=0.0)


class RegionPolytope(BaseModel):
    """Convex rate region as counterclockwise vertices starting at (0,0)."""
    model_config = _VALUE_TYPE

    vertices: List[RatePair]


class PowerPoint(BaseModel):
    """Transmit power pair (standardized SNR)."""
    model_config = _VALUE_TYPE

    p_1: float = Field(ge=0.0)
    p_2: float = Field(ge=0.0)


class CapacitySet(BaseModel):
    """Per-user capacities C_1, C_2 and the eavesdropper capacity C_W."""
    model_config = _VALUE_TYPE

    c_1: float
    c_2: float
    c_w: float


class PowerAllocation(BaseModel):
    """Optimized power pair with its case label and objective."""
    model_config = _VALUE_TYPE

    p: PowerPoint
    case_label: CaseLabel
    objective_value: float


class JammingAdvisory(BaseModel):
    """Side-by-side comparison of transmitting and jamming for user 2."""
    model_config = _VALUE_TYPE

    transmit_objective: float
    jamming_objective: float
    recommendation: str
    user2_single_user_decodable: bool


class OptimizerReport(BaseModel):
    """Serialized optimizer output."""
    model_config = _VALUE_TYPE

    mode: str
    allocation: Tuple[float, float]
    case: str
    objective_bits: float
    oracle_gap: Optional[float] = None
    oracle_gap_bound: Optional[float] = None
    advisory: Optional[JammingAdvisory] = None  # jam mode only
    jamming_region: Optional[RegionPolytope] = None  # jam mode only


class BatwJammingResult(BaseModel):
    """Binary cooperative jamming outcome."""
    model_config = _VALUE_TYPE

    rate: float
    jamming_needed: bool
    sender: int


class BatwJamReport(BaseModel):
    """Jamming outcome next to the plain two-way region of the same binary channel."""
    model_config = _VALUE_TYPE

    rate: float
    jamming_needed: bool
    sender: int
    region: RegionPolytope
    secret_sum_bound: float


class JamSweepRow(BaseModel):
    model_config = _VALUE_TYPE

    p_2: float
    rate: float


class SchemeConfig(BaseModel):
    """Block length and codebook sizes of the two-codebook binary scheme."""
    model_config = _VALUE_TYPE

    n: int = Field(ge=1, le=MAX_BLOCK_LENGTH)
    m_1: int = Field(ge=1)
    m_2: int = Field(ge=1)
    mx_1: int = Field(ge=1)
    mx_2: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)

    @property
    def enumeration_cost(self) -> int:
        return self.m_1 * self.mx_1 * self.m_2 * self.mx_2 * 2 ** self.n

    @property
    def secret_rates(self) -> Tuple[float, float]:
        return (math.log2(self.m_1) / self.n, math.log2(self.m_2) / self.n)

    @property
    def randomization_rates(self) -> Tuple[float, float]:
        return (math.log2(self.mx_1) / self.n, math.log2(self.mx_2) / self.n)


class BinaryScheme(BaseModel):
    """Secret and randomization codebooks for both users."""
    model_config = _VALUE_TYPE

    config: SchemeConfig
    secret_books: Tuple[List[List[int]], List[List[int]]]
    rand_books: Tuple[List[List[int]], List[List[int]]]

    @model_validator(mode="after")
    def _check_books(self) -> "BinaryScheme":
        cfg = self.config
        expected = {
            "secret_books[0]": (self.secret_books[0], cfg.m_1),
            "secret_books[1]": (self.secret_books[1], cfg.m_2),
            "rand_books[0]": (self.rand_books[0], cfg.mx_1),
            "rand_books[1]": (self.rand_books[1], cfg.mx_2),
        }
        for name, (book, size) in expected.items():
            if len(book) != size:
                raise ValueError(f"{name} has {len(book)} codewords, expected {size}")
            for word in book:
                if len(word) != cfg.n or any(bit not in (0, 1) for bit in word):
                    raise ValueError(f"{name} holds a codeword that is not a binary {cfg.n}-vector")
        return self


class SecrecyReport(BaseModel):
    """Exact equivocation quantities of a binary scheme, all in bits."""
    model_config = _VALUE_TYPE

    n: int
    eps_w: float
    h_w: float
    h_w_given_z: float
    ratio: float
    i_xsum_z: float
    i_w_z: float
    per_user_ratios: Tuple[float, float]
    h_xsum_given_w: float
    eavesdropper_decoding_gap: float
    c_w: float
    secret_rates: Tuple[float, float]
    randomization_rates: Tuple[float, float]
    rate_design_gap: float


class DecodeErrorReport(BaseModel):
    """Exact ML decoding error at each partner receiver."""
    model_config = _VALUE_TYPE

    eps_self: float
    p_err_1: float  # user 1's combined codeword, decoded at receiver 2
    p_err_2: float  # user 2's combined codeword, decoded at receiver 1


class RunManifest(BaseModel):
    """Provenance record written next to every output file."""
    model_config = _VALUE_TYPE

    command: str
    input_digest: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    tool_version: str
    duration_s: float
