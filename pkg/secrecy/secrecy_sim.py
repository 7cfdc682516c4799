"""
Secrecy simulator - two-codebook binary scheme and exact equivocation

Each user adds (xor) a uniformly chosen randomization codeword to the codeword
of its secret message. The eavesdropper sees the xor of both transmissions
through a binary symmetric tap, so everything it learns about the messages
passes through X_sum = X_1 xor X_2.

All quantities are computed by enumerating every message, randomization index
and tap error pattern; nothing is sampled. Codewords are handled as integers
with bit i holding symbol i, and distributions over {0,1}^n as vectors of
length 2^n indexed by that integer.
"""

import math
from typing import List, Sequence, Tuple

import numpy as np
import structlog
from scipy.special import entr

from secrecy.channel_model import validate_batw
from secrecy.rate_region import batw_capacities, bin_entropy
from utils.errors import BudgetExceededError, DomainError, NumericalError
from utils.models import (
    DEFAULT_BUDGET,
    BatwChannel,
    BinaryScheme,
    DecodeErrorReport,
    SchemeConfig,
    SecrecyReport,
)

logger = structlog.get_logger()

_LN2 = math.log(2.0)
# Probabilities below this count as exact zeros in entropy sums.
PROB_FLOOR = 1e-300
# Most array cells one enumeration step holds at once.
CHUNK_CELLS = 1 << 20
# Allowed rounding error of an information quantity, per bit of block length.
ROUNDING_SLACK = 1e-9

Book = List[List[int]]


def _check_budget(config: SchemeConfig) -> None:
    cost = config.enumeration_cost
    if cost > config.budget:
        raise BudgetExceededError("m_1*mx_1*m_2*mx_2*2^n", cost, config.budget)


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 0.5:
        raise DomainError(f"{name} must lie in [0, 0.5], got {value!r}")


def build_scheme(config: SchemeConfig) -> BinaryScheme:
    """
    Draw all four codebooks from a seeded generator.

    Symbols are fair coin flips from numpy's PCG64 generator seeded with
    config.seed, drawn book by book in the order secret_1, rand_1, secret_2,
    rand_2 and row-major within a book.

    Raises:
        BudgetExceededError: if exact enumeration of the scheme would exceed config.budget
    """
    _check_budget(config)
    rng = np.random.default_rng(config.seed)

    def draw(size: int) -> Book:
        return rng.integers(0, 2, size=(size, config.n), dtype=np.uint8).tolist()

    secret_1 = draw(config.m_1)
    rand_1 = draw(config.mx_1)
    secret_2 = draw(config.m_2)
    rand_2 = draw(config.mx_2)

    logger.debug("scheme_built", n=config.n, seed=config.seed, cost=config.enumeration_cost)
    return BinaryScheme(
        config=config,
        secret_books=(secret_1, secret_2),
        rand_books=(rand_1, rand_2),
    )


def scheme_from_books(
    config: SchemeConfig,
    secret_books: Tuple[Book, Book],
    rand_books: Tuple[Book, Book],
) -> BinaryScheme:
    """Build a scheme from explicit codebooks instead of drawing them."""
    _check_budget(config)
    return BinaryScheme(config=config, secret_books=secret_books, rand_books=rand_books)


def encode(scheme: BinaryScheme, w_1: int, w_2: int, r_1: int, r_2: int) -> Tuple[List[int], List[int]]:
    """
    Transmitted words X_k = secret_k[w_k] xor rand_k[r_k].

    Raises:
        IndexError: if any index is outside its codebook
    """
    words = []
    for k, (w, r) in enumerate(((w_1, r_1), (w_2, r_2))):
        secret, rand = scheme.secret_books[k], scheme.rand_books[k]
        if not (0 <= w < len(secret)):
            raise IndexError(f"message index w_{k + 1}={w} out of range [0, {len(secret)})")
        if not (0 <= r < len(rand)):
            raise IndexError(f"randomization index r_{k + 1}={r} out of range [0, {len(rand)})")
        words.append([a ^ b for a, b in zip(secret[w], rand[r])])
    return words[0], words[1]


def entropy_bits(p: np.ndarray, axis: int = -1) -> np.ndarray:
    """Shannon entropy in bits along axis, with 0 log 0 = 0."""
    p = np.where(p < PROB_FLOOR, 0.0, p)
    return entr(p).sum(axis=axis) / _LN2


def _as_ints(book: Sequence[Sequence[int]], n: int) -> np.ndarray:
    weights = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    return (np.asarray(book, dtype=np.uint64).reshape(-1, n) * weights).sum(axis=1)


def _combined_book(scheme: BinaryScheme, k: int) -> np.ndarray:
    # shape (m_k, mx_k); flattened index is w * mx_k + r
    n = scheme.config.n
    secret = _as_ints(scheme.secret_books[k], n)
    rand = _as_ints(scheme.rand_books[k], n)
    return secret[:, None] ^ rand[None, :]


def _through_tap(dist: np.ndarray, n: int, eps: float) -> np.ndarray:
    """Push distributions over {0,1}^n (last axis) through n independent bit flips."""
    if eps == 0.0:
        return dist
    lead = dist.shape[:-1]
    v = dist.reshape(lead + (2,) * n)
    for axis in range(len(lead), len(lead) + n):
        v = (1.0 - eps) * v + eps * np.flip(v, axis=axis)
    return v.reshape(dist.shape)


def _xor_counts(word: np.ndarray, inner: np.ndarray, size: int) -> np.ndarray:
    """Histogram of word[r] ^ inner[w, s] over all (r, s), one row of length size per w."""
    rows, mx_inner = inner.shape
    offsets = (np.arange(rows, dtype=np.int64) * size)[None, :, None]
    counts = np.zeros(rows * size, dtype=np.int64)
    step = max(1, CHUNK_CELLS // (rows * mx_inner))
    for start in range(0, len(word), step):
        xs = word[start:start + step, None, None] ^ inner[None, :, :]
        counts += np.bincount((xs + offsets).ravel(), minlength=rows * size)
    return counts.reshape(rows, size)


def clamp_rounding(name: str, value: float, lo: float, hi: float, slack: float) -> float:
    """
    Clamp value into [lo, hi] when it misses by at most slack.

    Raises:
        NumericalError: if value lies further outside the range
    """
    if not lo - slack <= value <= hi + slack:
        raise NumericalError(f"{name}={value!r} outside [{lo!r}, {hi!r}]")
    return min(max(value, lo), hi)


def exact_equivocation(scheme: BinaryScheme, eps_w: float) -> SecrecyReport:
    """
    Exact equivocation of the scheme against a tap with crossover eps_w.

    Messages and randomization indices are uniform. X_sum is symmetric in the
    users, so the user with more messages is walked one message at a time
    while the other user's messages are handled in blocks of rows. Working
    memory is about CHUNK_CELLS cells per step plus one table of length 2^n
    per message of the user with fewer messages.

    Args:
        scheme: Codebooks to evaluate
        eps_w: Eavesdropper crossover probability in [0, 0.5]

    Returns:
        SecrecyReport with entropies and informations in bits

    Raises:
        BudgetExceededError: if the scheme exceeds its enumeration budget
        DomainError: if eps_w lies outside [0, 0.5]
        NumericalError: if an information quantity leaves its range beyond rounding
    """
    cfg = scheme.config
    _check_budget(cfg)
    _check_probability("eps_w", eps_w)

    n, size = cfg.n, 1 << cfg.n
    books = [_combined_book(scheme, k).astype(np.int64) for k in (0, 1)]
    outer = 0 if cfg.m_1 >= cfg.m_2 else 1
    book_o, book_i = books[outer], books[1 - outer]
    m_o, m_i = len(book_o), len(book_i)
    pairs = cfg.mx_1 * cfg.mx_2
    rows = max(1, min(m_i, CHUNK_CELLS // size))
    blocks = range(0, m_i, rows)

    pz_total = np.zeros(size)
    pz_given_inner = np.zeros((m_i, size))
    h_z_given_w = 0.0
    h_z_given_outer = 0.0
    h_xs_given_w = 0.0

    for w_o in range(m_o):
        pz_outer = np.zeros(size)
        for lo in blocks:
            p_xs = _xor_counts(book_o[w_o], book_i[lo:lo + rows], size) / pairs
            p_z = _through_tap(p_xs, n, eps_w)

            h_xs_given_w += float(entropy_bits(p_xs).sum())
            h_z_given_w += float(entropy_bits(p_z).sum())
            pz_given_inner[lo:lo + rows] += p_z
            pz_outer += p_z.sum(axis=0)
        h_z_given_outer += float(entropy_bits(pz_outer / m_i))
        pz_total += pz_outer

    messages = m_o * m_i
    h_z = float(entropy_bits(pz_total / messages))
    h_z_given_w /= messages
    h_xs_given_w /= messages
    h_z_given_outer /= m_o
    h_z_given_inner = sum(
        float(entropy_bits(pz_given_inner[lo:lo + rows] / m_o).sum()) for lo in blocks
    ) / m_i
    h_z_given_w1, h_z_given_w2 = (
        (h_z_given_outer, h_z_given_inner) if outer == 0 else (h_z_given_inner, h_z_given_outer)
    )

    c_w = 1.0 - bin_entropy(eps_w)
    noise = n * bin_entropy(eps_w)
    h_w = math.log2(messages)
    slack = ROUNDING_SLACK * n
    i_xsum_z = clamp_rounding("I(X_sum;Z)", h_z - noise, 0.0, n * c_w, slack)
    i_w_z = clamp_rounding("I(W;Z)", h_z - h_z_given_w, 0.0, min(h_w, i_xsum_z), slack)
    h_w_given_z = h_w - i_w_z

    def ratio(name: str, h: float, leaked: float) -> float:
        leaked = clamp_rounding(name, leaked, 0.0, h, slack)
        return 1.0 if h == 0.0 else (h - leaked) / h

    rand_rates = cfg.randomization_rates
    design_gap = rand_rates[0] + rand_rates[1] - c_w
    if abs(design_gap) > 1.0 / n:
        logger.warning("randomization_rate_mismatch", rand_sum=rand_rates[0] + rand_rates[1],
                       c_w=c_w, n=n)

    report = SecrecyReport(
        n=n,
        eps_w=eps_w,
        h_w=h_w,
        h_w_given_z=h_w_given_z,
        ratio=ratio("I(W;Z)", h_w, i_w_z),
        i_xsum_z=i_xsum_z,
        i_w_z=i_w_z,
        per_user_ratios=(
            ratio("I(W_1;Z)", math.log2(cfg.m_1), h_z - h_z_given_w1),
            ratio("I(W_2;Z)", math.log2(cfg.m_2), h_z - h_z_given_w2),
        ),
        h_xsum_given_w=h_xs_given_w,
        eavesdropper_decoding_gap=clamp_rounding(
            "H(X_sum|W,Z)", h_xs_given_w - h_z_given_w + noise, 0.0, h_xs_given_w, slack
        ),
        c_w=c_w,
        secret_rates=cfg.secret_rates,
        randomization_rates=rand_rates,
        rate_design_gap=design_gap,
    )
    logger.info("equivocation_computed", n=n, eps_w=eps_w, ratio=report.ratio,
                i_xsum_z=i_xsum_z, cost=cfg.enumeration_cost)
    return report


def _ml_error(codes: np.ndarray, n: int, eps: float) -> float:
    codes = codes.ravel()
    size = 1 << n
    step = max(1, CHUNK_CELLS // len(codes))
    correct = 0.0

    for start in range(0, size, step):
        y = np.arange(start, min(start + step, size), dtype=np.uint64)
        if eps == 0.5:
            # every codeword is equally likely; the lowest index wins the tie
            d = np.bitwise_count(y ^ codes[0]).astype(np.int64)
        else:
            d = np.bitwise_count(y[:, None] ^ codes[None, :]).min(axis=1).astype(np.int64)
        correct += float(np.sum(eps ** d * (1.0 - eps) ** (n - d)))

    return max(1.0 - correct / len(codes), 0.0)


def decode_error(scheme: BinaryScheme, eps_self: float) -> DecodeErrorReport:
    """
    Exact ML decoding error of each user's combined codeword at the partner.

    The partner removes its own transmission and faces the other user's
    codeword through a binary symmetric channel with crossover eps_self.
    It decodes over the whole m * mx combined book; ties go to the lowest
    combined index w * mx + r. Errors are averaged uniformly over messages
    and randomization indices.

    Raises:
        BudgetExceededError: if the scheme exceeds its enumeration budget
        DomainError: if eps_self lies outside [0, 0.5]
    """
    _check_budget(scheme.config)
    _check_probability("eps_self", eps_self)
    n = scheme.config.n

    report = DecodeErrorReport(
        eps_self=eps_self,
        p_err_1=_ml_error(_combined_book(scheme, 0), n, eps_self),
        p_err_2=_ml_error(_combined_book(scheme, 1), n, eps_self),
    )
    logger.debug("decode_error_computed", eps_self=eps_self,
                 p_err=(report.p_err_1, report.p_err_2))
    return report


def design_scheme(ch: BatwChannel, n: int, seed: int = 0, budget: int = DEFAULT_BUDGET) -> SchemeConfig:
    """
    Pick codebook sizes for a binary channel at block length n.

    Rates are whole bits per block. Randomization bits are split as evenly as
    the per-user capacities allow so that together they come as close to
    n C_W as possible; the remaining capacity carries secret bits, capped so
    that the secret sum stays within n (C_1 + C_2 - C_W).

    Args:
        ch: Binary channel
        n: Block length
        seed: Seed recorded in the returned config
        budget: Enumeration budget recorded in the returned config

    Returns:
        SchemeConfig with power-of-two codebook sizes

    Raises:
        BudgetExceededError: if the designed scheme cannot be enumerated within budget
    """
    validate_batw(ch)
    caps = batw_capacities(ch)

    cap_1 = int(math.floor(n * caps.c_1 + 1e-9))
    cap_2 = int(math.floor(n * caps.c_2 + 1e-9))
    tap_bits = int(math.floor(n * caps.c_w + 0.5))

    rand_1 = min(cap_1, (tap_bits + 1) // 2)
    rand_2 = min(cap_2, tap_bits - rand_1)
    rand_1 = min(cap_1, tap_bits - rand_2)

    secret_1, secret_2 = cap_1 - rand_1, cap_2 - rand_2
    secret_sum = max(int(math.floor(n * (caps.c_1 + caps.c_2 - caps.c_w) + 1e-9)), 0)
    excess = max(secret_1 + secret_2 - secret_sum, 0)
    cut = min(excess, secret_2)
    secret_2 -= cut
    secret_1 -= excess - cut

    config = SchemeConfig(
        n=n,
        m_1=1 << secret_1, m_2=1 << secret_2,
        mx_1=1 << rand_1, mx_2=1 << rand_2,
        seed=seed, budget=budget,
    )
    logger.info("scheme_designed", n=n, secret_bits=(secret_1, secret_2),
                rand_bits=(rand_1, rand_2), tap_bits=tap_bits)
    _check_budget(config)
    return config
