"""Random monomial ideals from the graded model M(n, D, p).

Randomness contract
-------------------
* Bit generator: numpy's PCG64 (PCG XSL RR 128/64), seeded with a single
  64-bit integer. Only ``random_raw`` is used, whose output stream numpy
  keeps stable across releases and platforms.
* Bernoulli(p) draw with p = a/b exact: take one raw 64-bit word u and
  include iff ``u * b < a * 2**64``. p = 1 includes everything without
  drawing a threshold comparison.
* Draws are consumed one per monomial in canonical (lex decreasing) order.
* Derived seeds use the SplitMix64 finalizer: ``derive_seed(s, i) =
  mix64(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from .errors import UsageError
from .monomial import ENUMERATION_GUARD, MonomialIdeal, monomial_array

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed number ``index`` of ``seed`` (both 64-bit unsigned)."""
    return mix64((seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def parse_probability(p) -> Fraction:
    """Exact probability from a decimal string, Fraction, or int.

    Floats are accepted through their shortest repr, so ``0.1`` means 1/10.
    """
    if isinstance(p, Fraction):
        value = p
    elif isinstance(p, int):
        value = Fraction(p)
    else:
        text = repr(p) if isinstance(p, float) else str(p).strip()
        try:
            if "/" in text:
                value = Fraction(text)
            else:
                value = Fraction(Decimal(text))
        except (InvalidOperation, ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse probability {p!r}") from None
    if not 0 <= value <= 1:
        raise UsageError(f"probability {value} outside [0, 1]")
    return value


def make_rng(seed: int) -> np.random.PCG64:
    if not 0 <= seed <= MASK64:
        raise UsageError(f"seed {seed} is not a 64-bit unsigned integer")
    return np.random.PCG64(seed)


def bernoulli_mask(bitgen: np.random.PCG64, count: int, p: Fraction) -> np.ndarray:
    """``count`` exact Bernoulli(p) draws consuming ``count`` raw words."""
    raw = bitgen.random_raw(count) if count else np.zeros(0, dtype=np.uint64)
    if p == 1:
        return np.ones(count, dtype=bool)
    if p == 0:
        return np.zeros(count, dtype=bool)
    # u * den < num * 2^64  <=>  u < ceil(num * 2^64 / den)
    threshold = -((-p.numerator << 64) // p.denominator)
    if threshold > MASK64:
        return np.ones(count, dtype=bool)
    return raw < np.uint64(threshold)


@dataclass(frozen=True)
class ModelParams:
    n: int
    D: int
    p: Fraction
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("n must be >= 1")
        if self.D < 1:
            raise UsageError("D must be >= 1")
        object.__setattr__(self, "p", parse_probability(self.p))
        if not 0 <= self.seed <= MASK64:
            raise UsageError(f"seed {self.seed} is not a 64-bit unsigned integer")

    @property
    def q(self) -> Fraction:
        return 1 - self.p


def sample_rows(params: ModelParams, guard: int = ENUMERATION_GUARD) -> np.ndarray:
    """Exponent vectors of the sampled generators, in canonical order."""
    pool = monomial_array(params.n, params.D, guard)
    keep = bernoulli_mask(make_rng(params.seed), len(pool), params.p)
    return pool[keep]


def sample_ideal(params: ModelParams, guard: int = ENUMERATION_GUARD) -> MonomialIdeal:
    rows = sample_rows(params, guard)
    return MonomialIdeal.from_rows(params.n, map(tuple, rows.tolist()))


def sample_subset(pool: np.ndarray, p, seed: int) -> np.ndarray:
    """Independent Bernoulli(p) selection of the rows of ``pool``."""
    keep = bernoulli_mask(make_rng(seed), len(pool), parse_probability(p))
    return pool[keep]
