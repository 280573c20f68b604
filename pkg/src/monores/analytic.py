"""Closed-form counts and probabilities for the graded model, in exact arithmetic.

Notation: m_n(d) is the number of degree-d monomials in n variables
(zero for d < 0), q = 1 - p. For an exponent vector alpha with
|alpha| = D + a and alpha_i >= a for all i, the degree-D divisors of
x^alpha form a simplex of side a; the witness and non-Scarf-witness events
for alpha depend only on which of those divisors were drawn.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import UsageError
from .monomial import count_monomials
from .sampler import parse_probability

m = count_monomials


def _check_n(n: int):
    if n < 2:
        raise UsageError("these formulas need n >= 2")


def facet_count(n: int, a: int) -> int:
    """Lattice points in the relative interior of one facet: m_{n-1}(a-n+1)."""
    return m(n - 1, a - n + 1)


def interior_count(n: int, a: int) -> int:
    """Strong divisors of x^alpha in degree D: m_n(a-n)."""
    return m(n, a - n)


def prob_witness_lcm(n: int, a: int, p) -> Fraction:
    """P(x^alpha is a witness lcm) = (1 - q^f)^n q^i, f = facet count, i = interior count."""
    _check_n(n)
    if a < 0:
        raise UsageError("a must be non-negative")
    p = parse_probability(p)
    q = 1 - p
    return (1 - q ** facet_count(n, a)) ** n * q ** interior_count(n, a)


def prob_nonscarf_lcm(n: int, a: int, p) -> Fraction:
    """P(x^alpha is the lcm of a non-Scarf witness set).

    Every facet interior is hit, not all of them exactly once, and the
    interior is empty.
    """
    _check_n(n)
    if a < 0:
        raise UsageError("a must be non-negative")
    p = parse_probability(p)
    q = 1 - p
    f = facet_count(n, a)
    if f == 0:
        return Fraction(0)
    exactly_one = f * p * q ** (f - 1)
    return ((1 - q ** f) ** n - exactly_one ** n) * q ** interior_count(n, a)


def boundary_count(n: int, a: int) -> int:
    """Degree-D divisors of x^alpha on faces of codimension >= 2 of the simplex."""
    return m(n, a) - n * facet_count(n, a) - interior_count(n, a)


def prob_nonscarf_lcm_exact(n: int, a: int, p) -> Fraction:
    """P(x^alpha is the lcm of a non-Scarf witness set), counting every extra divisor.

    :func:`prob_nonscarf_lcm` only lets the extra generator sit in a facet
    interior. A divisor on a lower-dimensional face (a vertex of the simplex,
    say) also divides lcm(L), so the "no extra generator" case must leave
    those ``boundary_count`` points empty as well.
    """
    _check_n(n)
    if a < 0:
        raise UsageError("a must be non-negative")
    p = parse_probability(p)
    q = 1 - p
    f = facet_count(n, a)
    if f == 0:
        return Fraction(0)
    i = interior_count(n, a)
    exactly_one = f * p * q ** (f - 1)
    return (1 - q ** f) ** n * q ** i - exactly_one ** n * q ** (i + boundary_count(n, a))


def restricted_count(n: int, D: int, a: int) -> int:
    """Number of alpha with |alpha| = D + a and every alpha_i >= a: m_n(D + a - n a)."""
    return m(n, D + a - n * a)


def _iroot_floor(x: Fraction, k: int) -> int:
    """floor(x ** (1/k)) for rational x >= 0."""
    lo, hi = 0, 1
    while Fraction(hi) ** k <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def cutoff(n: int, p) -> int:
    """A = floor((p/2)^(-1/(n-1))) - n, the upper end of the excess-degree sums."""
    _check_n(n)
    p = parse_probability(p)
    if p == 0:
        raise UsageError("the cutoff is infinite at p = 0")
    return _iroot_floor(2 / p, n - 1) - n


def lemma_a_max(n: int, p) -> int:
    """Largest integer a with a <= p^(-1/(n-1))."""
    _check_n(n)
    p = parse_probability(p)
    return _iroot_floor(1 / p, n - 1)


@dataclass(frozen=True)
class FormulaSum:
    total: Fraction
    terms: dict
    empty: bool = False  # summation range was empty (p too large for the cutoff)


def expected_Wa(n: int, D: int, a: int, p) -> Fraction:
    return restricted_count(n, D, a) * prob_witness_lcm(n, a, p)


def expected_Ya(n: int, D: int, a: int, p) -> Fraction:
    return restricted_count(n, D, a) * prob_nonscarf_lcm(n, a, p)


def expected_Ya_exact(n: int, D: int, a: int, p) -> Fraction:
    return restricted_count(n, D, a) * prob_nonscarf_lcm_exact(n, a, p)


def _formula_sum(term, n, D, p, a_min, a_max) -> FormulaSum:
    _check_n(n)
    p = parse_probability(p)
    if p == 0:
        return FormulaSum(Fraction(0), {}, empty=False)
    if a_max is None:
        a_max = cutoff(n, p)
    terms = {a: term(n, D, a, p) for a in range(a_min, a_max + 1)}
    return FormulaSum(sum(terms.values(), Fraction(0)), terms, empty=not terms)


def expected_W(n: int, D: int, p, a_min: int | None = None, a_max: int | None = None) -> FormulaSum:
    """E[W] = sum over a in [n-1, A] of E[W_a]."""
    return _formula_sum(expected_Wa, n, D, p, n - 1 if a_min is None else a_min, a_max)


def expected_Y(n: int, D: int, p, a_min: int = 2, a_max: int | None = None,
               exact: bool = False) -> FormulaSum:
    """E[Y] = sum over a in [a_min, A] of E[Y_a]; the count-times-probability form is an expectation.

    ``exact=True`` sums :func:`expected_Ya_exact` instead.
    """
    return _formula_sum(expected_Ya_exact if exact else expected_Ya, n, D, p, a_min, a_max)


def witness_bounds(n: int, a: int, p) -> tuple[Fraction, Fraction]:
    """(p^n f^n / 2, p^n f^n) with f the facet count."""
    p = parse_probability(p)
    base = p ** n * facet_count(n, a) ** n
    return base / 2, base


def nonscarf_bounds(n: int, a: int, p) -> tuple[Fraction, Fraction]:
    """(p^(n+1) f^(n+1) / 4, p^(n+1) f^(n+1) / 2) with f the facet count."""
    p = parse_probability(p)
    base = p ** (n + 1) * facet_count(n, a) ** (n + 1)
    return base / 4, base / 2


@dataclass(frozen=True)
class Thresholds:
    n: int
    pdim: Fraction
    generic: Fraction
    scarf: Fraction

    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.pdim, self.generic, self.scarf

    def p_pdim(self, D: float, c: float = 1.0) -> float:
        return c * D ** float(self.pdim)

    def p_generic(self, D: float, c: float = 1.0) -> float:
        return c * D ** float(self.generic)

    def p_scarf(self, D: float, c: float = 1.0) -> float:
        return c * D ** float(self.scarf)


def thresholds(n: int) -> Thresholds:
    """Exponents e with p = D^e: projective dimension, genericity, non-Scarfness."""
    _check_n(n)
    return Thresholds(n, Fraction(1 - n), Fraction(3, 2) - n, 2 - n - Fraction(1, n))


def to_decimal(x: Fraction, digits: int = 20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


FORMULA_COLUMNS = ("n", "D", "a", "p", "quantity", "value_decimal", "value_fraction")


def formula_rows(n: int, D: int, p, a_values=None) -> list[dict]:
    """Every closed-form quantity at (n, D, p) as CSV-ready rows."""
    p = parse_probability(p)
    A = cutoff(n, p) if p else None
    if a_values is None:
        hi = A if A is not None else n + 5
        a_values = range(0, max(hi, n - 1) + 1)
    rows = []

    def add(quantity, value, a=""):
        value = Fraction(value)
        rows.append({"n": n, "D": D, "a": a, "p": str(p), "quantity": quantity,
                     "value_decimal": to_decimal(value), "value_fraction": str(value)})

    add("m_n(D)", m(n, D))
    if A is not None:
        add("cutoff_A", A)
    th = thresholds(n)
    add("threshold_exponent_pdim", th.pdim)
    add("threshold_exponent_generic", th.generic)
    add("threshold_exponent_scarf", th.scarf)
    for a in a_values:
        add("prob_witness_lcm", prob_witness_lcm(n, a, p), a)
        add("prob_nonscarf_lcm", prob_nonscarf_lcm(n, a, p), a)
        add("expected_W_a", expected_Wa(n, D, a, p), a)
        add("prob_nonscarf_lcm_exact", prob_nonscarf_lcm_exact(n, a, p), a)
        add("expected_Y_a", expected_Ya(n, D, a, p), a)
        add("expected_Y_a_exact", expected_Ya_exact(n, D, a, p), a)
    W = expected_W(n, D, p)
    Y = expected_Y(n, D, p)
    add("expected_W", W.total)
    add("expected_Y", Y.total)
    add("expected_Y_exact", expected_Y(n, D, p, exact=True).total)
    add("expected_W_empty_range", int(W.empty))
    add("expected_Y_empty_range", int(Y.empty))
    return rows
