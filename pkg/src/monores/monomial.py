"""Exact monomial arithmetic, divisibility predicates and ideal-level invariants.

A monomial x^a in k[x_1, ..., x_n] is stored as its exponent vector ``a``.
Ideals carry their minimal generating set in canonical order: exponent
vectors sorted lexicographically decreasing, the same order in which
:func:`enumerate_monomials` lists them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardError, ParseError, UsageError

MAX_DEGREE = 10_000
ENUMERATION_GUARD = 1_000_000
KRULL_GUARD = 20


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise UsageError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise UsageError(f"negative exponent in {exps}")
        if any(e > MAX_DEGREE for e in exps):
            raise GuardError("max_degree", max(exps), MAX_DEGREE)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    def __str__(self):
        if self.is_one():
            return "1"
        parts = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts)


def _check_same_n(a: Monomial, b: Monomial):
    if a.n != b.n:
        raise UsageError(f"dimension mismatch: {a.n} vs {b.n} variables")


def lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_same_n(a, b)
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    _check_same_n(a, b)
    return Monomial(tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


def divides(a: Monomial, b: Monomial) -> bool:
    _check_same_n(a, b)
    return all(x <= y for x, y in zip(a.exponents, b.exponents))


def strongly_divides(a: Monomial, b: Monomial) -> bool:
    """True iff every nonzero exponent of ``a`` is strictly below that of ``b``."""
    _check_same_n(a, b)
    return all(x < y for x, y in zip(a.exponents, b.exponents) if x)


def is_dominant_set(monomials: Iterable[Monomial]) -> bool:
    """True iff each element beats every other element in some variable.

    Vacuously true for the empty set and for singletons.
    """
    L = list(monomials)
    if not L:
        return True
    n = L[0].n
    for m in L:
        _check_same_n(L[0], m)
    for k, m in enumerate(L):
        others = L[:k] + L[k + 1:]
        if not any(
            all(m.exponents[i] > o.exponents[i] for o in others) for i in range(n)
        ):
            return False
    return True


def count_monomials(n: int, D: int) -> int:
    """Number of degree-D monomials in n variables; zero for negative D."""
    if n < 1:
        raise UsageError("n must be positive")
    if D < 0:
        return 0
    return comb(D + n - 1, n - 1)


@lru_cache(maxsize=64)
def _monomial_array(n: int, D: int) -> np.ndarray:
    size = count_monomials(n, D)
    if n == 1:
        return np.array([[D]], dtype=np.int64)
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(D + n - 1), n - 1)),
        dtype=np.int64,
        count=size * (n - 1),
    ).reshape(size, n - 1)
    # stars and bars: exponents are the gaps between consecutive bars
    padded = np.empty((size, n + 1), dtype=np.int64)
    padded[:, 0] = -1
    padded[:, 1:n] = bars
    padded[:, n] = D + n - 1
    out = np.diff(padded, axis=1) - 1
    out = out[::-1].copy()
    out.setflags(write=False)
    return out


def monomial_array(n: int, D: int, guard: int = ENUMERATION_GUARD) -> np.ndarray:
    """All degree-D exponent vectors as an (m_n(D), n) array, lex decreasing."""
    if n < 1 or D < 0:
        raise UsageError(f"need n >= 1 and D >= 0, got n={n}, D={D}")
    if D > MAX_DEGREE:
        raise GuardError("max_degree", D, MAX_DEGREE)
    size = count_monomials(n, D)
    if size > guard:
        raise GuardError("enumeration", size, guard, f"m_{n}({D}) monomials")
    return _monomial_array(n, D)


def enumerate_monomials(n: int, D: int, guard: int = ENUMERATION_GUARD) -> list[Monomial]:
    return [Monomial(tuple(row)) for row in monomial_array(n, D, guard).tolist()]


def _canonical(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(rows), reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generating set.

    ``unit`` marks the ideal <1>; it is representable (hand input may
    produce it) but every homological routine rejects it.
    """

    n: int
    generators: tuple[Monomial, ...] = ()
    unit: bool = False
    _rows: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("n must be positive")
        rows = []
        for g in self.generators:
            if not isinstance(g, Monomial):
                g = Monomial(tuple(g))
            if g.n != self.n:
                raise UsageError(f"generator {g.exponents} does not have {self.n} variables")
            rows.append(g.exponents)
        rows = _canonical(rows)
        if any(not any(r) for r in rows):
            if len(rows) != 1:
                raise UsageError("the unit monomial cannot sit beside other generators")
            object.__setattr__(self, "unit", True)
        degrees = {sum(r) for r in rows}
        # distinct monomials of one degree never divide each other
        if len(degrees) > 1:
            arr = np.array(rows, dtype=np.int64).reshape(len(rows), self.n)
            if not _is_antichain(arr):
                raise UsageError("generators are not minimal; use minimalize()")
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "generators", tuple(Monomial(r) for r in rows))

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return cls(n, tuple(Monomial(tuple(r)) for r in rows))

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self._rows, dtype=np.int64).reshape(len(self._rows), self.n)
        arr.setflags(write=False)
        return arr

    def is_zero(self) -> bool:
        return not self.generators

    def require_proper(self):
        if self.unit:
            raise UsageError("the unit ideal <1> is not supported here")

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        if self.is_zero():
            return "<0>"
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def _is_antichain(arr: np.ndarray) -> bool:
    # divisibility matrix: div[i, j] = row i divides row j
    div = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    np.fill_diagonal(div, False)
    return not div.any()


def minimalize(monomials: Iterable[Monomial], n: int | None = None) -> MonomialIdeal:
    """Keep only the divisibility-minimal elements.

    ``n`` is needed only when ``monomials`` is empty.
    """
    ms = list(monomials)
    if not ms:
        if n is None:
            raise UsageError("cannot infer n from an empty set; pass n")
        return MonomialIdeal.zero(n)
    n0 = ms[0].n
    if n is not None and n != n0:
        raise UsageError(f"dimension mismatch: {n0} vs {n} variables")
    for m in ms:
        _check_same_n(ms[0], m)
    rows = sorted({m.exponents for m in ms})
    if any(not any(r) for r in rows):
        return MonomialIdeal(n0, (Monomial.one(n0),))
    # ascending total degree: a divisor always precedes what it divides
    rows.sort(key=sum)
    kept: list[tuple[int, ...]] = []
    for r in rows:
        if not any(all(x <= y for x, y in zip(k, r)) for k in kept):
            kept.append(r)
    return MonomialIdeal.from_rows(n0, kept)


def _support_masks(M: MonomialIdeal) -> list[int]:
    masks = []
    for row in M.rows:
        mask = 0
        for i, e in enumerate(row):
            if e:
                mask |= 1 << i
        masks.append(mask)
    return masks


def krull_dimension(M: MonomialIdeal, guard: int = KRULL_GUARD) -> int:
    """dim S/M = n minus the least number of variables meeting every generator's support."""
    M.require_proper()
    if M.n > guard:
        raise GuardError("krull_variables", M.n, guard)
    masks = set(_support_masks(M))
    for k in range(M.n + 1):
        for cover in itertools.combinations(range(M.n), k):
            cmask = sum(1 << i for i in cover)
            if all(m & cmask for m in masks):
                return M.n - k
    raise AssertionError("the full variable set always covers")


# -- text format --------------------------------------------------------------


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse the ``n=<int>`` header plus one exponent vector per line.

    Blank lines and ``#`` comments are ignored. The input need not be
    minimal; it is passed through :func:`minimalize`.
    """
    n = None
    monos = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            key, sep, value = line.partition("=")
            if not sep or key.strip() != "n":
                raise ParseError("expected header 'n=<int>'", lineno)
            try:
                n = int(value.strip())
            except ValueError:
                raise ParseError(f"bad variable count {value.strip()!r}", lineno) from None
            if n < 1:
                raise ParseError("n must be positive", lineno)
            continue
        try:
            exps = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"non-integer exponent in {line!r}", lineno) from None
        if len(exps) != n:
            raise ParseError(f"expected {n} exponents, got {len(exps)}", lineno)
        if any(e < 0 for e in exps):
            raise ParseError("negative exponent", lineno)
        try:
            monos.append(Monomial(exps))
        except GuardError as exc:
            raise ParseError(str(exc), lineno) from None
    if n is None:
        raise ParseError("missing header 'n=<int>'", 1)
    return minimalize(monos, n=n)


def format_ideal(M: MonomialIdeal) -> str:
    lines = [f"n={M.n}"]
    lines.extend(" ".join(str(e) for e in row) for row in M.rows)
    return "\n".join(lines) + "\n"


def read_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())
