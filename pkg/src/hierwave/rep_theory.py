"""SU(2) irreducible-representation algebra.

Irreps are labeled by spin j (stored as 2j, an exact integer), tensor
products are decomposed by folding the pairwise coupling series with
exact integer multiplicities, and Clebsch-Gordan coefficients are
evaluated from the Racah closed-form sum with exact factorial arithmetic
(Condon-Shortley phase convention throughout).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, sqrt


class EmptyProductError(ValueError):
    """decompose_product called with no factors."""


class InvalidQueryError(ValueError):
    """Clebsch-Gordan query violating |m| <= j or j/m parity."""


def format_j(twice_j: int) -> str:
    """Render 2j as "1/2", "1", "3/2", ..."""
    return str(twice_j // 2) if twice_j % 2 == 0 else f"{twice_j}/2"


def parse_j(text: str) -> int:
    """Parse a spin like "1/2", "1.5" or "2" into its doubled integer value."""
    twice = 2 * Fraction(text.strip())
    if twice.denominator != 1 or twice < 0:
        raise ValueError(f"not a valid non-negative (half-)integer spin: {text!r}")
    return int(twice)


@dataclass(frozen=True, order=True)
class IrrepLabel:
    twice_j: int

    def __post_init__(self) -> None:
        if self.twice_j < 0:
            raise ValueError(f"twice_j must be >= 0, got {self.twice_j}")

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    def __str__(self) -> str:
        return format_j(self.twice_j)


@dataclass(frozen=True)
class IrrepSum:
    """Multiset of irreps with integer multiplicities, ordered by descending j."""

    entries: tuple[tuple[IrrepLabel, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[IrrepLabel, int]) -> "IrrepSum":
        for label, mult in counts.items():
            if mult < 1:
                raise ValueError(f"multiplicity of {label} must be >= 1, got {mult}")
        ordered = tuple(sorted(counts.items(), key=lambda kv: -kv[0].twice_j))
        return cls(ordered)

    def multiplicity(self, label: IrrepLabel) -> int:
        for lab, mult in self.entries:
            if lab == label:
                return mult
        return 0

    @property
    def total_dim(self) -> int:
        return sum(mult * lab.dim for lab, mult in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return " + ".join(f"{mult}x[{lab}]" for lab, mult in self.entries)


def couple_pair(j1: IrrepLabel, j2: IrrepLabel) -> IrrepSum:
    """Coupling series of two irreps: J = |j1-j2| ... j1+j2, each once."""
    counts = {
        IrrepLabel(tj): 1
        for tj in range(abs(j1.twice_j - j2.twice_j), j1.twice_j + j2.twice_j + 1, 2)
    }
    return IrrepSum.from_counts(counts)


def decompose_product(factors: list[IrrepLabel] | tuple[IrrepLabel, ...]) -> IrrepSum:
    """Decompose a tensor product of irreps into irreducible blocks with
    multiplicities, by left-folding the pairwise series."""
    if not factors:
        raise EmptyProductError("cannot decompose an empty tensor product")
    counts: dict[IrrepLabel, int] = {factors[0]: 1}
    for factor in factors[1:]:
        nxt: dict[IrrepLabel, int] = {}
        for label, mult in counts.items():
            for sub, _ in couple_pair(label, factor):
                nxt[sub] = nxt.get(sub, 0) + mult
        counts = nxt
    result = IrrepSum.from_counts(counts)
    expected = 1
    for f in factors:
        expected *= f.dim
    assert result.total_dim == expected, "dimension bookkeeping error"
    return result


def contains(irrep_sum: IrrepSum, target: IrrepLabel) -> int:
    """Multiplicity of target inside the sum (0 if absent)."""
    return irrep_sum.multiplicity(target)


@dataclass(frozen=True)
class CGQuery:
    """Coupling query <j1 m1 j2 m2 | J M>, all entries as doubled integers."""

    twice_j1: int
    twice_m1: int
    twice_j2: int
    twice_m2: int
    twice_J: int
    twice_M: int

    def validate(self) -> None:
        for tj, tm, name in (
            (self.twice_j1, self.twice_m1, "j1/m1"),
            (self.twice_j2, self.twice_m2, "j2/m2"),
            (self.twice_J, self.twice_M, "J/M"),
        ):
            if tj < 0:
                raise InvalidQueryError(f"{name}: negative spin 2j={tj}")
            if abs(tm) > tj:
                raise InvalidQueryError(f"{name}: |m| > j (2j={tj}, 2m={tm})")
            if (tm - tj) % 2 != 0:
                raise InvalidQueryError(f"{name}: parity mismatch (2j={tj}, 2m={tm})")


def _fact2(twice: int) -> int:
    # factorial of an integer handed over as its doubled value
    assert twice % 2 == 0 and twice >= 0
    return factorial(twice // 2)


@lru_cache(maxsize=None)
def _cg_value(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> float:
    if tM != tm1 + tm2:
        return 0.0
    if not abs(tj1 - tj2) <= tJ <= tj1 + tj2:
        return 0.0
    if (tj1 + tj2 + tJ) % 2 != 0:
        return 0.0

    pref = Fraction(tJ + 1)
    pref *= Fraction(
        _fact2(tj1 + tj2 - tJ) * _fact2(tj1 - tj2 + tJ) * _fact2(-tj1 + tj2 + tJ),
        _fact2(tj1 + tj2 + tJ + 2),
    )
    pref *= (
        _fact2(tJ + tM)
        * _fact2(tJ - tM)
        * _fact2(tj1 - tm1)
        * _fact2(tj1 + tm1)
        * _fact2(tj2 - tm2)
        * _fact2(tj2 + tm2)
    )

    k_min = max(0, (tj2 - tJ - tm1) // 2, (tj1 - tJ + tm2) // 2)
    k_max = min((tj1 + tj2 - tJ) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denom = (
            factorial(k)
            * _fact2(tj1 + tj2 - tJ - 2 * k)
            * _fact2(tj1 - tm1 - 2 * k)
            * _fact2(tj2 + tm2 - 2 * k)
            * _fact2(tJ - tj2 + tm1 + 2 * k)
            * _fact2(tJ - tj1 - tm2 + 2 * k)
        )
        total += Fraction(-1 if k % 2 else 1, denom)
    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * sqrt(float(pref * total * total))


def clebsch_gordan(q: CGQuery) -> float:
    """Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>, Condon-Shortley phases.

    Returns 0 when M != m1+m2 or J lies outside the coupling series.
    Exact to double precision for 2j up to ~40 (big-integer factorials).
    """
    q.validate()
    return _cg_value(q.twice_j1, q.twice_m1, q.twice_j2, q.twice_m2, q.twice_J, q.twice_M)
