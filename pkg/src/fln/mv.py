"""Exact Łukasiewicz algebra on rational truth values.

Truth values are `fractions.Fraction` instances in [0, 1]; every operation
is pure and exact, so degree comparisons are genuine equalities.  The
finite chains ``MVChain(k)`` = {0, 1/k, ..., 1} are closed under all of
the operations below, which is what makes exhaustive checking over a
chain meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

TruthValue = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_truth(value: object) -> Fraction:
    """Coerce ``value`` to an exact truth value in [0, 1].

    Accepts ints, ``"p/q"`` strings and Fractions.  Floats are rejected:
    they would smuggle rounding errors into degree comparisons.
    """
    if isinstance(value, float):
        raise TypeError("refusing a float truth value; use a Fraction or a 'p/q' string")
    v = Fraction(value)
    if v < ZERO or v > ONE:
        raise ValueError(f"truth value {v} outside [0, 1]")
    return v


def luk_and(a: Fraction, b: Fraction) -> Fraction:
    """Strong conjunction: a ⊗ b = max(0, a + b - 1)."""
    s = a + b - 1
    return s if s > ZERO else ZERO


def luk_imp(a: Fraction, b: Fraction) -> Fraction:
    """Residual implication: a ⇒ b = min(1, 1 - a + b)."""
    s = 1 - a + b
    return s if s < ONE else ONE


def luk_neg(a: Fraction) -> Fraction:
    """Involutive negation: 1 - a."""
    return ONE - a


def luk_or(a: Fraction, b: Fraction) -> Fraction:
    """Strong disjunction: a ⊕ b = min(1, a + b)."""
    s = a + b
    return s if s < ONE else ONE


def meet(a: Fraction, b: Fraction) -> Fraction:
    """Lattice infimum."""
    return a if a <= b else b


def join(a: Fraction, b: Fraction) -> Fraction:
    """Lattice supremum."""
    return a if a >= b else b


def biresiduum(a: Fraction, b: Fraction) -> Fraction:
    """a ⇔ b = min(a ⇒ b, b ⇒ a) = 1 - |a - b|."""
    return ONE - abs(a - b)


def power(a: Fraction, n: int) -> Fraction:
    """n-fold strong conjunction of a with itself: max(0, n·a - (n-1))."""
    if n < 1:
        raise ValueError("power exponent must be >= 1")
    s = n * a - (n - 1)
    return s if s > ZERO else ZERO


def multiple(a: Fraction, n: int) -> Fraction:
    """n-fold strong disjunction of a with itself: min(1, n·a)."""
    if n < 1:
        raise ValueError("multiple count must be >= 1")
    s = n * a
    return s if s < ONE else ONE


@lru_cache(maxsize=64)
def chain_values(k: int) -> tuple[Fraction, ...]:
    """The k+1 points of the chain 0, 1/k, ..., 1 in ascending order."""
    if k < 1:
        raise ValueError("chain granularity must be >= 1")
    return tuple(Fraction(i, k) for i in range(k + 1))


@dataclass(frozen=True)
class MVChain:
    """The finite subalgebra {0, 1/k, ..., 1} of the unit interval."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("chain granularity must be >= 1")

    def values(self) -> tuple[Fraction, ...]:
        return chain_values(self.k)

    def __iter__(self):
        return iter(self.values())

    def __len__(self) -> int:
        return self.k + 1

    def __contains__(self, value: object) -> bool:
        try:
            v = Fraction(value)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return False
        return ZERO <= v <= ONE and (v * self.k).denominator == 1
