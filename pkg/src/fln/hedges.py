"""Piecewise-linear hedge truth functions and their validation.

A hedge function is given by rational breakpoints from x=0 to x=1 and is
linearly interpolated in between, so monotonicity, sub/superdiagonality,
Lipschitz constants and axiom instances at chain points can all be checked
exactly.  Analytic shapes (Zadeh's square for *very*, a square-root-like
curve for *slightly*) ship as piecewise-linear presets.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .mv import MVChain, ONE, ZERO, luk_imp, luk_neg
from .syntax import HedgeMode, HedgeSignature


@dataclass(frozen=True)
class HedgeFunction:
    """Piecewise-linear function [0,1] -> [0,1] with rational breakpoints."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if len(bps) < 2:
            raise ValueError("a hedge function needs at least the breakpoints at x=0 and x=1")
        if bps[0][0] != ZERO or bps[-1][0] != ONE:
            raise ValueError("breakpoints must start at x=0 and end at x=1")
        last_x = None
        for x, y in bps:
            if not (ZERO <= x <= ONE and ZERO <= y <= ONE):
                raise ValueError(f"breakpoint ({x}, {y}) outside the unit square")
            if last_x is not None and x <= last_x:
                raise ValueError("breakpoint x-coordinates must be strictly increasing")
            last_x = x

    def __call__(self, a: Fraction) -> Fraction:
        return eval_hedge(self, a)

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints)


def eval_hedge(f: HedgeFunction, a: Fraction) -> Fraction:
    """Exact linear interpolation of ``f`` at ``a``."""
    if a < ZERO or a > ONE:
        raise ValueError(f"hedge argument {a} outside [0, 1]")
    bps = f.breakpoints
    i = bisect_right(f.xs, a) - 1
    x0, y0 = bps[i]
    if a == x0:
        return y0
    x1, y1 = bps[i + 1]
    return y0 + (a - x0) * (y1 - y0) / (x1 - x0)


IDENTITY = HedgeFunction(((ZERO, ZERO), (ONE, ONE)))

# Zadeh's x^2 sampled at quarter points; subdiagonal, max slope 7/4.
PL_SQUARE = HedgeFunction((
    (ZERO, ZERO),
    (Fraction(1, 4), Fraction(1, 16)),
    (Fraction(1, 2), Fraction(1, 4)),
    (Fraction(3, 4), Fraction(9, 16)),
    (ONE, ONE),
))

# A square-root-like superdiagonal curve at quarter points (rational heights).
PL_SQRT = HedgeFunction((
    (ZERO, ZERO),
    (Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(7, 10)),
    (Fraction(3, 4), Fraction(7, 8)),
    (ONE, ONE),
))

PRESETS: dict[str, HedgeFunction] = {
    "identity": IDENTITY,
    "pl-square": PL_SQUARE,
    "pl-sqrt": PL_SQRT,
}


def blend(g: HedgeFunction, strength: Fraction) -> HedgeFunction:
    """Linear blend (1-λ)·x + λ·g(x); λ=0 is identity, λ=1 is g.

    Useful for building strength chains s_1, s_2, ... from one base shape.
    """
    lam = Fraction(strength)
    if lam < ZERO or lam > ONE:
        raise ValueError("blend strength must lie in [0, 1]")
    return HedgeFunction(tuple((x, (1 - lam) * x + lam * y) for x, y in g.breakpoints))


@dataclass(frozen=True)
class HedgeModel:
    """Assignment of one truth function to every declared hedge."""

    signature: HedgeSignature
    functions: dict[str, HedgeFunction]

    def __post_init__(self) -> None:
        declared = set(self.signature.hedges)
        assigned = set(self.functions)
        if declared != assigned:
            missing = sorted(declared - assigned)
            extra = sorted(assigned - declared)
            raise ValueError(f"hedge model mismatch: missing {missing}, undeclared {extra}")

    def function_for(self, name: str) -> HedgeFunction:
        try:
            return self.functions[name]
        except KeyError:
            raise KeyError(f"undeclared hedge '{name}'") from None

    @staticmethod
    def identity_model(signature: HedgeSignature) -> "HedgeModel":
        return HedgeModel(signature, {name: IDENTITY for name in signature.hedges})

    @staticmethod
    def empty() -> "HedgeModel":
        return HedgeModel(HedgeSignature.empty(), {})


# ---------------------------------------------------------------------------
# Validation reports


@dataclass(frozen=True)
class Violation:
    check: str
    hedge: str
    inputs: tuple[Fraction, ...]
    value: Fraction

    def machine_line(self) -> str:
        ins = "(" + ", ".join(str(v) for v in self.inputs) + ")"
        return f"VIOLATION {self.check} {self.hedge} {ins} {self.value}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


def validate_shape(f: HedgeFunction, kind: str, hedge: str = "f") -> ValidationReport:
    """Check the characteristic shape of a hedge truth function.

    All hedges must be non-decreasing and preserve 0 and 1; stressers must
    be subdiagonal, depressers superdiagonal.  Piecewise-linear functions
    satisfy each property everywhere iff they satisfy it at breakpoints,
    so the check is exact.
    """
    if kind not in ("stresser", "depresser"):
        raise ValueError("kind must be 'stresser' or 'depresser'")
    vs: list[Violation] = []
    bps = f.breakpoints
    if bps[0][1] != ZERO:
        vs.append(Violation("preserves-0", hedge, (ZERO,), bps[0][1]))
    if bps[-1][1] != ONE:
        vs.append(Violation("preserves-1", hedge, (ONE,), bps[-1][1]))
    for (x0, y0), (x1, y1) in zip(bps, bps[1:]):
        if y1 < y0:
            vs.append(Violation("non-decreasing", hedge, (x0, x1), y1))
    for x, y in bps:
        if kind == "stresser" and y > x:
            vs.append(Violation("subdiagonal", hedge, (x,), y))
        if kind == "depresser" and y < x:
            vs.append(Violation("superdiagonal", hedge, (x,), y))
    return ValidationReport(tuple(vs))


def fitting_constant(f: HedgeFunction) -> int:
    """Smallest k such that (a ⇔ b)^k ≤ f(a) ⇔ f(b) on all of [0, 1].

    For a piecewise-linear function that is the ceiling of the maximum
    absolute segment slope (and at least 1).
    """
    max_slope = ZERO
    for (x0, y0), (x1, y1) in zip(f.breakpoints, f.breakpoints[1:]):
        slope = abs((y1 - y0) / (x1 - x0))
        if slope > max_slope:
            max_slope = slope
    return max(1, math.ceil(max_slope))


# ---------------------------------------------------------------------------
# Hedge axiom validation over a finite chain


def _axiom_ids(mode: HedgeMode) -> dict[str, str]:
    if mode is HedgeMode.H:
        return {"mono": "H6", "schain": "H7", "stop": "H8", "dchain": "H9", "dbot": "H10"}
    return {"mono": "DH11", "schain": "DH12", "stop": "DH13", "dchain": "DH14", "dual": "DH15"}


def validate_axioms(model: HedgeModel, chain: MVChain) -> ValidationReport:
    """Exhaustively instantiate the hedge axioms' truth conditions on a chain.

    Every instance whose truth value is below 1 is reported with its
    attained value.  A failing witness is sound for [0, 1]; a pass is
    relative to the chain.
    """
    sig = model.signature
    ids = _axiom_ids(sig.mode)
    values = chain.values()
    vs: list[Violation] = []

    for name in sig.hedges:
        f = model.function_for(name)
        for a in values:
            fa = f(a)
            for b in values:
                v = luk_imp(luk_imp(a, b), luk_imp(fa, f(b)))
                if v != ONE:
                    vs.append(Violation(ids["mono"], name, (a, b), v))

    for i, name in enumerate(sig.stressers, start=1):
        f = model.function_for(name)
        prev = IDENTITY if i == 1 else model.function_for(sig.stressers[i - 2])
        for a in values:
            v = luk_imp(f(a), prev(a))
            if v != ONE:
                vs.append(Violation(ids["schain"], name, (a,), v))

    if sig.stressers:
        top = sig.stressers[-1]
        v = model.function_for(top)(ONE)
        if v != ONE:
            vs.append(Violation(ids["stop"], top, (ONE,), v))

    for j, name in enumerate(sig.depressers, start=1):
        f = model.function_for(name)
        prev = IDENTITY if j == 1 else model.function_for(sig.depressers[j - 2])
        for a in values:
            v = luk_imp(prev(a), f(a))
            if v != ONE:
                vs.append(Violation(ids["dchain"], name, (a,), v))

    if sig.mode is HedgeMode.H:
        if sig.depressers:
            bottom = sig.depressers[-1]
            v = luk_neg(model.function_for(bottom)(ZERO))
            if v != ONE:
                vs.append(Violation(ids["dbot"], bottom, (ZERO,), v))
    else:
        for i, name in enumerate(sig.depressers, start=1):
            d = model.function_for(name)
            s = model.function_for(sig.stressers[i - 1])
            for a in values:
                v = luk_imp(d(a), luk_neg(s(luk_neg(a))))
                if v != ONE:
                    vs.append(Violation(ids["dual"], name, (a,), v))

    return ValidationReport(tuple(vs))


# ---------------------------------------------------------------------------
# Boundary envelopes for dual-hedge models


@dataclass(frozen=True)
class BoundaryRow:
    x: Fraction
    lower: Fraction
    upper: Fraction


def boundaries(model: HedgeModel, chain: MVChain) -> tuple[dict[str, tuple[BoundaryRow, ...]], ValidationReport]:
    """Tabulated lower/upper envelopes of every hedge function on the chain.

    With stressers s_1..s_n and depressers d_1..d_n: s_i lies between
    s_{i+1} and the diagonal (s_n between 0 and the diagonal), d_1 between
    the diagonal and ¬s_1(¬x), and d_i between d_{i-1} and ¬s_i(¬x).
    Assigned functions breaching their envelope are reported as violations.
    Requires a dual-hedge signature.
    """
    sig = model.signature
    if sig.mode is not HedgeMode.DH:
        raise ValueError("boundary envelopes are defined for dual-hedge signatures only")
    values = chain.values()
    tables: dict[str, tuple[BoundaryRow, ...]] = {}
    vs: list[Violation] = []
    n = len(sig.stressers)

    def envelope(name: str, lo_at, hi_at) -> None:
        f = model.function_for(name)
        rows = []
        for x in values:
            lo, hi = lo_at(x), hi_at(x)
            rows.append(BoundaryRow(x, lo, hi))
            y = f(x)
            if y < lo:
                vs.append(Violation("envelope-lower", name, (x,), y))
            if y > hi:
                vs.append(Violation("envelope-upper", name, (x,), y))
        tables[name] = tuple(rows)

    for i in range(1, n + 1):
        name = sig.stressers[i - 1]
        if i == n:
            envelope(name, lambda x: ZERO, lambda x: x)
        else:
            stronger = model.function_for(sig.stressers[i])
            envelope(name, stronger, lambda x: x)
    for i in range(1, n + 1):
        name = sig.depressers[i - 1]
        s_i = model.function_for(sig.stressers[i - 1])
        upper = lambda x, s=s_i: luk_neg(s(luk_neg(x)))
        if i == 1:
            envelope(name, lambda x: x, upper)
        else:
            weaker = model.function_for(sig.depressers[i - 2])
            envelope(name, weaker, upper)

    return tables, ValidationReport(tuple(vs))
