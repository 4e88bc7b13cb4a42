"""Lower bounds for the arrangement objective and the ratio guarantee.

Any arrangement splits the guest across the height-(i-1) host subtrees into
a balanced partition, so each tail count s_i is at least the optimal
2^(h_G - i + 2)-partition cut count.  Summing the per-i optima gives a
global lower bound; comparing it with the solver's closed-form objective
yields the approximation-ratio certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .approx import closed_form_coefficients, closed_form_objective
from .errors import InvalidInputError
from .partition import optimal_value

RATIO_LIMIT = Fraction(203, 200)


@dataclass(frozen=True)
class LowerBoundTable:
    """Per-i lower bounds s_1..s_h on the tail counts of any arrangement."""

    guest_height: int
    s_lower: tuple[int, ...]

    def bound(self) -> int:
        return 2 * sum(self.s_lower)


def lower_bound_table(guest_height: int) -> LowerBoundTable:
    if guest_height < 1:
        raise InvalidInputError(f"guest height must be >= 1, got {guest_height}")
    h = guest_height + 1
    values = [2 ** (guest_height + 1) - 2]  # every edge costs at least 2
    for i in range(2, h + 1):
        values.append(optimal_value(guest_height, guest_height - i + 2))
    return LowerBoundTable(guest_height, tuple(values))


def dapt_lower_bound(guest_height: int) -> int:
    """Lower bound on the objective of every arrangement: 2 * sum of s_i."""
    return lower_bound_table(guest_height).bound()


def approximation_ratio(guest_height: int) -> float:
    """Guaranteed ratio bound for the solver at the given height.

    Strictly increasing from height 4 on and converging to 203/200 = 1.015.
    The only floating-point computation in the package.
    """
    if guest_height < 4:
        raise InvalidInputError(f"ratio bound is defined for heights >= 4, got {guest_height}")
    power = 2.0**guest_height
    numerator = 29.0 / 3.0 * power - 4.0 * guest_height - 26.0 / 3.0
    denominator = (
        200.0 / 21.0 * power
        - 4.0 * guest_height
        + 2.0 * math.sqrt(2.0) / 7.0 * 2.0 ** (guest_height / 2.0)
        - 28.0 / 3.0
    )
    return numerator / denominator


@dataclass(frozen=True)
class RatioCertificate:
    """Exact comparison of the solver against the partition lower bound."""

    guest_height: int
    objective: int
    lower_bound: int
    slack: int  # sum over i of (solver tail count - lower bound), exact
    empirical_ratio: Fraction

    @property
    def is_tight(self) -> bool:
        return self.slack == 0


def ratio_certificate(guest_height: int) -> RatioCertificate:
    if guest_height < 1:
        raise InvalidInputError(f"guest height must be >= 1, got {guest_height}")
    table = lower_bound_table(guest_height)
    profile = closed_form_coefficients(guest_height)
    slack = sum(s - l for s, l in zip(profile.s, table.s_lower))
    objective = closed_form_objective(guest_height)
    ratio = Fraction(objective, table.bound())
    if not 1 <= ratio <= RATIO_LIMIT:
        raise AssertionError(
            f"empirical ratio {ratio} escapes [1, {RATIO_LIMIT}] at height {guest_height}"
        )
    return RatioCertificate(guest_height, objective, table.bound(), slack, ratio)


def comparison_rows(guest_height: int) -> list[tuple[int, int, int]]:
    """(i, solver tail count, lower bound) rows with the highest i first."""
    table = lower_bound_table(guest_height)
    profile = closed_form_coefficients(guest_height)
    h = guest_height + 1
    return [(i, profile.s[i - 1], table.s_lower[i - 1]) for i in range(h, 0, -1)]


def comparison_text(guest_height: int) -> str:
    """Aligned text table: one row per series, columns by descending i."""
    rows = comparison_rows(guest_height)
    lines = [
        f"h_G {guest_height}",
        "i       " + " ".join(str(i) for i, _, _ in rows),
        "s_alg   " + " ".join(str(s) for _, s, _ in rows),
        "s_lower " + " ".join(str(l) for _, _, l in rows),
    ]
    return "\n".join(lines) + "\n"


def comparison_csv(guest_height: int) -> str:
    lines = ["i,s_alg,s_lower"]
    lines.extend(f"{i},{s},{l}" for i, s, l in comparison_rows(guest_height))
    return "\n".join(lines) + "\n"
