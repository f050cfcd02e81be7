"""Both sides of the winding/descendant coefficient identity, compared exactly.

Left side: the multiple-cover disk potential of the equivariant line —

    F = sum_{mu != 0} exp(mu*t0/v) * (v/mu^2) * I_mu(2*mu*sqrt(q)/v) * X^mu,

whose coefficient of T^l Q^(2m+|mu|) X^mu V^(1-l-2m-|mu|) is
mu^(l+2m+|mu|-2) / (l! m! (m+|mu|)!).  Built from the Bessel kernel (fast
route) or resummed from one-boundary graph sums (independent route).

Right side: the z^-2 slice of the origin-restricted surface series, expanded
in the z/v direction, paired against the distinguished origin class (an
exact 1/v prefactor, recomputed through the full fixed-point pairing and
asserted against the direct reduction), with the Kaehler parameters traded
for winding/area variables by

    q1 -> -Q * X^-1,      q2 -> -Q * X,

plus the finite exceptional correction

    Exc = -Q*X^-1 + Q*X - T^2/(2v) - Q^2/v.

``run_check`` builds both sides (optionally in parallel, governed by the
``OC_MIRROR_THREADS`` environment variable) and reports the per-monomial
difference; the headline assertion is that the difference is identically
zero on every finite window.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional

from .closed import bessel_first_kind, surface_series_terms, z_coeff
from .geometry import distinguished_pairing_prefactor, v_term
from .localization import open_invariant
from .series import (
    FormalSeries,
    Monomial,
    TruncationWindow,
    mono,
    series_exp,
    substitute,
)


def _winding_dressing(mu: int, window: TruncationWindow) -> FormalSeries:
    """exp(mu * t0 / v), the area-zero dressing shared by every route."""
    return series_exp(FormalSeries.of(Fraction(mu), mono(T=1, V=-1), window))


def _work_window(window: TruncationWindow) -> TruncationWindow:
    # one level of V-headroom below the floor: products are assembled before
    # the final V-shift by the mu^-2 * v disk normalization
    return replace(window, min_v=window.min_v - 1, max_v=max(window.max_v, 0))


def disk_potential_bessel(window: TruncationWindow) -> FormalSeries:
    """Disk potential in closed Bessel form, truncated to ``window``.

    Every stored monomial has V-exponent 1 - l - 2m - |mu| <= 0.
    """
    work = _work_window(window)
    total = FormalSeries.zero(window)
    for mu in range(-window.max_abs_x, window.max_abs_x + 1):
        if mu == 0:
            continue
        dressing = _winding_dressing(mu, work)
        bessel = bessel_first_kind(mu, 2 * mu, mono(Q=1, V=-1), work)
        term = (dressing * bessel).scale(Fraction(1, mu * mu), mono(X=mu, V=1))
        total = total + term.truncate(window)
    return total


def disk_potential_localized(
    window: TruncationWindow, max_sphere_degree: Optional[int] = None
) -> FormalSeries:
    """Disk potential resummed from one-boundary fixed-point graph sums.

    Each winding's sphere-degree series is an exact graph-sum value; the
    exponential dressing carries the degree-zero insertions, exactly as in
    the closed form.  Exponentially slower than :func:`disk_potential_bessel`
    — this is the independent oracle route, not the workhorse.
    """
    work = _work_window(window)
    total = FormalSeries.zero(window)
    for mu in range(-window.max_abs_x, window.max_abs_x + 1):
        if mu == 0:
            continue
        degree_series = FormalSeries.zero(work)
        d = 0
        while 2 * d + abs(mu) <= window.max_q:
            if max_sphere_degree is not None and d > max_sphere_degree:
                break
            dm, dp = (d, d + mu) if mu > 0 else (d - mu, d)
            value = open_invariant(dm, dp)
            contribution = value.scale(1, mono(Q=2 * d + abs(mu))).truncate(work)
            degree_series = degree_series + contribution
            d += 1
        term = (_winding_dressing(mu, work) * degree_series).scale(1, mono(X=mu))
        total = total + term.truncate(window)
    return total


def exceptional_correction(window: TruncationWindow) -> FormalSeries:
    """The four-monomial correction added to the descendant slice."""
    return FormalSeries(
        {
            mono(Q=1, X=-1): Fraction(-1),
            mono(Q=1, X=1): Fraction(1),
            mono(T=2, V=-1): Fraction(-1, 2),
            mono(Q=2, V=-1): Fraction(-1),
        },
        window,
    )


def _flip_v_floor_part(s: FormalSeries) -> FormalSeries:
    """Negate the V^-1 slice only (the deliberate-corruption knob)."""
    return FormalSeries(
        {m: (-c if m.V == -1 else c) for m, c in s.items()}, s.window
    )


def rhs_assemble(
    window: TruncationWindow,
    include_correction: bool = True,
    corrupt_correction: bool = False,
) -> FormalSeries:
    """Descendant-slice side of the identity, truncated to ``window``.

    Pipeline: z^-2 coefficient of the origin-restricted surface series
    (all three Kaehler-excess families, z/v expansion) -> multiply by the
    distinguished pairing prefactor (recomputed from the surface pairing and
    asserted equal to 1/v) -> trade Kaehler parameters for winding/area
    variables -> add the exceptional correction.  The zeroth flat coordinate
    is carried by the same T variable on both sides, so the log-area
    identification is the identity map here.
    """
    pre = TruncationWindow(
        max_q=window.max_q,
        max_t=window.max_t,
        max_abs_x=window.max_abs_x,
        min_v=window.min_v + 1,
        max_v=window.max_v + 1,
        min_z=0,
        max_z=0,
        max_q12=window.max_q,
    )
    families = surface_series_terms(pre)
    all_terms = families["excess1"] + families["excess2"] + families["balanced"]
    slice2 = z_coeff(all_terms, 2, pre)

    prefactor = distinguished_pairing_prefactor()
    if prefactor != v_term(1, -1):
        raise ArithmeticError(
            "pairing routes disagree: surface pairing did not reduce to 1/v"
        )
    # the V-shift by the prefactor must happen in a window whose floor is
    # already the final one, or slice terms at the pre-floor get lost
    mid = replace(pre, min_v=window.min_v)
    paired = slice2.truncate(mid) * prefactor.truncate(mid)

    substituted = substitute(
        paired,
        {"q1": (Fraction(-1), mono(Q=1, X=-1)), "q2": (Fraction(-1), mono(Q=1, X=1))},
    )
    result = substituted.truncate(window)
    for m, _ in result.items():
        if m.q1 != 0 or m.q2 != 0:
            raise ArithmeticError(f"Kaehler variable survived substitution: {m}")

    if include_correction:
        correction = exceptional_correction(window)
        if corrupt_correction:
            correction = _flip_v_floor_part(correction)
        result = result + correction
    return result


# ---------------------------------------------------------------------------
# comparison report
# ---------------------------------------------------------------------------


def rational_str(c: Fraction) -> str:
    """Explicit num/den rendering used by every serialized report."""
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of one window comparison; ``passed`` iff ``diff`` is empty."""

    window: TruncationWindow
    lhs: FormalSeries
    rhs: FormalSeries
    diff: FormalSeries
    passed: bool

    def diff_rows(self) -> List[Dict[str, object]]:
        return [
            {"X": m.X, "Q": m.Q, "T": m.T, "V": m.V, "value": rational_str(c)}
            for m, c in self.diff.items()
        ]

    def to_json_dict(self) -> Dict[str, object]:
        w = self.window
        return {
            "window": {
                "maxQ": w.max_q,
                "maxT": w.max_t,
                "maxAbsMu": w.max_abs_x,
                "minV": w.min_v,
                "maxV": w.max_v,
            },
            "pass": self.passed,
            "diff": self.diff_rows(),
        }


def worker_count() -> int:
    """Worker cap from the OC_MIRROR_THREADS environment variable (>= 1)."""
    raw = os.environ.get("OC_MIRROR_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_check(
    window: TruncationWindow, corrupt_correction: bool = False
) -> CorrespondenceReport:
    """Build both sides and compare exactly; see the module docstring."""
    if worker_count() >= 2:
        with ThreadPoolExecutor(max_workers=2) as pool:
            lhs_future = pool.submit(disk_potential_bessel, window)
            rhs_future = pool.submit(rhs_assemble, window, True, corrupt_correction)
            lhs, rhs = lhs_future.result(), rhs_future.result()
    else:
        lhs = disk_potential_bessel(window)
        rhs = rhs_assemble(window, corrupt_correction=corrupt_correction)
    diff = lhs - rhs
    return CorrespondenceReport(window, lhs, rhs, diff, diff.is_zero())
