"""Sparse Laurent series over the rationals in a fixed tuple of variables.

Everything downstream (disk potentials, hypergeometric series, localization
sums) is carried by one container, ``FormalSeries``: a mapping from exponent
vectors to ``fractions.Fraction`` coefficients together with a rectangular
truncation window.  Conventions:

* Variables, in storage order::

      Q   square root of the curve-counting parameter q (so q^d is Q^(2d))
      T   the unit-direction coordinate t0 = log(q0)
      X   boundary-winding variable
      V   generator of the circle's equivariant coefficient ring
      Z   descendant variable z
      q1  first surface Kaehler parameter   (eliminated by substitution)
      q2  second surface Kaehler parameter  (eliminated by substitution)

* Coefficients are exact rationals; zero coefficients are never stored.
* A series remembers the window it was truncated to.  Arithmetic re-truncates
  to the intersection of the operand windows, so a coefficient that fits the
  result window is exact — there is no "noise" from discarded monomials that
  could re-enter, because every ring operation only ever raises the total
  bounded grading (Q, T, q1, q2 have nonnegative exponents everywhere).
* Iteration over terms is in lexicographic exponent order, which makes every
  report byte-reproducible.

Rational factors of the form v/(v - c*z) are kept unexpanded as
``LinearFactorTerm`` until a direction of expansion is chosen:

* ``Expansion.Z_OVER_V``  : v/(v-cz) = sum_{k>=0} (cz/v)^k, a power series in
  z/v.  For c = 0 the factor is literally 1.
* ``Expansion.V_OVER_Z``  : the same factor read as a series in v/z,
  v/(v-cz) = -(v/cz) * sum_{j>=0} (v/cz)^j = -sum_{j>=1} (v/cz)^j,
  which requires c != 0.

The overall sign of the V_OVER_Z image is easy to get wrong; it is pinned
here by the telescoping identities (checked in the test suite)

    expand(t, Z_OVER_V) * (1 - c z/v) == t-without-factor   exactly, and
    expand(t, V_OVER_Z) * (v - c z)   == v * t-without-factor exactly,

inside any window: the single boundary monomial of the telescope falls
outside the window on the correct side in each mode.  A second, independent
pin: with these signs the V_OVER_Z expansion of the surface hypergeometric
series starts 1 + t0/z + O(z^-2), as it must for a cohomology-valued series
of that shape.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

__all__ = [
    "VARIABLES",
    "Monomial",
    "TruncationWindow",
    "FormalSeries",
    "LinearFactorTerm",
    "Expansion",
    "mono",
    "series_add",
    "series_mul",
    "series_exp",
    "substitute",
    "coeff",
    "expand_factor",
]

VARIABLES: Tuple[str, ...] = ("Q", "T", "X", "V", "Z", "q1", "q2")

RationalLike = Union[Fraction, int]

#: bound used by :meth:`TruncationWindow.wide` — large enough that no
#: enumerated computation ever reaches it, small enough to catch runaway loops.
_WIDE = 1 << 20


class Monomial(NamedTuple):
    """Exponent vector; multiplication is componentwise addition."""

    Q: int = 0
    T: int = 0
    X: int = 0
    V: int = 0
    Z: int = 0
    q1: int = 0
    q2: int = 0

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(*(a + b for a, b in zip(self, other)))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(*(a * n for a in self))

    @property
    def bounded_mass(self) -> int:
        """Total exponent in the directions every window bounds from above.

        Q, T, q1, q2 never carry negative exponents (no window admits them),
        so any monomial of positive mass escapes every finite window under
        repeated powers; this is the termination certificate used by
        :func:`series_exp` and the hypergeometric generators.
        """
        return self.Q + self.T + self.q1 + self.q2

    def __str__(self) -> str:
        parts = []
        for name, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(name)
            elif e != 0:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


ONE = Monomial()


def mono(**exps: int) -> Monomial:
    """Keyword constructor: ``mono(Q=1, V=-1)`` is Q·V⁻¹."""
    bad = set(exps) - set(VARIABLES)
    if bad:
        raise ValueError(f"unknown variables: {sorted(bad)}")
    return Monomial(**exps)


@dataclass(frozen=True)
class TruncationWindow:
    """Rectangular truncation region for exponent vectors.

    Q, T and the pair (q1, q2) are bounded above only (their exponents are
    nonnegative by construction); X is bounded in absolute value; V and Z are
    bounded on both sides.  ``max_q12`` bounds q1-exp + q2-exp jointly, since
    the Kaehler substitution turns that total into a Q-power; it defaults to
    ``max_q``.
    """

    max_q: int
    max_t: int
    max_abs_x: int
    min_v: int
    max_v: int = 1
    min_z: int = 0
    max_z: int = 0
    max_q12: int = -1  # -1: defaults to max_q (dataclass-friendly sentinel)

    def __post_init__(self) -> None:
        if self.max_q12 < 0:
            object.__setattr__(self, "max_q12", self.max_q)
        if min(self.max_q, self.max_t, self.max_abs_x, self.max_q12) < 0:
            raise ValueError("upper truncation bounds must be nonnegative")
        if self.min_v > self.max_v or self.min_z > self.max_z:
            raise ValueError("empty window: min bound exceeds max bound")

    @classmethod
    def wide(cls) -> "TruncationWindow":
        """Window so large that truncation is unreachable in practice.

        Used to carry exact Laurent polynomials (localization values in V)
        through the same container as honestly truncated series.
        """
        return cls(
            max_q=_WIDE,
            max_t=_WIDE,
            max_abs_x=_WIDE,
            min_v=-_WIDE,
            max_v=_WIDE,
            min_z=-_WIDE,
            max_z=_WIDE,
            max_q12=_WIDE,
        )

    def contains(self, m: Monomial) -> bool:
        return (
            0 <= m.Q <= self.max_q
            and 0 <= m.T <= self.max_t
            and abs(m.X) <= self.max_abs_x
            and self.min_v <= m.V <= self.max_v
            and self.min_z <= m.Z <= self.max_z
            and m.q1 >= 0
            and m.q2 >= 0
            and m.q1 + m.q2 <= self.max_q12
        )

    def intersect(self, other: "TruncationWindow") -> "TruncationWindow":
        return TruncationWindow(
            max_q=min(self.max_q, other.max_q),
            max_t=min(self.max_t, other.max_t),
            max_abs_x=min(self.max_abs_x, other.max_abs_x),
            min_v=max(self.min_v, other.min_v),
            max_v=min(self.max_v, other.max_v),
            min_z=max(self.min_z, other.min_z),
            max_z=min(self.max_z, other.max_z),
            max_q12=min(self.max_q12, other.max_q12),
        )

    @property
    def mass_budget(self) -> int:
        """Upper bound for :attr:`Monomial.bounded_mass` inside the window."""
        return self.max_q + self.max_t + self.max_q12


class FormalSeries:
    """Truncated sparse Laurent series: ``{Monomial: Fraction}`` + window.

    Instances are value-like: no method mutates ``self``.  Equality compares
    term maps only (two series that agree as maps are equal even if their
    windows differ; windows are bookkeeping for *future* operations).
    """

    __slots__ = ("_terms", "window")

    def __init__(
        self,
        terms: Mapping[Monomial, RationalLike] | Iterable[Tuple[Monomial, RationalLike]],
        window: TruncationWindow,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if c == 0 or not window.contains(m):
                continue
            acc = clean.get(m, _ZERO) + c
            if acc == 0:
                clean.pop(m, None)
            else:
                clean[m] = acc
        self._terms = clean
        self.window = window

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, window: TruncationWindow) -> "FormalSeries":
        return cls({}, window)

    @classmethod
    def one(cls, window: TruncationWindow) -> "FormalSeries":
        return cls({ONE: Fraction(1)}, window)

    @classmethod
    def of(cls, c: RationalLike, m: Monomial, window: TruncationWindow) -> "FormalSeries":
        return cls({m: Fraction(c)}, window)

    # -- inspection -----------------------------------------------------------

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in lexicographic exponent order (deterministic)."""
        for m in sorted(self._terms):
            yield m, self._terms[m]

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSeries):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            other_terms = {} if other == 0 else {ONE: Fraction(other)}
            return self._terms == other_terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{m}" for m, c in itertools.islice(self.items(), 8))
        more = "" if len(self) <= 8 else f" ... [{len(self)} terms]"
        return f"FormalSeries({body or '0'}{more})"

    # -- ring structure -------------------------------------------------------

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        w = self.window.intersect(other.window)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, _ZERO) + c
            if s == 0:
                acc.pop(m, None)
            else:
                acc[m] = s
        return FormalSeries(acc, w)

    def __neg__(self) -> "FormalSeries":
        return FormalSeries({m: -c for m, c in self._terms.items()}, self.window)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        w = self.window.intersect(other.window)
        acc: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                if not w.contains(m):
                    continue
                s = acc.get(m, _ZERO) + c1 * c2
                if s == 0:
                    acc.pop(m, None)
                else:
                    acc[m] = s
        return FormalSeries(acc, w)

    def scale(self, c: RationalLike, m: Monomial = ONE) -> "FormalSeries":
        """Multiply by the single term c·m (cheaper than a full ``__mul__``)."""
        c = Fraction(c)
        return FormalSeries({mm * m: cc * c for mm, cc in self._terms.items()}, self.window)

    def truncate(self, window: TruncationWindow) -> "FormalSeries":
        return FormalSeries(self._terms, window)

    def z_slice(self, z_exp: int) -> "FormalSeries":
        """Sub-series of terms whose Z-exponent equals ``z_exp``, Z divided out."""
        zshift = Monomial(Z=-z_exp)
        return FormalSeries(
            {m * zshift: c for m, c in self._terms.items() if m.Z == z_exp}, self.window
        )


_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# module-level operation aliases (functional spelling of the same ring)
# ---------------------------------------------------------------------------


def series_add(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a + b


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a * b


def coeff(s: FormalSeries, m: Monomial) -> Fraction:
    return s.coeff(m)


def series_exp(s: FormalSeries) -> FormalSeries:
    """exp of a series all of whose monomials have positive bounded mass.

    The mass condition (every monomial strictly increases the jointly
    bounded-above grading Q + T + q1 + q2) guarantees that s^n leaves the
    window once n exceeds the window's mass budget, so the exponential is a
    finite sum.  Arguments violating it — e.g. anything with a constant term,
    or a pure V/Z/X monomial whose powers could wander inside the window
    forever — are rejected.
    """
    for m, _ in s.items():
        if m.bounded_mass <= 0:
            raise ValueError(f"series_exp argument term {m} does not increase the bounded grading")
    budget = s.window.mass_budget
    if budget > 4096:
        raise ValueError("series_exp needs a finite window (mass budget too large)")
    result = FormalSeries.one(s.window)
    power = FormalSeries.one(s.window)
    fact = 1
    for n in range(1, budget + 1):
        power = power * s
        if power.is_zero():
            break
        fact *= n
        result = result + power.scale(Fraction(1, fact))
    return result


def substitute(
    s: FormalSeries, images: Mapping[str, Tuple[RationalLike, Monomial]]
) -> FormalSeries:
    """Replace each variable in ``images`` by a rational multiple of a monomial.

    ``images`` maps a variable name to ``(c, m)``, read as var ↦ c·m.  A
    variable raised to a negative power needs c != 0.  Variables not listed
    are left alone.  The result is re-truncated to the window of ``s``;
    substitution is a ring homomorphism on the nose (checked in tests),
    truncation commutes with it because the maps used here send monomials to
    monomials.
    """
    bad = set(images) - set(VARIABLES)
    if bad:
        raise ValueError(f"unknown variables: {sorted(bad)}")
    idx = {name: i for i, name in enumerate(VARIABLES)}
    out: Dict[Monomial, Fraction] = {}
    for m, c in s._terms.items():
        new_c = c
        new_m = list(m)
        dead = False
        for name, (ic, im) in images.items():
            e = m[idx[name]]
            if e == 0:
                continue
            new_m[idx[name]] -= e  # the variable itself is consumed
            ic = Fraction(ic)
            if ic == 0:
                if e < 0:
                    raise ValueError(f"cannot raise zero image of {name} to power {e}")
                dead = True
                break
            new_c *= ic**e
            for j, ej in enumerate(im):
                new_m[j] += ej * e
        if dead:
            continue
        mm = Monomial(*new_m)
        if not s.window.contains(mm):
            continue
        acc = out.get(mm, _ZERO) + new_c
        if acc == 0:
            out.pop(mm, None)
        else:
            out[mm] = acc
    return FormalSeries(out, s.window)


# ---------------------------------------------------------------------------
# unexpanded linear factors  coeff * monomial * v/(v - slope*z)
# ---------------------------------------------------------------------------


class Expansion(enum.Enum):
    """Direction in which a v/(v-cz) factor is expanded."""

    Z_OVER_V = "z_over_v"  # power series in z/v  (valid for any slope)
    V_OVER_Z = "v_over_z"  # Laurent series in v/z (needs slope != 0)


@dataclass(frozen=True)
class LinearFactorTerm:
    """A term ``coefficient * monomial * v/(v - slope*z)``, factor unexpanded.

    ``slope == 0`` means the factor is identically 1.
    """

    coefficient: Fraction
    monomial: Monomial
    slope: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "slope", Fraction(self.slope))


def expand_factor(
    term: LinearFactorTerm, mode: Expansion, window: TruncationWindow
) -> FormalSeries:
    """Expand the rational factor of ``term`` in the requested direction.

    Z_OVER_V:  v/(v-cz) = sum_{k>=0} c^k (z/v)^k.
    V_OVER_Z:  v/(v-cz) = -sum_{j>=1} c^-j (v/z)^j   (slope 0 rejected: the
    factor 1 has no v/z expansion with this shape).

    Both sums are truncated by the window's V and Z bounds; the signs are
    pinned by the telescoping products documented in the module docstring.
    """
    c, m, slope = term.coefficient, term.monomial, term.slope
    if mode is Expansion.Z_OVER_V:
        if slope == 0:
            return FormalSeries.of(c, m, window)
        acc: Dict[Monomial, Fraction] = {}
        k = 0
        while True:
            mm = m * Monomial(V=-k, Z=k)
            if mm.V < window.min_v or mm.Z > window.max_z:
                break
            if window.contains(mm):
                acc[mm] = c * slope**k
            k += 1
        return FormalSeries(acc, window)
    if mode is Expansion.V_OVER_Z:
        if slope == 0:
            raise ValueError("slope-0 factor has no v/z expansion")
        acc = {}
        j = 1
        while True:
            mm = m * Monomial(V=j, Z=-j)
            if mm.V > window.max_v or mm.Z < window.min_z:
                break
            if window.contains(mm):
                acc[mm] = -c * slope**-j
            j += 1
        return FormalSeries(acc, window)
    raise ValueError(f"unknown expansion mode {mode!r}")
