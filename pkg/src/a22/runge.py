"""Runge-side arithmetic: small-coordinate sets, Göpel floors, the
two-place coordinate choice and the resulting height bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import Callable, Sequence

from . import characteristics as ch
from .errors import PreconditionError
from .variety import ProjectivePoint

ARCH_SMALL = Fraction(1, 27)
ARCH_FLOOR = Fraction(51, 1000)


@dataclass(frozen=True)
class PlaceDescriptor:
    """A place of Q: archimedean, or p-adic with ``|p| = 1/p``."""

    kind: str = "archimedean"
    prime: int | None = None

    def __post_init__(self):
        if self.kind not in ("archimedean", "finite"):
            raise ValueError(f"unknown place kind {self.kind!r}")
        if (self.kind == "finite") != (self.prime is not None):
            raise ValueError("finite places need a prime, archimedean ones none")

    @classmethod
    def infinite(cls) -> "PlaceDescriptor":
        return cls("archimedean")

    @classmethod
    def finite(cls, p: int) -> "PlaceDescriptor":
        return cls("finite", p)

    @property
    def archimedean(self) -> bool:
        return self.kind == "archimedean"

    def abs(self, x) -> Fraction:
        x = Fraction(x)
        if self.archimedean:
            return abs(x)
        if x == 0:
            return Fraction(0)
        p, v = self.prime, 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return Fraction(1, p**v) if v >= 0 else Fraction(p**-v)

    def two_three(self) -> Fraction:
        """``|2| |3|`` at this place."""
        return self.abs(2) * self.abs(3)


def _as_intervals(magnitudes: Sequence, rel_err: float) -> tuple[list[Fraction], list[Fraction], Fraction]:
    """Exact lower/upper bounds on each magnitude, and an upper bound on the max."""
    if len(magnitudes) != 10:
        raise PreconditionError("need 10 magnitudes")
    mags = [Fraction(m) for m in magnitudes]
    if any(m < 0 for m in mags):
        raise PreconditionError("magnitudes must be nonnegative")
    top = max(mags)
    if top == 0:
        raise PreconditionError("all magnitudes are zero")
    err = Fraction(rel_err) * top
    lo = [max(m - err, Fraction(0)) for m in mags]
    hi = [m + err for m in mags]
    return lo, hi, top + err


@dataclass(frozen=True)
class SmallSetReport:
    indices: tuple[int, ...]
    verdict: bool
    goepel_complement: tuple[int, ...] | None = None


def small_threshold(place: PlaceDescriptor) -> Fraction:
    return ARCH_SMALL if place.archimedean else Fraction(1)


def small_coordinate_set(magnitudes: Sequence, place: PlaceDescriptor, rel_err: float = 0.0) -> SmallSetReport:
    """Indices with ``|x_i| < threshold * max`` (1/27 archimedean, 1 otherwise),
    and whether that set has size <= 4 or sits inside a Göpel complement.

    With ``rel_err > 0`` each magnitude is an interval; an index is reported
    whenever it might be small, so a true verdict is never an artefact of
    rounding (the verdict is monotone under shrinking the set).
    """
    lo, hi, top_hi = _as_intervals(magnitudes, rel_err)
    t = small_threshold(place)
    if rel_err == 0:
        top = max(lo)
        small = tuple(i + 1 for i, m in enumerate(lo) if m < t * top)
    else:
        small = tuple(i + 1 for i, m in enumerate(lo) if m < t * top_hi)
    if len(small) <= 4:
        return SmallSetReport(small, True)
    for comp in ch.goepel_complements():
        if set(small) <= set(comp):
            return SmallSetReport(small, True, comp)
    return SmallSetReport(small, False)


def floor_constant(place: PlaceDescriptor) -> Fraction:
    return ARCH_FLOOR if place.archimedean else place.two_three()


def goepel_floor_check(magnitudes: Sequence, quad: Sequence[int], place: PlaceDescriptor,
                       rel_err: float = 0.0) -> bool:
    """Some coordinate of the Göpel quadruple ``quad`` (indices) has
    ``|x| >= c * max`` with c = |2||3| (finite) or 51/1000 (archimedean)."""
    lo, hi, top_hi = _as_intervals(magnitudes, rel_err)
    c = floor_constant(place)
    top = max(lo) if rel_err == 0 else top_hi
    return any(lo[i - 1] >= c * top for i in quad)


def coordinate_floor(place: PlaceDescriptor) -> Fraction:
    """Lower bound factor in the two-place coordinate choice."""
    return ARCH_SMALL if place.archimedean else place.two_three()


def satisfies_choice_inequality(pt: ProjectivePoint, i: int, place: PlaceDescriptor) -> bool:
    mags = [place.abs(x) for x in pt.coords]
    return mags[i - 1] >= coordinate_floor(place) * max(mags)


def choose_coordinate(pt: ProjectivePoint, places: Sequence[PlaceDescriptor]) -> int:
    """Lowest index whose coordinate is not too small at either place."""
    if pt.p is not None:
        raise PreconditionError("coordinate choice needs a rational point")
    if 0 in pt.coords:
        raise PreconditionError("point has a zero coordinate")
    if len(places) != 2:
        raise PreconditionError("exactly two places are required")
    for i in range(1, 11):
        if all(satisfies_choice_inequality(pt, i, v) for v in places):
            return i
    raise PreconditionError(f"no admissible coordinate for {pt}; is it on the model?")


def recorded_faltings(height_bound: float) -> tuple[float | None, str]:
    """Faltings-height figure attached to a bound on h(psi(P)).

    The conversion itself is external; only the published output for the
    8.6 bound is known, and it also covers every smaller bound.
    """
    if height_bound <= 8.6:
        return 985.0, "recorded"
    return None, "unavailable"


@dataclass(frozen=True)
class RungeReport:
    height_bound: float
    contributions: tuple[tuple[str, float], ...]
    faltings_bound: float | None
    faltings_source: str
    s_profile: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "height_bound": self.height_bound,
            "contributions": [{"source": s, "value": v} for s, v in self.contributions],
            "faltings_bound": self.faltings_bound,
            "faltings_source": self.faltings_source,
            "s_profile": self.s_profile,
        }


def runge_bound(contains_place_over_2: bool = False, contains_place_over_3: bool = True,
                faltings: Callable[[float], tuple[float | None, str]] = recorded_faltings) -> RungeReport:
    """Height bound for |S| <= 2.

    The defaults describe the generic case (a place above 3 may be in S);
    with |S| <= 2 and an archimedean place, S holds at most one finite place.
    """
    if contains_place_over_2 and contains_place_over_3:
        raise PreconditionError("|S| <= 2 leaves room for one finite place only")
    contrib = [("archimedean", log(27))]
    if contains_place_over_2:
        contrib.append(("place over 2 in S", log(2)))
    else:
        contrib.append(("places over 2 outside S", 6 * log(2)))
    if contains_place_over_3:
        contrib.append(("place over 3 in S", log(3)))
    total = sum(v for _, v in contrib)
    f, src = faltings(total)
    profile = {"contains_place_over_2": contains_place_over_2,
               "contains_place_over_3": contains_place_over_3}
    return RungeReport(total, tuple(contrib), f, src, profile)
