"""Baker-side constants and the final height bound.

Floating point is used throughout; :func:`headline_check` repeats the
decisive inequality in outward-rounded interval arithmetic.
"""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from math import e, factorial, log, pi

import mpmath

from .errors import PreconditionError

REGIMES = ("archimedean", "non_archimedean")
VARIANTS = ("theorem22", "p77")
HEADLINE_D, HEADLINE_S = 18, 9
HEADLINE_CONSTANT = 10**66


def log_star(x: float) -> float:
    return max(log(x), 1.0)


def unit_basis_bounds(d: int, s: int, regulator: float = 1.0) -> tuple[float, float]:
    """Bound on the product of heights of a reduced S-unit basis, and the
    coefficient of h(x) bounding its exponents."""
    if s < 2:
        raise PreconditionError("need s >= 2 for a nontrivial unit basis")
    f2 = factorial(s - 1) ** 2
    product_bound = f2 / (2 ** (s - 2) * d ** (s - 1)) * regulator
    exponent_coeff = 53 * f2 / 2 ** (s - 3) * d**2 * log(6 * d)
    return product_bound, exponent_coeff


@dataclass(frozen=True)
class LinearFormsConstants:
    c1: float
    c2: float
    regime: str
    formula_variant: str
    d: int
    s: int


def _check_range(d: int, s: int) -> None:
    if d < 1 or s < 1:
        raise PreconditionError("d and s must be positive")
    if d > HEADLINE_D or s > HEADLINE_S:
        warnings.warn(f"(d, s) = ({d}, {s}) is outside the range 1..18 x 1..9 "
                      "covered by the published ceilings", stacklevel=3)


def constants(d: int, s: int, regime: str = "archimedean", variant: str = "theorem22") -> LinearFormsConstants:
    if regime not in REGIMES:
        raise ValueError(f"regime must be one of {REGIMES}")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    _check_range(d, s)
    f2 = factorial(s - 1) ** 2
    if regime == "non_archimedean":
        c1 = 12 * (6 * (s + 1) * d) ** (2 * s + 2) * log(e**5 * s * d) * f2 / (2 ** (s - 2) * d ** (s - 1))
        c2 = 53 * f2 / 2 ** (s - 3) * d**2 * log(6 * d)
        variant = "theorem22"
    elif variant == "theorem22":
        c1 = 12 * pi * 30 ** (s + 4) * (s + 1) ** 5.5 * d**2 * log(e * d) * f2 / 2**s
        c2 = 53 * e * s * f2 / 2 ** (s - 3) * d**2 * log(6 * d)
    else:
        # vanishes at d = 1 through log(d)^s
        c1 = 240000 * d * log(d) ** s * f2 * 2000**s * (s + 1) ** (3 * s + 9)
        c2 = 8 * d * f2 / 2**s
    return LinearFormsConstants(c1, c2, regime, variant, d, s)


@dataclass(frozen=True)
class BoundInputs:
    d: int
    s: int
    class_number: int = 1
    regulator: float = 1.0
    largest_prime_norm: int = 1

    def __post_init__(self):
        if self.d < 1 or not 1 <= self.s:
            raise PreconditionError("need d >= 1 and s >= 1")
        if self.regulator <= 0 or self.class_number < 1 or self.largest_prime_norm < 1:
            raise PreconditionError("need R_S > 0, h_K >= 1, P_S >= 1")


def _regime_bound(c: LinearFormsConstants, rhn: float) -> dict:
    coefficient = 400 * c.c1 * log(200 * c.c1 * c.c2)
    return {
        "regime": c.regime,
        "variant": c.formula_variant,
        "c1": c.c1,
        "c2": c.c2,
        "coefficient": coefficient,
        "R_S*h_K*N_v": rhn,
        "log_star": log_star(rhn),
        "bound": coefficient * rhn * log_star(rhn),
    }


def final_bound(inputs: BoundInputs, arch_variant: str = "theorem22") -> dict:
    """Evaluate 400 C1 R_S h_K N_v log*(R_S h_K N_v) log(200 C1 C2) in both
    regimes (N_v = 1 archimedean, N_v = P_S finite) and keep the worse."""
    arch = constants(inputs.d, inputs.s, "archimedean", arch_variant)
    fin = constants(inputs.d, inputs.s, "non_archimedean")
    rh = inputs.regulator * inputs.class_number
    items = [_regime_bound(arch, rh), _regime_bound(fin, rh * inputs.largest_prime_norm)]
    worst = max(items, key=lambda it: it["bound"])
    return {"inputs": asdict(inputs), "regimes": items, "bound": worst["bound"], "worst_regime": worst["regime"]}


def _iv_constants(d: int, s: int, regime: str):
    iv = mpmath.iv
    f2 = iv.mpf(factorial(s - 1) ** 2)
    d_, s_ = iv.mpf(d), iv.mpf(s)
    if regime == "non_archimedean":
        c1 = 12 * (6 * (s_ + 1) * d_) ** (2 * s + 2) * iv.log(iv.e**5 * s_ * d_) * f2 / (iv.mpf(2) ** (s - 2) * d_ ** (s - 1))
        c2 = 53 * f2 / iv.mpf(2) ** (s - 3) * d_**2 * iv.log(6 * d_)
    else:
        c1 = 12 * iv.pi * iv.mpf(30) ** (s + 4) * (s_ + 1) ** iv.mpf(5.5) * d_**2 * iv.log(iv.e * d_) * f2 / iv.mpf(2) ** s
        c2 = 53 * iv.e * s_ * f2 / iv.mpf(2) ** (s - 3) * d_**2 * iv.log(6 * d_)
    return c1, c2


def headline_check(d: int = HEADLINE_D, s: int = HEADLINE_S) -> dict:
    """Certify ``400 C1 log(200 C1 C2) <= 10^66`` in both regimes using
    outward-rounded intervals; the comparison uses the interval's upper end."""
    out = {}
    saved = mpmath.iv.prec
    mpmath.iv.prec = 80
    try:
        for regime in REGIMES:
            c1, c2 = _iv_constants(d, s, regime)
            coeff = 400 * c1 * mpmath.iv.log(200 * c1 * c2)
            upper = coeff.b
            out[regime] = {
                "coefficient_lower": float(coeff.a),
                "coefficient_upper": float(upper),
                "holds": bool(upper <= mpmath.mpf(HEADLINE_CONSTANT)),
            }
    finally:
        mpmath.iv.prec = saved
    out["holds"] = all(out[r]["holds"] for r in REGIMES)
    return out


def height_drop_ledger(h_P: float, class_number: int = 1, q_proximity: bool = False) -> dict:
    """Numeric chain of local-height floors used before the linear-forms step."""
    if h_P <= 1000:
        warnings.warn("h(P) <= 1000 lies outside the regime assumed by the argument", stacklevel=2)
    component = h_P / 40 if q_proximity else h_P / 20
    return {
        "h_P": h_P,
        "pair_local_floor": h_P / 10,
        "component_floor": component,
        "unit_distance_floor": h_P / 40,
        "q_proximity": q_proximity,
        "class_number_correction": class_number * log(2),
    }
