"""Genus-2 theta constants in double precision with an explicit truncation
bound, the map to P^9 by their fourth powers, and numeric checks of the
transformation behaviour, product splitting and Rosenhain parameters."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, exp, log, pi, sqrt
from typing import Sequence

import numpy as np

from . import characteristics as ch
from . import symplectic as sp
from .errors import DegeneratePointError, DomainError, PreconditionError
from .variety import LINEAR_ARRAY

TOL_FLOOR = 1e-12
JZ = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)


@dataclass(frozen=True)
class SiegelMatrix:
    """Point of the Siegel upper half space; stores the upper triangle."""

    t11: complex
    t12: complex
    t22: complex

    def __post_init__(self):
        if self.min_imag_eigenvalue <= 0:
            raise DomainError("imaginary part is not positive definite")

    @classmethod
    def from_array(cls, tau) -> "SiegelMatrix":
        tau = np.asarray(tau, dtype=complex)
        if abs(tau[0, 1] - tau[1, 0]) > 1e-12 * max(1.0, abs(tau).max()):
            raise DomainError("tau is not symmetric")
        return cls(complex(tau[0, 0]), complex(tau[0, 1]), complex(tau[1, 1]))

    @classmethod
    def diagonal(cls, tau1: complex, tau2: complex) -> "SiegelMatrix":
        return cls(complex(tau1), 0j, complex(tau2))

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.t11, self.t12], [self.t12, self.t22]], dtype=complex)

    @property
    def min_imag_eigenvalue(self) -> float:
        y = np.array([[self.t11.imag, self.t12.imag], [self.t12.imag, self.t22.imag]])
        return float(np.linalg.eigvalsh(y)[0])


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    truncation_radius: int
    tail_bound: float


def tail_bound(radius: int, lam: float) -> float:
    """Bound on the omitted mass ``sum_{|p|_inf > N} exp(-pi lam |p + a|^2)``.

    Shell k holds 8k lattice points, each with ``|p + a| >= k - 1/2``; the
    shell terms decay faster than ratio ``2 exp(-2 pi lam (N+1))``.
    """
    k = radius + 1
    first = 8 * k * exp(-pi * lam * (k - 0.5) ** 2)
    ratio = 2 * exp(-2 * pi * lam * k)
    if ratio >= 1:
        return float("inf")
    return first / (1 - ratio)


def truncation_radius(lam: float, tol: float) -> int:
    n = max(1, ceil(sqrt(max(log(1 / tol), 1.0) / (pi * lam))))
    while tail_bound(n, lam) >= tol:
        n += 1
    return n


@lru_cache(maxsize=64)
def _lattice(radius: int) -> np.ndarray:
    r = np.arange(-radius, radius + 1)
    return np.array(np.meshgrid(r, r, indexing="ij")).reshape(2, -1).T.astype(float)


def theta_constant(m: Sequence[int], tau: SiegelMatrix, tol: float = TOL_FLOOR) -> ThetaValue:
    """Theta constant with integral characteristic ``m = (m', m'')``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if ch.q2([x % 2 for x in m]):
        return ThetaValue(0j, 0, 0.0)
    lam = tau.min_imag_eigenvalue
    n = truncation_radius(lam, tol)
    mp = np.array(m[:2], dtype=float)
    mpp = np.array(m[2:], dtype=float)
    # re-centre the box on -m'/2 so |p + m'/2|_inf <= N + 1/2 is covered
    shift = np.floor(mp / 2)
    v = _lattice(n) - shift + mp / 2
    t = tau.array
    quad = t[0, 0] * v[:, 0] ** 2 + 2 * t[0, 1] * v[:, 0] * v[:, 1] + t[1, 1] * v[:, 1] ** 2
    val = np.exp(1j * pi * quad + 1j * pi * (v @ mpp)).sum()
    return ThetaValue(complex(val), n, tail_bound(n, lam))


def theta_constants(tau: SiegelMatrix, tol: float = TOL_FLOOR) -> list[ThetaValue]:
    """The ten even theta constants, in coordinate order."""
    return [theta_constant(m, tau, tol) for m in ch.EVEN]


def theta_1d(a: int, b: int, tau: complex, tol: float = TOL_FLOOR) -> complex:
    lam = tau.imag
    if lam <= 0:
        raise DomainError("tau must lie in the upper half plane")
    n = truncation_radius(lam, tol)
    v = np.arange(-n, n + 1) + a / 2
    return complex(np.exp(1j * pi * v**2 * tau + 1j * pi * v * b).sum())


@dataclass(frozen=True)
class PsiValue:
    coords: np.ndarray          # ten fourth powers, scaled so the largest has modulus 1
    thetas: np.ndarray          # the ten theta constants (unscaled)
    residuals: np.ndarray       # five linear forms and the quartic at ``coords``
    truncation_bound: float     # effect of the omitted lattice tail only, rounding excluded


def linear_and_quartic(x: np.ndarray) -> np.ndarray:
    lin = LINEAR_ARRAY @ x
    s2 = (x**2).sum()
    return np.concatenate([lin, [s2 * s2 - 4 * (x**4).sum()]])


def psi_numeric(tau: SiegelMatrix, tol: float = TOL_FLOOR) -> PsiValue:
    vals = theta_constants(tau, tol)
    th = np.array([v.value for v in vals])
    x = th**4
    scale = np.abs(x).max()
    coords = x / scale
    # d(t^4) = 4 t^3 dt; propagate the tails through the normalisation
    err_x = max(4 * abs(v.value) ** 3 * v.tail_bound + 6 * v.tail_bound**2 for v in vals) / scale
    bound = 4 * err_x + 2 * 20 * err_x  # linear forms: 4 terms; quartic: crude Lipschitz bound
    return PsiValue(coords, th, linear_and_quartic(coords), bound)


# --- transformation behaviour -------------------------------------------------

def is_integral_symplectic(M) -> bool:
    M = np.asarray(M, dtype=np.int64)
    return M.shape == (4, 4) and np.array_equal(M.T @ JZ @ M, JZ)


def _blocks(M):
    M = np.asarray(M)
    return M[:2, :2], M[:2, 2:], M[2:, :2], M[2:, 2:]


def act(M, tau: SiegelMatrix) -> SiegelMatrix:
    A, B, C, D = _blocks(M)
    t = tau.array
    ctd = C @ t + D
    if abs(np.linalg.det(ctd)) < 1e-14:
        raise DomainError("C tau + D is singular")
    res = (A @ t + B) @ np.linalg.inv(ctd)
    return SiegelMatrix.from_array((res + res.T) / 2)


def j_factor(M, tau: SiegelMatrix) -> complex:
    _, _, C, D = _blocks(M)
    return complex(np.linalg.det(C @ tau.array + D))


def reduce_mod2(M) -> sp.SymplecticMatrix:
    return sp.SymplecticMatrix.from_array(np.asarray(M, dtype=np.int64) % 2)


def integral_coordinate_sign(m: Sequence[int], M) -> int:
    """Sign (-1)^(m . ((B A^t)_0, (C D^t)_0)) for an integral M."""
    A, B, C, D = _blocks(np.asarray(M, dtype=np.int64))
    v = np.concatenate([np.diag(B @ A.T), np.diag(C @ D.T)])
    return -1 if int(np.dot(m, v)) % 2 else 1


@dataclass(frozen=True)
class ModularityReport:
    ratios: tuple[complex, ...]
    constant: complex
    spread: float
    constant_sign: int | None
    passes: bool


def verify_modularity(M, tau: SiegelMatrix, tol: float = TOL_FLOOR, rel_tol: float = 1e-8) -> ModularityReport:
    """Ratios ``x_m(M tau) / (sign_m j_M(tau)^2 x_{m.M}(tau))`` must share one
    value in {+1, -1} across the ten even m."""
    if not is_integral_symplectic(M):
        raise PreconditionError("M is not in Sp_4(Z)")
    Mt = act(M, tau)
    j2 = j_factor(M, tau) ** 2
    x_new = np.array([v.value for v in theta_constants(Mt, tol)]) ** 4
    x_old = np.array([v.value for v in theta_constants(tau, tol)]) ** 4
    Mbar = reduce_mod2(M)
    ratios = []
    for k, m in enumerate(ch.EVEN):
        target = ch.index(sp.dot_action(m, Mbar)) - 1
        ratios.append(x_new[k] / (integral_coordinate_sign(m, M) * j2 * x_old[target]))
    r = np.array(ratios)
    c = complex(r.mean())
    spread = float(np.abs(r - c).max())
    root = next((s for s in (1, -1) if abs(c - s) < rel_tol), None)
    return ModularityReport(tuple(ratios), c, spread, root, spread < rel_tol and root is not None)


SP4Z_GENERATORS = (
    JZ,
    np.array([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    np.array([[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
    np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]]),
)


def random_sp4z(rng: np.random.Generator, length: int = 4) -> np.ndarray:
    M = np.eye(4, dtype=np.int64)
    for _ in range(length):
        g = SP4Z_GENERATORS[rng.integers(len(SP4Z_GENERATORS))]
        if rng.integers(2):
            g = np.round(np.linalg.inv(g)).astype(np.int64)
        M = M @ g
    return M


def random_tau(rng: np.random.Generator) -> SiegelMatrix:
    """Im tau = L L^t + I/2 with L uniform in [-1, 1]; Re tau symmetric uniform."""
    L = rng.uniform(-1, 1, (2, 2))
    Y = L @ L.T + 0.5 * np.eye(2)
    X = rng.uniform(-1, 1, (2, 2))
    X = np.triu(X) + np.triu(X, 1).T
    return SiegelMatrix.from_array(X + 1j * Y)


# --- splitting and Rosenhain parameters ----------------------------------------

def splitting_error(tau1: complex, tau2: complex, tol: float = TOL_FLOOR) -> float:
    """Max over all 16 characteristics of |Theta_m(diag) - product of 1-d thetas|."""
    tau = SiegelMatrix.diagonal(tau1, tau2)
    worst = 0.0
    for m in ch.ALL_CHARS:
        lhs = theta_constant(m, tau, tol).value
        rhs = theta_1d(m[0], m[2], tau1, tol) * theta_1d(m[1], m[3], tau2, tol)
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class RosenhainResult:
    lambdas: tuple[complex, complex, complex]
    lambda1_rational: complex
    sign: int


def _i(bits: str) -> int:
    return ch.index(ch.parse(bits)) - 1


def rosenhain(thetas: Sequence[complex], tol: float = 1e-10) -> RosenhainResult:
    """Rosenhain parameters from the ten theta constants.

    All three come from squared-theta cross ratios; lambda_1 is also given by
    the rational expression in fourth powers, whose sign is fixed by agreement.
    """
    t2 = np.asarray(thetas, dtype=complex) ** 2
    x = t2**2
    scale = np.abs(t2).max()
    dens = [t2[_i("0001")] * t2[_i("0011")], t2[_i("0001")] * t2[_i("1111")], t2[_i("0011")] * t2[_i("1111")]]
    if min(abs(d) for d in dens) < tol * scale**2:
        raise DegeneratePointError("a theta constant in a denominator vanishes")
    l1 = t2[_i("0000")] * t2[_i("0010")] / dens[0]
    l2 = t2[_i("0010")] * t2[_i("1100")] / dens[1]
    l3 = t2[_i("0000")] * t2[_i("1100")] / dens[2]
    num = x[_i("1000")] * x[_i("1001")] - x[_i("0000")] * x[_i("0001")] - x[_i("0010")] * x[_i("0011")]
    rat = num / (2 * x[_i("0001")] * x[_i("0011")])
    sign = 1 if abs(l1 - rat) <= abs(l1 + rat) else -1
    return RosenhainResult((complex(l1), complex(l2), complex(l3)), complex(sign * rat), sign)


def weierstrass_separation(res: RosenhainResult) -> float:
    """Smallest pairwise distance among the finite points 0, 1, lambda_1..3,
    and smallest lambda modulus inverse (distance to infinity)."""
    pts = [0j, 1 + 0j, *res.lambdas]
    d = min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:])
    return min(d, min(1 / abs(l) for l in res.lambdas))
