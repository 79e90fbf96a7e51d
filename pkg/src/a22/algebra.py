"""Exact scalars and row reduction.

Rationals are :class:`fractions.Fraction`; prime-field elements are
:class:`FpElement`.  A matrix must hold scalars of a single domain.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError


@dataclass(frozen=True, slots=True)
class FpElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise DomainError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        raise DomainError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other).value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other).value, self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other).value - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other).value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, k: int):
        return FpElement(pow(self.value, k, self.p), self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


Scalar = Union[Fraction, FpElement]


def domain_of(x) -> int | None:
    """Return ``None`` for rationals, ``p`` for F_p elements."""
    if isinstance(x, FpElement):
        return x.p
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return None
    raise DomainError(f"unsupported scalar type {type(x).__name__}")


def to_domain(x, p: int | None) -> Scalar:
    if p is None:
        return Fraction(x)
    if isinstance(x, Fraction):
        return FpElement(x.numerator, p) / FpElement(x.denominator, p)
    return FpElement(int(x), p)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[Scalar, ...], ...]
    p: int | None = None

    @classmethod
    def of(cls, rows: Sequence[Sequence], p: int | None = None) -> "ExactMatrix":
        """Build a matrix, coercing ints/Fractions into Q (``p=None``) or F_p."""
        return cls(tuple(tuple(to_domain(x, p) for x in row) for row in rows), p)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)


@dataclass(frozen=True)
class RowReduction:
    reduced: ExactMatrix
    rank: int
    pivots: tuple[int, ...]
    kernel_basis: tuple[tuple[Scalar, ...], ...]


def _common_domain(rows) -> int | None:
    domains = {domain_of(x) for row in rows for x in row}
    if len(domains) > 1:
        raise DomainError(f"mixed scalar domains: {sorted(domains, key=str)}")
    return domains.pop() if domains else None


def rref(m: ExactMatrix | Sequence[Sequence]) -> RowReduction:
    """Reduced row-echelon form, rank and a kernel basis.

    Pivoting takes the leftmost nonzero column and the topmost nonzero row in
    it, so the output is reproducible.  Kernel vectors are indexed by free
    columns: the vector for free column ``f`` has a 1 at ``f`` and zeros at
    the other free columns.
    """
    if not isinstance(m, ExactMatrix):
        p = _common_domain(m)
        m = ExactMatrix.of(m, p)
    else:
        _common_domain(m.rows)
    p = m.p
    nrows, ncols = m.shape
    rows = [list(r) for r in m.rows]
    zero = to_domain(0, p)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1

    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [zero] * ncols
        v[f] = to_domain(1, p)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        kernel.append(tuple(v))
    reduced = ExactMatrix(tuple(tuple(row) for row in rows), p)
    return RowReduction(reduced, len(pivots), tuple(pivots), tuple(kernel))


def rank(m) -> int:
    return rref(m).rank
