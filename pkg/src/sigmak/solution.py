"""Construction of the solution family u(x, t) = r^2 e^t + h(t).

For odd n and k = (n+1)/2, the k-Hessian of the radially-quadratic ansatz
collapses to A e^((k-1)t) h'' + B e^(kt) with

    A = 2^(k-1) * [C(n-2, k-2) + C(n-2, k-1)],
    B = 2^k * C(n-1, k),

so sigma_k(D^2 u) = 1 holds identically once

    h(t) = e^(-(k-1)t) / (A (k-1)^2)  -  (B/A) e^t.

The r^2 term of the expansion carries the coefficient
-C(n-2, k-2) + C(n-2, k-1), which vanishes exactly when 2k = n + 1; that
cancellation is what makes the ansatz work.  Constants are kept as exact
rationals and only converted to floating point at evaluation time.  Appending
m dummy coordinates (on which u does not depend) extends a core solution in
dimension n to dimension n + m without changing sigma_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import doubledouble as dd
from .symfunc import SymmetricMatrix

# e^x overflows double precision near x = 709; refuse slightly earlier.
OVERFLOW_EXPONENT = 700.0


@dataclass(frozen=True)
class SolutionParams:
    """Constants of one member of the solution family, all exact rationals."""

    n_base: int
    k: int
    m: int
    A: Fraction
    B: Fraction
    h_coeff_decay: Fraction
    h_coeff_growth: Fraction

    def __post_init__(self):
        n, k = self.n_base, self.k
        if n < 3 or n % 2 == 0:
            raise ValueError(f"n_base must be an odd integer >= 3, got {n}")
        if 2 * k != n + 1:
            raise ValueError(f"k must satisfy 2k = n_base + 1, got k={k}, n_base={n}")
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        a_expected = Fraction(2 ** (k - 1) * (math.comb(n - 2, k - 2) + math.comb(n - 2, k - 1)))
        b_expected = Fraction(2**k * math.comb(n - 1, k))
        if self.A != a_expected or self.B != b_expected:
            raise ValueError(
                f"constants (A, B) = ({self.A}, {self.B}) do not match "
                f"({a_expected}, {b_expected}) for n_base={n}"
            )
        if self.h_coeff_decay != Fraction(1, 1) / (self.A * (k - 1) ** 2):
            raise ValueError("decay coefficient inconsistent with 1/(A (k-1)^2)")
        if self.h_coeff_growth != -self.B / self.A:
            raise ValueError("growth coefficient inconsistent with -B/A")

    @property
    def total_dim(self) -> int:
        return self.n_base + self.m


@dataclass(frozen=True)
class Point:
    """An evaluation point: x block, scalar t, then the m dummy coordinates."""

    x: tuple[float, ...]
    t: float
    w: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "w", tuple(float(v) for v in self.w))

    @classmethod
    def from_coords(cls, params: SolutionParams, coords) -> "Point":
        flat = [float(v) for v in coords]
        if len(flat) != params.total_dim:
            raise ValueError(
                f"expected {params.total_dim} coordinates "
                f"({params.n_base - 1} x, 1 t, {params.m} w), got {len(flat)}"
            )
        nx = params.n_base - 1
        return cls(x=tuple(flat[:nx]), t=flat[nx], w=tuple(flat[nx + 1 :]))


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and Hessian of u at a point."""

    value: float
    gradient: tuple[float, ...]
    hessian: SymmetricMatrix


def cancellation_coefficient(n: int, k: int) -> int:
    """The exact integer -C(n-2, k-2) + C(n-2, k-1): zero iff 2k = n + 1."""
    if not 2 <= k <= n - 1:
        raise ValueError(f"k must be in 2..{n - 1}, got {k}")
    return -math.comb(n - 2, k - 2) + math.comb(n - 2, k - 1)


def derive_constants(n_base: int) -> SolutionParams:
    """Build the exact constants for the core (m = 0) solution in dimension n_base."""
    if n_base < 3 or n_base % 2 == 0:
        raise ValueError(
            f"2k = n+1 requires odd n with n >= 3, got n = {n_base}"
        )
    k = (n_base + 1) // 2
    a = Fraction(2 ** (k - 1) * (math.comb(n_base - 2, k - 2) + math.comb(n_base - 2, k - 1)))
    b = Fraction(2**k * math.comb(n_base - 1, k))
    return SolutionParams(
        n_base=n_base,
        k=k,
        m=0,
        A=a,
        B=b,
        h_coeff_decay=Fraction(1, 1) / (a * (k - 1) ** 2),
        h_coeff_growth=-b / a,
    )


def extend(p: SolutionParams, m: int) -> SolutionParams:
    """The same solution viewed on m extra dummy coordinates (total dim n_base + m)."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return replace(p, m=m)


def _check_exponent(p: SolutionParams, t: float) -> None:
    if abs(t) * max(p.k - 1, 1) > OVERFLOW_EXPONENT:
        raise OverflowError(
            f"|t| = {abs(t):g} exceeds the exponential overflow guard "
            f"({OVERFLOW_EXPONENT / max(p.k - 1, 1):g} for k = {p.k})"
        )


def h_eval(p: SolutionParams, t: float, order: int) -> float:
    """h, h' or h'' at t from the two-term closed form."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    _check_exponent(p, t)
    km1 = p.k - 1
    decay = float(p.h_coeff_decay) * math.exp(-km1 * t)
    growth = float(p.h_coeff_growth) * math.exp(t)
    if order == 0:
        return decay + growth
    if order == 1:
        return -km1 * decay + growth
    return km1 * km1 * decay + growth


def h_formula(p: SolutionParams) -> str:
    """Human-readable closed form of h, e.g. '(1/4)*exp(-t) + (-1)*exp(t)'."""
    km1 = p.k - 1
    exponent = "-t" if km1 == 1 else f"-{km1}t"
    return f"({p.h_coeff_decay})*exp({exponent}) + ({p.h_coeff_growth})*exp(t)"


def solution_value(p: SolutionParams, pt: Point) -> float:
    """u at a point: r^2 e^t + h(t); independent of the w coordinates."""
    _check_point(p, pt)
    r2 = sum(v * v for v in pt.x)
    return r2 * math.exp(pt.t) + h_eval(p, pt.t, 0)


def _check_point(p: SolutionParams, pt: Point) -> None:
    if len(pt.x) != p.n_base - 1 or len(pt.w) != p.m:
        raise ValueError(
            f"point shape ({len(pt.x)} x, {len(pt.w)} w) does not match "
            f"params ({p.n_base - 1} x, {p.m} w)"
        )


def eval_jet(p: SolutionParams, pt: Point) -> Jet2:
    """Value, gradient and Hessian of u at pt, from the closed forms.

    Coordinates are ordered x first, then t, then w; the w rows and columns
    of the Hessian are identically zero.
    """
    _check_point(p, pt)
    t = pt.t
    h0 = h_eval(p, t, 0)
    h1 = h_eval(p, t, 1)
    h2 = h_eval(p, t, 2)
    et = math.exp(t)
    r2 = sum(v * v for v in pt.x)

    value = r2 * et + h0
    nx = p.n_base - 1
    d = p.total_dim
    gradient = tuple(2.0 * v * et for v in pt.x) + (r2 * et + h1,) + (0.0,) * p.m

    hess = np.zeros((d, d))
    for i in range(nx):
        hess[i, i] = 2.0 * et
        cross = 2.0 * pt.x[i] * et
        hess[i, nx] = cross
        hess[nx, i] = cross
    hess[nx, nx] = r2 * et + h2
    return Jet2(value=value, gradient=gradient, hessian=SymmetricMatrix(hess))


def hessian_dd(p: SolutionParams, pt: Point) -> list[list[dd.DD]]:
    """The Hessian with entries in double-double precision.

    Same closed form as eval_jet, but e^t, e^(-(k-1)t) and all entry products
    carry ~31 digits.  The verification scan diagonalizes this matrix to
    measure |sigma_k - 1| below the double-precision noise floor.
    """
    _check_point(p, pt)
    _check_exponent(p, pt.t)
    k = p.k
    et = dd.exp(dd.from_float(pt.t))
    e_decay = dd.exp(dd.from_product(-(k - 1.0), pt.t))
    h2 = dd.add(
        dd.mul(dd.mul_f(dd.from_fraction(p.h_coeff_decay), float((k - 1) ** 2)), e_decay),
        dd.mul(dd.from_fraction(p.h_coeff_growth), et),
    )
    r2 = dd.ZERO
    for v in pt.x:
        r2 = dd.add(r2, dd.from_product(v, v))

    nx = p.n_base - 1
    d = p.total_dim
    hess = [[dd.ZERO] * d for _ in range(d)]
    for i in range(nx):
        hess[i][i] = dd.mul_pow2(et, 2.0)
        cross = dd.mul_f(et, 2.0 * pt.x[i])
        hess[i][nx] = cross
        hess[nx][i] = cross
    hess[nx][nx] = dd.add(dd.mul(r2, et), h2)
    return hess
