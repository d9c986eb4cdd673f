"""Exact expansion of sigma_k over the rationals, with zero floating point.

An expression is a finite sum of terms c * r^a * e^(b*t) with rational c,
stored as a dict mapping the exponent pair (a, b) to its Fraction
coefficient.  The zero expression is the empty dict, and no zero coefficient
is ever stored, so dict equality is exact expression equality.

Example:  r^2 e^t + 1/4 e^(-t)  ->  {(2, 1): Fraction(1), (0, -1): Fraction(1, 4)}

This is enough to house every entry of the rotated Hessian of the solution
ansatz (whose entries are 2e^t, 2r e^t and r^2 e^t + h''(t)) and therefore to
expand sigma_k of it exactly: the certification that the expansion collapses
to the constant 1 is a finite rational computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .errors import CapabilityError
from .solution import derive_constants

Monomial = tuple[int, int]  # (a, b): r^a * e^(b*t)
SymExpr = dict[Monomial, Fraction]

SYM_DET_DIM_LIMIT = 8  # Leibniz expansion over dim! permutations
SIGMA_WORK_LIMIT = 10**7  # C(dim, k) * k! permutation products

# partition of the k-subsets by membership of the r-coupled row (index 0)
# and the t row (index dim-1)
CLASS_WITH_R_AND_T = "with_r_and_t"
CLASS_WITH_T_WITHOUT_R = "with_t_without_r"
CLASS_WITHOUT_T = "without_t"


def sym_zero() -> SymExpr:
    return {}


def sym_const(c) -> SymExpr:
    coeff = Fraction(c)
    return {(0, 0): coeff} if coeff else {}


def sym_term(c, a: int, b: int) -> SymExpr:
    """A single term c * r^a * e^(b*t)."""
    if a < 0:
        raise ValueError(f"r exponent must be nonnegative, got {a}")
    coeff = Fraction(c)
    return {(a, b): coeff} if coeff else {}


def sym_add(lhs: SymExpr, rhs: SymExpr) -> SymExpr:
    out = dict(lhs)
    for mono, coeff in rhs.items():
        acc = out.get(mono)
        if acc is None:
            out[mono] = coeff
        else:
            acc = acc + coeff
            if acc:
                out[mono] = acc
            else:
                del out[mono]
    return out


def sym_neg(expr: SymExpr) -> SymExpr:
    return {mono: -coeff for mono, coeff in expr.items()}


def sym_sub(lhs: SymExpr, rhs: SymExpr) -> SymExpr:
    return sym_add(lhs, sym_neg(rhs))


def sym_mul(lhs: SymExpr, rhs: SymExpr) -> SymExpr:
    out: SymExpr = {}
    for (a1, b1), c1 in lhs.items():
        for (a2, b2), c2 in rhs.items():
            mono = (a1 + a2, b1 + b2)
            acc = out.get(mono)
            acc = c1 * c2 if acc is None else acc + c1 * c2
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return out


def sym_eval(expr: SymExpr, r, exp_t):
    """Evaluate with r and e^t substituted; exact on Fraction inputs."""
    total = 0 * r  # zero of the argument type
    for (a, b), coeff in expr.items():
        total += coeff * r**a * exp_t**b
    return total


def sym_format(expr: SymExpr) -> str:
    if not expr:
        return "0"
    parts = []
    for (a, b), coeff in sorted(expr.items()):
        factors = [f"({coeff})"]
        if a == 1:
            factors.append("r")
        elif a > 1:
            factors.append(f"r^{a}")
        if b != 0:
            factors.append(f"exp({b}t)" if b != 1 else "exp(t)")
        parts.append("*".join(factors))
    return " + ".join(parts)


@dataclass(frozen=True)
class SymMatrix:
    """Square matrix of expressions, structurally symmetric."""

    dim: int
    entries: tuple[tuple[SymExpr, ...], ...]

    def __post_init__(self):
        if self.dim < 1 or len(self.entries) != self.dim:
            raise ValueError("entry grid does not match dim")
        for row in self.entries:
            if len(row) != self.dim:
                raise ValueError("entry grid is not square")
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")

    @classmethod
    def from_rows(cls, rows) -> "SymMatrix":
        return cls(dim=len(rows), entries=tuple(tuple(dict(e) for e in row) for row in rows))


def sym_det(m: SymMatrix) -> SymExpr:
    """Exact determinant by the signed permutation sum."""
    if m.dim > SYM_DET_DIM_LIMIT:
        raise CapabilityError(
            f"symbolic determinants are capped at dim {SYM_DET_DIM_LIMIT}, got {m.dim}"
        )
    return _det_leibniz(m.entries, tuple(range(m.dim)))


def _det_leibniz(entries, idx) -> SymExpr:
    k = len(idx)
    total: SymExpr = {}
    for perm in permutations(range(k)):
        prod: SymExpr | None = None
        for row, col in enumerate(perm):
            entry = entries[idx[row]][idx[col]]
            if not entry:
                prod = None
                break
            prod = dict(entry) if prod is None else sym_mul(prod, entry)
        if prod is None:
            continue
        inversions = sum(
            1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b]
        )
        total = sym_add(total, prod if inversions % 2 == 0 else sym_neg(prod))
    return total


@dataclass(frozen=True)
class SigmaPartition:
    """sigma_k split over the three classes of principal minors.

    Minors are classified by whether they include the r-coupled row (index 0)
    and the t row (the last index); the class subtotals sum to sigma_k.
    """

    subtotals: dict[str, SymExpr]
    counts: dict[str, int]
    total: SymExpr


def sigma_k_partition(m: SymMatrix, k: int) -> SigmaPartition:
    """All k x k principal minors of m, summed per class and in total."""
    n = m.dim
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    work = math.comb(n, k) * math.factorial(k)
    if work > SIGMA_WORK_LIMIT:
        raise CapabilityError(
            f"sigma_{k} of a {n}x{n} symbolic matrix needs {work} permutation "
            f"products, over the {SIGMA_WORK_LIMIT} limit"
        )
    subtotals = {
        CLASS_WITH_R_AND_T: {},
        CLASS_WITH_T_WITHOUT_R: {},
        CLASS_WITHOUT_T: {},
    }
    counts = dict.fromkeys(subtotals, 0)
    total: SymExpr = {}
    for idx in combinations(range(n), k):
        if n - 1 not in idx:
            cls = CLASS_WITHOUT_T
        elif 0 in idx:
            cls = CLASS_WITH_R_AND_T
        else:
            cls = CLASS_WITH_T_WITHOUT_R
        minor = _det_leibniz(m.entries, idx)
        subtotals[cls] = sym_add(subtotals[cls], minor)
        counts[cls] += 1
        total = sym_add(total, minor)
    return SigmaPartition(subtotals=subtotals, counts=counts, total=total)


def sym_sigma_k(m: SymMatrix, k: int) -> SymExpr:
    """Exact sigma_k of a symbolic symmetric matrix."""
    return sigma_k_partition(m, k).total


def rotated_hessian_from_constants(
    n_base: int, k: int, a_const: Fraction, b_const: Fraction
) -> SymMatrix:
    """The rotated Hessian with h'' = (1/A) e^(-(k-1)t) - (B/A) e^t.

    Accepts arbitrary constants so a certification run can also demonstrate
    that perturbed constants fail.
    """
    if n_base < 2:
        raise ValueError(f"n_base must be >= 2, got {n_base}")
    if not 1 <= k <= n_base:
        raise ValueError(f"k must be in 1..{n_base}, got {k}")
    a_const = Fraction(a_const)
    b_const = Fraction(b_const)
    if a_const == 0:
        raise ValueError("leading constant A must be nonzero")
    n = n_base
    h2 = sym_add(
        sym_term(1 / a_const, 0, -(k - 1)),
        sym_term(-b_const / a_const, 0, 1),
    )
    rows = [[sym_zero() for _ in range(n)] for _ in range(n)]
    for i in range(n - 1):
        rows[i][i] = sym_term(2, 0, 1)
    corner = sym_term(2, 1, 1)
    rows[0][n - 1] = corner
    rows[n - 1][0] = dict(corner)
    rows[n - 1][n - 1] = sym_add(sym_term(1, 2, 1), h2)
    return SymMatrix.from_rows(rows)


def build_rotated_hessian(n_base: int) -> SymMatrix:
    """The rotated Hessian of the constructed solution in dimension n_base."""
    p = derive_constants(n_base)
    return rotated_hessian_from_constants(n_base, p.k, p.A, p.B)


@dataclass(frozen=True)
class Certification:
    """Outcome of the exact identity check sigma_k(D^2 u) = 1."""

    n_base: int
    k: int
    ok: bool
    residual: SymExpr


def verify_exact(n_base: int) -> Certification:
    """Certify, in exact arithmetic, that sigma_k of the solution Hessian is 1.

    Only n_base in {3, 5, 7, 9} is supported: past that the Leibniz expansion
    stops being the right tool.
    """
    p = derive_constants(n_base)  # raises for even or too-small n_base
    if n_base > 9:
        raise CapabilityError(
            f"exact certification is capped at n_base = 9, got {n_base}"
        )
    total = sym_sigma_k(build_rotated_hessian(n_base), p.k)
    residual = sym_sub(total, sym_const(1))
    return Certification(n_base=n_base, k=p.k, ok=not residual, residual=residual)
