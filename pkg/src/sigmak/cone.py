"""Ellipticity-cone membership for the k-Hessian operator.

The cone is the connected component of {sigma_k > 0} containing the positive
definite matrices; we use the standard characterization "sigma_j > 0 for
j = 1..k" as the authority, plus the cheaper sufficient test "sigma_k > 0 and
at most one negative eigenvalue".  Boundary values (sigma_j numerically zero)
count as outside: the equation must stay strictly elliptic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symfunc import (
    SigmaVector,
    SymmetricMatrix,
    eigenvalues_symmetric,
    elementary_symmetric,
    sigma_all_via_charpoly,
)

SIGMA_BOUNDARY_REL_TOL = 1e-12  # sigma_j <= tol*(1+fro^j) is not in the open cone
NEGATIVE_EIG_REL_TOL = 1e-10  # lambda < -tol*(1+fro) counts as negative

METHOD_SIGMA_POSITIVITY = "sigma_positivity"
METHOD_LEMMA = "lemma"


@dataclass(frozen=True)
class ConeVerdict:
    in_cone: bool
    sigmas: SigmaVector
    negative_count: int
    method: str

    def __post_init__(self):
        if self.method not in (METHOD_SIGMA_POSITIVITY, METHOD_LEMMA):
            raise ValueError(f"unknown cone method {self.method!r}")
        if not 0 <= self.negative_count <= self.sigmas.n:
            raise ValueError(
                f"negative_count {self.negative_count} out of range 0..{self.sigmas.n}"
            )
        if self.method == METHOD_LEMMA and self.in_cone and self.negative_count > 1:
            raise ValueError("lemma verdict cannot accept more than one negative eigenvalue")


def count_negative_eigenvalues(values, fro: float) -> int:
    """Count eigenvalues below the scale-aware negativity threshold."""
    thr = -NEGATIVE_EIG_REL_TOL * (1.0 + fro)
    return sum(1 for v in values if v < thr)


def _sigma_positive(sigmas: SigmaVector, j: int, fro: float) -> bool:
    return sigmas.sigma(j) > SIGMA_BOUNDARY_REL_TOL * (1.0 + fro**j)


def _sigma_positivity_verdict(
    sigmas: SigmaVector, negative_count: int, fro: float, k: int
) -> ConeVerdict:
    ok = all(_sigma_positive(sigmas, j, fro) for j in range(1, k + 1))
    return ConeVerdict(
        in_cone=ok,
        sigmas=sigmas,
        negative_count=negative_count,
        method=METHOD_SIGMA_POSITIVITY,
    )


def _lemma_verdict(
    sigmas: SigmaVector, negative_count: int, fro: float, k: int
) -> ConeVerdict:
    ok = negative_count <= 1 and _sigma_positive(sigmas, k, fro)
    return ConeVerdict(
        in_cone=ok,
        sigmas=sigmas,
        negative_count=negative_count,
        method=METHOD_LEMMA,
    )


def gamma_k_by_sigma_positivity(m: SymmetricMatrix, k: int) -> ConeVerdict:
    """Membership by the defining characterization: sigma_j > 0 for j = 1..k."""
    if not 1 <= k <= m.dim:
        raise ValueError(f"k must be in 1..{m.dim}, got {k}")
    sigmas = sigma_all_via_charpoly(m)
    fro = m.frobenius_norm()
    neg = count_negative_eigenvalues(eigenvalues_symmetric(m).values, fro)
    return _sigma_positivity_verdict(sigmas, neg, fro, k)


def gamma_k_by_lemma(m: SymmetricMatrix, k: int) -> ConeVerdict:
    """Sufficient test: sigma_k > 0 and at most one negative eigenvalue.

    A True verdict implies membership (and implies the sigma-positivity
    verdict is also True); a False verdict only means the hypotheses were not
    met, not that the matrix is outside the cone.
    """
    if not 1 <= k <= m.dim:
        raise ValueError(f"k must be in 1..{m.dim}, got {k}")
    sigmas = sigma_all_via_charpoly(m)
    fro = m.frobenius_norm()
    neg = count_negative_eigenvalues(eigenvalues_symmetric(m).values, fro)
    return _lemma_verdict(sigmas, neg, fro, k)


def deformation_monotonicity_check(lambdas, k: int, s_grid) -> bool:
    """Check that shifting the one possibly-negative eigenvalue upward never
    decreases e_k.

    Requires lambdas[1:] >= 0 (only the first entry may be negative).  The
    grid evaluation and the closed-form slope e_(k-1)(lambdas[1:]) must agree;
    disagreement indicates a broken invariant and raises.
    """
    lams = [float(v) for v in lambdas]
    n = len(lams)
    if n < 1:
        raise ValueError("need at least one eigenvalue")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if any(v < 0.0 for v in lams[1:]):
        raise ValueError("all eigenvalues after the first must be nonnegative")
    grid = sorted(float(s) for s in s_grid)
    if any(s < 0.0 for s in grid):
        raise ValueError("deformation grid must be nonnegative")

    vals = [elementary_symmetric([lams[0] + s] + lams[1:], k) for s in grid]
    slack = 1e-12 * (1.0 + max((abs(v) for v in vals), default=0.0))
    grid_monotone = all(b >= a - slack for a, b in zip(vals, vals[1:]))

    slope = elementary_symmetric(lams[1:], k - 1)
    closed_monotone = slope >= 0.0

    if grid_monotone != closed_monotone:
        raise RuntimeError(
            "grid and closed-form monotonicity checks disagree "
            f"(grid {grid_monotone}, slope {slope})"
        )
    return grid_monotone
