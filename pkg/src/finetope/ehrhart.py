"""Ehrhart counts, the ψ- and φ-vectors, and the count test for reflexivity."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .polytope import dilate

__all__ = [
    "EhrhartProfile",
    "ehrhart_polynomial",
    "ehrhart_profile",
    "geometric_genus",
    "phi_vector",
    "psi_palindrome",
    "reflexive_by_count",
]


@dataclass(frozen=True)
class EhrhartProfile:
    """Counts |kΔ ∩ M| for k = 0..d, interior counts for k = 1, 2, and ψ."""

    d: int
    counts: tuple
    interior_counts: tuple
    psi: tuple

    @property
    def volume(self):
        """Normalized volume, d! times the Euclidean volume."""
        return sum(self.psi)


def _psi_from_counts(counts, d):
    # coefficients of (1 - t)^(d+1) * sum_k L(k) t^k, truncated at degree d
    return tuple(sum((-1) ** j * comb(d + 1, j) * counts[i - j] for j in range(i + 1)) for i in range(d + 1))


def ehrhart_profile(polytope):
    if not polytope.is_full_dimensional:
        raise ValueError("the Ehrhart profile needs a full-dimensional polytope")
    d = polytope.ambient_dim
    counts = [1] + [len(dilate(polytope, k).lattice_points()) for k in range(1, d + 1)]
    interior = tuple(len(dilate(polytope, k).interior_lattice_points()) for k in (1, 2))
    return EhrhartProfile(d, tuple(counts), interior, _psi_from_counts(counts, d))


def ehrhart_polynomial(profile):
    """Coefficients (constant term first) of the Ehrhart polynomial, by interpolation."""
    xs = list(range(profile.d + 1))
    ys = [Fraction(c) for c in profile.counts]
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        # Lagrange basis polynomial for node xi
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    return tuple(coeffs)


def evaluate(coeffs, x):
    return sum(c * x ** k for k, c in enumerate(coeffs))


def psi_palindrome(profile):
    psi = profile.psi
    return all(psi[i] == psi[profile.d - i] for i in range(profile.d + 1))


def phi_vector(profile):
    """φ_0 = 0 and φ_i = ψ_{d+1-i} for 1 <= i <= d+1."""
    d = profile.d
    return (0,) + tuple(profile.psi[d + 1 - i] for i in range(1, d + 2))


def reflexive_by_count(polytope):
    """|Δ ∩ M| == |(2Δ)° ∩ M| for a canonical Fano polytope of dimension 3 or 4."""
    if polytope.ambient_dim not in (3, 4) or not polytope.is_full_dimensional:
        raise ValueError("the count test applies in dimension 3 or 4")
    if len(polytope.interior_lattice_points()) != 1:
        raise ValueError("the count test needs a canonical Fano polytope")
    return len(polytope.lattice_points()) == len(dilate(polytope, 2).interior_lattice_points())


def geometric_genus(polytope):
    return len(polytope.interior_lattice_points())
