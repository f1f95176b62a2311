"""Double description method for polyhedral cones in exact integer arithmetic.

Both directions of polytope conversion go through here: vertex enumeration
homogenizes {x : A x >= b} to a cone in one more variable, and facet
enumeration works on the cone of valid inequalities of a point set.
"""

from fractions import Fraction
from math import gcd, lcm
from functools import reduce

from .lattice import independent_rows, integer_kernel, rational_inverse


def integer_row(row):
    """Positive integer multiple of a rational row, divided by its content."""
    d = reduce(lcm, (Fraction(c).denominator for c in row), 1)
    r = [int(Fraction(c) * d) for c in row]
    g = reduce(gcd, r, 0)
    return tuple(c // g for c in r) if g else tuple(r)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cone_rays(rows, n):
    """Extreme rays and lineality of the cone {y in Q^n : <a, y> >= 0, a in rows}.

    Returns ``(rays, lineality)``: primitive integer extreme rays of the cone
    intersected with the orthogonal complement of its lineality space, and an
    integer basis of that lineality space.
    """
    rows = list(dict.fromkeys(r for r in (integer_row(a) for a in rows) if any(r)))
    lineality = integer_kernel(rows, ncols=n) if rows else integer_kernel([], ncols=n)
    # pin down the lineality space so the remaining cone is pointed
    work = rows + [tuple(l) for l in lineality] + [tuple(-c for c in l) for l in lineality]
    if not work:
        return [], lineality
    basis_idx = independent_rows(work)
    assert len(basis_idx) == n
    inv = rational_inverse([work[i] for i in basis_idx])
    rays, tight = [], []
    for j in range(n):
        rays.append(integer_row([inv[i][j] for i in range(n)]))
        tight.append(sum(1 << basis_idx[i] for i in range(n) if i != j))
    in_basis = set(basis_idx)
    for idx, a in enumerate(work):
        if idx in in_basis:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = {i for i, v in enumerate(vals) if v == 0}
        bit = 1 << idx
        if not neg:
            for i in zero:
                tight[i] |= bit
            continue
        new_rays, new_tight = [], []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if bin(common).count("1") < n - 2:
                    continue
                if any(k != p and k != q and (tight[k] & common) == common
                       for k in range(len(rays))):
                    continue
                r = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(integer_row(r))
                new_tight.append(common | bit)
        keep = pos + sorted(zero)
        rays_next = [rays[i] for i in keep] + new_rays
        tight_next = [tight[i] | (bit if i in zero else 0) for i in keep] + new_tight
        rays, tight = rays_next, tight_next
    return list(dict.fromkeys(rays)), lineality
