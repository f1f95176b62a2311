"""Exact integer and rational linear algebra over M = Z^d and its dual N.

Vectors are plain tuples. Integer coordinates stay ``int``; rational ones are
``fractions.Fraction`` and are collapsed back to ``int`` whenever the
denominator is 1, so equal points always compare and hash equal.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

__all__ = [
    "AffineLatticeMap",
    "AffineLatticeSpec",
    "complete_to_basis",
    "determinant",
    "hermite_normal_form",
    "integer_inverse",
    "integer_kernel",
    "normalize_affine_lattice",
    "pairing",
    "polygon_hull",
    "polygon_normal_form",
    "primitive",
    "quotient_map",
    "rank",
    "smith_normal_form",
    "solve",
]


# ---------------------------------------------------------------------------
# scalars and vectors


def as_number(x):
    """Return ``x`` as an int if it is integral, otherwise as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def as_vector(v):
    return tuple(as_number(c) for c in v)


def is_integral(v):
    return all(isinstance(c, int) or Fraction(c).denominator == 1 for c in v)


def pairing(x, n):
    """The natural pairing <x, n> between M_Q and N_Q (an exact dot product)."""
    if len(x) != len(n):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(n)}")
    return as_number(sum(a * b for a, b in zip(x, n)))


def primitive(v):
    """Divide an integer vector by the gcd of its coordinates."""
    g = reduce(gcd, v, 0)
    if g == 0:
        raise ValueError("the zero vector has no primitive multiple")
    return tuple(c // g for c in v)


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector."""
    d = reduce(lcm, (Fraction(c).denominator for c in v), 1)
    return tuple(int(Fraction(c) * d) for c in v)


def primitive_direction(v):
    """Write a nonzero rational vector as ``scale * u`` with u primitive.

    Returns ``(u, scale)`` with ``scale`` a positive Fraction.
    """
    w = clear_denominators(v)
    u = primitive(w)
    k = next(i for i, c in enumerate(u) if c != 0)
    return u, Fraction(v[k]) / u[k]


def add(x, y):
    return tuple(as_number(a + b) for a, b in zip(x, y))


def sub(x, y):
    return tuple(as_number(a - b) for a, b in zip(x, y))


def scale(k, x):
    return tuple(as_number(k * a) for a in x)


def neg(x):
    return tuple(-a for a in x)


# ---------------------------------------------------------------------------
# rational Gaussian elimination


def _rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    m = [[Fraction(c) for c in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(_rref(rows)[1])


def independent_rows(rows):
    """Indices of a maximal linearly independent subset, greedily in order."""
    chosen, basis = [], []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            basis.append(r)
            chosen.append(i)
    return chosen


def solve(a, b):
    """Solve the square system a x = b exactly. Raises on singular input."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    m, piv = _rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise ValueError("singular system")
    return tuple(as_number(m[i][n]) for i in range(n))


def determinant(a):
    n = len(a)
    m = [[Fraction(c) for c in r] for r in a]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return as_number(det)


def rational_inverse(a):
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    m, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [[as_number(x) for x in row[n:]] for row in m]


def integer_inverse(a):
    """Inverse of a unimodular integer matrix."""
    inv = rational_inverse(a)
    if not all(is_integral(r) for r in inv):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in r] for r in inv]


def transpose(a):
    return [list(r) for r in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[as_number(sum(x * y for x, y in zip(r, c))) for c in bt] for r in a]


def matvec(a, v):
    return tuple(as_number(sum(x * y for x, y in zip(r, v))) for r in a)


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# integer normal forms


def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns ``(s, u, v)`` with ``u @ a @ v == s``, ``u`` and ``v`` unimodular
    and ``s`` diagonal with nonnegative entries d1 | d2 | ...
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(map(int, r)) for r in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (s, v):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for mat in (s, v):
            for r in mat:
                r[dst] += k * r[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def hermite_normal_form(a):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u @ a == h``, ``u`` unimodular, the nonzero
    rows of ``h`` in echelon form with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.
    """
    h = [list(map(int, r)) for r in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(abs(h[i][c]), i) for i in range(r, m) if h[i][c]]
            if not nz:
                break
            _, p = min(nz)
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    done = done and h[i][c] == 0
            if done:
                break
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h, u


def integer_kernel(a, ncols=None):
    """A basis (list of row vectors) of the lattice {x in Z^n : a x = 0}."""
    if not a:
        n = ncols
        return [tuple(r) for r in identity(n)]
    n = len(a[0])
    s, _, v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(s), n)) if s[i][i])
    return [tuple(v[i][j] for i in range(n)) for j in range(r, n)]


def complete_to_basis(v):
    """Unimodular integer matrix (list of rows) whose first row is ``v``."""
    v = tuple(int(c) for c in v)
    if reduce(gcd, v, 0) != 1:
        raise ValueError(f"{v} is not primitive")
    u = _column_reducer(v)
    return transpose(integer_inverse(u))


def quotient_map(v):
    """Integer (d-1) x d matrix whose rows give coordinates on M / Z v."""
    v = tuple(int(c) for c in v)
    if reduce(gcd, v, 0) != 1:
        raise ValueError(f"{v} is not primitive")
    return _column_reducer(v)[1:]


def _column_reducer(v):
    # unimodular u with u v = e1
    s, u, _ = smith_normal_form([[c] for c in v])
    if s[0][0] != 1:
        raise ValueError(f"{v} is not primitive")
    # column op v = [[+-1]]; fold its sign into u
    if matvec(u, v)[0] == -1:
        u[0] = [-x for x in u[0]]
    return u


# ---------------------------------------------------------------------------
# affine lattices


@dataclass(frozen=True)
class AffineLatticeSpec:
    """{m in Z^n : <level, m> = level_rhs, <congruence, m> = 0 mod modulus}."""

    level: tuple
    level_rhs: int
    congruence: tuple
    modulus: int

    def contains(self, m):
        return (pairing(m, self.level) == self.level_rhs
                and pairing(m, self.congruence) % self.modulus == 0)


@dataclass(frozen=True)
class AffineLatticeMap:
    """Affine isomorphism from Z^k onto an affine lattice: c -> origin + c B."""

    origin: tuple
    basis: tuple

    def to_ambient(self, c):
        return tuple(as_number(o + sum(ci * b[j] for ci, b in zip(c, self.basis)))
                     for j, o in enumerate(self.origin))

    def to_local(self, x):
        diff = sub(x, self.origin)
        k = len(self.basis)
        cols = _rref(self.basis)[1]
        # the basis restricted to its pivot columns is invertible
        a = [[self.basis[i][j] for i in range(k)] for j in cols]
        c = solve(a, [diff[j] for j in cols])
        if self.to_ambient(c) != as_vector(x):
            raise ValueError(f"{x} is not in the affine span")
        return c


def normalize_affine_lattice(spec, points):
    """Express lattice points of a rank-3 affine lattice in Z^3 coordinates.

    Returns ``(vertices, lattice_map)``; ``lattice_map.to_ambient`` carries
    results back into the original coordinates.
    """
    points = [tuple(int(c) for c in p) for p in points]
    for p in points:
        if not spec.contains(p):
            raise ValueError(f"{p} violates the affine lattice constraints")
    n = len(spec.level)
    system = [list(spec.level) + [0], list(spec.congruence) + [-spec.modulus]]
    kernel = [k[:n] for k in integer_kernel(system)]
    basis, _ = hermite_normal_form(kernel)
    basis = tuple(tuple(r) for r in basis if any(r))
    if len(basis) != n - 1:
        raise ValueError("affine lattice does not have rank ambient - 1")
    diffs = [sub(p, points[0]) for p in points[1:]]
    if rank(diffs) != n - 1:
        raise ValueError(f"points span rank {rank(diffs)}, need {n - 1}")
    lmap = AffineLatticeMap(points[0], basis)
    local = [lmap.to_local(p) for p in points]
    assert all(is_integral(c) for c in local)
    return local, lmap


# ---------------------------------------------------------------------------
# lattice polygons


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_hull(points):
    """Counter-clockwise vertices of the convex hull of 2D points."""
    pts = sorted(set(as_vector(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _egcd(a, b):
    # (s, t) with s a + t b = gcd(|a|, |b|)
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        s0, t0 = -s0, -t0
    return s0, t0


def polygon_normal_form(points):
    """Canonical vertex sequence of a lattice polygon up to GL2(Z) + translation.

    Every (anchor vertex, walking direction) pair determines a unique affine
    unimodular map sending the anchor to 0, the first edge onto the positive
    x-axis, the polygon into y >= 0, and the previous vertex into 0 <= x < y.
    The lexicographically smallest image sequence is returned.
    """
    hull = polygon_hull(points)
    if len(hull) < 3:
        raise ValueError("polygon is not 2-dimensional")
    k = len(hull)
    best = None
    for i in range(k):
        for step in (1, -1):
            seq = [hull[(i + step * j) % k] for j in range(k)]
            rel = [sub(p, seq[0]) for p in seq]
            a, b = primitive(rel[1])
            s, t = _egcd(a, b)
            m = [[s, t], [-b, a]]
            x, y = matvec(m, rel[-1])
            if y < 0:
                m[1] = [-c for c in m[1]]
                y = -y
            shear = -(x // y)
            m[0] = [m[0][0] + shear * m[1][0], m[0][1] + shear * m[1][1]]
            cand = tuple(matvec(m, p) for p in rel)
            if best is None or cand < best:
                best = cand
    return best
