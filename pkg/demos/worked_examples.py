"""Classify a few canonical Fano 3-topes and print their Fine interior data."""

from finetope import analyze, classify, hull, pi1_order, reflexive_hull
from finetope.fixtures import AFFINE_EXAMPLES
from finetope.lattice import normalize_affine_lattice

SIMPLEX = [(2, 3, 8), (1, 0, 0), (0, 1, 0), (-1, -1, -1)]
ALMOST_REFLEXIVE = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -2)]


def show_record(label, p):
    rec = classify(p)
    print(f"{label}: regime {rec.regime}, dim FI = {rec.fi_dim}")
    print("  FI vertices:", [tuple(str(c) for c in v) for v in rec.fi_vertices])
    print("  |supp| =", len(rec.supp), " pi1 order =", rec.pi1_order, " psi =", rec.psi)


def main():
    show_record("simplex", hull(SIMPLEX))

    p = hull(ALMOST_REFLEXIVE)
    res = analyze(p)
    print("almost reflexive: canonical hull vertices", res.canonical_hull.vertices)
    print("  reflexive hull equal:", reflexive_hull(p) == res.canonical_hull)

    # simplices given in an affine sublattice of Z^4
    for name in ("reid", "kanev", "todorov"):
        ex = AFFINE_EXAMPLES[name]
        local, lmap = normalize_affine_lattice(ex.spec, ex.points)
        q = hull(local, 3)
        fi = analyze(q).fi
        print(f"{name}: FI vertices in Z^4", sorted(lmap.to_ambient(v) for v in fi.vertices))
        print(f"  pi1 order {pi1_order(q)}")


if __name__ == "__main__":
    main()
