#!/usr/bin/env python3
"""Generates the bundled category data files.

Development-time tool; the JSON artifacts under crates/core/data are what
ships. Conventions match the loader: F entries are the linear-convention
associator with rows (r, alpha, beta) and columns (s, gamma, delta); entries
whose first three labels contain the unit are implied (identity) and omitted.
"""
import json
import os
from fractions import Fraction

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data", "categories")


def scal(x, conductor=1):
    """Encode a scalar: int, Fraction, or list of Fractions (power basis)."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    coeffs = [[str(Fraction(c).numerator), str(Fraction(c).denominator)] for c in x]
    return {"conductor": conductor, "coeffs": coeffs}


def group_trivial():
    return {"order": 1, "identity": 0, "mult": [[0]]}


def group_cyclic(n):
    return {"order": n, "identity": 0, "mult": [[(a + b) % n for b in range(n)] for a in range(n)]}


def group_s3():
    # Elements as permutations of {0,1,2}, sorted lexicographically.
    import itertools
    elems = sorted(itertools.permutations(range(3)))
    def compose(a, b):
        return tuple(a[b[x]] for x in range(3))
    mult = [[elems.index(compose(a, b)) for b in elems] for a in elems]
    return {"order": 6, "identity": elems.index((0, 1, 2)), "mult": mult}


def vec_g(name, group, omega=None, conductor=1, rotations=None):
    """Pointed category Vec_G^omega graded by G itself (or trivially)."""
    n = group["order"]
    mult = group["mult"]
    inv = [next(b for b in range(n) if mult[a][b] == group["identity"]) for a in range(n)]
    simples = [
        {"name": f"x{g}", "grade": g, "dual": inv[g], "qdim": 1} for g in range(n)
    ]
    fusion = [[a, b, mult[a][b], 1] for a in range(n) for b in range(n)]
    fs = []
    e = group["identity"]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if a == e or b == e or c == e:
                    continue
                r = mult[a][b]
                s = mult[b][c]
                d = mult[r][c]
                w = omega(a, b, c) if omega else 1
                fs.append([a, b, c, d, r, s, 0, 0, 0, 0, w])
    data = {
        "name": name,
        "group": group,
        "conductor": conductor,
        "simples": simples,
        "fusion": fusion,
        "fsymbols": fs,
    }
    if rotations:
        data["rotations"] = rotations
    return data


def vec_ungraded(name, fusion_group, omega=None, conductor=1, rotations=None):
    """Vec_A fusion ring carried over the trivial group (all grades neutral)."""
    n = fusion_group["order"]
    mult = fusion_group["mult"]
    e = fusion_group["identity"]
    inv = [next(b for b in range(n) if mult[a][b] == e) for a in range(n)]
    simples = [{"name": f"x{g}", "grade": 0, "dual": inv[g], "qdim": 1} for g in range(n)]
    fusion = [[a, b, mult[a][b], 1] for a in range(n) for b in range(n)]
    fs = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if a == e or b == e or c == e:
                    continue
                w = omega(a, b, c) if omega else 1
                fs.append([a, b, c, mult[mult[a][b]][c], mult[a][b], mult[b][c], 0, 0, 0, 0, w])
    data = {
        "name": name,
        "group": group_trivial(),
        "conductor": conductor,
        "simples": simples,
        "fusion": fusion,
        "fsymbols": fs,
    }
    if rotations:
        data["rotations"] = rotations
    return data


def ising_graded(rot_signs):
    """Z/2-graded Ising: simples 1, psi in the neutral sector, sigma in the
    other; Tambara-Yamagami associator over Z/2 with tau = +1/sqrt(2)."""
    grp = group_cyclic(2)
    half = Fraction(1, 2)
    sqrt2 = scal([0, 1, 0, -1], 8)          # zeta8 - zeta8^3
    inv_sqrt2 = [0, half, 0, -half]         # (zeta8 - zeta8^3)/2
    simples = [
        {"name": "1", "grade": 0, "dual": 0, "qdim": 1},
        {"name": "psi", "grade": 0, "dual": 1, "qdim": 1},
        {"name": "sigma", "grade": 1, "dual": 2, "qdim": sqrt2},
    ]
    fusion = []
    for (a, b, c, N) in [
        (0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1),
        (1, 1, 0, 1), (1, 2, 2, 1), (2, 1, 2, 1), (2, 2, 0, 1), (2, 2, 1, 1),
    ]:
        fusion.append([a, b, c, N])
    chi = lambda a, b: -1 if (a == 1 and b == 1) else 1
    fs = []
    # Pointed part and mixed entries (a,b,c in {psi,sigma}, unit omitted).
    fs.append([1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1])
    fs.append([1, 1, 2, 2, 0, 2, 0, 0, 0, 0, 1])
    fs.append([2, 1, 1, 2, 2, 0, 0, 0, 0, 0, 1])
    fs.append([1, 2, 1, 2, 2, 2, 0, 0, 0, 0, chi(1, 1)])
    fs.append([1, 2, 2, 0, 2, 1, 0, 0, 0, 0, 1])
    fs.append([1, 2, 2, 1, 2, 0, 0, 0, 0, 0, 1])
    fs.append([2, 2, 1, 0, 1, 2, 0, 0, 0, 0, 1])
    fs.append([2, 2, 1, 1, 0, 2, 0, 0, 0, 0, 1])
    fs.append([2, 1, 2, 0, 2, 2, 0, 0, 0, 0, chi(1, 0)])
    fs.append([2, 1, 2, 1, 2, 2, 0, 0, 0, 0, chi(1, 1)])
    for r in (0, 1):
        for s in (0, 1):
            v = [c * (1 if (r * s) % 2 == 0 else -1) for c in inv_sqrt2]
            fs.append([2, 2, 2, 2, r, s, 0, 0, 0, 0, scal(v, 8)])
    data = {
        "name": "ising_z2_graded",
        "group": grp,
        "conductor": 8,
        "simples": simples,
        "fusion": fusion,
        "fsymbols": fs,
    }
    if rot_signs:
        data["rotations"] = rot_signs
    return data


def main():
    os.makedirs(OUT, exist_ok=True)

    files = {}
    files["vec.json"] = vec_g("vec", group_trivial())
    files["vec_z2.json"] = vec_ungraded("vec_z2_trivial_grading", group_cyclic(2))
    files["vec_z2_graded.json"] = vec_g("vec_z2_graded", group_cyclic(2))
    files["vec_z2_twisted.json"] = vec_g(
        "vec_z2_twisted",
        group_cyclic(2),
        omega=lambda a, b, c: -1 if a == b == c == 1 else 1,
        conductor=4,
        rotations=[[1, 1, 0, [-1]], [1, 0, 1, [-1]]],
    )
    files["vec_s3.json"] = vec_g("vec_s3_graded", group_s3(), conductor=6)
    files["vec_z2_twisted_trivial.json"] = vec_ungraded(
        "vec_z2_twisted_trivial_grading",
        group_cyclic(2),
        omega=lambda a, b, c: -1 if a == b == c == 1 else 1,
        conductor=4,
        rotations=[[1, 1, 0, [-1]], [1, 0, 1, [-1]]],
    )
    files["ising_z2.json"] = ising_graded(None)

    for fname, data in files.items():
        with open(os.path.join(OUT, fname), "w") as f:
            json.dump(data, f, indent=1)
        print("wrote", fname)


if __name__ == "__main__":
    main()
