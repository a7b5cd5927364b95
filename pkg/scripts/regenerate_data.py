"""Rebuild the bundled example data in src/symquandle/data.

Everything is derived from the library itself, so running this twice gives
byte-identical files.
"""

import json
import os
import sys

from symquandle import algebra, chain, linalg
from symquandle.diagram import parse_pd

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "symquandle", "data")

DIAGRAMS = {
    "trefoil.pd": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n",
    "trefoil_kink.pd": "# trefoil with one extra kink on edge 6\nX(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,8,7,7)\n",
    "trefoil_mirror.pd": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\n",
    "figure8.pd": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n",
    "hopf.pd": "X(1,3,2,4) X(3,1,4,2)\n",
    "hopf_kink.pd": "# Hopf link with one extra kink\nX(1,3,2,4) X(3,1,4,6) X(2,6,5,5)\n",
    "unknot.pd": "O(1)\n",
    "unlink2.pd": "O(1) O(2)\n",
    "unlink3.pd": "O(1) O(2) O(3)\n",
}


def dump(name, obj):
    with open(os.path.join(OUT, name), "w") as fh:
        json.dump(obj, fh, sort_keys=True)
        fh.write("\n")


def cohomologically_nontrivial(space):
    """Basis cocycles that are not coboundaries, in basis order (prime modulus)."""
    p = space.modulus
    keys = sorted({g for c in space.cocycles + space.coboundaries for g in c.values})
    vec = lambda c: [c.value(g) for g in keys]
    base = [vec(b) for b in space.coboundaries]
    out = []
    for c in space.cocycles:
        if linalg.rank_mod(base + [vec(c)], p, len(keys)) > linalg.rank_mod(base, p, len(keys)):
            out.append(c)
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    manifest = {"quandles": [], "symmetric_quandles": [], "xsets": [], "diagrams": [], "cocycles": []}
    _, s3 = algebra.symmetric_group_table(3)
    quandles = {
        "t1": (algebra.make_trivial(1), "trivial"),
        "t2": (algebra.make_trivial(2), "trivial"),
        "t3": (algebra.make_trivial(3), "trivial"),
        "t4": (algebra.make_trivial(4), "trivial"),
        "r3": (algebra.make_dihedral(3), "dihedral"),
        "r5": (algebra.make_dihedral(5), "dihedral"),
        "conj_s3": (algebra.make_conj(s3), "conjugation"),
    }
    for name, (q, kind) in quandles.items():
        d = q.to_json()
        d["kind"] = kind
        dump(f"{name}.json", d)
        manifest["quandles"].append({"file": f"{name}.json", "size": q.size, "kind": kind})
        dbl = algebra.symmetric_double(q).to_json()
        dbl["kind"] = "symmetric double"
        dump(f"{name}_double.json", dbl)
        manifest["symmetric_quandles"].append({"file": f"{name}_double.json", "size": 2 * q.size,
                                               "base": f"{name}.json"})
    inv = algebra.group_inverses(s3)
    conj = quandles["conj_s3"][0].to_json()
    conj["rho"] = inv
    conj["kind"] = "conjugation with inversion"
    dump("conj_s3_inv.json", conj)
    manifest["symmetric_quandles"].append({"file": "conj_s3_inv.json", "size": 6, "base": "conj_s3.json"})

    for name in ("t2", "r3", "r5"):
        q = quandles[name][0]
        dump(f"{name}-self.json", algebra.self_action(q).to_json())
        dump(f"{name}-pt.json", algebra.point_action(q).to_json())
        manifest["xsets"] += [{"file": f"{name}-self.json", "quandle": f"{name}.json", "ysize": q.size},
                              {"file": f"{name}-pt.json", "quandle": f"{name}.json", "ysize": 1}]

    for name, text in DIAGRAMS.items():
        with open(os.path.join(OUT, name), "w") as fh:
            fh.write(text)
        d = parse_pd(text)
        manifest["diagrams"].append({"file": name, "crossings": d.ncrossings, "components": d.ncomponents})

    for out_name, qname, xname, p in (("theta.json", "r3", "self", 3),
                                      ("theta_r3_pt.json", "r3", "pt", 3),
                                      ("theta_t2_pt.json", "t2", "pt", 2)):
        q = quandles[qname][0]
        a = algebra.self_action(q) if xname == "self" else algebra.point_action(q)
        space = chain.cocycle_space_q(q, a, 2, p)
        good = cohomologically_nontrivial(space) or space.cocycles
        dump(out_name, good[0].to_json())
        manifest["cocycles"].append({"file": out_name, "quandle": f"{qname}.json",
                                     "xset": f"{qname}-{xname}.json", "modulus": p,
                                     "cohomologically_nontrivial": bool(cohomologically_nontrivial(space))})
    dump("manifest.json", manifest)
    return 0


if __name__ == "__main__":
    sys.exit(main())
