"""Run the oriented / symmetric-double correspondence checks on every bundled diagram.

For each (diagram, X, Y) the cocycles are a solver basis of Z^2(X; Z_p)_Y.
Prints one line per run and a JSON summary with --json.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from symquandle import algebra, chain, cli
from symquandle.invariant import verify_theorems


@dataclass
class SweepConfig:
    diagrams: list[str] = field(default_factory=lambda: [
        "trefoil", "trefoil_kink", "trefoil_mirror", "figure8", "hopf", "hopf_kink", "unknot", "unlink2"])
    pairs: list[tuple[str, str, int]] = field(default_factory=lambda: [
        ("r3", "pt", 3), ("r3", "self", 3), ("t2", "pt", 2), ("t2", "self", 2), ("r5", "pt", 5)])


def sweep(cfg: SweepConfig):
    for qname, xs, p in cfg.pairs:
        q, _ = cli.load_quandle(f"{qname}.json")
        a = algebra.point_action(q) if xs == "pt" else algebra.self_action(q)
        thetas = chain.cocycle_space_q(q, a, 2, p).cocycles
        for dname in cfg.diagrams:
            d = cli.load_diagram(f"{dname}.pd")
            t0 = time.perf_counter()
            rep = verify_theorems(d, q, a, thetas)
            yield {"diagram": dname, "quandle": qname, "xset": xs, "modulus": p, "cocycles": len(thetas),
                   "ok": rep.ok, "failed": [c.name for c in rep.checks if not c.ok],
                   "seconds": round(time.perf_counter() - t0, 3)}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    results = list(sweep(SweepConfig()))
    if args.json:
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            status = "ok" if r["ok"] else "FAILED " + ",".join(r["failed"])
            print(f"{r['diagram']:15s} {r['quandle']}/{r['xset']:4s} mod {r['modulus']}  "
                  f"{r['cocycles']:2d} cocycles  {r['seconds']:6.3f}s  {status}")
    return 0 if all(r["ok"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
