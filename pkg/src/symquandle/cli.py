"""Command-line front end: ``symq <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from typing import Sequence

from . import algebra, chain, coloring, diagram, invariant
from .config import InputError, SizeGuardError, load_limits, set_limits



# -- files ---------------------------------------------------------------------


def data_dir() -> str:
    return str(resources.files("symquandle") / "data")


def resolve(path: str) -> str:
    """Use ``path`` if it exists, else the bundled file with the same name."""
    if os.path.exists(path):
        return path
    cand = os.path.join(data_dir(), os.path.basename(path))
    if os.path.exists(cand):
        return cand
    raise InputError(f"no such file: {path}")


def read_json(path: str):
    with open(resolve(path)) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: bad JSON ({exc})") from None


def load_quandle(path: str) -> tuple[algebra.FiniteQuandle, tuple[int, ...] | None]:
    raw = read_json(path)
    if not isinstance(raw, dict) or "table" not in raw:
        raise InputError(f"{path}: expected an object with 'table'")
    rows = raw["table"]
    if "size" in raw and int(raw["size"]) != len(rows):
        raise InputError(f"{path}: size {raw['size']} does not match table")
    rep = algebra.verify_quandle(rows)
    if not rep.ok:
        raise InputError(f"{path}: not a quandle: {rep.violations[:3]}")
    q = algebra.FiniteQuandle(rows)
    rho = tuple(raw["rho"]) if raw.get("rho") is not None else None
    return q, rho


def load_xset(spec: str | None, q: algebra.FiniteQuandle) -> algebra.XSetAction:
    if spec is None or spec == "pt":
        return algebra.point_action(q)
    if spec == "self":
        return algebra.self_action(q)
    raw = read_json(spec)
    try:
        a = algebra.XSetAction(raw["act"], raw.get("act_inv"))
    except KeyError:
        raise InputError(f"{spec}: X-set needs 'act'") from None
    if "ysize" in raw and int(raw["ysize"]) != a.ysize:
        raise InputError(f"{spec}: ysize does not match act")
    if a.ngens != q.size:
        raise InputError(f"{spec}: action has {a.ngens} columns, quandle has {q.size} elements")
    return a


def load_diagram(path: str) -> diagram.Diagram:
    with open(resolve(path)) as fh:
        return diagram.parse_pd(fh.read())


def load_cocycle(path: str) -> chain.Cocycle:
    return chain.Cocycle.from_json(read_json(path))


def parse_bits(s: str | None, d: diagram.Diagram) -> tuple[int, ...]:
    if s is None:
        return (0,) * d.ncomponents
    s = s.replace(",", "").strip()
    if any(ch not in "01" for ch in s):
        raise InputError(f"orientation bits must be 0/1, got {s!r}")
    return d.check_orientation([int(ch) for ch in s])


def bundled_examples() -> dict:
    with open(os.path.join(data_dir(), "manifest.json")) as fh:
        return json.load(fh)


# -- output -----------------------------------------------------------------------


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, obj, text: str | None = None) -> None:
        if self.fmt == "json" or text is None:
            self.stream.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def _table(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _symmetric(q, rho, path: str) -> algebra.SymmetricQuandle:
    """The symmetric quandle in a file; without rho, the symmetric double."""
    if rho is None:
        return algebra.symmetric_double(q)
    rep = algebra.verify_good_involution(q, rho)
    if not rep.ok:
        raise InputError(f"{path}: rho is not a good involution: {rep.violations[:3]}")
    return algebra.SymmetricQuandle(q, rho)


# -- commands ---------------------------------------------------------------------


def cmd_quandle(args, out: Out) -> int:
    if args.action == "check":
        raw = read_json(args.files[0])
        rep = algebra.verify_quandle(raw.get("table", []))
        res = {"quandle": rep.to_json()}
        ok = rep.ok
        lines = ["valid quandle" if rep.ok else f"invalid quandle: {rep.violations}"]
        n = len(raw.get("table", []))
        note = algebra.dihedral_note(n) if raw.get("kind") == "dihedral" else None
        if note:
            lines.append(f"note: {note}")
            res["note"] = note
        if rep.ok and raw.get("rho") is not None:
            grep = algebra.verify_good_involution(algebra.FiniteQuandle(raw["table"]), raw["rho"])
            res["good_involution"] = grep.to_json()
            ok = ok and grep.ok
            lines.append("valid good involution" if grep.ok else f"invalid good involution: {grep.violations}")
        out.emit(res, "\n".join(lines))
        return 0 if ok else 1
    if args.action == "double":
        q, _ = load_quandle(args.files[0])
        out.emit(algebra.symmetric_double(q).to_json())
        return 0
    if args.action == "involutions":
        q, _ = load_quandle(args.files[0])
        invs = algebra.enumerate_good_involutions(q)
        out.emit({"involutions": [list(r) for r in invs]},
                 "\n".join(" ".join(map(str, r)) for r in invs))
        return 0
    if args.action == "iso":
        if len(args.files) != 2:
            raise InputError("quandle iso needs two files")
        q1, r1 = load_quandle(args.files[0])
        q2, r2 = load_quandle(args.files[1])
        if (r1 is None) != (r2 is None):
            raise InputError("either both or neither file must carry rho")
        f = algebra.quandle_isomorphic(q1, q2, r1, r2)
        out.emit({"isomorphism": list(f) if f else None},
                 "not isomorphic" if f is None else "isomorphism: " + " ".join(map(str, f)))
        return 0
    raise InputError(f"unknown quandle action {args.action}")


def cmd_homology(args, out: Out) -> int:
    q, rho = load_quandle(args.quandle)
    a = load_xset(args.xset, q)
    if args.theory == "q":
        h = chain.homology_q(q, a, args.degree, args.mod)
    else:
        if rho is None and args.method == "canonical":
            h = chain.homology_sq_double(q, a, args.degree, args.mod)
        else:
            sq = _symmetric(q, rho, args.quandle)
            da = a if rho is not None else algebra.induced_double_action(q, a)
            h = chain.homology_sq(sq, da, args.degree, args.mod)
    out.emit(h.to_json(), f"H_{args.degree} = {h}")
    return 0


def cmd_cocycles(args, out: Out) -> int:
    q, rho = load_quandle(args.quandle)
    a = load_xset(args.xset, q)
    if args.theory == "q":
        space = chain.cocycle_space_q(q, a, args.degree, args.mod)
    else:
        sq = _symmetric(q, rho, args.quandle)
        da = a if rho is not None else algebra.induced_double_action(q, a)
        space = chain.cocycle_space_sq(sq, da, args.degree, args.mod)
    res = {"degree": args.degree, "modulus": args.mod,
           "cocycles": [c.to_json() for c in space.cocycles],
           "coboundaries": [c.to_json() for c in space.coboundaries],
           "cohomology_rank": space.cohomology_rank}
    if space.certificate:
        res["certificate"] = space.certificate
    out.emit(res, f"Z^{args.degree}: {len(space.cocycles)} generators, "
                  f"B^{args.degree}: {len(space.coboundaries)} generators, "
                  f"cohomology rank {space.cohomology_rank}")
    return 0


def cmd_transport(args, out: Out) -> int:
    th = load_cocycle(args.cocycle)
    q, _ = load_quandle(args.quandle)
    a = load_xset(args.xset, q)
    if args.direction == "up":
        res = chain.transport_cocycle(th, q, a)
    else:
        res = chain.transport_cocycle_back(th, q, a)
    out.emit(res.to_json())
    return 0


def cmd_diagram(args, out: Out) -> int:
    d = load_diagram(args.file)
    info = d.info()
    text = "\n".join([
        f"crossings: {d.ncrossings}",
        f"components: {d.ncomponents}",
        f"semi-arcs: {len(d.edges)}",
        f"arcs: {len(d.arcs)}",
        f"regions: {d.nregions}",
        "euler: " + ", ".join(f"{e['V']}-{e['E']}+{e['F']}={e['chi']}" for e in info["euler"]),
        "signs: " + " ".join(f"{s:+d}" for s in info["signs"]),
    ] + [f"note: {n}" for n in info["notes"]])
    out.emit(info, text)
    return 0


def cmd_color(args, out: Out) -> int:
    d = load_diagram(args.diagram)
    q, rho = load_quandle(args.quandle)
    jobs = args.jobs
    kind = args.kind
    if kind in ("q", "shadow"):
        o = parse_bits(args.orientation, d)
        if kind == "q":
            cols = coloring.color_q(d, o, q, jobs)
        else:
            cols = coloring.color_shadow(d, o, q, load_xset(args.xset, q), jobs)
        out.emit({"count": len(cols), "orientation": list(o), "colorings": [c.to_json() for c in cols]},
                 f"{len(cols)} colorings")
        return 0
    if kind in ("sq", "sq-shadow"):
        sq = _symmetric(q, rho, args.quandle)
        if kind == "sq":
            cols = coloring.color_sq(d, sq, jobs)
        else:
            a = load_xset(args.xset, q)
            da = a if rho is not None else algebra.induced_double_action(q, a)
            cols = coloring.color_sq_shadow(d, sq, da, jobs)
        out.emit({"count": len(cols), "colorings": [c.to_json() for c in cols]}, f"{len(cols)} colorings")
        return 0
    if kind == "classes":
        if rho is not None:
            raise InputError("orientation classes are defined for symmetric doubles; pass the base quandle")
        a = load_xset(args.xset, q) if args.xset else None
        rows = coloring.count_table(d, q, a, jobs)
        ok = all(r["oriented"] == r["class"] for r in rows)
        text = _table([["".join(map(str, r["orientation"])), r["oriented"], r["class"]] for r in rows],
                      ["orientation", "#Col(D,o)", "#class"])
        out.emit({"ok": ok, "rows": rows}, text)
        return 0 if ok else 1
    raise InputError(f"unknown color kind {kind}")


def cmd_invariant(args, out: Out) -> int:
    d = load_diagram(args.diagram)
    q, rho = load_quandle(args.quandle)
    a = load_xset(args.xset, q)
    th = load_cocycle(args.cocycle) if args.cocycle else None
    if args.theory == "q":
        o = parse_bits(args.orientation, d)
        if th is None:
            inv = invariant.homology_invariant_q(d, o, q, a)
        else:
            inv = invariant.cocycle_invariant_q(d, o, q, a, th)
    else:
        sq = _symmetric(q, rho, args.quandle)
        da = a if rho is not None else algebra.induced_double_action(q, a)
        if th is None:
            inv = invariant.homology_invariant_sq(d, sq, da)
        else:
            if th.theory == "q":
                if rho is not None:
                    raise InputError("a quandle cocycle can only be transported to the symmetric double")
                th = chain.transport_cocycle(th, q, a)
            inv = invariant.cocycle_invariant_sq(d, sq, da, th)
    text = "\n".join(f"{k}: {n}" for k, n in inv.counts().items())
    if inv.presentation:
        text = f"H_2 = {inv.presentation}\n" + text
    out.emit(inv.to_json(), text)
    return 0


def cmd_verify(args, out: Out) -> int:
    d = load_diagram(args.diagram)
    q, rho = load_quandle(args.quandle)
    if rho is not None:
        raise InputError("verify takes the base quandle (the double is built internally)")
    a = load_xset(args.xset, q)
    if args.cocycle:
        thetas = [load_cocycle(c) for c in args.cocycle]
    else:
        thetas = chain.cocycle_space_q(q, a, 2, args.mod).cocycles
    rep = invariant.verify_theorems(d, q, a, thetas)
    res = rep.to_json()
    if args.probes:
        rng = random.Random(args.seed)
        res["probes"] = _coboundary_probes(d, q, a, thetas, args.probes, rng)
        if not res["probes"]["ok"]:
            res["ok"] = False
    text = "\n".join(f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
                     for c in rep.checks)
    if "probes" in res:
        text += f"\n{'PASS' if res['probes']['ok'] else 'FAIL'}  coboundary_probes ({args.probes})"
    out.emit(res, text)
    return 0 if res["ok"] else 1


def _coboundary_probes(d, q, a, thetas, k, rng) -> dict:
    """Φ_θ = Φ_{θ+δf} for k random 1-cochains f."""
    bad = []
    for i in range(k):
        th = thetas[i % len(thetas)] if thetas else None
        if th is None:
            break
        m = th.modulus
        f = chain.Cocycle(1, m, {(r, x): rng.randrange(m or 7) for r in range(a.ysize) for x in range(q.size)})
        th2 = th + chain.coboundary(f, q, a)
        for o in d.orientations():
            cols = coloring.color_shadow(d, o, q, a)
            if invariant.cocycle_invariant_q(d, o, q, a, th, cols, check=False).values != \
                    invariant.cocycle_invariant_q(d, o, q, a, th2, cols).values:
                bad.append({"probe": i, "orientation": list(o)})
    return {"ok": not bad, "failures": bad}


def cmd_examples(args, out: Out) -> int:
    man = bundled_examples()
    text = "\n".join(f"{kind}: " + ", ".join(e["file"] for e in items) for kind, items in sorted(man.items()))
    out.emit(man, text + f"\n(data directory: {data_dir()})")
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symq", description="Quandles, symmetric quandles and link-diagram invariants.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for coloring enumeration")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized probes")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--config", help="JSON file of size-guard overrides")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("quandle", help="check, double, involutions, iso")
    s.add_argument("action", choices=("check", "double", "involutions", "iso"))
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_quandle)

    s = sub.add_parser("homology", help="quandle or symmetric-quandle homology")
    s.add_argument("theory", choices=("q", "sq"))
    s.add_argument("quandle")
    s.add_argument("--xset")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--mod", type=int, default=0)
    s.add_argument("--method", choices=("general", "canonical"), default="general",
                   help="for sq on a symmetric double: relation presentation or canonical basis")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("cocycles", help="bases of cocycles and coboundaries")
    s.add_argument("quandle")
    s.add_argument("--theory", choices=("q", "sq"), default="q")
    s.add_argument("--xset")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.set_defaults(func=cmd_cocycles)

    s = sub.add_parser("transport", help="move a cocycle between a quandle and its symmetric double")
    s.add_argument("cocycle")
    s.add_argument("--direction", choices=("up", "down"), required=True,
                   help="up: quandle cocycle to the double; down: back")
    s.add_argument("--quandle", required=True, help="the base quandle")
    s.add_argument("--xset")
    s.set_defaults(func=cmd_transport)

    s = sub.add_parser("diagram", help="diagram information")
    s.add_argument("action", choices=("info",))
    s.add_argument("file")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("color", help="enumerate colorings")
    s.add_argument("kind", choices=("q", "shadow", "sq", "sq-shadow", "classes"))
    s.add_argument("diagram")
    s.add_argument("quandle")
    s.add_argument("--xset")
    s.add_argument("--orientation")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("invariant", help="homology or cocycle invariants")
    s.add_argument("theory", choices=("q", "sq"))
    s.add_argument("diagram")
    s.add_argument("quandle")
    s.add_argument("--xset")
    s.add_argument("--cocycle")
    s.add_argument("--orientation")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("verify", help="check the oriented / symmetric-double correspondences")
    s.add_argument("diagram")
    s.add_argument("quandle")
    s.add_argument("--xset")
    s.add_argument("--cocycle", action="append", help="repeatable; default: solver basis mod --mod")
    s.add_argument("--mod", type=int, default=3)
    s.add_argument("--probes", type=int, default=0, help="random coboundary shifts to test")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("examples", help="list bundled data")
    s.set_defaults(func=cmd_examples)
    return p


def run(argv: Sequence[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Out(args.format, stream)
    old = None
    try:
        if args.config:
            old = set_limits(load_limits(resolve(args.config)))
        if args.jobs < 1:
            raise InputError("--jobs must be >= 1")
        return args.func(args, out)
    except (InputError, SizeGuardError, chain.UnsupportedModulusError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    finally:
        if old is not None:
            set_limits(old)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
