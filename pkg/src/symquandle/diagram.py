"""Link diagrams given as planar-diagram (PD) codes.

A crossing ``X(a,b,c,d)`` lists its four edge labels counterclockwise,
starting at the incoming under-edge ``a``.  The under strand runs a -> c and
the over strand joins b and d.  Draw each crossing with slot 0 (a) pointing
south, 1 (b) east, 2 (c) north and 3 (d) west.

``O(k)`` declares a crossingless loop carrying edge label k.  ``P(k,e,S)``
places the split piece containing edge k inside the region on side S ('L' or
'R') of edge e; unplaced pieces sit side by side in the outer region.

Every edge gets a *reference direction*: under strands run a -> c; a
component that never passes under is directed from the lower endpoint of its
lowest edge, and a loop runs counterclockwise.  The reference normal of an
edge is its direction rotated a quarter turn counterclockwise, so it points
from the edge's right side ('R') to its left side ('L').

An orientation is one bit per component: 0 keeps the reference direction,
1 reverses it.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .config import InputError

Slot = tuple[int, int]  # (crossing index, slot 0..3)
Incidence = tuple[int, str]  # (edge label, 'L' | 'R')
Orientation = tuple[int, ...]

# quadrant of corner k (between slots k and k+1) as (x, y) signs
CORNER_QUADRANT = {0: (1, -1), 1: (1, 1), 2: (-1, 1), 3: (-1, -1)}
QUADRANT_CORNER = {v: k for k, v in CORNER_QUADRANT.items()}

_TERM = re.compile(r"([XOP])\s*\(([^()]*)\)")


@dataclass
class Region:
    index: int
    incidences: list[Incidence]
    corners: list[Slot] = field(default_factory=list)


class Diagram:
    """Validated PD diagram with derived components, arcs and regions."""

    def __init__(self, crossings: Sequence[Sequence[int]], loops: Sequence[int] = (),
                 components: Sequence[Sequence[int]] | None = None,
                 placements: Sequence[tuple[int, int, str]] = ()):
        self.crossings: list[tuple[int, int, int, int]] = []
        for i, c in enumerate(crossings):
            if len(c) != 4:
                raise InputError(f"crossing #{i}: expected 4 labels, got {len(c)}")
            self.crossings.append(tuple(int(x) for x in c))
        self.loops = [int(k) for k in loops]
        self.placements = [(int(k), int(e), str(s).upper()) for k, e, s in placements]
        self._build_edges()
        self._trace_components()
        if components is not None:
            self._check_components(components)
        self._build_faces()

    # -- construction ---------------------------------------------------------

    def _build_edges(self) -> None:
        ends: dict[int, list[Slot]] = {}
        for ci, c in enumerate(self.crossings):
            for k, e in enumerate(c):
                ends.setdefault(e, []).append((ci, k))
        for e, pts in ends.items():
            if len(pts) != 2:
                where = ", ".join(f"crossing #{c} slot {k}" for c, k in pts)
                raise InputError(f"edge {e} appears {len(pts)} time(s) ({where}); expected 2")
        for k in self.loops:
            if k in ends:
                raise InputError(f"loop label {k} is also used by a crossing")
        if len(set(self.loops)) != len(self.loops):
            raise InputError("duplicate loop label")
        self.ends = ends
        self.edges = sorted(list(ends) + self.loops)

    def _other_end(self, e: int, p: Slot) -> Slot:
        a, b = self.ends[e]
        return b if a == p else a

    def _trace_components(self) -> None:
        tail: dict[int, Slot] = {}
        comps: list[list[int]] = []
        seen: set[int] = set()
        for start in sorted(self.ends):
            if start in seen:
                continue
            fwd = self._walk(start, False)
            heads = [self._other_end(e, t)[1] for e, t in fwd]
            under = {k for k in heads if k in (0, 2)}
            if under == {0, 2}:
                raise InputError(f"component through edge {start}: under strands run both a->c and c->a")
            comp = self._walk(start, True) if under == {2} else fwd
            for ed, tl in comp:
                tail[ed] = tl
                seen.add(ed)
            comps.append([ed for ed, _ in comp])
        for k in self.loops:
            comps.append([k])
        comps.sort(key=min)
        # rotate each cycle to start at its lowest edge
        self.components = [c[c.index(min(c)):] + c[:c.index(min(c))] for c in comps]
        self.tail = tail
        self.component_of = {e: i for i, c in enumerate(self.components) for e in c}
        self.over_ref = []
        for ci, c in enumerate(self.crossings):
            if tail[c[2]] != (ci, 2):
                raise InputError(f"crossing #{ci}: edge {c[0]} is not the incoming under-edge")
            self.over_ref.append(1 if tail[c[1]] == (ci, 1) else -1)

    def _walk(self, start: int, reverse: bool) -> list[tuple[int, Slot]]:
        """Edges of the component of ``start`` with their tail slots."""
        t = max(self.ends[start]) if reverse else min(self.ends[start])
        out, e = [], start
        while True:
            out.append((e, t))
            c, k = self._other_end(e, t)
            t = (c, (k + 2) % 4)
            e = self.crossings[c][(k + 2) % 4]
            if e == start and t == out[0][1]:
                return out

    def _check_components(self, given: Sequence[Sequence[int]]) -> None:
        mine = {frozenset(c) for c in self.components}
        theirs = {frozenset(int(x) for x in c) for c in given}
        if mine != theirs:
            raise InputError("declared components do not match the traced edge cycles")

    def _build_faces(self) -> None:
        faces: list[dict] = []  # each: corners, incidences
        seen: set[Slot] = set()
        for ci in range(len(self.crossings)):
            for k in range(4):
                if (ci, k) in seen:
                    continue
                corners, incs = [], []
                c, kk = ci, k
                while (c, kk) not in seen:
                    seen.add((c, kk))
                    corners.append((c, kk))
                    s = (kk + 1) % 4
                    e = self.crossings[c][s]
                    incs.append((e, "R" if self.tail[e] == (c, s) else "L"))
                    c, kk = self._other_end(e, (c, s))
                if (c, kk) != (ci, k):
                    raise InputError("face trace failed: inconsistent rotation system")
                faces.append({"corners": corners, "incidences": incs})
        for k in self.loops:
            faces.append({"corners": [], "incidences": [(k, "L")]})
            faces.append({"corners": [], "incidences": [(k, "R")]})
        # every (edge, side) exactly once
        allinc = [i for f in faces for i in f["incidences"]]
        if len(allinc) != len(set(allinc)) or len(allinc) != 2 * len(self.edges):
            raise InputError("face trace does not cover each edge side exactly once")
        inc_face = {i: fi for fi, f in enumerate(faces) for i in f["incidences"]}

        # split pieces: connected components of the crossing/loop graph
        piece_of_edge: dict[int, int] = {}
        parent = list(range(len(self.edges)))
        eidx = {e: i for i, e in enumerate(self.edges)}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for c in self.crossings:
            for x in c[1:]:
                parent[find(eidx[x])] = find(eidx[c[0]])
        groups: dict[int, list[int]] = {}
        for e in self.edges:
            groups.setdefault(find(eidx[e]), []).append(e)
        pieces = sorted((sorted(g) for g in groups.values()), key=min)
        for pi, g in enumerate(pieces):
            for e in g:
                piece_of_edge[e] = pi
        self.pieces = pieces
        self.piece_of_edge = piece_of_edge

        # Euler check per piece
        for pi, g in enumerate(pieces):
            fset = {inc_face[(e, s)] for e in g for s in "LR"}
            if g[0] in self.loops:
                v, ecount = 1, 1
            else:
                v = sum(1 for c in self.crossings if c[0] in g)
                ecount = len(g)
            if v - ecount + len(fset) != 2:
                raise InputError(f"split piece with edge {g[0]} fails the Euler check "
                                 f"(V={v}, E={ecount}, F={len(fset)}): not planar")
        outer = [inc_face[(g[0], "R")] for g in pieces]

        # merge faces across pieces
        fparent = list(range(len(faces)))

        def ffind(i):
            while fparent[i] != i:
                fparent[i] = fparent[fparent[i]]
                i = fparent[i]
            return i

        host: dict[int, int] = {}
        for k, e, s in self.placements:
            if k not in piece_of_edge or e not in piece_of_edge:
                raise InputError(f"placement P({k},{e},{s}) names an unknown edge")
            if s not in ("L", "R"):
                raise InputError(f"placement P({k},{e},{s}): side must be L or R")
            pk, pe = piece_of_edge[k], piece_of_edge[e]
            if pk == pe:
                raise InputError(f"placement P({k},{e},{s}) places a piece inside itself")
            if pk in host:
                raise InputError(f"piece of edge {k} placed twice")
            host[pk] = pe
            fparent[ffind(outer[pk])] = ffind(inc_face[(e, s)])
        for pk in host:  # acyclic
            seen_p, p = set(), pk
            while p in host:
                if p in seen_p:
                    raise InputError("placements form a cycle")
                seen_p.add(p)
                p = host[p]
        free = [pi for pi in range(len(pieces)) if pi not in host]
        for pi in free[1:]:
            fparent[ffind(outer[pi])] = ffind(outer[free[0]])
        merged: dict[int, Region] = {}
        for fi, f in enumerate(faces):
            r = merged.setdefault(ffind(fi), Region(-1, [], []))
            r.incidences.extend(f["incidences"])
            r.corners.extend(f["corners"])
        regions = sorted(merged.values(), key=lambda r: min(r.incidences))
        for i, r in enumerate(regions):
            r.index = i
            r.incidences.sort()
            r.corners.sort()
        self.regions = regions
        self.region_of = {inc: r.index for r in regions for inc in r.incidences}
        self.corner_region = {cn: r.index for r in regions for cn in r.corners}
        self.outer_region = self.region_of[(pieces[free[0]][0], "R")] if pieces else None

    # -- derived data ---------------------------------------------------------

    @property
    def ncrossings(self) -> int:
        return len(self.crossings)

    @property
    def ncomponents(self) -> int:
        return len(self.components)

    @property
    def nregions(self) -> int:
        return len(self.regions)

    def semi_arcs(self) -> list[int]:
        return list(self.edges)

    @cached_property
    def arcs(self) -> list[list[int]]:
        """Edges joined through over-strands; each arc is a sorted edge list."""
        parent = {e: e for e in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.crossings:
            parent[find(c[1])] = find(c[3])
        groups: dict[int, list[int]] = {}
        for e in self.edges:
            groups.setdefault(find(e), []).append(e)
        return sorted((sorted(g) for g in groups.values()), key=min)

    @cached_property
    def arc_of(self) -> dict[int, int]:
        return {e: i for i, g in enumerate(self.arcs) for e in g}

    def orientations(self) -> list[Orientation]:
        return [tuple(b) for b in itertools.product((0, 1), repeat=self.ncomponents)]

    def check_orientation(self, o: Sequence[int]) -> Orientation:
        o = tuple(int(b) for b in o)
        if len(o) != self.ncomponents or any(b not in (0, 1) for b in o):
            raise InputError(f"orientation needs {self.ncomponents} bits, got {o}")
        return o

    def edge_sign(self, e: int, o: Sequence[int]) -> int:
        """+1 if e runs along its reference direction under o, else -1."""
        return -1 if o[self.component_of[e]] else 1

    def over_dir(self, ci: int, o: Sequence[int]) -> int:
        """x-direction of the over strand at crossing ci (+1 = west to east)."""
        return self.over_ref[ci] * self.edge_sign(self.crossings[ci][1], o)

    def under_dir(self, ci: int, o: Sequence[int]) -> int:
        """y-direction of the under strand at crossing ci (+1 = south to north)."""
        return self.edge_sign(self.crossings[ci][0], o)

    def crossing_sign(self, ci: int, o: Sequence[int]) -> int:
        """+1 when (over normal, under normal) is a right-handed frame."""
        return self.over_dir(ci, o) * self.under_dir(ci, o)

    def writhe(self, o: Sequence[int]) -> int:
        return sum(self.crossing_sign(ci, o) for ci in range(self.ncrossings))

    def normal_side(self, e: int, o: Sequence[int]) -> str:
        """Side ('L' or 'R') of edge e that the normal points toward under o."""
        return "L" if self.edge_sign(e, o) > 0 else "R"

    def regions_across(self, e: int, toward: str) -> tuple[int, int]:
        """(region the normal points from, region it points to)."""
        other = "R" if toward == "L" else "L"
        return self.region_of[(e, other)], self.region_of[(e, toward)]

    def crossing_regions(self, ci: int) -> list[int]:
        """Regions at corners 0..3 (SE, NE, NW, SW) of crossing ci."""
        return [self.corner_region[(ci, k)] for k in range(4)]

    def euler_report(self) -> list[dict]:
        out = []
        for g in self.pieces:
            fs = {self.region_of[(e, s)] for e in g for s in "LR"}
            if g[0] in self.loops:
                v, ecount = 1, 1
            else:
                v = sum(1 for c in self.crossings if c[0] in g)
                ecount = len(g)
            out.append({"edges": g, "V": v, "E": ecount, "F": len(fs), "chi": v - ecount + len(fs)})
        return out

    def info(self) -> dict:
        return {
            "crossings": [list(c) for c in self.crossings],
            "loops": list(self.loops),
            "components": [list(c) for c in self.components],
            "semi_arcs": self.semi_arcs(),
            "arcs": [list(a) for a in self.arcs],
            "regions": [[[e, s] for e, s in r.incidences] for r in self.regions],
            "euler": self.euler_report(),
            "signs": [self.crossing_sign(ci, (0,) * self.ncomponents) for ci in range(self.ncrossings)],
            "notes": (["crossingless loops use the declared loop convention"] if self.loops else []),
        }

    def to_json(self) -> dict:
        d = {"crossings": [list(c) for c in self.crossings]}
        if self.loops:
            d["loops"] = list(self.loops)
        if self.placements:
            d["placements"] = [list(p) for p in self.placements]
        return d

    def to_pd(self) -> str:
        terms = [f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings]
        terms += [f"O({k})" for k in self.loops]
        terms += [f"P({k},{e},{s})" for k, e, s in self.placements]
        return " ".join(terms)


def parse_pd(text: str) -> Diagram:
    """Parse the PD text grammar (or its JSON mirror)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return diagram_from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad diagram JSON: {exc}") from None
    components = None
    body_lines = []
    for ln, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if s.lower().startswith("components:"):
            try:
                components = json.loads(s.split(":", 1)[1])
            except json.JSONDecodeError:
                raise InputError(f"line {ln}: malformed components header") from None
            continue
        body_lines.append((ln, s))
    crossings, loops, places = [], [], []
    for ln, s in body_lines:
        pos = 0
        for m in _TERM.finditer(s):
            gap = s[pos:m.start()].strip(" ,\t")
            if gap:
                raise InputError(f"line {ln}, col {pos + 1}: unexpected text {gap!r}")
            pos = m.end()
            kind, args = m.group(1), [x.strip() for x in m.group(2).split(",")]
            where = f"line {ln}, col {m.start() + 1}"
            try:
                if kind == "X":
                    if len(args) != 4:
                        raise InputError(f"{where}: X(...) needs 4 labels, got {len(args)}")
                    crossings.append([int(x) for x in args])
                elif kind == "O":
                    if len(args) != 1:
                        raise InputError(f"{where}: O(...) takes one label")
                    loops.append(int(args[0]))
                else:
                    if len(args) != 3:
                        raise InputError(f"{where}: P(...) takes (edge, edge, side)")
                    places.append((int(args[0]), int(args[1]), args[2].strip("'\"")))
            except InputError:
                raise
            except ValueError:
                raise InputError(f"{where}: labels must be integers") from None
        tail = s[pos:].strip(" ,\t")
        if tail:
            raise InputError(f"line {ln}, col {pos + 1}: unexpected text {tail!r}")
    if not crossings and not loops:
        raise InputError("empty diagram")
    return Diagram(crossings, loops, components, places)


def diagram_from_json(d: dict) -> Diagram:
    if not isinstance(d, dict) or "crossings" not in d and "loops" not in d:
        raise InputError("diagram JSON needs 'crossings' and/or 'loops'")
    return Diagram(d.get("crossings", []), d.get("loops", []), d.get("components"),
                   [tuple(p) for p in d.get("placements", [])])


def load_diagram(path: str) -> Diagram:
    with open(path) as fh:
        return parse_pd(fh.read())


def orientations(d: Diagram) -> list[Orientation]:
    return d.orientations()


def faces(d: Diagram) -> list[Region]:
    return d.regions


def crossing_sign(d: Diagram, o: Sequence[int], ci: int) -> int:
    return d.crossing_sign(ci, o)


def arcs(d: Diagram, o: Iterable[int] | None = None) -> list[list[int]]:
    return d.arcs
