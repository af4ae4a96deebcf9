"""Region-based feature invariants, charges, and the discharging witness.

All adjacency notions are edge-sharing: two faces are adjacent when some
edge has one of them on each side.  Triangle counters count faces, the
adjacency matrix counts edges.  Charges use exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Diagram, Face


@dataclass(frozen=True)
class FeatureReport:
    """One Table-style row of feature invariants for a single diagram."""

    delta3: int
    delta4: int
    delta5: int
    delta34: int
    delta35: int
    delta45: int
    delta345: int
    c_delta: int
    e_delta: int
    f: dict[int, int]
    adj: dict[tuple[int, int], int]
    radj: dict[tuple[int, int], Fraction]
    fk_ratio: dict[int, Fraction]

    def to_dict(self) -> dict:
        return {
            "delta3": self.delta3, "delta4": self.delta4,
            "delta5": self.delta5, "delta34": self.delta34,
            "delta35": self.delta35, "delta45": self.delta45,
            "delta345": self.delta345, "c_delta": self.c_delta,
            "e_delta": self.e_delta,
            "f": {str(k): v for k, v in sorted(self.f.items())},
            "adj": {f"{i},{j}": v for (i, j), v in sorted(self.adj.items())},
            "radj": {f"{i},{j}": [v.numerator, v.denominator]
                     for (i, j), v in sorted(self.radj.items())},
            "fk_ratio": {str(k): [v.numerator, v.denominator]
                         for k, v in sorted(self.fk_ratio.items())},
        }


def _edge_face_pairs(d: Diagram) -> list[tuple[Face, Face]]:
    fm = d.face_map()
    return [(fm[e], fm[d.pairing[e]]) for e in d.edges()]


def feature_report(d: Diagram) -> FeatureReport:
    """All per-diagram feature invariants in one pass over the edges."""
    face_list = d.faces()
    pairs = _edge_face_pairs(d)

    f_hist: dict[int, int] = {}
    for f in face_list:
        f_hist[f.sides] = f_hist.get(f.sides, 0) + 1

    adj: dict[tuple[int, int], int] = {}
    for fa, fb in pairs:
        i, j = sorted((fa.sides, fb.sides))
        adj[(i, j)] = adj.get((i, j), 0) + 1

    # triangle id -> set of side counts of distinct neighbours
    tri_ids = {f.id for f in face_list if f.sides == 3}
    neighbours: dict[int, set[tuple[int, int]]] = {t: set() for t in tri_ids}
    tri_edges: dict[int, set[int]] = {t: set() for t in tri_ids}
    e_delta = 0
    for (fa, fb), e in zip(pairs, d.edges()):
        a3, b3 = fa.sides == 3, fb.sides == 3
        if a3 and not b3 or b3 and not a3:
            e_delta += 1
        if fa.id != fb.id:
            if a3:
                neighbours[fa.id].add((fb.sides, fb.id))
            if b3:
                neighbours[fb.id].add((fa.sides, fa.id))
            if a3 and b3:
                tri_edges[fa.id].add(fb.id)
                tri_edges[fb.id].add(fa.id)

    def count_with(sides: tuple[int, ...]) -> int:
        return sum(1 for t in tri_ids
                   if any(s in sides for s, _ in neighbours[t]))

    delta3 = count_with((3,))
    delta4 = count_with((4,))
    delta5 = count_with((5,))
    delta34 = count_with((3, 4))
    delta35 = count_with((3, 5))
    delta45 = count_with((4, 5))
    delta345 = count_with((3, 4, 5))

    c_delta = 0
    seen: set[int] = set()
    for t in tri_ids:
        if t in seen:
            continue
        stack, comp = [t], 0
        seen.add(t)
        while stack:
            cur = stack.pop()
            comp += 1
            for nb in tri_edges[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        c_delta = max(c_delta, comp)

    n_edges = d.edge_count
    n_faces = len(face_list)
    radj = {k: Fraction(v, n_edges) for k, v in adj.items()}
    fk_ratio = {k: Fraction(v, n_faces) for k, v in f_hist.items()}
    return FeatureReport(
        delta3=delta3, delta4=delta4, delta5=delta5, delta34=delta34,
        delta35=delta35, delta45=delta45, delta345=delta345,
        c_delta=c_delta, e_delta=e_delta, f=f_hist, adj=adj, radj=radj,
        fk_ratio=fk_ratio)


def charges(d: Diagram) -> dict[int, Fraction]:
    """Charge 4 - sides per face, keyed by face id; total is always 8."""
    return {f.id: Fraction(4 - f.sides) for f in d.faces()}


def discharge(d: Diagram) -> dict[int, Fraction]:
    """Each triangle sends 1/3 across each edge; returns the new charges.

    Requires a lune-free diagram; the total charge stays 8.
    """
    face_list = d.faces()
    if any(f.sides < 3 for f in face_list):
        raise ValueError("discharge requires a lune-free diagram")
    out = charges(d)
    fm = d.face_map()
    third = Fraction(1, 3)
    for e in d.edges():
        fa, fb = fm[e], fm[d.pairing[e]]
        if fa.sides == 3:
            out[fa.id] -= third
            out[fb.id] += third
        if fb.sides == 3:
            out[fb.id] -= third
            out[fa.id] += third
    return out


def happy_triangle(d: Diagram) -> Optional[int]:
    """Some triangle sharing an edge with a distinct 3-, 4-, or 5-gon.

    Guaranteed to exist on connected lune-free diagrams (the discharging
    theorem); returns its face id, or None.
    """
    fm = d.face_map()
    best = None
    for e in d.edges():
        fa, fb = fm[e], fm[d.pairing[e]]
        if fa.id == fb.id:
            continue
        for t, o in ((fa, fb), (fb, fa)):
            if t.sides == 3 and o.sides in (3, 4, 5):
                if best is None or t.id < best:
                    best = t.id
    return best
