"""Fox p-coloring counts and the determinant.

Both are computed from the crossing relation matrix (rows = crossings,
columns = over-arcs, relation 2*over - under_in - under_out = 0).  The
coloring count is p^(arcs - rank) by exact elimination mod p; the
determinant is the absolute value of a first minor of the integer matrix,
via fraction-free (Bareiss) elimination.  Both are invariant under the
moves in :mod:`deltadiag.moves`, which is what makes them useful as the
equivalence oracle for kinkification.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Diagram


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def arcs(d: Diagram) -> dict[int, int]:
    """Map each edge to its over-arc index.

    An arc is a maximal strand run between consecutive under-passages; a
    component that never goes under forms a single closed arc.
    """
    arc_of: dict[int, int] = {}
    n_arcs = 0
    for c in range(d.crossings):
        u_out = 4 * c + (d.under_in[c] + 2) % 4
        if d.edge_of(u_out) in arc_of:
            continue
        dd = u_out
        while True:
            arc_of[d.edge_of(dd)] = n_arcs
            arrive = d.pairing[dd]
            cc = arrive >> 2
            if (arrive & 3) == d.under_in[cc]:
                break
            dd = d.through(arrive)
        n_arcs += 1
    # components that are never under strands
    for e in d.edges():
        if e in arc_of:
            continue
        dd = e
        while d.edge_of(dd) not in arc_of:
            arc_of[d.edge_of(dd)] = n_arcs
            dd = d.through(d.pairing[dd])
        n_arcs += 1
    return arc_of


def _relation_matrix(d: Diagram) -> list[list[int]]:
    arc_of = arcs(d)
    n_arcs = max(arc_of.values()) + 1
    rows = []
    for c in range(d.crossings):
        row = [0] * n_arcs
        over_arc = arc_of[d.edge_of(4 * c + d.over_in[c])]
        u_in = arc_of[d.edge_of(4 * c + d.under_in[c])]
        u_out = arc_of[d.edge_of(4 * c + (d.under_in[c] + 2) % 4)]
        row[over_arc] += 2
        row[u_in] -= 1
        row[u_out] -= 1
        rows.append(row)
    return rows


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    rank = 0
    col = 0
    while rank < n_rows and col < n_cols:
        piv = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p) if p > 2 else m[rank][col]
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(d: Diagram) -> int:
    """|det| of a first minor of the coloring relation matrix; 0 if singular."""
    rows = _relation_matrix(d)
    if len(rows[0]) != len(rows):
        # more arcs than crossings: some component never passes under, the
        # link splits off a trivial piece and the determinant vanishes
        return 0
    minor = [row[1:] for row in rows[1:]]
    return abs(_bareiss_det(minor))


@dataclass(frozen=True)
class ColoringReport:
    p: int
    arcs: int
    rank: int
    nullity: int
    count: int
    determinant: int

    def to_dict(self) -> dict:
        return {"p": self.p, "arcs": self.arcs, "rank": self.rank,
                "nullity": self.nullity, "count": self.count,
                "determinant": self.determinant}


def count_colorings(d: Diagram, p: int) -> ColoringReport:
    """Number of Fox p-colorings, p^(arcs - rank), by exact elimination."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = _relation_matrix(d)
    n_arcs = len(rows[0])
    rank = _rank_mod_p(rows, p)
    nullity = n_arcs - rank
    return ColoringReport(p=p, arcs=n_arcs, rank=rank, nullity=nullity,
                          count=p ** nullity, determinant=determinant(d))


def brute_force_count(d: Diagram, p: int) -> int:
    """Enumerate all arc assignments; the independent oracle for small cases."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = _relation_matrix(d)
    n_arcs = len(rows[0])
    count = 0
    for assign in product(range(p), repeat=n_arcs):
        if all(sum(c * x for c, x in zip(row, assign)) % p == 0
               for row in rows):
            count += 1
    return count
