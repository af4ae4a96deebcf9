"""Combinatorial-map diagrams, braid closures, PD codes, faces.

A link diagram is stored as a combinatorial map on darts.  Crossing ``c``
owns darts ``4c .. 4c+3``; the dart's slot ``0..3`` is its counterclockwise
position at the crossing.  Slots 0 and 2 carry the understrand, slots 1 and
3 the overstrand.  Edges are the orbits of a fixed-point-free involution on
darts, and faces are the orbits of ``d -> rot(pairing[d])`` where ``rot``
advances one slot counterclockwise.  Everything downstream (moves,
kinkification, invariants) is built on these orbits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

IDENTITY = 0  # sentinel letter added by pad_even; never accepted from input


class DiagramError(ValueError):
    """Structural problem with a diagram (disconnected, non-planar, ...)."""


class ParseError(ValueError):
    """Malformed textual input; carries line/column of the offense."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidWord:
    """A braid word: strand count plus signed generator letters.

    Letter ``k`` means the generator sigma_|k| with sign(k); the sentinel
    ``IDENTITY`` (0) marks the no-crossing slot appended by :func:`pad_even`.
    """

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"need at least 2 strands, got {self.strands}")
        if not self.letters:
            raise ValueError("empty braid word")
        for k in self.letters:
            if k != IDENTITY and not (1 <= abs(k) <= self.strands - 1):
                raise ValueError(
                    f"letter {k} out of range for {self.strands} strands")

    @property
    def crossings(self) -> int:
        return sum(1 for k in self.letters if k != IDENTITY)

    def serialize(self) -> str:
        body = " ".join("id" if k == IDENTITY else str(k) for k in self.letters)
        return f"b={self.strands} {body}"

    def __str__(self) -> str:
        return self.serialize()


def parse_braid_word(text: str) -> BraidWord:
    """Parse whitespace- or comma-separated signed letters.

    An optional ``b=<n>`` header fixes the strand count; otherwise it is
    ``1 + max |letter|``.  The token ``id`` is accepted only as produced by
    :func:`pad_even` serialization (a trailing identity slot).
    """
    tokens: list[tuple[str, int, int]] = []
    for ln, line in enumerate(text.splitlines() or [text], start=1):
        bare = line.split("#", 1)[0]
        col = 1
        for raw in bare.replace(",", " ").split():
            col = bare.index(raw, col - 1) + 1
            tokens.append((raw, ln, col))
            col += len(raw)
    if not tokens:
        raise ParseError("empty braid word")

    strands: Optional[int] = None
    letters: list[int] = []
    for i, (tok, ln, col) in enumerate(tokens):
        if tok.startswith("b="):
            if i != 0:
                raise ParseError("b= header must come first", ln, col)
            try:
                strands = int(tok[2:])
            except ValueError:
                raise ParseError(f"bad strand count {tok!r}", ln, col) from None
            continue
        if tok == "id":
            letters.append(IDENTITY)
            continue
        try:
            k = int(tok)
        except ValueError:
            raise ParseError(f"bad letter {tok!r}", ln, col) from None
        if k == 0:
            raise ParseError("letter 0 is not a generator", ln, col)
        letters.append(k)
    if not letters:
        raise ParseError("empty braid word")
    top = max((abs(k) for k in letters if k != IDENTITY), default=0)
    if top == 0:
        raise ParseError("braid word has no crossings")
    if strands is None:
        strands = top + 1
    elif top > strands - 1:
        raise ParseError(f"letter {top} needs more than b={strands} strands")
    return BraidWord(strands, tuple(letters))


def pad_even(w: BraidWord) -> BraidWord:
    """Append one identity slot when the letter count is odd."""
    if len(w.letters) % 2 == 0:
        return w
    return BraidWord(w.strands, w.letters + (IDENTITY,))


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class Face:
    """One region: its boundary darts in face-walk order, smallest first."""

    darts: tuple[int, ...]

    @property
    def sides(self) -> int:
        return len(self.darts)

    @property
    def id(self) -> int:
        return self.darts[0]


@dataclass(frozen=True)
class Diagram:
    """Immutable 4-valent plane diagram as a combinatorial map.

    ``pairing`` is the edge involution on darts.  ``under_in[c]`` (slot 0
    or 2) and ``over_in[c]`` (slot 1 or 3) record where each strand enters
    crossing ``c``, which orients every strand.
    """

    pairing: tuple[int, ...]
    under_in: tuple[int, ...]
    over_in: tuple[int, ...]
    arc_hint: tuple[int, ...] = field(default=(), compare=False)

    # -- basic structure ---------------------------------------------------

    @property
    def crossings(self) -> int:
        return len(self.pairing) // 4

    @property
    def n_darts(self) -> int:
        return len(self.pairing)

    @property
    def edge_count(self) -> int:
        return self.n_darts // 2

    def rot(self, d: int) -> int:
        return (d & ~3) | ((d + 1) & 3)

    def through(self, d: int) -> int:
        """The opposite slot at the same crossing (strand continuation)."""
        return (d & ~3) | ((d + 2) & 3)

    def edge_of(self, d: int) -> int:
        """Canonical edge id: the smaller dart of the pair."""
        return min(d, self.pairing[d])

    def edges(self) -> list[int]:
        return sorted(d for d in range(self.n_darts) if d < self.pairing[d])

    def edge_darts(self, e: int) -> tuple[int, int]:
        return e, self.pairing[e]

    def sign(self, c: int) -> int:
        return 1 if self.over_in[c] == (self.under_in[c] + 1) % 4 else -1

    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign(c) for c in range(self.crossings))

    def is_in_dart(self, d: int) -> bool:
        s = d & 3
        c = d >> 2
        return s == self.under_in[c] or s == self.over_in[c]

    # -- orbits ------------------------------------------------------------

    def faces(self) -> list[Face]:
        """Face orbits of ``d -> rot(pairing[d])``, sorted by least dart."""
        seen = [False] * self.n_darts
        out: list[Face] = []
        for d0 in range(self.n_darts):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.rot(self.pairing[d])
            out.append(Face(tuple(orbit)))
        out.sort(key=lambda f: f.id)
        return out

    def face_map(self) -> dict[int, Face]:
        """dart -> its face."""
        m: dict[int, Face] = {}
        for f in self.faces():
            for d in f.darts:
                m[d] = f
        return m

    def components(self) -> list[tuple[int, ...]]:
        """Link components as orbits of the strand walk on darts."""
        seen = [False] * self.n_darts
        comps = []
        for d0 in range(self.n_darts):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                seen[self.pairing[d]] = True
                orbit.append(d)
                d = self.through(self.pairing[d])
            comps.append(tuple(orbit))
        return comps

    def is_connected(self) -> bool:
        if self.n_darts == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for n in (self.pairing[d], self.rot(d)):
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == self.n_darts

    def validate(self) -> None:
        n = self.n_darts
        if n == 0 or n % 4:
            raise DiagramError("dart count must be a positive multiple of 4")
        for d in range(n):
            p = self.pairing[d]
            if p == d:
                raise DiagramError(f"pairing fixes dart {d}")
            if not 0 <= p < n or self.pairing[p] != d:
                raise DiagramError("pairing is not an involution")
        for c in range(self.crossings):
            if self.under_in[c] not in (0, 2) or self.over_in[c] not in (1, 3):
                raise DiagramError(f"bad orientation data at crossing {c}")
        if not self.is_connected():
            raise DiagramError("diagram is not connected")
        if euler_defect(self) != 8:
            raise DiagramError(
                f"not sphere-embeddable: Euler defect {euler_defect(self)} != 8")


def faces(d: Diagram) -> list[Face]:
    return d.faces()


def euler_defect(d: Diagram) -> int:
    """Sum of (4 - sides) over all faces; 8 on every valid diagram."""
    return sum(4 - f.sides for f in d.faces())


def classify(d: Diagram) -> dict:
    """Lune-freeness, delta-ness and the face-size histogram."""
    hist: dict[int, int] = {}
    for f in d.faces():
        hist[f.sides] = hist.get(f.sides, 0) + 1
    lune_free = all(s >= 3 for s in hist)
    delta = all(s in (3, 4, 5) for s in hist)
    return {"lune_free": lune_free, "delta": delta, "side_histogram": hist}


def split_counts(n: int, s: int) -> tuple[int, int]:
    """Side counts of the two parts of an n-gon split by an arc skipping s sides."""
    if n < 3:
        raise ValueError(f"region must have at least 3 sides, got {n}")
    if not 0 <= s <= n - 2:
        raise ValueError(f"skip count {s} out of range for an {n}-gon")
    return (s + 3, n + 1 - s)


# ---------------------------------------------------------------------------
# braid closure

# Slot layout at a braid crossing, strands running top to bottom.
# positive letter: under enters NE;  NE,NW,SW,SE = slots 0,1,2,3
# negative letter: under enters NW;  NW,SW,SE,NE = slots 0,1,2,3
_POS = {"NE": 0, "NW": 1, "SW": 2, "SE": 3}
_NEG = {"NW": 0, "SW": 1, "SE": 2, "NE": 3}


def braid_closure(w: BraidWord) -> Diagram:
    """Close a braid word into a diagram (closure arcs around the right).

    Crossing ids follow letter order; identity slots add no crossing.
    Rejects closures whose underlying graph is disconnected.
    """
    letters = [k for k in w.letters if k != IDENTITY]
    if not letters:
        raise DiagramError("all-identity word has no crossings")
    b = w.strands
    cols: dict[int, list[tuple[int, int]]] = {p: [] for p in range(1, b + 1)}
    for i, k in enumerate(letters):
        kk = abs(k)
        corner = _POS if k > 0 else _NEG
        cols[kk].append((4 * i + corner["NW"], 4 * i + corner["SW"]))
        cols[kk + 1].append((4 * i + corner["NE"], 4 * i + corner["SE"]))

    n = 4 * len(letters)
    pairing = [-1] * n
    arc_hint = []
    for p in range(1, b + 1):
        ends = cols[p]
        if not ends:
            raise DiagramError(
                f"strand {p} meets no crossing: closure is a split circle")
        for (_, bot), (top, _) in zip(ends, ends[1:]):
            pairing[bot] = top
            pairing[top] = bot
        last_bot = ends[-1][1]
        first_top = ends[0][0]
        pairing[last_bot] = first_top
        pairing[first_top] = last_bot
        arc_hint.append(min(last_bot, first_top))

    under_in = []
    over_in = []
    for k in letters:
        under_in.append(0)
        over_in.append(1 if k > 0 else 3)
    d = Diagram(tuple(pairing), tuple(under_in), tuple(over_in),
                arc_hint=tuple(arc_hint))
    if not d.is_connected():
        raise DiagramError("closure is disconnected (split diagram)")
    d.validate()
    return d


def random_braid_word(seed: int, b: int, length: int,
                      retries: int = 200) -> BraidWord:
    """Seeded uniform word over +/-{1..b-1} whose closure is connected."""
    if b < 2 or length < 1:
        raise ValueError("need b >= 2 and length >= 1")
    rng = random.Random(seed)
    alphabet = [k for a in range(1, b) for k in (a, -a)]
    for _ in range(retries):
        letters = tuple(rng.choice(alphabet) for _ in range(length))
        w = BraidWord(b, letters)
        try:
            braid_closure(w)
        except DiagramError:
            continue
        return w
    raise DiagramError(
        f"no connected word found for b={b} len={length} seed={seed}")


# ---------------------------------------------------------------------------
# PD codes


def emit_pd(d: Diagram) -> str:
    """Serialize as PD text, one ``X a b c d`` line per crossing.

    Labels are assigned walking each component in its stored orientation;
    each crossing lists its edge labels counterclockwise from the incoming
    understrand.  Deterministic for a given diagram.
    """
    label: dict[int, int] = {}
    nxt = 1
    for comp in d.components():
        start = comp[0]
        c0 = start >> 2
        s0 = start & 3
        if s0 in (d.under_in[c0], d.over_in[c0]):
            start = d.through(start)  # walk out-darts
        dd = start
        while True:
            e = d.edge_of(dd)
            if e in label:
                break
            label[e] = nxt
            nxt += 1
            dd = d.through(d.pairing[dd])
            if dd == start:
                break
    lines = []
    for c in range(d.crossings):
        s = d.under_in[c]
        labs = [label[d.edge_of(4 * c + ((s + i) % 4))] for i in range(4)]
        lines.append("X " + " ".join(str(x) for x in labs))
    return "\n".join(lines) + "\n"


def parse_pd(text: str) -> Diagram:
    """Parse PD text: ``X a b c d`` per crossing, ccw from incoming under.

    Blank lines and ``#`` comments are ignored.  Validates the label
    pairing, planarity (Euler defect 8) and connectivity, and solves strand
    orientations so every edge has one head and one tail.
    """
    rows: list[tuple[list[int], int]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        bare = line.split("#", 1)[0].strip()
        if not bare:
            continue
        parts = bare.split()
        if parts[0].upper() != "X":
            raise ParseError(f"expected 'X', got {parts[0]!r}", ln, 1)
        if len(parts) != 5:
            raise ParseError("crossing needs exactly 4 edge labels", ln, 1)
        try:
            labs = [int(t) for t in parts[1:]]
        except ValueError:
            raise ParseError("edge labels must be integers", ln, 1) from None
        if any(v <= 0 for v in labs):
            raise ParseError("edge labels must be positive", ln, 1)
        rows.append((labs, ln))
    if not rows:
        raise ParseError("no crossings in PD input")

    occurrences: dict[int, list[int]] = {}
    for i, (labs, ln) in enumerate(rows):
        for s, lab in enumerate(labs):
            occurrences.setdefault(lab, []).append(4 * i + s)
    for lab, ds in occurrences.items():
        if len(ds) != 2:
            ln = rows[ds[0] >> 2][1]
            raise ParseError(
                f"edge label {lab} appears {len(ds)} times (need 2)", ln, 1)

    n = 4 * len(rows)
    pairing = [-1] * n
    for ds in occurrences.values():
        a, b = ds
        pairing[a], pairing[b] = b, a

    under_in = [0] * len(rows)
    over_in = _solve_over_in(len(rows), pairing)
    d = Diagram(tuple(pairing), tuple(under_in), tuple(over_in))
    if not d.is_connected():
        raise DiagramError("PD code describes a disconnected diagram")
    defect = euler_defect(d)
    if defect != 8:
        raise DiagramError(
            f"non-planar rotation system: Euler defect {defect} != 8")
    d.validate()
    return d


def _solve_over_in(nc: int, pairing: Sequence[int]) -> list[int]:
    """Choose over_in slots so edge orientations are globally consistent.

    Under slots are fixed (0 in, 2 out); each crossing's over strand may
    enter at slot 1 or 3.  Constraint: every edge has exactly one in-dart.
    Components that never pass under are unconstrained and default to
    over_in = 1 at their smallest crossing.
    """
    over_in = [-1] * nc

    def status(d: int) -> Optional[bool]:
        """True if the strand enters the crossing through dart d."""
        s = d & 3
        if s == 0:
            return True
        if s == 2:
            return False
        oi = over_in[d >> 2]
        return None if oi == -1 else s == oi

    def assign(d: int, entering: bool, stack: list[int]) -> None:
        s = d & 3
        c = d >> 2
        cur = status(d)
        if cur is not None:
            if cur != entering:
                raise DiagramError("inconsistent strand orientations in PD")
            return
        over_in[c] = s if entering else (s ^ 2)
        stack.append(4 * c + 1)
        stack.append(4 * c + 3)

    stack = [d for d in range(4 * nc) if (d & 3) % 2 == 0]
    while True:
        while stack:
            d = stack.pop()
            st = status(d)
            if st is None:
                continue
            assign(pairing[d], not st, stack)
        free = [c for c in range(nc) if over_in[c] == -1]
        if not free:
            return over_in
        over_in[free[0]] = 1
        stack.extend((4 * free[0] + 1, 4 * free[0] + 3))
