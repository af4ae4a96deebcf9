"""Kinkification: turn a braid closure into an equivalent delta diagram.

The construction drives kink loops ("probes") through the diagram.  A probe
is born as an R1 kink whose loop is then pushed across one edge at a time
by R2 moves.  Each push splits the face being crossed, upgrades the loop's
previous trailing bigon to a tetragon, and leaves a new trailing bigon
behind the tip, so a journey of pushes lays down a wake of 3/4-sided faces.
The final trailing bigon cannot be removed by crossing-adding moves alone;
each journey therefore ends with an R3 slide that bumps it to a triangle
(the slide moves the edge hugging the last-crossed corner).

Routing is adaptive: probes are launched at bad regions (sides outside
3..5) and steered along a shortest face path toward the next bad region,
splitting everything they pass into 3/4/5-sided pieces.  Every choice is
resolved by a deterministic rule, so the emitted MoveScript replays
bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BraidWord,
    Diagram,
    DiagramError,
    Face,
    braid_closure,
    classify,
    pad_even,
)
from .moves import (
    Move,
    MoveScript,
    R1Add,
    R2Push,
    R3Slide,
    apply_r1_add,
    apply_r2_push,
    apply_r3_slide,
    fingerprint,
)

GOOD_SIDES = (3, 4, 5)


class KinkifyError(DiagramError):
    """Kinkification failed; indicates an unsupported input or a bug."""


def crossing_budget(n: int) -> int:
    """Upper bound on crossings added when deltaizing an n-crossing closure."""
    if n < 1:
        raise ValueError("need at least one crossing")
    return n * n + 4 * n + 3


def diagram_budget(c: int, s: int) -> int:
    """Crossing bound for the braid closure of a c-crossing, s-Seifert-circle diagram."""
    if c < 1 or not 1 <= s <= c:
        raise ValueError("need c >= 1 and 1 <= s <= c")
    return c + (s - 1) * (s - 2)


@dataclass(frozen=True)
class KinkifyResult:
    diagram: Diagram
    script: MoveScript
    input_crossings: int
    added_crossings: int
    budget: int

    def to_dict(self, input_word: str = "") -> dict:
        from .core import emit_pd
        return {
            "input_word": input_word,
            "N": self.input_crossings,
            "added": self.added_crossings,
            "budget": self.budget,
            "delta": True,
            "pd": emit_pd(self.diagram),
            "script": self.script.serialize(),
        }


# ---------------------------------------------------------------------------
# probe state


@dataclass
class _Probe:
    tip: int        # current loop-front edge id
    fwd: int        # tip dart lying on the face ahead
    pokes: int      # pushes made since the kink


class _Router:
    """Drives probes over a diagram until every face has 3..5 sides."""

    MAX_REPOSITION = 24

    def __init__(self, d: Diagram, max_added: int):
        self.d = d
        self.moves: list[Move] = []
        self.start_crossings = d.crossings
        self.max_added = max_added

    # -- bookkeeping -------------------------------------------------------

    def added(self) -> int:
        return self.d.crossings - self.start_crossings

    def _check_budget(self, extra: int) -> None:
        if self.added() + extra > self.max_added:
            raise KinkifyError(
                f"crossing budget exhausted ({self.added()} added, "
                f"cap {self.max_added})")

    def _bad_faces(self) -> list[Face]:
        return [f for f in self.d.faces() if f.sides not in GOOD_SIDES]

    # -- move wrappers -------------------------------------------------------

    def _kink(self, edge: int, side: int) -> _Probe:
        self._check_budget(1)
        base = self.d.n_darts
        self.d = apply_r1_add(self.d, edge, side, 1)
        self.moves.append(R1Add(edge, side, 1))
        # loop darts for sign +1: k1..k4 = base..base+3; loop = {k2, k3}
        return _Probe(tip=base + 1, fwd=base + 1, pokes=0)

    def _poke(self, probe: _Probe, target: int) -> None:
        self._check_budget(2)
        base = self.d.n_darts
        self.d = apply_r2_push(self.d, probe.tip, target, True)
        self.moves.append(R2Push(probe.tip, target, True))
        probe.tip = base + 3      # y_tip; its mate z_tip is base + 7
        probe.fwd = base + 3
        probe.pokes += 1

    def _slide(self, slider: int, apex: int) -> None:
        self.d = apply_r3_slide(self.d, slider, apex)
        self.moves.append(R3Slide(slider, apex))

    # -- candidate pokes -----------------------------------------------------

    def _exits(self, probe: _Probe) -> list[tuple[int, int, int, int, int]]:
        """Legal exit pokes from the probe's forward face.

        Returns tuples (target edge, left piece sides, right piece sides,
        beyond-face id, beyond-face sides); the pieces are what the forward
        face splits into, counted so that neither is ever a lune.
        """
        fm = self.d.face_map()
        face = fm[probe.fwd]
        n = face.sides
        pos = face.darts.index(probe.fwd)
        out = []
        for i, dd in enumerate(face.darts):
            if i == pos:
                continue
            e = self.d.edge_of(dd)
            if e == probe.tip:
                continue
            g = fm[self.d.pairing[dd]]
            if g.id == face.id or g.sides < 2:
                continue
            j_a = (i - pos - 1) % n       # darts strictly between tip and t
            j_b = n - 2 - j_a
            if j_a < 1 or j_b < 1:
                continue
            out.append((e, j_b + 2, j_a + 2, g.id, g.sides))
        return out

    def _face_distances(self, targets: set[int]) -> dict[int, int]:
        """BFS distance from every face to the nearest target face."""
        fm = self.d.face_map()
        nbrs: dict[int, set[int]] = {}
        for e in self.d.edges():
            a, b = fm[e].id, fm[self.d.pairing[e]].id
            if a != b:
                nbrs.setdefault(a, set()).add(b)
                nbrs.setdefault(b, set()).add(a)
        dist = {t: 0 for t in targets}
        frontier = list(targets)
        step = 0
        while frontier:
            step += 1
            nxt = []
            for fid in frontier:
                for nb in nbrs.get(fid, ()):
                    if nb not in dist:
                        dist[nb] = step
                        nxt.append(nb)
            frontier = nxt
        return dist

    # -- journeys ------------------------------------------------------------

    def _open_probe(self) -> _Probe:
        bad = self._bad_faces()
        fm = self.d.face_map()
        monogons = [f for f in bad if f.sides == 1]
        if monogons:
            # a kink on the monogon's own edge, bulging away, turns the
            # monogon into a bigon that an ordinary transit can fix later
            m = monogons[0]
            e = self.d.edge_of(m.darts[0])
            side = 1 if fm[e].id == m.id else 0
            return self._kink(e, side)
        target = min(bad, key=lambda f: (f.sides, f.id))
        edge = self._pick_host_edge(target, fm)
        side = 0 if fm[edge].id == target.id else 1
        return self._kink(edge, side)

    def _pick_host_edge(self, face: Face, fm: dict[int, Face]) -> int:
        """Host edge for the opening kink; prefer a closure-arc descendant."""
        edges = sorted({self.d.edge_of(dd) for dd in face.darts})
        for a in self.d.arc_hint:
            if a in edges:
                return a
        return edges[0]

    def _journey(self, probe: _Probe) -> None:
        repositions = 0
        while True:
            fm = self.d.face_map()
            face = fm[probe.fwd]
            pending = fm[self.d.pairing[probe.tip]]
            bad_others = [f for f in self._bad_faces()
                          if f.id not in (face.id, pending.id)]
            if not bad_others and probe.pokes >= 2:
                if self._try_finish(probe):
                    return
                repositions += 1
                if repositions > self.MAX_REPOSITION:
                    raise KinkifyError("no valid journey ending found")
            choice = self._choose_exit(probe, bad_others)
            if choice is None:
                raise KinkifyError("probe has no legal exit")
            self._poke(probe, choice)

    def _choose_exit(self, probe: _Probe, bad_others: list[Face]) -> int | None:
        exits = self._exits(probe)
        if not exits:
            return None
        face_sides = self.d.face_map()[probe.fwd].sides
        bad_ids = {f.id for f in bad_others}
        dist = self._face_distances(bad_ids) if bad_ids else {}

        def badness(sides: int) -> int:
            return 0 if sides in GOOD_SIDES else 1

        scored = []
        for e, left, right, g_id, g_sides in exits:
            d_g = dist.get(g_id, 10 ** 6) if bad_ids else 0
            new_bad = badness(left) + badness(right)
            if face_sides not in GOOD_SIDES:
                # splitting a bad face is progress even if a big piece stays
                new_bad = max(0, new_bad - 1)
            scored.append((d_g, new_bad, g_sides not in (2, 3, 4),
                           left + right, e))
        scored.sort()
        return scored[0][-1]

    # -- endings -------------------------------------------------------------

    def _try_finish(self, probe: _Probe) -> bool:
        """Attempt the two flank endings: final poke plus an R3 slide."""
        fm = self.d.face_map()
        face = fm[probe.fwd]
        n = face.sides
        if n < 4:
            return False
        pos = face.darts.index(probe.fwd)
        legal = {e for e, *_ in self._exits(probe)}
        base = self.d.n_darts
        for flank in (-1, +1):
            t_dart = face.darts[(pos + 2 * flank) % n]
            w_dart = face.darts[(pos + flank) % n]
            t_edge = self.d.edge_of(t_dart)
            w_edge = self.d.edge_of(w_dart)
            if t_edge not in legal or t_edge == w_edge:
                continue
            apex = (base >> 2) if flank == -1 else (base >> 2) + 1
            try:
                trial = apply_r2_push(self.d, probe.tip, t_edge, True)
                w_now = trial.edge_of(w_dart)
                trial = apply_r3_slide(trial, w_now, apex)
            except (DiagramError, ValueError):
                continue
            if classify(trial)["delta"]:
                self._poke(probe, t_edge)
                self._slide(self.d.edge_of(w_dart), apex)
                return True
        return False

    # -- top level -----------------------------------------------------------

    def run(self) -> None:
        guard = 0
        while self._bad_faces():
            guard += 1
            if guard > 64:
                raise KinkifyError("router failed to converge")
            probe = self._open_probe()
            self._journey(probe)


def _deltaize(d: Diagram, max_added: int) -> tuple[Diagram, list[Move]]:
    router = _Router(d, max_added)
    router.run()
    return router.d, router.moves


def kinkify(w: BraidWord) -> KinkifyResult:
    """Deltaize the closure of ``w``; returns the diagram plus its move script.

    The output satisfies ``classify(...)["delta"]`` and the added-crossing
    bound; the script replays from ``braid_closure(pad_even(w))`` to the
    output diagram exactly.
    """
    padded = pad_even(w)
    if len([k for k in padded.letters if k != 0]) < 3:
        if padded.strands == 2 and tuple(padded.letters) in ((1, 1), (-1, -1)):
            pass  # the Hopf closure deltaizes fine with the generic route
        else:
            raise KinkifyError(
                "kinkify needs a closure with at least 3 crossings "
                "(only the Hopf words are accepted shorter)")
    d0 = braid_closure(padded)
    n = d0.crossings
    budget = crossing_budget(n)
    dd, mvs = _deltaize(d0, budget)
    added = dd.crossings - n
    result = classify(dd)
    if not result["delta"]:
        raise KinkifyError("internal error: kinkified diagram is not delta")
    if added > budget:
        raise KinkifyError(
            f"internal error: added {added} crossings, budget {budget}")
    return KinkifyResult(
        diagram=dd,
        script=MoveScript(fingerprint(d0), tuple(mvs)),
        input_crossings=n,
        added_crossings=added,
        budget=budget,
    )


def hopf_delta() -> Diagram:
    """The delta diagram of the Hopf link produced from the closure of s1^2."""
    return kinkify(BraidWord(2, (1, 1))).diagram
