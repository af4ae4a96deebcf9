"""Validated diagram rewriting: R1 kink insertion, R2 finger push, R3 slide.

Each move is a pure function producing a new Diagram; dart ids of untouched
crossings are stable, new crossings are appended.  The R3 slide is needed to
finish kinkification: a script consisting only of crossing-adding moves
always ends on a diagram with a fresh monogon or bigon, so no such script
can terminate on a delta diagram.

Move scripts serialize to a line format (``INIT <fp>`` header, then one
move per line) and replay deterministically.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional, Union

from .core import Diagram, DiagramError, Face, emit_pd


class MoveError(ValueError):
    """A move's preconditions do not hold on the given diagram."""


# ---------------------------------------------------------------------------
# move records


@dataclass(frozen=True)
class R1Add:
    edge: int
    side: int   # 0: loop into face of the smaller dart, 1: the other face
    sign: int   # +1 or -1 kink

    def serialize(self) -> str:
        return f"R1 {self.edge} {'L' if self.side == 0 else 'R'} " \
               f"{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class R2Push:
    pusher: int
    target: int
    over: bool

    def serialize(self) -> str:
        return f"R2 {self.pusher} {self.target} {'O' if self.over else 'U'}"


@dataclass(frozen=True)
class R3Slide:
    slider: int
    apex: int

    def serialize(self) -> str:
        return f"R3 {self.slider} {self.apex}"


Move = Union[R1Add, R2Push, R3Slide]


def fingerprint(d: Diagram) -> str:
    return hashlib.sha256(emit_pd(d).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class MoveScript:
    initial: str
    moves: tuple[Move, ...]

    def serialize(self) -> str:
        lines = [f"INIT {self.initial}"]
        lines.extend(m.serialize() for m in self.moves)
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "MoveScript":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("INIT "):
            raise MoveError("script must start with an INIT line")
        initial = lines[0].split()[1]
        moves: list[Move] = []
        for ln in lines[1:]:
            parts = ln.split()
            try:
                if parts[0] == "R1":
                    moves.append(R1Add(int(parts[1]),
                                       0 if parts[2] == "L" else 1,
                                       1 if parts[3] == "+" else -1))
                elif parts[0] == "R2":
                    moves.append(R2Push(int(parts[1]), int(parts[2]),
                                        parts[3] == "O"))
                elif parts[0] == "R3":
                    moves.append(R3Slide(int(parts[1]), int(parts[2])))
                else:
                    raise MoveError(f"unknown move {parts[0]!r}")
            except (IndexError, ValueError) as exc:
                raise MoveError(f"bad move line {ln!r}") from exc
        return MoveScript(initial, tuple(moves))


# ---------------------------------------------------------------------------
# R1


def apply_r1_add(d: Diagram, edge: int, side: int, sign: int) -> Diagram:
    """Insert a kink on ``edge``; the loop bulges into the chosen side's face.

    Adds one crossing and one monogon; the chosen face gains two sides, the
    opposite face one.
    """
    if not (0 <= edge < d.n_darts) or d.edge_of(edge) != edge:
        raise MoveError(f"no edge {edge}")
    if side not in (0, 1):
        raise MoveError(f"side must be 0 or 1, got {side}")
    if sign not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {sign}")

    x = edge if side == 0 else d.pairing[edge]
    y = d.pairing[x]
    base = d.n_darts
    t = 0 if sign > 0 else 1
    k1, k2, k3, k4 = (base + (t + i) % 4 for i in range(4))

    pairing = list(d.pairing) + [-1, -1, -1, -1]
    pairing[x] = k1
    pairing[k1] = x
    pairing[k2] = k3
    pairing[k3] = k2
    pairing[k4] = y
    pairing[y] = k4

    # strand direction through the new crossing fixes its orientation bits
    x_is_out = not d.is_in_dart(x)
    ins = (k1, k2) if x_is_out else (k4, k3)
    under = next(dd for dd in ins if (dd & 3) % 2 == 0)
    over = next(dd for dd in ins if (dd & 3) % 2 == 1)
    under_in = d.under_in + (under & 3,)
    over_in = d.over_in + (over & 3,)
    return Diagram(tuple(pairing), under_in, over_in, arc_hint=d.arc_hint)


# ---------------------------------------------------------------------------
# R2


def resolve_push_face(d: Diagram, pusher: int, target: int,
                      face: Optional[Face] = None) -> tuple[int, int]:
    """Pick the shared-face darts (p_f, t_f) for an R2 push.

    Returns the pusher dart and target dart lying on the common face.  With
    no explicit face, the common face with the smallest id wins.
    """
    fm = d.face_map()
    p_darts = d.edge_darts(pusher)
    t_darts = d.edge_darts(target)
    best: Optional[tuple[int, int, int]] = None
    for pd_ in p_darts:
        for td in t_darts:
            f = fm[pd_]
            if f is not fm[td]:
                continue
            if face is not None and f.id != face.id:
                continue
            key = (f.id, pd_, td)
            if best is None or key < best:
                best = key
    if best is None:
        raise MoveError(
            f"edges {pusher} and {target} do not border a common face")
    return best[1], best[2]


def apply_r2_push(d: Diagram, pusher: int, target: int, over: bool,
                  face: Optional[Face] = None) -> Diagram:
    """Push a finger of ``pusher`` across ``target`` through their shared face.

    Adds two crossings; the shared face splits, a bigon appears between the
    two new crossings, and the faces behind the pusher and beyond the target
    each gain two sides.
    """
    if pusher == target:
        raise MoveError("pusher and target must be distinct edges")
    for e in (pusher, target):
        if not (0 <= e < d.n_darts) or d.edge_of(e) != e:
            raise MoveError(f"no edge {e}")
    p_x, t_y = resolve_push_face(d, pusher, target, face)
    p_y = d.pairing[p_x]
    t_x = d.pairing[t_y]
    fm = d.face_map()
    if fm[t_x] is fm[t_y]:
        raise MoveError("target has the same face on both sides")
    if fm[p_x] is fm[p_y]:
        raise MoveError("pusher has the same face on both sides")

    base = d.n_darts
    yb, zb = base, base + 4
    if over:
        y_c1, y_d1, y_tip, y_tmid = yb + 1, yb + 2, yb + 3, yb + 0
        z_d2, z_c2, z_tmid, z_tip = zb + 0, zb + 1, zb + 2, zb + 3
    else:
        y_c1, y_d1, y_tip, y_tmid = yb + 0, yb + 1, yb + 2, yb + 3
        z_d2, z_c2, z_tmid, z_tip = zb + 1, zb + 2, zb + 3, zb + 0

    pairing = list(d.pairing) + [-1] * 8
    for a, b in ((p_x, y_c1), (p_y, z_c2), (t_x, y_d1), (t_y, z_d2),
                 (y_tip, z_tip), (y_tmid, z_tmid)):
        pairing[a] = b
        pairing[b] = a

    # orientations: strand directions are preserved
    pushed_in_y = y_c1 if not d.is_in_dart(p_x) else y_tip
    pushed_in_z = z_tip if not d.is_in_dart(p_x) else z_c2
    target_in_y = y_d1 if not d.is_in_dart(t_x) else y_tmid
    target_in_z = z_tmid if not d.is_in_dart(t_x) else z_d2

    def bits(c_ins: tuple[int, int]) -> tuple[int, int]:
        under = next(dd & 3 for dd in c_ins if (dd & 3) % 2 == 0)
        over_ = next(dd & 3 for dd in c_ins if (dd & 3) % 2 == 1)
        return under, over_

    uy, oy = bits((pushed_in_y, target_in_y))
    uz, oz = bits((pushed_in_z, target_in_z))
    under_in = d.under_in + (uy, uz)
    over_in = d.over_in + (oy, oz)
    return Diagram(tuple(pairing), under_in, over_in, arc_hint=d.arc_hint)


# ---------------------------------------------------------------------------
# R3


def apply_r3_slide(d: Diagram, slider: int, apex: int) -> Diagram:
    """Slide ``slider`` across crossing ``apex`` through a triangle face.

    The triangle must have the slider as one side and its other two sides
    meeting at ``apex``.  Crossing count and all face counts are unchanged;
    six edges re-pair.
    """
    if not (0 <= slider < d.n_darts) or d.edge_of(slider) != slider:
        raise MoveError(f"no edge {slider}")
    if not (0 <= apex < d.crossings):
        raise MoveError(f"no crossing {apex}")

    tri = _find_triangle(d, slider, apex)
    ds, du, dv = tri  # walk order: slider dart, then the two other sides
    d_u = d.pairing[du]    # apex dart toward A
    d_v = dv               # apex dart toward B
    b_to_d = d.pairing[dv]
    if {d_u >> 2, d_v >> 2} != {apex}:
        raise MoveError("triangle sides do not meet at the apex")
    cr_a, cr_b = du >> 2, b_to_d >> 2
    if apex in (cr_a, cr_b) or cr_a == cr_b:
        raise MoveError("degenerate R3 configuration")

    _check_levels(d, ds, du, d_u)

    a_far = d.through(du)          # A's dart away from the apex
    b_far = d.through(b_to_d)
    d_u2 = d.through(d_u)          # apex darts on the far side
    d_v2 = d.through(d_v)
    x1 = d.pairing[a_far]
    y1 = d.pairing[b_far]
    x2 = d.pairing[d_u2]
    y2 = d.pairing[d_v2]
    s_darts = {ds, d.pairing[ds]}

    pairing = list(d.pairing)

    def pair(a: int, b: int) -> None:
        pairing[a] = b
        pairing[b] = a

    if x2 == d_v2:
        # u and v continue into the same edge beyond the apex (a kink
        # loop): the slider moves inside the loop, crossing it near both
        # ends, and the old loop middle runs between the slid crossings
        touched = [du, a_far, d_u, d_u2, x1, b_to_d, b_far, d_v, d_v2, y1]
        if len(set(touched)) != 10 or s_darts & set(touched):
            raise MoveError("unsupported R3 configuration")
        pair(d_u, x1)
        pair(d_v, y1)
        pair(a_far, d_u2)
        pair(b_far, d_v2)
        pair(du, b_to_d)
    else:
        touched = [du, a_far, d_u, d_u2, x1, x2,
                   b_to_d, b_far, d_v, d_v2, y1, y2]
        if len(set(touched)) != 12 or s_darts & set(touched):
            raise MoveError("unsupported R3 configuration")
        pair(du, x2)
        pair(a_far, d_u2)
        pair(d_u, x1)
        pair(b_to_d, y2)
        pair(b_far, d_v2)
        pair(d_v, y1)

    return Diagram(tuple(pairing), d.under_in, d.over_in, arc_hint=d.arc_hint)


def _find_triangle(d: Diagram, slider: int, apex: int) -> tuple[int, int, int]:
    """Triangle face [slider, e_u, e_v] with e_u, e_v meeting at ``apex``."""
    fm = d.face_map()
    cands = []
    for ds in d.edge_darts(slider):
        f = fm[ds]
        if f.sides != 3:
            continue
        i = f.darts.index(ds)
        du = f.darts[(i + 1) % 3]
        dv = f.darts[(i + 2) % 3]
        if d.pairing[du] >> 2 == apex and dv >> 2 == apex:
            cands.append((f.id, (ds, du, dv)))
    if not cands:
        raise MoveError(
            f"no triangle with side {slider} and apex {apex}")
    return min(cands)[1]


def _check_levels(d: Diagram, ds: int, du: int, d_u: int) -> None:
    """The three pairwise over/under relations must be acyclic."""
    s_at_a = ds if (ds >> 2) == (du >> 2) else d.pairing[ds]
    s_at_b = d.pairing[s_at_a]
    s_over_u = (s_at_a & 3) % 2 == 1
    s_over_v = (s_at_b & 3) % 2 == 1
    u_over_v = (d_u & 3) % 2 == 1
    # cyclic iff s>u>v>s or its reverse
    if s_over_u and u_over_v and not s_over_v:
        raise MoveError("R3 is not an isotopy here (cyclic over/under)")
    if (not s_over_u) and (not u_over_v) and s_over_v:
        raise MoveError("R3 is not an isotopy here (cyclic over/under)")


# ---------------------------------------------------------------------------
# scripts


def apply_move(d: Diagram, m: Move) -> Diagram:
    if isinstance(m, R1Add):
        return apply_r1_add(d, m.edge, m.side, m.sign)
    if isinstance(m, R2Push):
        return apply_r2_push(d, m.pusher, m.target, m.over)
    if isinstance(m, R3Slide):
        return apply_r3_slide(d, m.slider, m.apex)
    raise MoveError(f"unknown move {m!r}")


def apply_script(d: Diagram, script: MoveScript) -> Diagram:
    """Replay a script from its initial diagram; deterministic."""
    fp = fingerprint(d)
    if fp != script.initial:
        raise MoveError(
            f"fingerprint mismatch: script expects {script.initial}, "
            f"diagram is {fp}")
    cur = d
    for i, m in enumerate(script.moves):
        try:
            cur = apply_move(cur, m)
        except (MoveError, DiagramError) as exc:
            raise MoveError(f"move {i} ({m.serialize()}): {exc}") from exc
    return cur
