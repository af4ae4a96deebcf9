import random

import pytest

from deltadiag.core import (
    BraidWord,
    braid_closure,
    classify,
    emit_pd,
    euler_defect,
    random_braid_word,
)
from deltadiag.coloring import count_colorings
from deltadiag.moves import (
    MoveError,
    MoveScript,
    R1Add,
    R2Push,
    apply_r1_add,
    apply_r2_push,
    apply_r3_slide,
    apply_script,
    fingerprint,
)

HOPF = braid_closure(BraidWord(2, (1, 1)))
TREFOIL = braid_closure(BraidWord(2, (1, 1, 1)))
BORROMEAN = braid_closure(BraidWord(3, (1, -2, 1, -2, 1, -2)))


def side_multiset(d):
    return sorted(f.sides for f in d.faces())


def coloring_profile(d, primes=(2, 3, 5, 7)):
    return tuple(count_colorings(d, p).count for p in primes)


def cofacial_pairs(d):
    """(pusher, target) pairs legal for an R2 push."""
    fm = d.face_map()
    pairs = []
    for f in d.faces():
        edges = sorted({d.edge_of(dd) for dd in f.darts})
        for p in edges:
            for t in edges:
                if p == t:
                    continue
                if fm[p] is fm[d.pairing[p]] or fm[t] is fm[d.pairing[t]]:
                    continue
                pairs.append((p, t))
    return sorted(set(pairs))


class TestR1:
    @pytest.mark.parametrize("side", [0, 1])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_counts_and_monogon(self, side, sign):
        d = HOPF
        d2 = apply_r1_add(d, d.edges()[0], side, sign)
        d2.validate()
        assert d2.crossings == d.crossings + 1
        assert side_multiset(d2).count(1) == 1
        assert euler_defect(d2) == 8

    @pytest.mark.parametrize("side", [0, 1])
    def test_face_growth(self, side):
        d = HOPF
        e = d.edges()[0]
        fm = d.face_map()
        chosen = fm[e] if side == 0 else fm[d.pairing[e]]
        other = fm[d.pairing[e]] if side == 0 else fm[e]
        d2 = apply_r1_add(d, e, side, 1)
        before = side_multiset(d)
        after = side_multiset(d2)
        # one monogon appears, chosen face +2, other face +1
        expect = sorted(before + [1, chosen.sides + 2, other.sides + 1])
        for s in (chosen.sides, other.sides):
            expect.remove(s)
        assert after == expect

    def test_sign_sets_writhe(self):
        d = HOPF
        e = d.edges()[0]
        for sign in (1, -1):
            d2 = apply_r1_add(d, e, 0, sign)
            assert d2.sign(d2.crossings - 1) == sign

    def test_colorings_preserved(self):
        d2 = apply_r1_add(TREFOIL, TREFOIL.edges()[2], 1, -1)
        assert coloring_profile(d2) == coloring_profile(TREFOIL)

    def test_twice_same_edge(self):
        d = HOPF
        e = d.edges()[0]
        d2 = apply_r1_add(d, e, 0, 1)
        d3 = apply_r1_add(d2, e, 0, 1)
        d3.validate()
        assert d3.crossings == 4
        assert side_multiset(d3).count(1) == 2

    def test_bad_edge(self):
        with pytest.raises(MoveError):
            apply_r1_add(HOPF, 99, 0, 1)


class TestR2:
    def test_counts_and_bigon(self):
        d = BORROMEAN
        p, t = cofacial_pairs(d)[0]
        d2 = apply_r2_push(d, p, t, True)
        d2.validate()
        assert d2.crossings == d.crossings + 2
        assert euler_defect(d2) == 8
        assert len(d2.faces()) == len(d.faces()) + 2

    def test_face_arithmetic(self):
        from deltadiag.moves import resolve_push_face
        d = BORROMEAN
        fm = d.face_map()
        p, t = cofacial_pairs(d)[0]
        # shared face f splits into (j+2, n-j) pieces; behind and beyond +2
        p_dart, t_dart = resolve_push_face(d, p, t)
        f = fm[p_dart]
        h = fm[d.pairing[p_dart]]
        g = fm[d.pairing[t_dart]]
        d2 = apply_r2_push(d, p, t, True)
        before = side_multiset(d)
        after = side_multiset(d2)
        n = f.sides
        ia, ib = f.darts.index(p_dart), f.darts.index(t_dart)
        j = (ib - ia - 1) % n
        expect = sorted(before + [2, j + 2, n - j, h.sides + 2, g.sides + 2])
        for s in (f.sides, h.sides, g.sides):
            expect.remove(s)
        assert after == expect

    @pytest.mark.parametrize("over", [True, False])
    def test_over_flag(self, over):
        d = BORROMEAN
        p, t = cofacial_pairs(d)[0]
        d2 = apply_r2_push(d, p, t, over)
        d2.validate()
        # pushed strand occupies the over slots at both new crossings iff over
        for c in (d.crossings, d.crossings + 1):
            sides = {d2.pairing[4 * c + s] for s in range(4)}
        assert euler_defect(d2) == 8

    def test_colorings_preserved(self):
        d = TREFOIL
        for p, t in cofacial_pairs(d)[:6]:
            d2 = apply_r2_push(d, p, t, True)
            assert coloring_profile(d2) == coloring_profile(d)

    def test_not_cofacial(self):
        d = braid_closure(BraidWord(3, (1, -2, 1, -2, 1, -2, 1, -2)))
        fm = d.face_map()
        for p in d.edges():
            for t in d.edges():
                if p != t and fm[p] is not fm[t] \
                        and fm[p] is not fm[d.pairing[t]] \
                        and fm[d.pairing[p]] is not fm[t] \
                        and fm[d.pairing[p]] is not fm[d.pairing[t]]:
                    with pytest.raises(MoveError):
                        apply_r2_push(d, p, t, True)
                    return
        pytest.skip("no non-cofacial pair found")

    def test_pusher_equals_target(self):
        with pytest.raises(MoveError):
            apply_r2_push(HOPF, 0, 0, True)


class TestR3:
    def find_slides(self, d):
        out = []
        fm = d.face_map()
        for f in d.faces():
            if f.sides != 3:
                continue
            for i, ds in enumerate(f.darts):
                dv = f.darts[(i + 2) % 3]
                out.append((d.edge_of(ds), dv >> 2))
        return out

    def test_slides_preserve_everything(self):
        worked = 0
        diagrams = [braid_closure(random_braid_word(s, 3, 7))
                    for s in range(6)]
        for d in diagrams:
            for slider, apex in self.find_slides(d):
                try:
                    d2 = apply_r3_slide(d, slider, apex)
                except MoveError:
                    continue
                d2.validate()
                worked += 1
                assert d2.crossings == d.crossings
                assert euler_defect(d2) == 8
                assert coloring_profile(d2) == coloring_profile(d)
                assert len(d2.faces()) == len(d.faces())
        assert worked >= 5

    def test_alternating_triangles_are_cyclic(self):
        # every triangle of the alternating Borromean diagram is level-cyclic
        for slider, apex in self.find_slides(BORROMEAN):
            with pytest.raises(MoveError):
                apply_r3_slide(BORROMEAN, slider, apex)

    def test_no_triangle(self):
        with pytest.raises(MoveError):
            apply_r3_slide(HOPF, HOPF.edges()[0], 0)


class TestScripts:
    def test_empty_script_identity(self):
        s = MoveScript(fingerprint(HOPF), ())
        assert apply_script(HOPF, s) == HOPF

    def test_fingerprint_mismatch(self):
        s = MoveScript("deadbeef00000000", ())
        with pytest.raises(MoveError):
            apply_script(HOPF, s)

    def test_error_names_move_index(self):
        s = MoveScript(fingerprint(HOPF), (R1Add(0, 0, 1), R1Add(999, 0, 1)))
        with pytest.raises(MoveError, match="move 1"):
            apply_script(HOPF, s)

    def test_serialize_round_trip(self):
        s = MoveScript(fingerprint(HOPF),
                       (R1Add(3, 1, -1), R2Push(5, 9, True)))
        assert MoveScript.parse(s.serialize()) == s

    def test_replay_matches(self):
        d = TREFOIL
        moves = []
        cur = d
        p, t = cofacial_pairs(cur)[0]
        cur = apply_r2_push(cur, p, t, True)
        moves.append(R2Push(p, t, True))
        e = cur.edges()[5]
        cur = apply_r1_add(cur, e, 0, 1)
        moves.append(R1Add(e, 0, 1))
        script = MoveScript(fingerprint(d), tuple(moves))
        replay = apply_script(d, script)
        assert emit_pd(replay) == emit_pd(cur)


class TestRandomMoveStorm:
    """Many random valid moves never break structural invariants."""

    def test_storm(self):
        rng = random.Random(7)
        for seed in range(8):
            w = random_braid_word(seed, rng.randint(2, 5), rng.randint(4, 9))
            d = braid_closure(w)
            profile = coloring_profile(d, (2, 3, 5))
            for _ in range(12):
                if rng.random() < 0.4:
                    e = rng.choice(d.edges())
                    d = apply_r1_add(d, e, rng.randint(0, 1),
                                     rng.choice((1, -1)))
                else:
                    pairs = cofacial_pairs(d)
                    if not pairs:
                        break
                    p, t = pairs[rng.randrange(len(pairs))]
                    try:
                        d = apply_r2_push(d, p, t, rng.random() < 0.5)
                    except MoveError:
                        continue
                d.validate()
                assert euler_defect(d) == 8
            assert coloring_profile(d, (2, 3, 5)) == profile
