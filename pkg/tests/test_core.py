import pytest

from deltadiag.core import (
    BraidWord,
    DiagramError,
    ParseError,
    braid_closure,
    classify,
    emit_pd,
    euler_defect,
    pad_even,
    parse_braid_word,
    parse_pd,
    random_braid_word,
    split_counts,
)

HOPF = BraidWord(2, (1, 1))
TREFOIL = BraidWord(2, (1, 1, 1))
BORROMEAN = BraidWord(3, (1, -2, 1, -2, 1, -2))
W10_35 = parse_braid_word("-1 2 -3 2 -3 4 -5 4 -5 1 -2 3 -4 2 2")


class TestParseBraidWord:
    def test_paper_word(self):
        assert W10_35.strands == 6
        assert len(W10_35.letters) == 15

    def test_hopf(self):
        w = parse_braid_word("1 1")
        assert w.strands == 2
        assert w.letters == (1, 1)

    def test_zero_letter_rejected(self):
        with pytest.raises(ParseError):
            parse_braid_word("0 1")

    def test_empty_rejected(self):
        with pytest.raises(ParseError):
            parse_braid_word("   ")

    def test_explicit_strands(self):
        w = parse_braid_word("b=4 1 2")
        assert w.strands == 4

    def test_letter_out_of_range(self):
        with pytest.raises(ParseError):
            parse_braid_word("b=2 2")

    def test_commas(self):
        assert parse_braid_word("1,2,-1").letters == (1, 2, -1)

    def test_round_trip(self):
        w = pad_even(W10_35)
        assert parse_braid_word(w.serialize()) == w


class TestPadEven:
    def test_odd_padded(self):
        w = pad_even(W10_35)
        assert len(w.letters) == 16
        assert w.letters[-1] == 0
        assert w.crossings == 15

    def test_even_unchanged(self):
        assert pad_even(HOPF) is HOPF

    def test_single_letter(self):
        w = pad_even(BraidWord(2, (1,)))
        assert w.letters == (1, 0)


class TestBraidClosure:
    def test_hopf_counts(self):
        d = braid_closure(HOPF)
        assert d.crossings == 2
        assert d.edge_count == 4
        assert len(d.faces()) == 4
        assert all(f.sides == 2 for f in d.faces())

    def test_10_35_connected(self):
        d = braid_closure(W10_35)
        assert d.crossings == 15
        assert d.is_connected()

    def test_disconnected_rejected(self):
        with pytest.raises(DiagramError):
            braid_closure(BraidWord(3, (1, 1)))

    def test_all_identity_rejected(self):
        with pytest.raises(DiagramError):
            braid_closure(BraidWord(2, (0, 0)))

    def test_signs_follow_letters(self):
        d = braid_closure(BORROMEAN)
        assert d.signs() == (1, -1, 1, -1, 1, -1)

    def test_components(self):
        assert len(braid_closure(HOPF).components()) == 2
        assert len(braid_closure(TREFOIL).components()) == 1
        assert len(braid_closure(BORROMEAN).components()) == 3


class TestFaces:
    def test_borromean_all_triangles(self):
        d = braid_closure(BORROMEAN)
        assert sorted(f.sides for f in d.faces()) == [3] * 8

    def test_8_18_side_multiset(self):
        d = braid_closure(BraidWord(3, (1, -2) * 4))
        assert sorted(f.sides for f in d.faces()) == [3] * 8 + [4, 4]

    def test_faces_partition_darts(self):
        d = braid_closure(W10_35)
        seen = [dd for f in d.faces() for dd in f.darts]
        assert sorted(seen) == list(range(d.n_darts))

    def test_sides_sum(self):
        d = braid_closure(W10_35)
        assert sum(f.sides for f in d.faces()) == 2 * d.edge_count
        assert d.edge_count == 2 * d.crossings


class TestEulerDefect:
    @pytest.mark.parametrize("word", [HOPF, TREFOIL, BORROMEAN, W10_35])
    def test_always_eight(self, word):
        assert euler_defect(braid_closure(word)) == 8


class TestClassify:
    def test_borromean_delta(self):
        c = classify(braid_closure(BORROMEAN))
        assert c["delta"] and c["lune_free"]
        assert c["side_histogram"] == {3: 8}

    def test_hopf_not_delta(self):
        c = classify(braid_closure(HOPF))
        assert not c["delta"] and not c["lune_free"]

    def test_8_18_delta(self):
        c = classify(braid_closure(BraidWord(3, (1, -2) * 4)))
        assert c["delta"]


class TestSplitCounts:
    def test_skip_zero(self):
        assert split_counts(10, 0) == (3, 11)

    def test_skip_two(self):
        assert split_counts(10, 2) == (5, 9)

    def test_hexagon(self):
        assert split_counts(6, 2) == (5, 5)

    def test_pentagon_no_reduction(self):
        assert split_counts(5, 2) == (5, 4)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            split_counts(5, 4)

    def test_lemma_exhaustive(self):
        # splitting into parts both smaller needs s >= 2 and n >= 6
        for n in range(3, 30):
            reducible = any(
                max(split_counts(n, s)) < n and min(split_counts(n, s)) >= 3
                for s in range(0, n - 1))
            assert reducible == (n >= 6)


class TestPdRoundTrip:
    @pytest.mark.parametrize("word", [HOPF, TREFOIL, BORROMEAN, W10_35])
    def test_round_trip_preserves_faces(self, word):
        d = braid_closure(word)
        d2 = parse_pd(emit_pd(d))
        assert sorted(f.sides for f in d.faces()) == \
               sorted(f.sides for f in d2.faces())

    def test_emit_reparse_emit_stable(self):
        d = braid_closure(BORROMEAN)
        pd1 = emit_pd(d)
        pd2 = emit_pd(parse_pd(pd1))
        assert pd1 == pd2

    def test_label_used_once_rejected(self):
        with pytest.raises(ParseError):
            parse_pd("X 1 2 3 4\nX 2 3 4 5\n")

    def test_comments_ignored(self):
        d = braid_closure(HOPF)
        text = "# hopf\n\n" + emit_pd(d)
        assert parse_pd(text).crossings == 2

    def test_trefoil_standard_pd(self):
        d = parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n")
        assert d.crossings == 3
        assert sorted(f.sides for f in d.faces()) == [2, 2, 2, 3, 3]


class TestRandomBraidWord:
    def test_deterministic(self):
        a = random_braid_word(1, 3, 6)
        b = random_braid_word(1, 3, 6)
        assert a == b

    def test_alphabet(self):
        w = random_braid_word(2, 2, 4)
        assert all(abs(k) == 1 for k in w.letters)

    def test_closure_connected(self):
        for seed in range(20):
            w = random_braid_word(seed, 4, 8)
            braid_closure(w).validate()
