"""Tests for roots, Levi compositions and the symmetric group."""

from itertools import product
from math import factorial

from hypothesis import given, settings, strategies as st
import pytest

from slpolar.exceptions import CompositionMismatchError, WeylRankError
from slpolar.weyl import (
    LeviComposition,
    Root,
    WeylElement,
    act,
    act_on_set,
    all_roots,
    coset_count,
    cosets,
    compositions,
    enumerate_weyl,
    from_word,
    multinomial,
    parabolic_roots,
    positive_roots,
    r_levi,
    r_prime_plus,
    simple_reflection,
    simple_roots,
    weyl_subgroup,
)


class TestRoots:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_counts(self, n):
        assert len(all_roots(n)) == n * (n - 1)
        assert len(positive_roots(n)) == n * (n - 1) // 2
        assert len(simple_roots(n)) == n - 1

    def test_not_a_root(self):
        with pytest.raises(ValueError):
            Root(2, 2)

    def test_negation_and_labels(self):
        root = Root(1, 3)
        assert -root == Root(3, 1)
        assert root.is_positive and not (-root).is_positive
        assert not root.is_simple
        assert str(root) == "e1-e3"


class TestLeviComposition:
    def test_parse(self):
        levi = LeviComposition.parse("2,1")
        assert levi.parts == (2, 1)
        assert levi.n == 3
        assert str(levi) == "2,1"
        assert levi.blocks == ((1, 2), (3,))

    @pytest.mark.parametrize("text", ["", "a,1", "0,2", "2,-1"])
    def test_rejects_bad_text(self, text):
        with pytest.raises(CompositionMismatchError):
            LeviComposition.parse(text)

    def test_extremes(self):
        assert LeviComposition.borel(3).is_borel
        assert LeviComposition.whole(3).is_whole
        assert not LeviComposition.parse("2,1").is_borel

    def test_blocks(self):
        levi = LeviComposition.parse("1,2,1")
        assert [levi.block_of(i) for i in range(1, 5)] == [0, 1, 1, 2]
        assert levi.same_block(2, 3)
        assert not levi.same_block(1, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_composition_count(self, n):
        levis = compositions(n)
        assert len(levis) == 2 ** (n - 1)
        assert levis[0] == LeviComposition.borel(n)
        assert levis[-1] == LeviComposition.whole(n)

    def test_lexicographic_order(self):
        assert [str(levi) for levi in compositions(3)] == ["1,1,1", "1,2", "2,1", "3"]


class TestWeylElement:
    def test_composition_order(self):
        for a, b in product(enumerate_weyl(3), repeat=2):
            assert all((a * b)(i) == a(b(i)) for i in range(1, 4))

    def test_inverse(self):
        for w in enumerate_weyl(4):
            assert w * w.inverse() == WeylElement.identity(4)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_enumeration(self, n):
        elements = enumerate_weyl(n)
        assert len(elements) == factorial(n)
        assert len(set(elements)) == factorial(n)
        assert elements[0] == WeylElement.identity(n)
        assert elements[-1].length == n * (n - 1) // 2
        assert elements[-1].one_line == tuple(range(n, 0, -1))

    def test_too_large(self):
        with pytest.raises(WeylRankError):
            enumerate_weyl(7)

    def test_reduced_words(self):
        for w in enumerate_weyl(4):
            word = w.reduced_word()
            assert len(word) == w.length
            assert from_word(4, word) == w

    @settings(max_examples=50, deadline=None)
    @given(word=st.lists(st.integers(min_value=1, max_value=4), max_size=12))
    def test_length_bounded_by_word(self, word):
        assert from_word(5, word).length <= len(word)

    def test_simple_reflection(self):
        s1 = simple_reflection(3, 1)
        assert s1.one_line == (2, 1, 3)
        assert s1 * s1 == WeylElement.identity(3)
        with pytest.raises(ValueError):
            simple_reflection(3, 3)

    def test_str(self):
        assert str(WeylElement.of([2, 3, 1])) == "[2 3 1]"


class TestAction:
    def test_simple_reflection_permutes_other_positive_roots(self):
        n = 4
        for k in range(1, n):
            s = simple_reflection(n, k)
            simple = Root(k, k + 1)
            assert act(s, simple) == -simple
            others = frozenset(positive_roots(n)) - {simple}
            assert act_on_set(s, others) == others

    def test_longest_element_negates_positive_roots(self):
        w0 = enumerate_weyl(4)[-1]
        assert act_on_set(w0, positive_roots(4)) == frozenset(-root for root in positive_roots(4))


class TestParabolicRoots:
    def test_r_prime_plus(self):
        assert r_prime_plus(LeviComposition.parse("2,1")) == {Root(1, 3), Root(2, 3)}

    def test_r_levi(self):
        assert r_levi(LeviComposition.parse("2,1")) == {Root(1, 2), Root(2, 1)}

    def test_borel_and_whole(self):
        assert r_prime_plus(LeviComposition.borel(3)) == frozenset(positive_roots(3))
        assert r_prime_plus(LeviComposition.whole(3)) == frozenset()
        assert parabolic_roots(LeviComposition.whole(3)) == frozenset(all_roots(3))


class TestCosets:
    @pytest.mark.parametrize(
        ("levi", "count"), [("2,1", 3), ("1,1,1", 6), ("3", 1), ("2,2", 6), ("1,2,1", 12), ("2,1,2", 30)]
    )
    def test_counts(self, levi, count):
        composition = LeviComposition.parse(levi)
        assert coset_count(composition) == count
        assert multinomial(composition) == count

    def test_subgroup_order(self):
        levi = LeviComposition.parse("2,2")
        assert len(weyl_subgroup(levi)) == 4

    def test_partition_with_minimal_representatives(self):
        levi = LeviComposition.parse("1,2,1")
        found = cosets(levi)
        union = frozenset().union(*(coset.elements for coset in found))
        assert len(union) == factorial(4)
        assert sum(len(coset.elements) for coset in found) == factorial(4)
        for coset in found:
            assert coset.representative in coset.elements
            assert coset.representative.length == min(w.length for w in coset.elements)
