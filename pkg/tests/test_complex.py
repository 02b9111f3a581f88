import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonevasive.complex import (
    FaceError,
    SimplicialComplex,
    down_closure,
    order_complex,
    order_complex_by_subsets,
    parse_complex,
    to_complex_text,
)
from nonevasive.generators import random_poset
from nonevasive.kozlov import off_core_mask
from nonevasive.poset import antichain, chain, dual, unique_lower_cover


F = SimplicialComplex.from_faces
TWO_POINTS = F([[0], [1]])
INTERVAL = F([[0, 1]])
TRIANGLE = F([[0, 1, 2]])
BOUNDARY = F([[0, 1], [1, 2], [0, 2]])

complexes = st.builds(
    lambda masks: SimplicialComplex(down_closure(masks)),
    st.lists(st.integers(1, 2**6 - 1), min_size=1, max_size=8),
)


def sets(cx):
    return {frozenset(s) for s in cx.face_sets()}


def chain_count_dfs(P):
    """Chains counted by DFS over the comparability graph, including the empty chain."""
    def grow(current, candidates):
        total = 1
        for i, x in enumerate(candidates):
            nxt = [y for y in candidates[i + 1:] if P.comparable(x, y)]
            total += grow(current + [x], nxt)
        return total
    return grow([], list(range(P.n)))


def literal_cone_peaks(cx):
    return {v for v in cx.vertices if cx.star([v]) == cx}


class TestOrderComplex:
    def test_examples(self, anti2, chain2):
        assert sets(order_complex(anti2)) == {frozenset(), frozenset({0}), frozenset({1})}
        assert order_complex(chain2) == INTERVAL
        assert len(order_complex(chain(3))) == 8
        assert order_complex(chain(3)) == TRIANGLE

    def test_matches_subset_filter(self, posets_upto6):
        for P in posets_upto6:
            assert order_complex(P) == order_complex_by_subsets(P)

    def test_face_count_matches_chain_dfs(self, posets_upto6):
        for P in posets_upto6:
            assert len(order_complex(P)) == chain_count_dfs(P)

    def test_self_dual(self, posets_upto6):
        for P in posets_upto6:
            assert order_complex(dual(P)) == order_complex(P)

    def test_vertices_are_elements(self, dia):
        assert order_complex(dia).vertices == frozenset(range(4))


class TestOperations:
    def test_restrict(self):
        assert TRIANGLE.restrict(TRIANGLE.vertices) == TRIANGLE
        assert sets(TRIANGLE.restrict([])) == {frozenset()}
        assert TRIANGLE.restrict([0, 1]) == INTERVAL

    def test_deletion(self):
        assert sets(INTERVAL.deletion([0])) == {frozenset(), frozenset({1})}
        assert BOUNDARY.deletion([]) == BOUNDARY
        assert sets(BOUNDARY.deletion([0])) == sets(F([[1, 2]]))

    def test_star(self):
        assert BOUNDARY.star([]) == BOUNDARY
        assert sets(TWO_POINTS.star([0])) == {frozenset(), frozenset({0})}
        assert INTERVAL.star([0]) == INTERVAL

    def test_link(self):
        assert sets(TWO_POINTS.link([0])) == {frozenset()}
        assert sets(INTERVAL.link([0])) == {frozenset(), frozenset({1})}
        assert sets(TRIANGLE.link([0])) == sets(F([[1, 2]]))

    def test_non_face_rejected(self):
        for op in (BOUNDARY.deletion, BOUNDARY.star, BOUNDARY.link):
            with pytest.raises(FaceError):
                op([0, 1, 2])
        with pytest.raises(FaceError):
            INTERVAL.link([7])

    def test_mask_and_label_forms_agree(self):
        assert BOUNDARY.link(0b001) == BOUNDARY.link([0])

    def test_string_labels(self):
        cx = F([["a", "b"], ["b", "c"]])
        assert cx.vertices == {"a", "b", "c"}
        assert sets(cx.link(["b"])) == {frozenset(), frozenset({"a"}), frozenset({"c"})}
        assert cx.cone_peaks() == {"b"}

    @given(complexes, st.data())
    def test_invariants(self, cx, data):
        face = data.draw(st.sampled_from(sorted(cx.faces)))
        dl, stl, lk = cx.deletion(face), cx.star(face), cx.link(face)
        for sub in (dl, stl, lk, cx.restrict(face)):
            assert sub.is_valid()
        assert lk.faces <= dl.faces <= cx.faces
        assert lk.faces == dl.faces & stl.faces

    def test_empty_versus_void(self):
        empty = SimplicialComplex(frozenset())
        void = SimplicialComplex(frozenset({0}))
        assert empty != void
        assert len(empty) == 0 and len(void) == 1
        assert empty.vertices == void.vertices == frozenset()


class TestCones:
    def test_examples(self):
        assert TRIANGLE.cone_peaks() == {0, 1, 2}
        assert TWO_POINTS.cone_peaks() == frozenset()
        assert not BOUNDARY.is_cone()

    @given(complexes)
    def test_facet_method_matches_star_definition(self, cx):
        assert cx.cone_peaks() == literal_cone_peaks(cx)

    def test_comparable_to_s_gives_peak(self, posets_upto6):
        hits = 0
        for P in posets_upto6:
            for s in range(P.n):
                if off_core_mask(P, s) == 0:
                    assert s in order_complex(P).cone_peaks()
                    hits += 1
        assert hits > 100

    def test_unique_lower_cover_is_peak_of_link(self, posets_upto6):
        for P in posets_upto6:
            cx = order_complex(P)
            for x in range(P.n):
                low = unique_lower_cover(P, x)
                if low is not None:
                    assert low in cx.link([x]).cone_peaks()


class TestText:
    def test_round_trip(self):
        for cx in (TWO_POINTS, INTERVAL, BOUNDARY, order_complex(random_poset(5, 0.4, 3))):
            parsed, closed = parse_complex(to_complex_text(cx))
            assert parsed == cx and closed

    def test_not_closed_reported(self):
        cx, closed = parse_complex("0,1,2\n")
        assert cx == TRIANGLE and not closed

    def test_blank_line_is_empty_face(self):
        cx, closed = parse_complex("\n0\n1\n")
        assert sets(cx) == sets(TWO_POINTS) and closed

    def test_comments_and_labels(self):
        cx, _ = parse_complex("# a path\na,b\nb, c\n")
        assert cx.vertices == {"a", "b", "c"}

    def test_only_blank_gives_void_complex(self):
        cx, closed = parse_complex("\n")
        assert sets(cx) == {frozenset()} and closed


def test_reduced_euler_characteristic():
    assert TRIANGLE.reduced_euler_characteristic() == 0
    assert BOUNDARY.reduced_euler_characteristic() != 0
    assert TWO_POINTS.reduced_euler_characteristic() != 0
    assert order_complex(antichain(1)).reduced_euler_characteristic() == 0
