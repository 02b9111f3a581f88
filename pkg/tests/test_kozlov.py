import pytest

from nonevasive.complex import order_complex
from nonevasive.dismantle import identity_map
from nonevasive.evasiveness import is_non_evasive, verify_certificate
from nonevasive.generators import all_posets, diamond
from nonevasive.kozlov import (
    HypothesisError,
    bw_report,
    check_BW,
    check_BW_r,
    check_BWI,
    check_corollary15,
    check_theorem8,
    chains_in,
    corollary10_peak,
    lemma11_check,
    lemma12_subinstance,
    lemma13_subinstance,
    off_core_mask,
    r_candidates,
    reorient_dual_witnesses,
    subposet_complex,
    theorem8_failures,
    theorem8_g,
    theorem8_partition,
    theorem8_T,
    theorem8_U_map_f,
    verify_corollary15,
    verify_theorem14,
)
from nonevasive.poset import (
    antichain,
    bits,
    dual,
    from_cover_relations,
    meet,
    unique_lower_cover,
)

from conftest import small_posets

CLAW = from_cover_relations(4, [(0, 3), (1, 3), (2, 3)])  # three points under a top


def instances(max_n, check):
    for P in small_posets(max_n):
        for s in range(P.n):
            if check(P, s).holds:
                yield P, s


def bw_r_instances(max_n):
    for P, s in instances(max_n, check_BW):
        for r in r_candidates(P, s):
            yield P, s, r


class TestHypotheses:
    def test_maximum_element(self):
        for P in small_posets(5):
            for s in range(P.n):
                if P.up[s] == 1 << s and P.down[s] == P.full_mask:
                    assert check_corollary15(P, s).holds

    def test_lattice(self):
        D = diamond()
        for s in range(4):
            assert check_corollary15(D, s).holds
            assert check_theorem8(D, s).holds
            assert check_BW(D, s).holds

    def test_antichains(self, anti3, anti2):
        c = check_corollary15(anti3, 0)
        assert not c.holds and c.failures == (("cond1", 1), ("cond1", 2))
        assert not check_theorem8(anti2, 0).holds

    def test_n_poset(self, npos):
        assert check_BW(npos, 0).failures == (("cond1", 3),)
        assert off_core_mask(npos, 0) == 0b1010
        assert check_BW(npos, 1).holds
        assert r_candidates(npos, 1) == [0]
        assert check_BW_r(npos, 1, 0) and check_BWI(npos, 1, 0)
        assert lemma11_check(npos, 1, 0)

    def test_comparable_core_satisfies_bw(self):
        for P in small_posets(5):
            for s in range(P.n):
                if off_core_mask(P, s) == 0:
                    assert check_BW(P, s).holds

    def test_bwi_needs_no_unique_lower_cover(self):
        for P, s, r in bw_r_instances(5):
            if unique_lower_cover(P, r) is not None:
                assert not check_BWI(P, s, r)

    def test_bad_element(self, dia):
        with pytest.raises(IndexError):
            check_BW(dia, 4)


class TestDuality:
    def test_meet_form_equals_dual_join_form_n5(self):
        for P in small_posets(5):
            for s in range(P.n):
                a = check_theorem8(P, s)
                b = check_corollary15(dual(P), s)
                assert a.holds == b.holds
                assert a.failures == reorient_dual_witnesses(b.failures)

    def test_bw_is_dual_of_join_form(self):
        for P in small_posets(5):
            for s in range(P.n):
                a = check_BW(P, s)
                b = check_corollary15(dual(P), s)
                assert a.holds == b.holds
                assert a.failures == reorient_dual_witnesses(b.failures)

    def test_bw_matches_meet_form_n5(self):
        for P in small_posets(5):
            for s in range(P.n):
                assert check_BW(P, s).holds == check_theorem8(P, s).holds

    def test_forms_disagree_on_three_pairs_at_n6(self):
        # the two hypothesis families are not literally equivalent beyond n=5
        diff = [(P, s) for P in all_posets(6) for s in range(6)
                if check_BW(P, s).holds != check_theorem8(P, s).holds]
        assert len(diff) == 3


class TestReports:
    def test_partition_and_variant(self, npos):
        rep = bw_report(npos, 1)
        assert rep.variant == "both" and rep.bw
        assert rep.W | rep.U == frozenset(range(4)) and not rep.W & rep.U
        assert rep.off_core == {0} and rep.r_candidates == {0}
        assert bw_report(npos, 0).variant == "neither"

    def test_json_shape(self, npos):
        data = bw_report(npos, 0).to_json()
        assert data["failures"]["bw"] == [["cond1", 3]]
        assert data["W"] == [1, 3]


class TestMeetPartitionObjects:
    def test_f_identity_when_s_is_maximum(self, chain3):
        f = theorem8_U_map_f(chain3, 2)
        assert theorem8_partition(chain3, 2)[1] == {0, 1, 2}
        assert f == identity_map(chain3)

    def test_f_on_diamond_atom(self, dia):
        f = theorem8_U_map_f(dia, 1)
        assert f.as_tuple() == tuple(meet(dia, 1, z) for z in range(4))
        assert f(1) == 1

    def test_f_fixes_s(self):
        for P, s in instances(5, check_theorem8):
            assert theorem8_U_map_f(P, s)(s) == s

    def test_hypothesis_required(self, anti2):
        with pytest.raises(HypothesisError):
            theorem8_U_map_f(anti2, 0)

    def test_claw(self):
        W, U = theorem8_partition(CLAW, 0)
        assert W == {1, 2} and U == {0, 3}
        assert theorem8_T(CLAW, 0, [1]) == {3}
        assert theorem8_g(CLAW, 0, [1]).as_tuple() == (3,)
        with pytest.raises(ValueError):
            theorem8_T(CLAW, 0, [1, 2])  # not a chain
        with pytest.raises(ValueError):
            theorem8_T(CLAW, 0, [3])  # not inside W

    def test_single_maximal_w(self):
        for P, s in instances(5, check_theorem8):
            W, U = theorem8_partition(P, s)
            for w in W:
                if P.up[w] == 1 << w:
                    expected = {u for u in U if P.comparable(u, w)}
                    assert theorem8_T(P, s, [w]) == expected

    def test_g_branches(self):
        for P, s in instances(5, check_theorem8):
            W, _ = theorem8_partition(P, s)
            for sigma in chains_in(P, sum(1 << w for w in W)):
                ws = sorted(bits(sigma), key=lambda a: bin(P.down[a]).count("1"))
                g = theorem8_g(P, s, ws)
                for t in g.domain:
                    if P.leq(t, ws[0]):
                        assert g(t) == meet(P, t, s)
                    elif P.leq(ws[-1], t):
                        assert g(t) == meet(P, t, P.join_table[ws[-1]][s])

    def test_all_steps_hold_n6(self):
        count = 0
        for P, s in instances(6, check_theorem8):
            assert theorem8_failures(P, s) == []
            count += 1
        assert count > 900


class TestLemmas:
    def test_minimal_r_vacuous(self):
        for P, s, r in bw_r_instances(5):
            if P.down[r] == 1 << r:
                assert lemma11_check(P, s, r)

    def test_exhaustive_n6(self):
        seen = {"l11": 0, "l12": 0, "l13": 0}
        for P, s, r in bw_r_instances(6):
            cx = order_complex(P)
            assert lemma11_check(P, s, r)
            seen["l11"] += 1
            sub, s2, remap = lemma12_subinstance(P, s, r)
            assert check_BW(sub, s2).holds
            assert subposet_complex(P, list(remap)) == cx.deletion([r])
            seen["l12"] += 1
            if check_BWI(P, s, r):
                Q, q, qmap = lemma13_subinstance(P, s, r)
                assert check_BW(Q, q).holds
                assert subposet_complex(P, list(qmap)) == cx.link([r])
                q_old = next(a for a, b in qmap.items() if b == q)
                assert P.lt(r, q_old)
                seen["l13"] += 1
        assert min(seen.values()) > 100

    def test_n_poset_link_instance(self, npos):
        Q, q, remap = lemma13_subinstance(npos, 1, 0)
        assert Q.n == 1 and remap == {2: 0} and q == 0

    def test_hypothesis_errors(self, npos):
        with pytest.raises(HypothesisError):
            lemma12_subinstance(npos, 0, 1)
        with pytest.raises(HypothesisError):
            lemma11_check(npos, 1, 3)


class TestInduction:
    def test_cone_node(self, chain3):
        rep = verify_theorem14(chain3, 1)
        assert rep.ok
        assert [step["step"] for step in rep.recursion] == ["cone"]
        assert corollary10_peak(chain3, 1)

    def test_cone_peak_requires_comparable_core(self, npos):
        with pytest.raises(HypothesisError):
            corollary10_peak(npos, 1)

    def test_n_poset(self, npos):
        rep = verify_theorem14(npos, 1)
        assert rep.ok and rep.recursion[0]["step"] == "lemma13"
        assert verify_certificate(order_complex(npos), rep.certificate)

    def test_failing_hypothesis_reported(self, npos):
        rep = verify_theorem14(npos, 0)
        assert not rep.holds and not rep.ok
        assert rep.failures[0]["step"] == "hypothesis"

    def test_all_bw_instances_n6(self):
        for P, s in instances(6, check_BW):
            rep = verify_theorem14(P, s)
            assert rep.ok, rep.to_json()

    def test_join_form_through_dual_n6(self):
        count = 0
        for P, s in instances(6, check_corollary15):
            rep = verify_corollary15(P, s)
            assert rep.ok, rep.to_json()
            assert verify_certificate(order_complex(P), rep.certificate)
            count += 1
        assert count == 1003

    def test_first_candidate_only(self, dia):
        for s in range(4):
            assert verify_theorem14(dia, s, all_candidates=False).ok

    def test_report_json(self, npos):
        data = verify_corollary15(npos, 1).to_json()
        assert data["variant"] == "corollary15" and data["holds"]
        assert data["poset"].startswith("n 4")
        assert data["nonevasive"] and data["certificate_valid"]

    def test_non_evasive_when_hypotheses_fail_is_not_claimed(self):
        # antichain(2) satisfies no family; its complex is indeed not non-evasive
        P = antichain(2)
        assert not any(check(P, s).holds for s in range(2)
                       for check in (check_BW, check_theorem8, check_corollary15))
        assert is_non_evasive(order_complex(P)) is None
