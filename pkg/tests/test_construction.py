from itertools import combinations

import pytest

from conftest import uniform
from gammoids import certify, construct, normalize, parse_presentation
from gammoids.certificate import certificate_to_json
from gammoids.construction import APEXES
from gammoids.corpus import U24_DOC
from gammoids.digraph import Digraph, Presentation
from gammoids.errors import TooLarge


def family_subsets(m, families, size):
    out = set()
    for family in families:
        if len(family) >= size:
            for combo in combinations(sorted(family), size):
                out.add(m.mask_of(combo))
    return out


def block_meeting_circuits(m, block):
    block_mask = m.mask_of(block)
    return {c for c in m.nonspanning_circuit_masks() if c & block_mask}


class TestNormalization:
    def test_split_input_passes_through(self):
        norm = normalize(parse_presentation(U24_DOC))
        assert set(norm.basis_one) == {"a", "b"}
        assert set(norm.basis_two) == {"c", "d"}
        assert norm.delete_back == () and norm.contract_back == ()

    def test_all_loops_input(self):
        norm = normalize(Presentation(Digraph("ab"), "ab", ""))
        assert norm.contract_back == ("t#1", "t#2")
        assert norm.presentation.matroid.rank == 2


class TestBundleShape:
    def test_counts_and_ranks(self, u24_run):
        bundle, _, _ = u24_run
        assert bundle.r == 2
        assert bundle.result.size == 3 * bundle.r + 5 == 11
        assert bundle.result.rank == bundle.r + 3 == 5
        assert len(bundle.block_c) == 2 and len(bundle.block_d) == bundle.r + 1

    def test_apexed_vertex_count(self, u24_run):
        bundle, _, _ = u24_run
        for branch in bundle.branches.values():
            assert len(branch.apexed.graph.vertices) == (
                len(branch.rebased.graph.vertices) + bundle.r + 2
            )

    def test_own_basis_with_apexes_is_a_basis(self, u24_run):
        bundle, _, _ = u24_run
        for i, s_own in ((1, bundle.s1), (2, bundle.s2)):
            m = bundle.branches[i].apexed_matroid
            assert m.is_basis(s_own + APEXES)
            assert m.rank == bundle.r + 2

    def test_gadget_restricts_to_core(self, u24_run):
        bundle, _, _ = u24_run
        for branch in bundle.branches.values():
            assert branch.gadget_matroid.delete(bundle.relaxed_set).equals(bundle.core)

    def test_block_sets_independent_in_bypass(self, u24_run):
        bundle, _, _ = u24_run
        for i, s_own in ((1, bundle.s1), (2, bundle.s2)):
            m = bundle.branches[i].bypass_matroid
            assert m.is_independent(bundle.relaxed_set)
            assert m.is_independent(s_own + bundle.block_c + (APEXES[i - 1],))


class TestClaims:
    def test_all_claims_true(self, u24_run):
        _, cert, _ = u24_run
        assert all(cert.claims.values())

    def test_core_contraction_recovers_base(self, u24_run):
        bundle, _, _ = u24_run
        assert bundle.core.contract(APEXES).equals(bundle.base)
        assert not set(bundle.core.ground) == set(bundle.base.ground)

    def test_result_minor_is_original_input(self, u24_run):
        bundle, _, _ = u24_run
        recovered = bundle.result.delete(bundle.relaxed_set).contract(APEXES)
        assert recovered.equals(uniform("abcd", 2))

    def test_gadget_family_count_r2(self, u24_run):
        # family sizes r+3, r+3, 2r+2, r+3, 2r+2 give 1+1+6+1+6 candidates at r=2
        bundle, _, _ = u24_run
        m = bundle.gadget
        s1, s2, (v1, v2) = bundle.s1, bundle.s2, APEXES
        c, d = bundle.block_c, bundle.block_d
        families = [c + d, s1 + c + (v1,), s1 + d + (v1,), s2 + c + (v2,), s2 + d + (v2,)]
        expected = family_subsets(m, families, bundle.r + 3)
        assert len(expected) == 15
        assert expected == block_meeting_circuits(m, c + d)

    def test_bypass_family_count_r2(self, u24_run):
        bundle, _, _ = u24_run
        s1, s2, (v1, v2) = bundle.s1, bundle.s2, APEXES
        c, d = bundle.block_c, bundle.block_d
        for i, fams in (
            (1, [s2 + c + (v2,), s1 + d + (v1,), s2 + d + (v2,)]),
            (2, [s1 + c + (v1,), s2 + d + (v2,), s1 + d + (v1,)]),
        ):
            m = bundle.branches[i].bypass_matroid
            expected = family_subsets(m, fams, bundle.r + 3)
            assert len(expected) == 13
            assert expected == block_meeting_circuits(m, c + d)

    def test_bypass_circuits_are_dependent_in_gadget(self, u24_run):
        bundle, _, _ = u24_run
        for branch in bundle.branches.values():
            gm = branch.gadget_matroid
            for mask in block_meeting_circuits(branch.bypass_matroid, bundle.relaxed_set):
                labels = branch.bypass_matroid.labels_of(mask)
                assert not gm.is_independent(labels)

    def test_ingleton_numbers(self, u24_run):
        bundle, _, _ = u24_run
        assert (bundle.ingleton.lhs, bundle.ingleton.rhs) == (21, 20)
        assert not bundle.ingleton.holds
        m = bundle.result
        a = bundle.s1 + (APEXES[0],)
        b = bundle.s2 + (APEXES[1],)
        assert m.rank_of(a) == bundle.r + 1
        assert m.rank_of(a + b) == bundle.r + 2
        assert m.rank_of(bundle.relaxed_set) == bundle.r + 3

    def test_relaxed_set_facts(self, u24_run):
        bundle, _, _ = u24_run
        block = bundle.relaxed_set
        assert bundle.gadget.rank_of(block) == bundle.r + 2
        assert bundle.gadget.is_circuit_hyperplane(block)
        assert set(bundle.result.basis_masks()) == set(bundle.gadget.basis_masks()) | {
            bundle.gadget.mask_of(block)
        }


class TestSideDeletions:
    def test_final_circuit_families_match_bypass(self, u24_run):
        # for a side element x, the result minus x has exactly the circuits of
        # the matching bypass matroid minus x: those avoiding the blocks plus
        # full-rank subsets of the far fan families and of ((own side + apex) - x) + D
        bundle, _, _ = u24_run
        m = bundle.result
        c, d = bundle.block_c, bundle.block_d
        for i, s_own, s_far in ((1, bundle.s1, bundle.s2), (2, bundle.s2, bundle.s1)):
            v_own, v_far = APEXES[i - 1], APEXES[2 - i]
            bm = bundle.branches[i].bypass_matroid
            for x in s_own + (v_own,):
                left = m.delete([x])
                right = bm.delete([x])
                assert left.equals(right)
                families = [
                    s_far + c + (v_far,),
                    s_far + d + (v_far,),
                    tuple(e for e in s_own + (v_own,) if e != x) + d,
                ]
                expected = family_subsets(left, families, bundle.r + 3)
                assert expected == block_meeting_circuits(left, c + d)


class TestDeterminismAndOptions:
    def test_rebuild_is_byte_identical(self, u24_run):
        _, cert, _ = u24_run
        again = certify(construct(parse_presentation(U24_DOC)))
        assert certificate_to_json(again) == certificate_to_json(cert)

    def test_jobs_do_not_change_output(self, u24_run):
        bundle, cert, _ = u24_run
        parallel = certify(bundle, jobs=2)
        assert certificate_to_json(parallel) == certificate_to_json(cert)

    def test_branch_two_certificate_is_complete(self, u24_run):
        bundle, _, _ = u24_run
        cert = certify(bundle, branch="2")
        assert cert.complete

    def test_too_large(self):
        with pytest.raises(TooLarge):
            construct(parse_presentation(U24_DOC), max_elements=10)


class TestSmallEndToEnd:
    def test_rank_one_input(self):
        p = Presentation(Digraph("ab", [("a", "b")]), "ab", "b")
        bundle = construct(p)
        cert = certify(bundle)
        assert bundle.r == 1 and bundle.result.size == 8
        assert cert.complete

    def test_input_needing_padding(self):
        # U_{2,3} forces one padding element in the embedding
        p = Presentation(Digraph("abc", [("c", "a"), ("c", "b")]), "abc", "ab")
        bundle = construct(p)
        cert = certify(bundle)
        assert bundle.normalized.delete_back == ("u#1",)
        assert "u#1" in bundle.recipe_delete
        assert cert.complete
        recovered = bundle.result.delete(bundle.recipe_delete).contract(
            bundle.recipe_contract
        )
        assert recovered.equals(p.matroid)

    def test_all_loops_input_end_to_end(self):
        p = Presentation(Digraph("ab"), "ab", "")
        bundle = construct(p)
        cert = certify(bundle)
        assert bundle.recipe_contract == APEXES + ("t#1", "t#2")
        assert cert.complete
        recovered = bundle.result.delete(bundle.recipe_delete).contract(
            bundle.recipe_contract
        )
        assert recovered.equals(p.matroid)
