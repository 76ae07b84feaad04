"""Censuses, classness verdicts, witnesses, and the verification laws."""

import dataclasses

import pytest

from cayleysort import (
    HARE_BASIS,
    TORTOISE_BASIS,
    CayleyPerm,
    ResourceLimitError,
    classify_sigma,
    contains,
    count_sortable,
    is_sigma_sortable,
    mesh21_violations,
    popstack_violations,
    sigma_panel,
    sort11_equinumerosity,
    sortable_predicate,
    tortoise_refined,
    verify_21_machine_mesh,
    verify_bijectivity,
    verify_class,
    verify_fubini,
    verify_involution,
    verify_popstack_characterization,
    verify_tortoise_count,
    verify_tortoise_refined,
    witness_non_class,
)
from cayleysort.census import _parse_machine, _search_witness


class TestMachineDescriptors:
    def test_sigma_machine_forms(self):
        assert _parse_machine("sigma-machine 21") == ("sigma", (2, 1))
        assert _parse_machine("sigma-machine 2 1") == ("sigma", (2, 1))
        assert _parse_machine("sigma machine 1 1") == ("sigma", (1, 1))

    def test_popstack_forms(self):
        assert _parse_machine("popstack hare") == ("popstack", "hare")
        assert _parse_machine("popstack-tortoise") == ("popstack", "tortoise")

    @pytest.mark.parametrize(
        "bad",
        ["", "sigma-machine", "sigma-machine 1", "popstack", "popstack snail", "bogus 21"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            _parse_machine(bad)

    def test_sortable_predicate(self):
        pred = sortable_predicate("sigma-machine 21")
        assert pred(CayleyPerm((3, 4, 2, 4, 1)))
        assert not pred(CayleyPerm((3, 2, 4, 1)))
        hare = sortable_predicate("popstack hare")
        assert hare(CayleyPerm((2, 2, 1)))
        assert not hare(CayleyPerm((2, 3, 1)))


class TestCountSortable:
    def test_21_machine_small(self):
        report = count_sortable("sigma-machine 21", 4)
        assert report.machine == "sigma-machine 2 1"
        assert report.counts == {1: 1, 2: 3, 3: 13, 4: 73}
        assert report.universe_sizes == {1: 1, 2: 3, 3: 13, 4: 75}
        assert report.count_list() == [1, 3, 13, 73]
        assert report.refined is None
        assert report.elapsed >= 0.0

    def test_hare_small(self):
        assert count_sortable("popstack hare", 4).count_list() == [1, 3, 11, 41]

    def test_tortoise_carries_refinement(self):
        report = count_sortable("popstack tortoise", 3)
        assert report.count_list() == [1, 3, 9]
        assert report.refined == {
            (1, 1): 1,
            (2, 1): 1, (2, 2): 2,
            (3, 1): 1, (3, 2): 4, (3, 3): 4,
        }

    def test_parallel_run_matches_serial(self):
        serial = count_sortable("popstack tortoise", 4, threads=1)
        parallel = count_sortable("popstack tortoise", 4, threads=2)
        strip = lambda r: dataclasses.replace(r, elapsed=0.0)
        assert strip(serial) == strip(parallel)

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError):
            count_sortable("sigma-machine 21", 9)

    def test_env_override_admits_larger_n(self, monkeypatch):
        # only the bound check changes; don't actually run a census at 9
        from cayleysort import census_limit

        monkeypatch.setenv("CAYLEYSORT_MAX_N", "9")
        assert census_limit() == 9


class TestReportEmitters:
    def test_to_text(self):
        report = count_sortable("sigma-machine 21", 3)
        text = report.to_text()
        assert text.splitlines()[0] == "machine: sigma-machine 2 1"
        assert "   3          13          13" in text
        assert text.splitlines()[-1].startswith("elapsed:")

    def test_to_csv_plain(self):
        report = count_sortable("sigma-machine 21", 3)
        assert report.to_csv() == "n,count\n1,1\n2,3\n3,13"

    def test_to_csv_refined(self):
        report = count_sortable("popstack tortoise", 2)
        assert report.to_csv() == (
            "n,count,k,refined_count\n1,1,1,1\n2,3,1,1\n2,3,2,2"
        )

    def test_to_bfile(self):
        report = count_sortable("popstack hare", 4)
        assert report.to_bfile() == "1 1\n2 3\n3 11\n4 41"


class TestTortoiseRefined:
    def test_length_three(self):
        assert tortoise_refined(3) == {1: 1, 2: 4, 3: 4}

    def test_length_four(self):
        assert tortoise_refined(4) == {1: 1, 2: 6, 3: 12, 4: 8}

    def test_length_one(self):
        assert tortoise_refined(1) == {1: 1}

    def test_totals_are_powers_of_three(self):
        for n in range(1, 6):
            assert sum(tortoise_refined(n).values()) == 3 ** (n - 1)


class TestClassification:
    def test_sort_321_is_a_class(self):
        verdict = classify_sigma((3, 2, 1))
        assert verdict.predicted_is_class
        assert verdict.predicted_basis == {(1, 3, 2), (1, 2, 3)}
        assert verdict.witness is None

    def test_reversed_sigma_absorbed_when_it_contains_132(self):
        verdict = classify_sigma((4, 2, 3, 1))
        assert verdict.predicted_is_class
        assert verdict.predicted_basis == {(1, 3, 2)}

    def test_sort_12_is_the_213_avoiders(self):
        verdict = classify_sigma((1, 2))
        assert verdict.predicted_is_class
        assert verdict.predicted_basis == {(2, 1, 3)}

    @pytest.mark.filterwarnings("ignore:candidate witness")
    def test_non_classes_carry_validated_witnesses(self):
        for sigma in [(1, 1), (2, 1), (2, 3, 1)]:
            verdict = classify_sigma(sigma)
            assert not verdict.predicted_is_class
            assert verdict.predicted_basis is None
            alpha, beta = verdict.witness
            assert contains(beta, alpha)
            assert is_sigma_sortable(beta, sigma)
            assert not is_sigma_sortable(alpha, sigma)

    def test_among_length_three_only_321_is_a_class(self):
        classes = [
            s for s in sigma_panel()
            if len(s) == 3 and classify_sigma(s).predicted_is_class
        ]
        assert classes == [(3, 2, 1)]

    def test_sigma_panel(self):
        panel = sigma_panel()
        assert len(panel) == 91
        assert panel[0] == (1, 1)
        assert panel[-1] == (4, 3, 2, 1)
        assert {len(s) for s in panel} == {2, 3, 4}


class TestVerifyClass:
    def test_class_sweep_agrees(self):
        verdict = verify_class((3, 2, 1), 5)
        assert verdict.equality_holds
        assert verdict.checked_to_length == 5

    def test_ascent_machine_class_sweep(self):
        assert verify_class((1, 2), 7).equality_holds

    def test_non_class_revalidates_witness(self):
        verdict = verify_class((1, 1), 5)
        assert not verdict.predicted_is_class
        assert verdict.equality_holds
        assert verdict.witness == ((1, 3, 2), (3, 1, 3, 2))

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError):
            verify_class((1, 1), 9)


class TestWitnesses:
    def test_reference_pairs(self):
        assert witness_non_class((1, 1)) == ((1, 3, 2), (3, 1, 3, 2))
        assert witness_non_class((2, 3, 1)) == ((1, 3, 2, 4), (3, 6, 1, 4, 2, 5))

    def test_constructed_pair_strict_minimum_first_letter(self):
        # sigma = 123: beta from the sigma+1 construction
        alpha, beta = witness_non_class((1, 2, 3))
        assert alpha == (1, 3, 2)
        assert beta == (4, 1, 3, 2)

    def test_constructed_pair_general_case(self):
        alpha, beta = witness_non_class((1, 2, 2))
        assert alpha == (1, 3, 2)
        assert beta == (3, 1, 3, 2)

    def test_21_row_falls_back_to_search(self):
        # the reference alpha = 132 is actually sortable by the 21-machine,
        # so the table row fails validation and the exhaustive search runs
        with pytest.warns(UserWarning, match="fails validation"):
            alpha, beta = witness_non_class((2, 1))
        assert (alpha, beta) == ((3, 2, 4, 1), (3, 4, 2, 4, 1))
        assert contains(beta, alpha)
        assert is_sigma_sortable(beta, (2, 1))
        assert not is_sigma_sortable(alpha, (2, 1))

    def test_search_witness_directly(self):
        assert _search_witness((2, 1), 5) == ((3, 2, 4, 1), (3, 4, 2, 4, 1))

    def test_rejected_for_classes(self):
        with pytest.raises(ValueError):
            witness_non_class((1, 2))
        with pytest.raises(ValueError):
            witness_non_class((3, 2, 1))
        with pytest.raises(ValueError):
            witness_non_class((1,))


class TestOperatorLaws:
    def test_bijectivity_equal_first_letters(self):
        assert verify_bijectivity((1, 1), 5)
        assert verify_bijectivity((1, 1, 2), 5)

    def test_bijectivity_collision_branch(self):
        assert verify_bijectivity((1, 2), 6)
        assert verify_bijectivity((2, 1), 6)
        assert verify_bijectivity((2, 3, 1), 6)

    def test_involution(self):
        assert verify_involution((1, 1), 5)
        assert verify_involution((2, 2, 1), 4)
        # reverse-then-sort does not square to the identity when the
        # first two letters differ
        assert not verify_involution((2, 1), 4)

    def test_sigma_validation(self):
        with pytest.raises(ValueError):
            verify_involution((1,), 3)

    def test_equinumerosity(self):
        assert sort11_equinumerosity(5)

    def test_equinumerosity_common_count(self):
        from conftest import universe

        sortable = [p for p in universe(3) if is_sigma_sortable(p, (1, 1))]
        avoiders = [p for p in universe(3) if not contains(p, (2, 3, 1))]
        assert len(sortable) == len(avoiders) == 12


class TestCharacterizations:
    def test_mesh_21_machine(self):
        assert verify_21_machine_mesh(5)
        assert list(mesh21_violations(5)) == []

    def test_popstack_bases(self):
        assert HARE_BASIS == ((2, 3, 1), (3, 1, 2), (2, 1, 2, 1))
        assert TORTOISE_BASIS == ((2, 3, 1), (3, 1, 2), (2, 2, 1), (2, 1, 1))
        assert verify_popstack_characterization("hare", 6)
        assert verify_popstack_characterization("tortoise", 6)
        assert list(popstack_violations("hare", 5)) == []

    def test_tortoise_counts(self):
        assert verify_tortoise_count(6)
        assert verify_tortoise_refined(5)

    def test_fubini(self):
        assert verify_fubini(6)
