"""Acceptance gate: one test per shipped guarantee, each with its budget.

Every test prints a single `criterion N: PASS/FAIL` line (run pytest with
-s to see them all) and then asserts.  Budgets are wall-clock seconds on a
desk machine, generous on purpose; a correct-but-slow run is a failure.
"""

import time

import pytest

from cayleysort import (
    CayleyPerm,
    contains,
    count_sortable,
    encode,
    fubini_numbers,
    generate_all,
    heights,
    is_popstack_sortable,
    is_sigma_sortable,
    matched_pairs,
    minimal_non_members,
    reverse,
    reverse_path,
    run_stack,
    s_sigma,
    sigma_panel,
    sort11_equinumerosity,
    valleys,
    verify_21_machine_mesh,
    verify_bijectivity,
    verify_class,
    witness_non_class,
    StackConfig,
)
from cayleysort.stack import _creates_occurrence
from math import comb

FUBINI_1_TO_8 = [1, 3, 13, 75, 541, 4683, 47293, 545835]
MACHINE21_1_TO_8 = [1, 3, 13, 73, 483, 3547, 27939, 231395]
HARE_1_TO_6 = [1, 3, 11, 41, 151, 553]


def report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} — {detail}")
    return ok


def test_01_universe_counts():
    start = time.perf_counter()
    got = [sum(1 for _ in generate_all(n)) for n in range(1, 9)]
    elapsed = time.perf_counter() - start
    ok = got == FUBINI_1_TO_8 == fubini_numbers(8)[1:] and elapsed < 10
    assert report(1, ok, f"Fubini counts n=1..8 {got} in {elapsed:.1f}s (budget 10s)")


def test_02_descent_machine_census():
    start = time.perf_counter()
    counts = count_sortable("sigma-machine 21", 8).count_list()
    elapsed = time.perf_counter() - start
    ok = counts == MACHINE21_1_TO_8 and elapsed < 300
    assert report(2, ok, f"21-machine census {counts} in {elapsed:.1f}s (budget 300s)")


def test_03_hare_census():
    start = time.perf_counter()
    counts = count_sortable("popstack hare", 6).count_list()
    elapsed = time.perf_counter() - start
    ok = counts == HARE_1_TO_6 and elapsed < 10
    assert report(3, ok, f"hare census {counts} in {elapsed:.1f}s (budget 10s)")


def test_04_tortoise_census_plain_and_refined():
    start = time.perf_counter()
    rep = count_sortable("popstack tortoise", 8)
    elapsed = time.perf_counter() - start
    plain_ok = rep.count_list() == [3 ** (n - 1) for n in range(1, 9)]
    expected_refined = {
        (n, k): comb(n - 1, k - 1) * 2 ** (k - 1)
        for n in range(1, 9)
        for k in range(1, n + 1)
    }
    refined_ok = rep.refined == expected_refined
    ok = plain_ok and refined_ok and elapsed < 120
    assert report(
        4,
        ok,
        f"tortoise counts 3^(n-1) {plain_ok}, refined binomial {refined_ok}, "
        f"{elapsed:.1f}s (budget 120s)",
    )


@pytest.mark.filterwarnings("ignore:candidate witness")
def test_05_classness_sweep():
    start = time.perf_counter()
    failures = []
    for sigma in sigma_panel():
        try:
            verdict = verify_class(sigma, 6)
            if not verdict.equality_holds:
                failures.append((sigma, "sweep/validation failed"))
                continue
            if not verdict.predicted_is_class:
                alpha, beta = verdict.witness
                checks = (
                    isinstance(beta, CayleyPerm)
                    and contains(beta, alpha)
                    and is_sigma_sortable(beta, sigma)
                    and not is_sigma_sortable(alpha, sigma)
                )
                if not checks:
                    failures.append((sigma, "witness checks failed"))
        except Exception as exc:  # zero exceptions allowed
            failures.append((sigma, repr(exc)))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600
    assert report(
        5,
        ok,
        f"91 sigma classified and verified to length 6, failures={failures}, "
        f"{elapsed:.1f}s (budget 600s)",
    )


@pytest.mark.filterwarnings("ignore:candidate witness")
@pytest.mark.parametrize(
    "sigma, alpha, beta",
    [
        ((1, 1), (1, 3, 2), (3, 1, 3, 2)),
        ((2, 1), (1, 3, 2), (3, 5, 2, 4, 1)),
        ((2, 3, 1), (1, 3, 2, 4), (3, 6, 1, 4, 2, 5)),
    ],
    ids=["sigma-11", "sigma-21", "sigma-231"],
)
def test_06_reference_witness_rows(sigma, alpha, beta):
    got_alpha, got_beta = witness_non_class(sigma)
    verbatim = (got_alpha, got_beta) == (alpha, beta)
    simulated = (
        contains(beta, alpha)
        and is_sigma_sortable(beta, sigma)
        and not is_sigma_sortable(alpha, sigma)
    )
    ok = verbatim and simulated
    label = " ".join(map(str, sigma))
    report(6, ok, f"reference row for sigma={label}: verbatim={verbatim}, simulation={simulated}")
    assert ok, (
        f"reference witness row for sigma={label} not reproduced: "
        f"witness_non_class returned {got_alpha}/{got_beta}. For sigma=21 the "
        f"stored alpha=132 is in fact sortable (s_21(132)=123 avoids 231, and "
        f"all 13 length-3 inputs are 21-machine sortable per the census), so "
        f"the row fails its own validation and the library substitutes the "
        f"smallest valid pair 3241/34241."
    )


def test_07_descent_machine_mesh_characterization():
    start = time.perf_counter()
    sweep = verify_21_machine_mesh(7)
    pair = is_sigma_sortable((3, 4, 2, 4, 1), (2, 1)) and not is_sigma_sortable(
        (3, 2, 4, 1), (2, 1)
    )
    pattern_holds = contains((3, 4, 2, 4, 1), (3, 2, 4, 1))
    elapsed = time.perf_counter() - start
    ok = sweep and pair and pattern_holds and elapsed < 120
    assert report(
        7,
        ok,
        f"mesh law to length 7 {sweep}, 34241/3241 pair {pair and pattern_holds}, "
        f"{elapsed:.1f}s (budget 120s)",
    )


def test_08_operator_laws():
    start = time.perf_counter()
    failures = [s for s in sigma_panel() if not verify_bijectivity(s, 6)]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    assert report(
        8,
        ok,
        f"bijection/involution/collision laws for 91 sigma to length 6, "
        f"failures={failures}, {elapsed:.1f}s (budget 300s)",
    )


def _count_blocked_pushes(letters, sigmas):
    """Re-derive how many letters arrived while the stack refused them,
    probing legality directly rather than reading the path."""
    stack = []
    blocked = 0
    for x in letters:
        if stack and _creates_occurrence(stack, x, sigmas):
            blocked += 1
            while True:
                stack.pop()
                if not stack or not _creates_occurrence(stack, x, sigmas):
                    break
        stack.append(x)
    return blocked


def test_09_path_encoding_suite():
    start = time.perf_counter()
    panel = sigma_panel()
    words = [p for n in range(7) for p in generate_all(n)]
    violations = 0
    for sigma in panel:
        sigmas = (tuple(sigma),)
        equal_first = sigma[0] == sigma[1]
        cfg = StackConfig(frozenset({sigma}))
        for p in words:
            path = encode(p, sigma)  # constructor enforces balance/matching
            hs = heights(path)
            if hs and (min(hs) < 0 or hs[-1] != 0):
                violations += 1
            if any(path.steps[a][1] != path.steps[b][1] for a, b in matched_pairs(path)):
                violations += 1
            # height after each step == stack occupancy after each event
            occupancy = []
            depth = 0
            for kind, _ in run_stack(p, cfg).events:
                depth += 1 if kind == "PUSH" else -1
                occupancy.append(depth)
            if hs != occupancy:
                violations += 1
            if len(valleys(path)) != _count_blocked_pushes(tuple(p), sigmas):
                violations += 1
            if equal_first:
                if any(down != up for _, down, up in valleys(path)):
                    violations += 1
                mirrored = encode(reverse(s_sigma(p, sigma)), sigma)
                if reverse_path(mirrored) != path.step_string():
                    violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0
    assert report(
        9,
        ok,
        f"path checks for 91 sigma x all inputs to length 6: "
        f"{violations} violations, {elapsed:.1f}s",
    )


def test_10_equal_pair_equinumerosity():
    start = time.perf_counter()
    ok_law = sort11_equinumerosity(6)
    elapsed = time.perf_counter() - start
    ok = ok_law and elapsed < 60
    assert report(
        10, ok, f"11-sortable vs 231-avoiding to length 6: {ok_law}, {elapsed:.1f}s (budget 60s)"
    )


def test_11_popstack_bases():
    start = time.perf_counter()
    hare = minimal_non_members(lambda p: is_popstack_sortable(p, "hare"), 5)
    tortoise = minimal_non_members(lambda p: is_popstack_sortable(p, "tortoise"), 5)
    elapsed = time.perf_counter() - start
    hare_ok = hare == [(2, 3, 1), (3, 1, 2), (2, 1, 2, 1)]
    tortoise_ok = tortoise == [(2, 1, 1), (2, 2, 1), (2, 3, 1), (3, 1, 2)]
    ok = hare_ok and tortoise_ok
    assert report(
        11,
        ok,
        f"bases at length 5: hare {list(map(str, hare))}, "
        f"tortoise {list(map(str, tortoise))}, {elapsed:.1f}s",
    )
