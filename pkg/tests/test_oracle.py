"""Exhaustive searches against closed forms, and their search contracts."""

import pytest

from treearrange import (
    BudgetExceededError,
    GuestTree,
    InvalidInputError,
    closed_form_objective,
    cut_count,
    exact_dapt,
    exact_kbpp,
    objective_value,
    optimal_value,
    star_optimum,
    three_star_optimum,
    validate,
)


@pytest.mark.parametrize("height,expected", [(0, 0), (1, 6), (2, 22)])
def test_exact_dapt_on_complete_binary(height, expected):
    guest = GuestTree.complete_binary(height)
    value, witness = exact_dapt(guest, 2)
    assert value == expected == closed_form_objective(height)
    assert validate(witness) == []
    assert objective_value(witness) == value


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("degree", [2, 3])
def test_exact_dapt_on_stars(n, degree):
    if degree > n:
        pytest.skip("star optimum needs d <= n")
    value, witness = exact_dapt(GuestTree.star(n), degree)
    assert value == star_optimum(n, degree)
    assert objective_value(witness) == value


def test_exact_dapt_on_three_star_forest():
    # sizes 5, 2, 1 fill an 8-leaf host exactly
    edges = [(1, 2), (1, 3), (1, 4), (1, 5), (6, 7)]
    forest = GuestTree.forest(8, edges)
    value, witness = exact_dapt(forest, 2)
    assert value == three_star_optimum(5, 2, 1, 2) == 18
    assert objective_value(witness) == 18


def test_exact_kbpp_matches_closed_form():
    for height in (1, 2, 3):
        guest = GuestTree.complete_binary(height)
        for k_prime in range(1, height + 1):
            value, witness = exact_kbpp(guest, 2**k_prime)
            assert value == optimal_value(height, k_prime), (height, k_prime)
            assert cut_count(witness) == value


def test_exact_kbpp_height_four_edge_cases():
    guest = GuestTree.complete_binary(4)
    for k_prime in (1, 4):
        value, witness = exact_kbpp(guest, 2**k_prime)
        assert value == optimal_value(4, k_prime)
        assert cut_count(witness) == value


def test_exact_kbpp_examples():
    assert exact_kbpp(GuestTree.complete_binary(2), 4)[0] == 4
    assert exact_kbpp(GuestTree.complete_binary(1), 2)[0] == 1
    assert exact_kbpp(GuestTree.complete_binary(3), 8)[0] == 9


def test_budget_is_enforced():
    guest = GuestTree.complete_binary(2)
    with pytest.raises(BudgetExceededError):
        exact_dapt(guest, 2, budget=5)
    with pytest.raises(BudgetExceededError):
        exact_kbpp(guest, 4, budget=5)


def test_thread_counts_do_not_change_results():
    guest = GuestTree.complete_binary(2)
    single = exact_dapt(guest, 2, threads=1)
    multi = exact_dapt(guest, 2, threads=4)
    assert single[0] == multi[0]
    assert single[1].leaf_of == multi[1].leaf_of

    kb_single = exact_kbpp(GuestTree.complete_binary(3), 8, threads=1)
    kb_multi = exact_kbpp(GuestTree.complete_binary(3), 8, threads=4)
    assert kb_single[0] == kb_multi[0]
    assert kb_single[1].block_of == kb_multi[1].block_of


def test_repeated_runs_are_identical():
    guest = GuestTree.star(6)
    first = exact_dapt(guest, 2)
    second = exact_dapt(guest, 2)
    assert first[0] == second[0]
    assert first[1].leaf_of == second[1].leaf_of


def test_parameter_validation():
    guest = GuestTree.complete_binary(2)
    with pytest.raises(InvalidInputError):
        exact_dapt(guest, 1)
    with pytest.raises(InvalidInputError):
        exact_kbpp(guest, 1)
    with pytest.raises(InvalidInputError):
        exact_kbpp(guest, 8)  # more blocks than vertices
