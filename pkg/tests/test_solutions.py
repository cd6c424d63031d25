import numpy as np
import pytest

from drsplit import (
    Box,
    DRProblem,
    OperatorFamilyError,
    PossiblyInconsistentError,
    SetSample,
    SolutionSets,
    build_scenario,
    decoupled_1d_fejer_check,
    fejer_check,
    find_fixed_point,
    iterate,
    normal_cone,
    paramonotone_cross_product,
    primal_dual_from_fix,
    random_pw1d_pair,
    shifted_governing,
    summability_report,
    sweet_principle_check,
)


def test_find_fixed_point_rotator_lands_on_ray():
    inst = build_scenario("rotator-cone")
    y = find_fixed_point(inst.problem, tol=1e-12)
    assert abs(y[0] + y[1]) <= 1e-10 and y[0] >= -1e-10


def test_find_fixed_point_affine():
    inst = build_scenario("affine-consistent")
    y = find_fixed_point(inst.problem, tol=1e-12)
    from drsplit import dr_apply

    assert np.linalg.norm(y - dr_apply(inst.problem.A, inst.problem.B, y)) <= 1e-12


def test_find_fixed_point_inconsistent_raises_with_estimate():
    inst = build_scenario("parallel-lines")
    with pytest.raises(PossiblyInconsistentError) as err:
        find_fixed_point(inst.problem, tol=1e-10, max_iters=500)
    assert np.allclose(err.value.v_estimate, [0.0, 2.0], atol=1e-6)
    assert err.value.step_norm > 1.0


def test_primal_dual_from_fix_rotator_ray():
    inst = build_scenario("rotator-cone")
    fixes = SetSample([t * np.array([1.0, -1.0]) for t in (0.25, 1.0, 3.0)], "ray")
    z, k, pairs = primal_dual_from_fix(inst.problem.A, inst.problem.B, fixes)
    for t, (zp, kp) in zip((0.25, 1.0, 3.0), pairs):
        assert np.allclose(zp, [t, 0.0], atol=0)
        assert np.allclose(kp, [0.0, -t], atol=0)
    assert len(z) == len(k) == 3


def test_primal_dual_from_fix_common_point_gives_zero_dual():
    inst = build_scenario("affine-consistent")
    z, k, pairs = primal_dual_from_fix(
        inst.problem.A, inst.problem.B, SetSample([np.zeros(2)], "intersection")
    )
    assert np.allclose(pairs[0][0], 0.0, atol=0)
    assert np.allclose(pairs[0][1], 0.0, atol=0)


def test_primal_dual_from_fix_1d_intervals():
    A = normal_cone(Box([0.0], [2.0]))
    B = normal_cone(Box([1.0], [3.0]))
    z, k, pairs = primal_dual_from_fix(A, B, SetSample([np.array([1.5])], "interior"))
    assert pairs[0][0][0] == 1.5 and pairs[0][1][0] == 0.0


def test_primal_dual_from_fix_rejects_moving_point():
    inst = build_scenario("parallel-lines")
    with pytest.raises(ValueError, match="step norm"):
        primal_dual_from_fix(
            inst.problem.A, inst.problem.B, SetSample([np.array([0.0, 0.0])], "not fixed")
        )


def test_cross_product_affine_pairs():
    inst = build_scenario("affine-consistent")
    pairs = paramonotone_cross_product(
        inst.problem.A,
        inst.problem.B,
        SetSample([np.zeros(2)], "intersection"),
        SetSample([np.zeros(2)], "trivial dual"),
    )
    assert len(pairs) == 1


def test_cross_product_1d_interval():
    A = normal_cone(Box([0.0], [2.0]))
    B = normal_cone(Box([1.0], [3.0]))
    pairs = paramonotone_cross_product(
        A,
        B,
        SetSample([np.array([1.0]), np.array([1.5]), np.array([2.0])], "overlap"),
        SetSample([np.array([0.0])], "zero dual"),
    )
    assert len(pairs) == 3
    for z, k in pairs:
        assert k[0] == 0.0


def test_cross_product_refuses_rotator():
    inst = build_scenario("rotator-cone")
    with pytest.raises(OperatorFamilyError):
        paramonotone_cross_product(
            inst.problem.A,
            inst.problem.B,
            inst.known["z_sample"],
            inst.known["k_sample"],
        )


def test_fejer_check_constant_sequence():
    seq = [np.array([1.0, 2.0])] * 5
    res = fejer_check(seq, SetSample([np.zeros(2), np.ones(2)]), slack=0.0)
    assert res.passed and res.first_violation is None


def test_fejer_check_governing_of_consistent_scenario():
    inst = build_scenario("affine-consistent")
    tr = iterate(inst.problem, max_iters=2000, step_tol=0.0)
    res = fejer_check(tr.governing, inst.known["fix_sample"], slack=1e-10)
    assert res.passed


def test_fejer_check_rotator_counterexample():
    inst = build_scenario("rotator-cone")
    tr = iterate(inst.problem, max_iters=50, step_tol=1e-14)
    res = fejer_check(tr.shadow, SetSample([inst.known["z"]]), slack=1e-10)
    assert not res.passed
    assert res.first_violation == 0
    assert abs(res.max_sq_increase - 1.25) <= 1e-12


def test_sweet_principle_consistent_affine():
    inst = build_scenario("affine-consistent")
    tr = iterate(inst.problem, max_iters=4000, step_tol=0.0)
    rep = sweet_principle_check(tr.governing, tr.shadow, inst.known["z_sample"], tol=1e-6)
    assert rep.verdict


def test_sweet_principle_parallel_lines_shifted():
    inst = build_scenario("parallel-lines")
    tr = iterate(inst.problem, max_iters=64, step_tol=0.0)
    shifted = shifted_governing(tr, inst.known["v_true"])
    E = SetSample([np.array([tr.problem.x0[0], 1.0])], "shadow target")
    rep = sweet_principle_check(shifted, [r.shadow for r in tr.records], E, tol=1e-9)
    assert rep.verdict


def test_sweet_principle_rejects_oscillation():
    u = [np.array([(-1.0) ** n, 0.0]) for n in range(40)]
    x = [np.zeros(2)] * 40
    rep = sweet_principle_check(x, u, SetSample([np.zeros(2)]), tol=1e-6)
    assert not rep.verdict
    assert rep.cauchy >= 1.0


def test_sweet_principle_rejects_length_mismatch():
    with pytest.raises(ValueError):
        sweet_principle_check(
            [np.zeros(2)] * 3, [np.zeros(2)] * 4, SetSample([np.zeros(2)]), tol=1e-6
        )


def test_summability_same_start_all_zero():
    inst = build_scenario("affine-consistent")
    tr = iterate(inst.problem, max_iters=500, step_tol=0.0)
    rep = summability_report(tr, tr)
    assert rep.step_diff_sum == 0.0
    assert rep.pairing_a_sum == 0.0 and rep.pairing_b_sum == 0.0


def test_summability_two_starts_affine(rng):
    inst = build_scenario("affine-consistent")
    tr1 = iterate(inst.problem, max_iters=3000, step_tol=0.0)
    other = DRProblem(inst.problem.A, inst.problem.B, rng.standard_normal(2))
    tr2 = iterate(other, max_iters=3000, step_tol=0.0)
    rep = summability_report(tr1, tr2)
    assert rep.pairings_nonnegative
    assert rep.final_terms_small
    # sums must be dominated by the initial squared gap (telescoping bound)
    gap0 = float(np.sum((inst.problem.x0 - other.x0) ** 2))
    assert rep.step_diff_sum + 2 * rep.pairing_a_sum + 2 * rep.pairing_b_sum <= gap0 + 1e-9


def test_summability_parallel_lines_translation(rng):
    inst = build_scenario("parallel-lines")
    tr1 = iterate(inst.problem, max_iters=200, step_tol=0.0)
    tr2 = iterate(
        DRProblem(inst.problem.A, inst.problem.B, rng.standard_normal(2)),
        max_iters=200,
        step_tol=0.0,
    )
    rep = summability_report(tr1, tr2)
    # the map is a translation, so the steps coincide up to rounding noise
    assert rep.step_diff_sum <= 1e-28


def test_summability_rejects_mismatched_problems():
    a = iterate(build_scenario("points-1d").problem, max_iters=10, step_tol=0.0)
    b = iterate(build_scenario("random-1d", seed=1).problem, max_iters=10, step_tol=0.0)
    with pytest.raises(ValueError):
        summability_report(a, b)


def test_decoupled_1d_interval_pair(rng):
    A = normal_cone(Box([0.0], [1.0]))
    B = normal_cone(Box([0.5], [2.0]))
    for _ in range(10):
        x0 = rng.uniform(-4, 4, 1)
        tr = iterate(DRProblem(A, B, x0), max_iters=300, step_tol=0.0)
        assert decoupled_1d_fejer_check(tr.problem, [0.75], [0.0], tr)


def test_decoupled_1d_constant_on_fixed_point():
    A = normal_cone(Box([0.0], [1.0]))
    B = normal_cone(Box([0.5], [2.0]))
    tr = iterate(DRProblem(A, B, np.array([0.75])), max_iters=20, step_tol=0.0)
    assert decoupled_1d_fejer_check(tr.problem, [0.75], [0.0], tr)


def test_decoupled_1d_random_family_20_seeds():
    for seed in range(20):
        A, B, z = random_pw1d_pair(np.random.default_rng(seed))
        x0 = np.random.default_rng(seed + 1000).uniform(-3, 3, 1)
        problem = DRProblem(A, B, x0)
        tr = iterate(problem, max_iters=2000, step_tol=0.0)
        assert decoupled_1d_fejer_check(problem, z, [0.0], tr), f"seed {seed}"


def test_1d_shadow_limit_is_graph_consistent():
    # the limit pair (z, k) of (shadow, dual shadow) must satisfy the two
    # resolvent inclusions z = J_A(z + k) and z = J_B(z - k): membership of k
    # in A(z) and of -k in B(z), certified without geometric predicates
    for seed in range(10):
        A, B, _ = random_pw1d_pair(np.random.default_rng(seed))
        x0 = np.random.default_rng(seed + 2000).uniform(-3, 3, 1)
        tr = iterate(DRProblem(A, B, x0), max_iters=4000, step_tol=0.0)
        z, k = tr.shadow[-1], tr.dual_shadow[-1]
        assert abs(A.resolvent(z + k)[0] - z[0]) <= 1e-8, f"seed {seed}"
        assert abs(B.resolvent(z - k)[0] - z[0]) <= 1e-8, f"seed {seed}"


def test_decoupled_check_rejects_higher_dimension():
    inst = build_scenario("rotator-cone")
    tr = iterate(inst.problem, max_iters=5, step_tol=0.0)
    from drsplit import DimensionMismatchError

    with pytest.raises(DimensionMismatchError):
        decoupled_1d_fejer_check(inst.problem, [0.0], [0.0], tr)


def test_solution_sets_validation_catches_corruption():
    inst = build_scenario("affine-consistent")
    sets = inst.known["solution_sets"]
    sets.validate(inst.problem.A)  # the genuine sets pass
    corrupted = SolutionSets(
        fix_t=sets.fix_t,
        primal=sets.primal,
        dual=sets.dual,
        s_pairs=[(p[0] + 0.5, p[1]) for p in sets.s_pairs],
        v=sets.v,
        primal_shifted=sets.primal_shifted,
        dual_shifted=sets.dual_shifted,
    )
    with pytest.raises(ValueError):
        corrupted.validate(inst.problem.A)


@pytest.mark.parametrize("name", ["shifted-subspace", "parallel-lines", "points-1d", "disjoint-balls"])
def test_shifted_pair_admits_fixed_point(name):
    # wherever a displacement vector is declared, the shifted problem is solvable
    from drsplit import normal_problem

    inst = build_scenario(name)
    sa, sb = normal_problem(inst.problem.A, inst.problem.B, inst.known["v_true"])
    y = find_fixed_point(DRProblem(sa, sb, inst.problem.x0), tol=1e-10)
    assert np.all(np.isfinite(y))
