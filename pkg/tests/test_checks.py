"""The verification harness: dispatch, determinism, witnesses, suites."""

import pytest

from thomform.checks import (
    CHECK_IDS,
    CheckResult,
    check_example11,
    check_splitting,
    example11_machinery,
    example11_paper,
    run_all,
    run_check,
)


class TestDispatch:
    def test_unknown_check_id(self):
        with pytest.raises(ValueError):
            run_check("no_such_check", p=1, q=1)

    def test_oversized_params(self):
        with pytest.raises(ValueError):
            run_check("theorem", p=5, q=5)

    def test_every_id_is_runnable(self):
        for cid in CHECK_IDS:
            if cid == "splitting":
                res = run_check(cid, p1=1, q1=1, p2=1, q2=1)
            elif cid in ("howe_hermite", "delta_limit", "example11"):
                res = run_check(cid)
            else:
                res = run_check(cid, p=1, q=1)
            assert res.passed, res.to_json()

    def test_json_shape(self):
        res = run_check("theorem", p=1, q=2)
        data = res.to_json()
        assert data["status"] == "pass"
        assert data["sign_sigma"] == 1
        assert set(data) == {
            "check_id", "params", "status", "sign_sigma", "witness", "elapsed_ms"
        }


class TestDeterminism:
    def test_repeated_runs_identical(self):
        a = run_check("berezin_combinatorial", p=2, q=3)
        b = run_check("berezin_combinatorial", p=2, q=3)
        assert (a.status, a.witness, a.sign_sigma) == (b.status, b.witness, b.sign_sigma)

    def test_run_all_order_is_stable(self):
        ids1 = [(r.check_id, tuple(sorted(r.params.items()))) for r in run_all(3)]
        ids2 = [(r.check_id, tuple(sorted(r.params.items()))) for r in run_all(3)]
        assert ids1 == ids2


class TestRunAll:
    def test_signature_enumeration(self):
        res = run_all(2, check_ids=["theorem"])
        assert [(r.params["p"], r.params["q"]) for r in res] == [(1, 1)]
        res = run_all(3, check_ids=["theorem"])
        assert [(r.params["p"], r.params["q"]) for r in res] == [
            (1, 1), (1, 2), (2, 1)
        ]

    def test_all_pass_at_4(self):
        res = run_all(4)
        bad = [r.to_json() for r in res if not r.passed]
        assert not bad, bad

    def test_unknown_filter_rejected(self):
        with pytest.raises(ValueError):
            run_all(3, check_ids=["theorem", "bogus"])

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            run_all(9)


class TestWitnesses:
    def test_failing_check_carries_witness(self):
        # delta_limit with an unreachable tolerance must fail with a witness
        res = run_check("delta_limit", t=2.0, tol=1e-12)
        assert res.status == "fail"
        assert res.witness


class TestExample11:
    def test_default_points(self):
        assert check_example11().passed

    def test_value_at_unit(self):
        import math

        lhs = example11_machinery(1.0, 1.0, 0.0)
        assert abs(lhs - math.exp(-math.pi) / math.sqrt(2.0)) < 1e-14
        assert abs(lhs - example11_paper(1.0, 1.0, 0.0)) < 1e-14

    def test_zero_vector(self):
        assert example11_machinery(2.0, 0.0, 0.0) == 0.0
        assert example11_paper(2.0, 0.0, 0.0) == 0.0


class TestSplitting:
    def test_1_1_plus_1_1(self):
        res = check_splitting(1, 1, 1, 1)
        assert res.passed and res.sign_sigma in (1, -1)

    def test_1_1_plus_1_2(self):
        assert check_splitting(1, 1, 1, 2).passed

    def test_block_vanishing(self):
        # with v supported in block 1 only, the block-2 factor (q2 = 1) is
        # x-linear, so the restricted form vanishes at v2 = 0
        from thomform.checks import block_var_maps, _relabel
        from thomform.km import km_form_at_e
        from thomform.liealg import SignatureCtx

        ctx = SignatureCtx(2, 2)
        map1, map2 = block_var_maps(1, 1, 1, 1)
        f2 = _relabel(km_form_at_e(SignatureCtx(1, 1)), ctx, map2)
        point = [0.3, 0.0, -0.7, 0.0]  # block-2 coordinates set to zero
        for pg in f2.terms.values():
            assert pg.eval(point) == 0.0
