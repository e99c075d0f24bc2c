import json
import math

import pytest

import heuristics_lab as hl

RLS_ONEMAX = {"alg.kind": "rls", "bench.kind": "onemax", "bench.n": 3, "run.seed": 7}


def test_config_keys_cover_all_sections():
    keys = hl.config_keys()
    assert {"alg.kind", "bench.kind", "noise.kind", "run.seed", "output.format"} <= set(keys)
    resolved = hl.resolve_config(RLS_ONEMAX)
    assert set(resolved) == set(keys) - {"bench.weights", "bench.monomials"}
    assert resolved["bench.n"] == "3"


def test_unknown_key_raises():
    with pytest.raises(hl.HlabError):
        hl.run({"alg.knid": "rls"})


def test_run_is_deterministic_and_matches_exact_mean():
    settings = dict(RLS_ONEMAX, **{"run.replicates": 20000, "run.init": "000"})
    a = hl.run(settings, threads=1)
    b = hl.run(settings, threads=2)
    assert a["csv"] == b["csv"]
    assert a["csv"].splitlines()[0] == "replicate_index,hitting_time,censored,evaluations,seed"
    times = [r["hitting_time"] for r in a["records"]]
    mean, half, se = hl.mean_ci(times, 0.95)
    assert abs(mean - 5.5) <= 4 * se
    assert json.loads(a["json"])["summary"]["censoring_rate"] == 0.0


def test_oracle_and_exact_hitting_time():
    report = hl.oracle(RLS_ONEMAX, start="000")
    assert report["expected_hitting_time"] == pytest.approx(5.5)
    assert hl.expected_hitting_time(RLS_ONEMAX, "110") == pytest.approx(3)
    assert hl.expected_hitting_time(RLS_ONEMAX, "000") == pytest.approx(3 * (1 + 1 / 2 + 1 / 3))
    jump = {"alg.kind": "rls", "bench.kind": "jump", "bench.n": 5, "bench.k": 2}
    assert hl.expected_hitting_time(jump, "11100") is None


def test_benchmark_values():
    assert hl.eval_benchmark({"bench.kind": "jump", "bench.n": 6, "bench.k": 2}, "111101") == 1
    assert hl.eval_benchmark({"bench.kind": "leadingones", "bench.n": 4}, "1101") == 2


def test_statistics():
    assert hl.geom_tail(0.5, 3) == pytest.approx(0.25)
    verdict = hl.check_dominated([1.0] * 200, 1.0, 0.5, 0.99)
    assert verdict["passed"] and verdict["outcome"] == "pass"
    with pytest.raises(hl.HlabError):
        hl.mean_ci([1.0])


def test_drift_and_dist_reports():
    drift = hl.drift({"alg.kind": "rls", "bench.kind": "onemax", "bench.n": 10, "run.seed": 3}, [5], samples=2000)
    assert drift["per_level"][0]["level"] == 5
    assert "d0" in drift
    dist = hl.dist(dict(RLS_ONEMAX, **{"run.replicates": 200}))
    assert dist["dominance"]["outcome"] == "pass"


def test_acceptance_subset():
    results, log = hl.run_acceptance([2])
    assert [r["id"] for r in results] == [2]
    assert results[0]["passed"], log
    assert math.isfinite(results[0]["seconds"])
