import math

import pytest

import dynbc


def test_mittag_leffler():
    assert dynbc.ml_e(0.5, 1.0, -1.0) == pytest.approx(0.42758357615580700441, abs=1e-13)
    assert dynbc.ml_e(1.0, 1.0, -2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)
    with pytest.raises(ValueError):
        dynbc.ml_e(1.5, 1.0, -1.0)


def test_symbols():
    assert dynbc.phi(0.5, 0.0, 4.0) == pytest.approx(2.0)
    assert dynbc.phi(0.5, 1.0, 3.0) == pytest.approx(1.0)
    assert dynbc.m_phi(0.5, 0.0, 0.0, 2.0, 1.0) == pytest.approx(0.25539567631050574387, abs=1e-13)
    assert dynbc.m_phi(0.5, 1.0, 0.0, 1.0, 1.0) == pytest.approx(0.15729920705028513066, abs=1e-9)


def test_eigenvalues_and_condition():
    assert dynbc.eigenvalues(2, 1.0, -1.0, 1.0, 0.0, 3) == pytest.approx([0.0, 2.0, 6.0, 12.0])
    cond = dynbc.spectral_condition(2, 1.0, 2.0, 1.0)
    assert not cond["ok"]
    assert cond["first_eigenvalue"] == pytest.approx(-1.0)


def test_solve_benchmark():
    u = dynbc.solve("cos:1", 1.0, [0.5, 0.0])
    assert u == pytest.approx(0.5 * math.exp(4.0) * math.erfc(2.0), abs=1e-12)
    assert dynbc.solve("constant:1", 0.7, [0.1, 0.2]) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(RuntimeError):
        dynbc.solve("cos:1", 1.0, [0.5, 0.0], k=3.0)


def test_simulate_matches_spectral():
    est = dynbc.simulate("cos:1", 1.0, [0.5, 0.0], paths=50000, seed=3)
    assert isinstance(est, dynbc.MCEstimate)
    assert est.n == 50000
    assert abs(est.mean - 0.12769783815525287) < 3.0 * est.stderr
    lo, hi = est.ci95
    assert lo < est.mean < hi
    again = dynbc.simulate("cos:1", 1.0, [0.5, 0.0], paths=50000, seed=3, shards=4)
    assert again.mean == est.mean
    one = dynbc.simulate("constant:1", 1.0, [0.5, 0.0], paths=1000)
    assert one.mean == 1.0 and one.stderr == 0.0


def test_samplers():
    s = dynbc.sample_stable(0.5, 20000, seed=2)
    assert min(s) > 0.0
    lap = sum(math.exp(-v) for v in s) / len(s)
    assert lap == pytest.approx(math.exp(-1.0), abs=0.01)
    assert dynbc.sample_inverse_stable(1.0, 0.7, 3) == [0.7, 0.7, 0.7]


def test_caputo_l1():
    t = [j / 64 for j in range(65)]
    d = dynbc.caputo_l1(t, t, 0.5)
    assert d[-1] == pytest.approx(1.0 / math.gamma(1.5), rel=1e-12)
    assert dynbc.relaxation_residual(0.5, 0.0, 1.0, 32) == 0.0


def test_cli_roundtrip():
    code, out, err = dynbc.run_cli(["mlf", "--mlf.z", "-1"])
    assert code == 0
    assert out.splitlines()[0] == "alpha,beta,z,value"
    code, _, _ = dynbc.run_cli(["solve", "--bc.k", "3"])
    assert code == 3
    code, _, _ = dynbc.run_cli(["solve", "--no-such-key", "1"])
    assert code == 2
