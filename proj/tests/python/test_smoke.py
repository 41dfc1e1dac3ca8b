import math

import numpy as np
import pytest

import paradiff as pd


TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def part():
    return pd.Partition(dim=1, n=1024, j_max=7)


def test_dft_roundtrip():
    rng = np.random.default_rng(7)
    f = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    back = pd.idft(pd.dft(f))
    assert np.max(np.abs(back - f)) < 1e-12 * np.max(np.abs(f))


def test_dft_of_constant():
    F = pd.dft(np.ones(128, dtype=complex))
    assert abs(F[0] - TWO_PI) < 1e-12
    assert np.max(np.abs(F[1:])) < 1e-12


def test_partition_blocks_sum(part):
    u = pd.random_resolved(part, seed=3)
    blocks = pd.decompose(u, part)
    assert len(blocks) == part.j_max + 1
    recon = sum(blocks)
    assert np.max(np.abs(recon - u)) < 1e-10 * np.max(np.abs(u))


def test_identity_apply(part):
    u = pd.random_resolved(part, seed=5)
    res = pd.apply(pd.identity_symbol(1), u, part)
    err = np.linalg.norm(res["total"] - u) / np.linalg.norm(u)
    assert err < 1e-10


def test_ching_theta_harmonic_sum(part):
    theta_2 = pd.theta_member(part, N=2, d=0.0, r_theta=0)
    res = pd.apply(pd.ching_symbol(0.0, part), theta_2, part)
    coeff = np.mean(res["total"]).real  # theta == 1, so the mean is the coefficient
    assert abs(coeff - 13.0 / 12.0) < 1e-9


def test_pure_mode_f_norm(part):
    j = 5
    x = np.arange(part.n) * (TWO_PI / part.n)
    f = np.exp(1j * (2**j) * x)
    for s in (0.0, 1.0):
        got = pd.space_norm(f, part, "F", s, 2.0, 2.0)
        expect = 2.0 ** (s * j) * math.sqrt(TWO_PI)
        assert abs(got - expect) / expect < 1e-10


def test_oracle_equivalence(part):
    u = pd.random_resolved(part, seed=11)
    a = pd.ching_symbol(1.0, part)
    total = pd.apply(a, u, part)["total"]
    ref = pd.direct_apply(a, u)
    err = np.linalg.norm(total - ref) / (1.0 + np.linalg.norm(ref))
    assert err < 1e-8


def test_support_rule_and_twisted(part):
    u = pd.random_resolved(part, seed=2)
    claim = pd.support_rule_check(pd.ching_symbol(0.0, part), u)
    assert claim["pass"]
    assert claim["observed"] > 0

    cut = pd.cutoff_symbol(part, C=2.0, seed=4)
    assert pd.twisted_diagonal_check(cut, 2.0, 1, 1024, 1e-10)["ok"]
    assert not pd.twisted_diagonal_check(pd.ching_symbol(0.0, part), 2.0, 1, 1024, 1e-10)["ok"]


def test_maximal_dominates():
    rng = np.random.default_rng(3)
    f = rng.standard_normal(128) + 0j
    m = pd.maximal(f, 1.0)
    assert np.all(np.abs(m) >= np.abs(f) * (1 - 1e-12))


def test_threads_do_not_change_results(part):
    u = pd.random_resolved(part, seed=9)
    a = pd.ching_symbol(0.0, part)
    pd.set_threads(1)
    r1 = pd.apply(a, u, part)["total"]
    pd.set_threads(8)
    r8 = pd.apply(a, u, part)["total"]
    pd.set_threads(0)
    assert np.array_equal(r1, r8)
