import numpy as np

from apzf import CsitQuality, Topology, sample_channel, sample_csit


def _draws(topology, csit, p, n, seed):
    rng = np.random.default_rng(seed)
    h = np.empty((n, 2, 2), dtype=complex)
    hh = np.empty((n, 2, 2, 2), dtype=complex)
    for d in range(n):
        ch = sample_channel(topology, p, rng)
        est = sample_csit(ch, topology, csit, rng)
        h[d] = ch.h
        hh[d] = est.h_hat
    return h, hh


def test_channel_moments_match_pathloss():
    p = 1e6
    topo = Topology(np.array([[1.0, 0.8], [0.6, 0.3]]))
    h, _ = _draws(topo, CsitQuality.uniform(0.0, 0.0), p, 100_000, seed=0)
    emp = np.mean(np.abs(h) ** 2, axis=0)
    expected = p ** (topo.gamma - 1.0)
    assert np.all(np.abs(emp / expected - 1.0) < 0.05)
    # gamma = 0.8 at P = 1e6 pins the variance at 10**-1.2
    np.testing.assert_allclose(emp[0, 1], 10.0**-1.2, rtol=0.05)


def test_estimate_error_moments():
    p = 1e4
    topo = Topology.parallel(0.8)
    csit = CsitQuality.uniform(0.5, 0.2)
    h, hh = _draws(topo, csit, p, 100_000, seed=1)
    err = hh - h[:, np.newaxis, :, :]
    emp = np.mean(np.abs(err) ** 2, axis=0)
    expected = p ** (-csit.alpha) * p ** (topo.gamma - 1.0)
    assert np.all(np.abs(emp / expected - 1.0) < 0.05)


def test_estimate_error_independent_across_txs():
    p = 1e4
    topo = Topology(np.ones((2, 2)))
    csit = CsitQuality.uniform(1.0, 1.0)
    h, hh = _draws(topo, csit, p, 100_000, seed=2)
    err = hh - h[:, np.newaxis, :, :]
    for i in range(2):
        for k in range(2):
            a, b = err[:, 0, i, k], err[:, 1, i, k]
            corr = np.mean(a * np.conj(b)) / (np.std(a) * np.std(b))
            assert abs(corr) < 0.02


def test_estimate_error_independent_of_channel():
    p = 1e4
    topo = Topology(np.ones((2, 2)))
    csit = CsitQuality.uniform(0.5, 0.5)
    h, hh = _draws(topo, csit, p, 100_000, seed=3)
    err = hh[:, 0] - h
    corr = np.mean(h * np.conj(err), axis=0) / (np.std(h, axis=0) * np.std(err, axis=0))
    assert np.all(np.abs(corr) < 0.02)


def test_perfect_quality_error_variance():
    # alpha = gamma = 1 at P = 1e6 puts the error variance at 1e-6.
    p = 1e6
    topo = Topology(np.ones((2, 2)))
    csit = CsitQuality.uniform(1.0, 1.0)
    h, hh = _draws(topo, csit, p, 20_000, seed=4)
    emp = np.mean(np.abs(hh[:, 0] - h) ** 2)
    assert abs(emp / 1e-6 - 1.0) < 0.1


def test_seeded_determinism():
    topo = Topology.parallel(0.5)
    csit = CsitQuality.uniform(0.4, 0.1)
    a = sample_channel(topo, 1e4, np.random.default_rng(42))
    b = sample_channel(topo, 1e4, np.random.default_rng(42))
    assert np.array_equal(a.h, b.h)
    ea = sample_csit(a, topo, csit, np.random.default_rng(43))
    eb = sample_csit(b, topo, csit, np.random.default_rng(43))
    assert np.array_equal(ea.h_hat, eb.h_hat)
    assert a.p == ea.p == 1e4


def test_channel_full_rank():
    rng = np.random.default_rng(5)
    topo = Topology.parallel(0.8)
    for _ in range(100):
        ch = sample_channel(topo, 1e4, rng)
        assert np.linalg.matrix_rank(ch.h) == 2
