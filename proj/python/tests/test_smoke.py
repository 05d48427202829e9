import math

import pytest

import shiftcert


def test_wilks_size():
    assert shiftcert.sample_size(0.999, 0.995) == 1378
    assert 0.9989 <= shiftcert.confidence_of(1378, 0.995) <= 0.9991


def test_fig2_forward_and_json_round_trip():
    net = shiftcert.fig2_network()
    assert net.forward([1.0, 0.8]) == pytest.approx(0.52)
    again = shiftcert.Network.from_json(net.to_json())
    assert again.flatten() == net.flatten()


def test_apds_one_weight():
    res = shiftcert.apds(shiftcert.one_weight_network(), [1.0], seed=3)
    assert 0.4998 <= res["delta_max"] <= 0.52
    assert res["n"] == 1378


def test_provable_and_enumeration():
    net = shiftcert.one_weight_network()
    assert shiftcert.provable_delta(net, [1.0]) == pytest.approx(0.5, abs=2e-4)
    r = shiftcert.enumerate(net, [1.0], 0.6, max_depth=16)
    assert abs(r["nonrobust_fraction"] - 1 / 12) <= 2**-16


def test_generate_on_fig2():
    net = shiftcert.fig2_network()
    rows = [[0.9, 0.9], [1.0, 0.8], [0.0, 0.0], [1.0, 0.0]]
    labels = [0, 1, 0, 1]
    res = shiftcert.generate_robust_cfx(net, [0.9, 0.9], rows, labels, delta=0.05)
    assert res["found"] and res["robust"]
    assert net.forward(res["x_prime"]) >= shiftcert.DECISION_THRESHOLD


def test_lof_and_reduction():
    rows = [[i / 10.0, (i * 7 % 10) / 10.0] for i in range(30)]
    assert shiftcert.lof_score([50.0, 50.0], rows, k=5) > 1.5
    r = shiftcert.check_equivalence("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
    assert r == {"satisfiable": False, "realizable": False, "agree": True}


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        shiftcert.fig2_network().forward([1.0])
    with pytest.raises(ValueError):
        shiftcert.check_equivalence("p cnf 1 1\n1 2 0\n")
    assert not math.isnan(shiftcert.realizations(shiftcert.fig5_network(), [-2.57], 0.1, 100))
