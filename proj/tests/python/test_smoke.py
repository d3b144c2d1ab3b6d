import math
from fractions import Fraction

import pytest

import timnoma

CELL = [0.5, 1.5, 2.5, 3.5, 4.5]


def test_power_split_sums_to_budget():
    p = timnoma.allocate_power(timnoma.Topology(CELL), 40.0)
    assert math.isclose(sum(p), 40.0, rel_tol=1e-12)
    assert p[0] == pytest.approx(0.242424242424, abs=1e-11)
    assert p == sorted(p)


def test_round_robin_groups():
    g = timnoma.assign_groups(timnoma.Topology(CELL))
    assert list(g.group_of) == [0, 1, 0, 1, 0]
    assert [list(m) for m in g.members] == [[0, 2, 4], [1, 3]]


def test_basis_and_transmit():
    b = timnoma.make_basis(2).matrix
    assert b[:, 0] == pytest.approx([0.5, math.sqrt(3) / 2])
    assert b[:, 1] == pytest.approx([-math.sqrt(3) / 2, 0.5])
    topo = timnoma.Topology(CELL)
    x = timnoma.assemble_transmit(
        [timnoma.qpsk_modulate(0, 0)] * 5,
        timnoma.allocate_power(topo, 40.0),
        timnoma.assign_groups(topo),
        timnoma.make_basis(2),
    )
    assert x.shape == (2,)


def test_qpsk_round_trip():
    for b0 in (0, 1):
        for b1 in (0, 1):
            assert timnoma.qpsk_demodulate(timnoma.qpsk_modulate(b0, b1)) == (b0, b1)


def test_unit_fading_rates():
    topo = timnoma.Topology(CELL)
    r = timnoma.hybrid_rates(topo, 40.0, 1.0)
    assert r == pytest.approx(
        [0.777759361414, 0.359685767076, 0.233354136181, 0.168792860996, 0.132446765563], abs=1e-10
    )
    s = timnoma.single_user_rates(topo, 40.0, 1.0)
    assert all(a >= b for a, b in zip(s, r))
    t = timnoma.tdma_sum_rate(topo, 40.0, 1.0)
    assert timnoma.rate_ratio(sum(r), t) == pytest.approx(1.0915491805, abs=1e-9)


def test_dof():
    assert timnoma.dof_total(5, 2) == Fraction(5, 2)


def test_validation_errors_surface_as_value_error():
    with pytest.raises(timnoma.ValidationError):
        timnoma.Topology([1.5, 0.5])
    with pytest.raises(ValueError):
        timnoma.parse_config("[simulation]\nframes = 0\n")
    with pytest.raises(timnoma.ConfigParseError):
        timnoma.parse_config("[simulation]\nframes = x\n")
    with pytest.raises(OSError):
        timnoma.load_config("/nonexistent/none.cfg")


def test_small_experiment_is_deterministic():
    cfg = timnoma.SimConfig()
    cfg.frames = 3
    cfg.bits_per_frame = 128
    cfg.snr_grid_db = timnoma.parse_snr_grid("0:10:20")
    a = timnoma.run_experiment(cfg, 1)
    b = timnoma.run_experiment(cfg, 2)
    assert a.to_csv() == b.to_csv()
    assert a.to_csv().splitlines()[0] == "snr_db,entity,metric,value,samples,stderr"
    assert len(a.rows) == 3 * 6
    assert {r.metric for r in a.rows} == {"ber"}


def test_ratio_experiment_rows():
    cfg = timnoma.SimConfig()
    cfg.experiment = timnoma.Experiment.RATIO
    cfg.realizations = 100
    cfg.snr_grid_db = [20.0]
    rows = {r.metric: r.value for r in timnoma.run_experiment(cfg).rows}
    assert rows["ratio"] == pytest.approx(rows["hybrid_sum_rate"] / rows["tdma_sum_rate"])
