import json

import pytest

import ggmq


def test_simulate_m2_example():
    tl = ggmq.simulate(ggmq.TraceInt([0, 0, 0], [5, 1, 1]), 2)
    assert tl.A == [0, 0, 0]
    assert tl.C == [5, 1, 2]
    assert tl.D == [1, 2, 5]
    assert tl.W == [0, 0, 1]
    assert tl == ggmq.des_simulate(ggmq.TraceInt([0, 0, 0], [5, 1, 1]), 2)


def test_float_trace_and_evaluators():
    trace = ggmq.generate(300, "exp:3", "exp:1", seed=5)
    assert len(trace) == 300
    runs = [ggmq.simulate(trace, 4, evaluator=e) for e in ("incremental", "windowed")]
    assert runs[0] == runs[1]
    des = ggmq.des_simulate(trace, 4)
    assert max(abs(a - b) for a, b in zip(runs[0].D, des.D)) <= 1e-9
    wl = ggmq.workload_check(trace, 4)
    assert max(abs(a - b) for a, b in zip(runs[0].W, wl)) <= 1e-9


def test_single_server():
    trace = ggmq.TraceInt([1, 1], [3, 3])
    tl = ggmq.simulate(trace, 1)
    assert tl.C == tl.D == [4, 7]
    assert ggmq.simulate_single_server(trace) == tl


def test_order_statistics():
    assert ggmq.kth_smallest_naive([3, 1, 2], 2) == 2
    assert ggmq.kth_smallest_naive([5, 5, 1], 2) == 5
    assert ggmq.kth_smallest_naive([5, 5, 1], 0) is None  # the -inf sentinel
    assert ggmq.kth_smallest_reference([2.5, 0.5], 2) == 2.5
    with pytest.raises(ggmq.CapacityError):
        ggmq.kth_smallest_naive(list(range(ggmq.NAIVE_CAP + 1)), 1)


def test_errors():
    with pytest.raises(ggmq.TraceError):
        ggmq.TraceInt([1], [0])
    with pytest.raises(ggmq.CapacityError):
        ggmq.simulate(ggmq.TraceInt([1] * 25, [1] * 25), 2, evaluator="naive")
    with pytest.raises(ggmq.DomainError):
        ggmq.simulate(ggmq.TraceInt([1], [1]), 1, evaluator="quick")
    with pytest.raises(ValueError):
        ggmq.generate(5, "det:1", "exp:0")


def test_metrics_and_erlang():
    m = json.loads(ggmq.metrics(ggmq.simulate(ggmq.TraceInt([0, 0, 0], [5, 1, 1]), 2)))
    assert m["mean_wait"] == pytest.approx(1 / 3)
    assert ggmq.mmm_mean_wait(5, 4.0, 1.0) == pytest.approx(0.5541125541125542)
    assert 0 < ggmq.erlang_c(5, 4.0, 1.0) < 1


def test_load_trace(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("k,alpha,tau\n1,0.0,5.0\n2,0.0,1.0\n")
    t = ggmq.load_trace(str(p))
    assert t.alpha == [0.0, 0.0] and t.tau == [5.0, 1.0]
