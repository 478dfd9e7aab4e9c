"""Exact G/G/m FCFS queue dynamics from max/min/plus recursions."""

from ._core import (
    NAIVE_CAP,
    CapacityError,
    DomainError,
    ParseError,
    Timeline,
    TimelineInt,
    Trace,
    TraceError,
    TraceInt,
    __version__,
    des_simulate,
    erlang_c,
    generate,
    kth_smallest_naive,
    kth_smallest_reference,
    load_trace,
    metrics,
    mmm_mean_wait,
    simulate,
    simulate_single_server,
    workload_check,
)

__all__ = [
    "NAIVE_CAP",
    "CapacityError",
    "DomainError",
    "ParseError",
    "Timeline",
    "TimelineInt",
    "Trace",
    "TraceError",
    "TraceInt",
    "des_simulate",
    "erlang_c",
    "generate",
    "kth_smallest_naive",
    "kth_smallest_reference",
    "load_trace",
    "metrics",
    "mmm_mean_wait",
    "simulate",
    "simulate_single_server",
    "workload_check",
]
