"""Collects one outcome line per acceptance criterion for the terminal summary."""

import contextlib
import time

import pytest

RESULTS = {}


@contextlib.contextmanager
def criterion(key, title):
    t0 = time.perf_counter()
    try:
        yield
    except pytest.skip.Exception as exc:
        RESULTS[key] = ("SKIP", title, time.perf_counter() - t0, str(exc))
        raise
    except BaseException as exc:
        RESULTS[key] = ("FAIL", title, time.perf_counter() - t0, type(exc).__name__)
        raise
    RESULTS[key] = ("PASS", title, time.perf_counter() - t0, "")
