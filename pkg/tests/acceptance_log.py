"""Collects one verdict line per acceptance criterion for the terminal summary."""

from contextlib import contextmanager
import time

import pytest

VERDICTS = pytest.StashKey[list]()


@contextmanager
def criterion(request, label: str, what: str):
    lines = request.config.stash.setdefault(VERDICTS, [])
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        lines.append(f"{label} FAIL  {what}  ({time.perf_counter() - start:.1f}s)  {detail}")
        raise
    lines.append(f"{label} PASS  {what}  ({time.perf_counter() - start:.1f}s)")
