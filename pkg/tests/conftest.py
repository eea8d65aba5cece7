import pytest

from mallows_coloring.sampler import (ffiid_detail, lehmer_pipeline_detail,
                                      painting_sample)

PAIRS = ((1, 5), (2, 4), (3, 3))


@pytest.fixture(scope="session")
def pipeline_runs():
    """One window per (method, k, q), long enough for 1e6 strided length-3
    windows; shared by the acceptance criteria and the cross-pipeline
    invariants.  Seeds are pinned, so everything downstream is
    deterministic."""
    runs = {}
    details = {}
    for k, q in PAIRS:
        stride = 3 + k + 1
        length = 1_000_000 * stride + 3
        runs[("painting", k, q)] = painting_sample(q, k, length, seed=1001)
        sample, entries = lehmer_pipeline_detail(q, k, length, seed=2002)
        runs[("lehmer", k, q)] = sample
        details[("lehmer", k, q)] = entries
        sample, extras = ffiid_detail(q, k, length, seed=3003)
        runs[("ffiid", k, q)] = sample
        details[("ffiid", k, q)] = extras
    return runs, details
