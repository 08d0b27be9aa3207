import random
import sys

import pytest

from plastic_circulant.recurrence import PRESETS, RecurrenceSpec


def naive_terms(a, b, c, count, p=0, q=1, r=1):
    """Forward iteration written independently of the library."""
    out = [a, b, c]
    while len(out) < count:
        out.append(p * out[-1] + q * out[-2] + r * out[-3])
    return out[:count]


def random_specs(count, lo, hi, seed):
    rng = random.Random(seed)
    return [RecurrenceSpec(rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))
            for _ in range(count)]


@pytest.fixture(params=PRESETS, ids=lambda s: s.preset.value)
def preset(request):
    return request.param


@pytest.fixture
def cordonnier():
    return RecurrenceSpec.cordonnier()


@pytest.fixture
def perrin():
    return RecurrenceSpec.perrin()


@pytest.fixture
def vdl():
    return RecurrenceSpec.van_der_laan()


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)
