import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from esgames import NEG, POS, EventStructure

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: list[tuple[int, str, bool, float, str]] = []


@pytest.fixture
def record_acceptance():
    def record(number, title, ok, seconds, detail=""):
        ACCEPTANCE.append((number, title, ok, seconds, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, detail in sorted(ACCEPTANCE):
        line = f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f}s)"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))


def random_es(rng: random.Random, max_events: int = 6) -> EventStructure:
    """Random small structure: edges only go forwards in index order, and
    conflict is made hereditary before building."""
    n = rng.randint(0, max_events)
    events = [(f"e{i}", rng.choice((POS, NEG))) for i in range(n)]
    covers = [(f"e{i}", f"e{j}") for i in range(n) for j in range(i + 1, n) if rng.random() < 0.25]
    base = EventStructure.build(events, covers)
    seeds = [(f"e{i}", f"e{j}") for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.2 and (f"e{i}", f"e{j}") not in base.order]
    up = {e: {e} | {b for a, b in base.order if a == e} for e, _ in events}
    conflict = {(c, d) for a, b in seeds for c in up[a] for d in up[b]}
    if any(c == d or (c, d) in base.order or (d, c) in base.order for c, d in conflict):
        return EventStructure.build(events, covers)
    return EventStructure.build(events, covers, conflict)


@st.composite
def event_structures(draw, max_events: int = 6):
    return random_es(random.Random(draw(st.integers(0, 2**32))), max_events)
