import math
from fractions import Fraction

import hypothesis
from hypothesis import strategies as st

from buffershop.model import Instance
from buffershop.solver import condition5_rhs

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def pairs_strategy(min_size=1, max_size=8, a_high=10, b_high=10):
    return st.lists(
        st.tuples(st.integers(0, a_high), st.integers(0, b_high)),
        min_size=min_size, max_size=max_size,
    ).filter(lambda ps: any(a > 0 for a, _ in ps))


def cond5_instance(pairs) -> Instance:
    a_max = max(a for a, _ in pairs)
    b_max = max(b for _, b in pairs)
    return Instance.from_pairs(pairs, math.ceil(condition5_rhs(a_max, b_max)))


@st.composite
def instances(draw, max_size=8, a_high=10, b_high=10):
    """Instances with a random capacity between the largest job and the total."""
    pairs = draw(pairs_strategy(1, max_size, a_high, b_high))
    a_max = max(a for a, _ in pairs)
    total = sum(a for a, _ in pairs)
    omega = draw(st.integers(a_max, max(a_max, total)))
    return Instance.from_pairs(pairs, omega)


def frac(x):
    return Fraction(x)
