import hypothesis.strategies as st
from hypothesis import settings

from delpezzo4.marking import all_cb_markings, all_dp4_markings
from delpezzo4.weyl import enumerate_group

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

elements = st.sampled_from(enumerate_group(5))
dp4_markings = st.sampled_from(all_dp4_markings())
cb_markings = st.sampled_from(all_cb_markings())


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    lines = module.summary_lines() if module else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
