import os
from pathlib import Path

import pytest

from deepcommuting.fpgroup import CoverCache
from deepcommuting.verify import Budget, Context

# criterion number -> (status, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def cover_cache(tmp_path_factory) -> CoverCache:
    """Cover tables for the session.

    Starts empty so enumeration cost is part of what the timing checks see,
    unless DEEPCOMMUTING_CACHE_DIR points at a warm cache.
    """
    root = os.environ.get("DEEPCOMMUTING_CACHE_DIR")
    return CoverCache(Path(root) if root else tmp_path_factory.mktemp("covers"))


@pytest.fixture(scope="session")
def ctx(cover_cache) -> Context:
    return Context(Budget(), cover_cache)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
