import os

# keep test runs from writing log files
os.environ.setdefault("LOG_TO_FILE", "false")

import pytest  # noqa: E402

from tests import nets  # noqa: E402


@pytest.fixture
def wheatstone():
    return nets.WHEATSTONE


@pytest.fixture
def diamond():
    return nets.DIAMOND


@pytest.fixture
def series2():
    return nets.SERIES2


@pytest.fixture
def side_loop():
    return nets.SIDE_LOOP


@pytest.fixture
def detour_loop():
    return nets.DETOUR_LOOP


@pytest.fixture
def net_file(tmp_path):
    """Write NetFile text to a temporary file and return its path."""

    def write(text: str, name: str = "net.txt") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
