import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rotlat.harness import build_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus4():
    return build_corpus(4)


@pytest.fixture(scope="session")
def corpus5():
    return build_corpus(5)
