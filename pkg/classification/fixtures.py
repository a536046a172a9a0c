from functools import cache
from pathlib import Path

from .constants import EXAMPLE_ASSETS
from .documents import load_classification

FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


def fixture_path(name):
    return FIXTURES_DIR / f"{name}.json"


@cache
def example_assets():
    """The six reference classifications, each cell annotated with its source."""
    return tuple(load_classification(fixture_path(name)) for name in EXAMPLE_ASSETS)


def fixture(name):
    return example_assets()[EXAMPLE_ASSETS.index(name)]
