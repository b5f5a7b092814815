from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--allow-large", action="store_true", default=False,
                     help="run T5 NorSub, T4 congruences and the n=5 quotients")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--allow-large"):
        return
    skip = pytest.mark.skip(reason="needs --allow-large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def t2():
    from normcong.builders import full_transformation_monoid
    return full_transformation_monoid(2)


@pytest.fixture(scope="session")
def t3():
    from normcong.builders import full_transformation_monoid
    return full_transformation_monoid(3)


@pytest.fixture(scope="session")
def t4():
    from normcong.builders import full_transformation_monoid
    return full_transformation_monoid(4)


@pytest.fixture(scope="session")
def oracle_corpus():
    """Every monoid of size <= 4 plus 200 seeded random ones of size <= 6."""
    from normcong.builders import monoid_catalog, random_monoid
    rng = random.Random(20240601)
    corpus = [(f"catalog[{i}]", M) for i, M in enumerate(monoid_catalog(4))]
    corpus += [(f"random[{i}]", random_monoid(rng, 6)) for i in range(200)]
    return corpus
