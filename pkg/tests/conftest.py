import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fdlg.corpus import (reading_forall_exists, reading_exists_forall,
                         cut_elim_example, cut_elim_parametric_result,
                         golden_sequents, LEXICON, SENTENCE, GOAL)
from fdlg.algebra import builtin


@pytest.fixture(scope="session")
def fig_forall_exists():
    return reading_forall_exists()


@pytest.fixture(scope="session")
def fig_exists_forall():
    return reading_exists_forall()


@pytest.fixture(scope="session")
def chain2():
    return builtin("chain2")


@pytest.fixture(scope="session")
def diamond():
    return builtin("diamond")


@pytest.fixture(scope="session")
def corpus_sequents():
    return golden_sequents()
