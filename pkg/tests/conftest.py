"""
============================================================================
Numeral-MG: Minimalist Grammar Workbench for Numerals
Utterance-meaning learning with merge, move and lambda semantics
============================================================================

MISSION - NEVER TO BE VIOLATED:
    Derive   → Build every numeral through merge and move, nothing else
    Mean     → Keep arithmetic semantics exact through lambda application
    Learn    → Acquire the lexicon from a counting teacher's feedback
    Account  → Record every lexicon change so any run can be replayed

============================================================================
Test Configuration - Pytest fixtures and shared test utilities
----------------------------------------------------------------------------
FILE VERSION: v1.0-6-6.1-1
LAST MODIFIED: 2026-10-18
PHASE: Phase 6 - Test Suite
CLEAN ARCHITECTURE: Compliant
============================================================================

USAGE:
    # Run all tests
    pytest

    # Skip full-range training
    pytest -m "not slow"

    # Run with coverage
    pytest --cov=src

FIXTURES PROVIDED:
    - config_manager / logging_manager: testing-environment managers
    - run_config: RunConfig with default bounds
    - simplex_lexicon: the twelve rote-learned simplex numerals (one..twelve)
    - teen_segmented_lexicon: state right after segmenting thirteen/fourteen
    - licensed_lexicon: teen restricted by +k, bound allomorphs with -k
    - operator_lexicon: void addition operator plus plain teen head
    - transducer / teacher / learner: services built from run_config
"""

import os
import sys
from pathlib import Path
from typing import Iterable, Sequence, Tuple

import pytest

# Ensure project root is in path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

# Set test environment BEFORE imports
os.environ["NUMG_ENVIRONMENT"] = "testing"

from src.models.grammar import Sign  # noqa: E402
from src.repositories.lexicon_repository import parse_entry, parse_lexicon  # noqa: E402
from src.services.term_algebra import alpha_key  # noqa: E402


# =============================================================================
# Lexicon Texts
# =============================================================================

SIMPLEX_TEXT = """\
one :: num ; 1
two :: num ; 2
three :: num ; 3
four :: num ; 4
five :: num ; 5
six :: num ; 6
seven :: num ; 7
eight :: num ; 8
nine :: num ; 9
ten :: num ; 10^1
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
"""

# thirteen removed, teen segmented out with its meaning context, thir added
TEEN_SEGMENTED_TEXT = (
    SIMPLEX_TEXT
    + """\
teen : =num num ; (lam x (add (mul 10^1 1) x))
thir :: num ; 3
"""
)

LICENSED_TEXT = """\
one :: num ; 1
two :: num ; 2
three :: num ; 3
thir :: num -k ; 3
four :: num -k ; 4
five :: num ; 5
fif :: num -k ; 5
six :: num -k ; 6
seven :: num -k ; 7
eight :: num -k ; 8
nine :: num -k ; 9
ten :: num ; 10^1
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
teen : =num +k num ; (lam x (add (mul 10^1 1) x))
"""

OPERATOR_TEXT = """\
one :: num ; 1
two :: num ; 2
three :: num ; 3
thir :: num -k ; 3
four :: num -k ; 4
five :: num ; 5
fif :: num -k ; 5
six :: num -k ; 6
seven :: num -k ; 7
eight :: num -k ; 8
nine :: num -k ; 9
ten :: num ; 10^1
teen :: num ; (mul 10^1 1)
eleven :: num ; (add (mul 10^1 1) 1)
twelve :: num ; (add (mul 10^1 1) 2)
@eps :: =num =num +k num ; (lam y (lam x (add y x)))
"""


# =============================================================================
# Configuration Fixtures
# =============================================================================


@pytest.fixture(scope="session")
def test_config_dir() -> Path:
    """Return path to the configuration directory."""
    return PROJECT_ROOT / "src" / "config"


@pytest.fixture(scope="function")
def config_manager(test_config_dir):
    """ConfigManager for the testing environment (no .env loading)."""
    from src.managers.config_manager import create_config_manager

    return create_config_manager(config_dir=test_config_dir, environment="testing", load_env_file=False)


@pytest.fixture(scope="function")
def logging_manager(config_manager):
    """LoggingConfigManager writing DEBUG to stderr."""
    from src.managers.logging_config_manager import create_logging_config_manager

    return create_logging_config_manager(
        config_manager=config_manager,
        log_level="DEBUG",
        log_format="human",
        console_output=True,
    )


@pytest.fixture(scope="function")
def run_config():
    """RunConfig with the default bounds, independent of the environment."""
    from src.models.learning import RunConfig

    return RunConfig()


# =============================================================================
# Lexicon Fixtures
# =============================================================================


@pytest.fixture(scope="session")
def simplex_lexicon() -> Tuple[Sign, ...]:
    return parse_lexicon(SIMPLEX_TEXT)


@pytest.fixture(scope="session")
def teen_segmented_lexicon() -> Tuple[Sign, ...]:
    return parse_lexicon(TEEN_SEGMENTED_TEXT)


@pytest.fixture(scope="session")
def licensed_lexicon() -> Tuple[Sign, ...]:
    return parse_lexicon(LICENSED_TEXT)


@pytest.fixture(scope="session")
def operator_lexicon() -> Tuple[Sign, ...]:
    return parse_lexicon(OPERATOR_TEXT)


# =============================================================================
# Service Fixtures
# =============================================================================


@pytest.fixture(scope="function")
def transducer(run_config):
    from src.services.transducer import create_transducer

    return create_transducer(max_leaves=run_config.max_leaves, chart_cap=run_config.chart_cap)


@pytest.fixture(scope="function")
def teacher():
    from src.services.teacher_service import create_numeral_teacher

    return create_numeral_teacher()


@pytest.fixture(scope="function")
def learner(run_config):
    from src.services.learner_service import create_numeral_learner

    return create_numeral_learner(run_config=run_config)


# =============================================================================
# Cleanup Fixtures
# =============================================================================


@pytest.fixture(autouse=True)
def reset_environment():
    """
    Reset environment variables after each test.

    Ensures test isolation.
    """
    original_env = os.environ.copy()

    yield

    os.environ.clear()
    os.environ.update(original_env)


# =============================================================================
# Test Utilities
# =============================================================================


def entry(line: str) -> Sign:
    """Parse a single lexicon line."""
    return parse_entry(line)


def entry_key(sign: Sign) -> tuple:
    """Exponent, type text and alpha key: equality up to bound variable names."""
    return sign.exponent, str(sign.syntype), alpha_key(sign.semantics)


def entry_keys(signs: Iterable[Sign]) -> set:
    return {entry_key(sign) for sign in signs}


def assert_contains_entries(lexicon: Sequence[Sign], lines: Iterable[str]) -> None:
    """Assert every line (lexicon file format) is an entry of the lexicon."""
    present = entry_keys(lexicon)
    missing = [line for line in lines if entry_key(entry(line)) not in present]
    assert not missing, f"missing entries: {missing}"


def assert_same_entries(lexicon: Sequence[Sign], lines: Iterable[str]) -> None:
    """Assert the lexicon holds exactly these entries (order ignored)."""
    expected = entry_keys(entry(line) for line in lines)
    actual = entry_keys(lexicon)
    assert actual == expected, (
        f"unexpected: {sorted(map(str, actual - expected))}; missing: {sorted(map(str, expected - actual))}"
    )
