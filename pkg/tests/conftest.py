"""
Pytest configuration and fixtures for the Hindman Lab test suite.
"""
import os
import sys

import pytest

# Add the project root to sys.path for imports
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, PROJECT_ROOT)

from hindlab.core.colorings.builtin import ConstantColoring, NumeratorMod, Val2Parity
from hindlab.core.patterns.schemas import SearchBudget


# ============================================================================
# API TEST CLIENT
# ============================================================================

@pytest.fixture
def client():
    """Provide a TestClient for API tests."""
    try:
        from fastapi.testclient import TestClient
        from hindlab.app.main import app
        with TestClient(app) as test_client:
            yield test_client
    except ImportError:
        pytest.skip("fastapi testclient not available")


# ============================================================================
# COLORINGS AND BUDGETS
# ============================================================================

@pytest.fixture
def val2():
    """The 2-adic parity coloring: color 1 on even valuations."""
    return Val2Parity()


@pytest.fixture
def parity():
    """Parity of the numerator; on naturals, the usual odd/even coloring."""
    return NumeratorMod(2)


@pytest.fixture
def constant():
    return ConstantColoring(2, 1)


@pytest.fixture
def small_budget():
    """Budget small enough that a runaway search fails fast."""
    return SearchBudget(height_bound=16, max_candidates=50000, max_seconds=30)
