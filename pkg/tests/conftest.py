"""Pytest fixtures shared across the suite."""

from __future__ import annotations

import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Deterministic RNG so property tests are reproducible."""
    return random.Random(0xA1D)
