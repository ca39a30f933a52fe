#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line each."""

import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent.parent / "tests"

if __name__ == "__main__":
    code = pytest.main([str(TESTS / "test_acceptance.py"), "-q", "-p", "no:cacheprovider", *sys.argv[1:]])
    sys.exit(int(code))
