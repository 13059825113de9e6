"""
Test helpers.
"""

import os
from unittest import skipUnless

from django.test import tag


def slow(test):
    """Tag a long rigorous run; it only executes with PROOF_SLOW_TESTS=1."""
    enabled = os.environ.get("PROOF_SLOW_TESTS") == "1"
    return tag("slow")(skipUnless(enabled, "set PROOF_SLOW_TESTS=1 to run")(test))
