"""One test per acceptance criterion; each prints its own result line.

Tolerances and runtime limits live next to the criterion definitions in
tauberian_lab.acceptance, pinned once and reused verbatim by the CLI
suite command.
"""
from __future__ import annotations

import pytest

from tauberian_lab.acceptance import CRITERIA, format_result_line, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.slug for c in CRITERIA])
def test_criterion(criterion):
    result = run_criterion(criterion)
    print(format_result_line(result))
    assert result.passed, f"criterion {result.number}: {result.detail}"
