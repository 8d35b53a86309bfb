from __future__ import annotations

import pytest

from weakrel import scalar as sc
from weakrel.bases import make_basis

# per-criterion verdicts collected by test_acceptance.py
ACCEPTANCE: dict[int, list] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        entries = ACCEPTANCE[crit]
        bad = [e for e in entries if not e[1]]
        status = "PASS" if not bad else "FAIL"
        detail = "; ".join(f"{name}: {info}" for name, _, info in bad) or entries[0][2]
        terminalreporter.write_line(f"criterion {crit}: {status} ({detail})")


@pytest.fixture(params=[("constant", sc.INT), ("interval", sc.INT), ("congruence", sc.INT),
                        ("product", sc.INT), ("interval", sc.RAT), ("congruence", sc.RAT)],
                ids=lambda p: f"{p[0]}-{p[1]}")
def basis(request):
    return make_basis(*request.param)
