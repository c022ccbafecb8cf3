"""Scan the bundled fixture corpus and look at what came back.

Run from the repository root:

    python3 demos/scan_corpus.py
"""

# %%
from collections import Counter
from pathlib import Path

from smellscan import scan, serialize_report

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus"
report = scan(CORPUS)
print(report.totals)

# %% [markdown]
# The corpus has one file written for Python 2. It fails to parse and is
# reported as skipped rather than aborting the run. Two suites are left out
# because the only test method names they have are inherited helpers.

# %%
for path, reason in report.skipped:
    print("skipped", path, "-", reason)
for path, suite, reason in report.excluded:
    print("excluded", f"{path}::{suite}", "-", reason)

# %% [markdown]
# Every finding carries a kind, the case it belongs to (empty for suite-level
# smells) and a short evidence string.

# %%
per_kind = Counter(f.kind.value for s in report.suites for f in s.findings)
for kind, n in per_kind.most_common():
    print(f"{kind:22} {n}")

# %%
twelve = next(s for s in report.suites if s.path.endswith("test_twelve_smells.py"))
for finding in twelve.findings:
    print(f"{finding.span.start_line:4}  {finding.kind.value:22} {finding.evidence}")

# %% [markdown]
# The same report serialized for the terminal.

# %%
print(serialize_report(report, "text").decode()[:1500])
