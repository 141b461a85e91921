"""
Batch processing
================

The command line tool reads JSON lines of the form
``{"id": ..., "type": "presentation" | "pd", "payload": ...}`` and writes
one compact result per line followed by a summary.  Output order follows
input order for any ``--jobs`` value.
"""

# %%
import json
import subprocess
import sys

from infdihedral import fixture_text

records = [
    {"id": "unknot", "type": "pd", "payload": fixture_text("unknot")},
    {"id": "hopf", "type": "pd", "payload": fixture_text("hopf")},
    {"id": "whitehead", "type": "pd", "payload": fixture_text("whitehead")},
    {"id": "free", "type": "presentation", "payload": "<x,y|>"},
    {"id": "broken", "type": "pd", "payload": "X(1,2,3)"},
]
stdin = "".join(json.dumps(r) + "\n" for r in records)

# %%
out = subprocess.run(
    [sys.executable, "-m", "infdihedral", "batch", "--jobs", "4"],
    input=stdin, capture_output=True, text=True, check=True,
).stdout

for line in out.splitlines():
    r = json.loads(line)
    print(r.get("summary") or (r["id"], r.get("verdict") or r["error"]))
