"""Driving the command-line tool from Python on the bundled example dataset.

The same calls work from a shell, e.g.
    compindex evaluate --data synthetic-us-8x11 --config us-11
"""
# %%
import json
import tempfile
from pathlib import Path

from compindex.cli import run

out_dir = Path(tempfile.mkdtemp())
report_path = out_dir / "report.json"

# %% Full evaluation with the bundled config (varimax, four-band grades).
code = run(["evaluate", "--data", "synthetic-us-8x11", "--config", "us-11", "--out", str(report_path)])
print("exit code", code)
report = json.loads(report_path.read_text())

for w in report["weights"]:
    print(f'{w["indicator"]:15s} {w["percentage"]:>6s}%')
for s in report["scores"]:
    print(s["rank"], s["object"], s["scaled_score"], s["grade"])

# %% The constant indicator gets zero weight and is left out of the component analysis.
print(report["components"]["excluded_indicators"])

# %% Weights as CSV, then a scree table for the same file.
run(["weights", "--data", "synthetic-us-8x11", "--config", "us-11", "--format", "csv", "--out", str(out_dir / "w.csv")])
print((out_dir / "w.csv").read_text())
run(["pca", "--data", "synthetic-us-8x11", "--config", "us-11", "--format", "csv", "--out", str(out_dir / "scree.csv")])
print((out_dir / "scree.csv").read_text())
