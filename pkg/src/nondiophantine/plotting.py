"""Companion plotting scripts for emitted CSV files.

The scripts are plain text; this package never runs them.
"""

from __future__ import annotations

from pathlib import Path

_HEAD = '''"""Plot {csv} (generated by nondio {kind})."""
import numpy as np
import matplotlib.pyplot as plt

with open({csv!r}) as fh:
    skip = sum(1 for line in fh if line.startswith("#"))
data = np.genfromtxt({csv!r}, delimiter=",", names=True, skip_header=skip)
'''

_BODIES = {
    "lightcone": '''fig = plt.figure()
ax = fig.add_subplot(projection="3d")
ax.scatter(data["X1"], data["X2"], data["X0_future"], s=2, label="future")
ax.scatter(data["X1"], data["X2"], data["X0_past"], s=2, label="past")
ax.set_xlabel("X1")
ax.set_ylabel("X2")
ax.set_zlabel("X0")
ax.legend()
''',
    "beta": '''x = data[data.dtype.names[0]]
plt.plot(x, data["beta"])
plt.xlabel(data.dtype.names[0])
plt.ylabel("beta")
''',
    "friedman": '''plt.plot(data["T"], data["A"], label="A(T)")
plt.plot(data["T"], data["a_classical"], "--", label="(t/t0)^(2/3)")
plt.xlabel("T")
plt.legend()
''',
}


def plot_script(kind: str, csv_path: str | Path) -> str:
    name = Path(csv_path).name
    return _HEAD.format(csv=name, kind=kind) + _BODIES[kind] + f'plt.savefig({str(Path(name).with_suffix(".png"))!r}, dpi=150)\n'


def write_plot_script(kind: str, csv_path: str | Path) -> Path:
    target = Path(csv_path).with_suffix(".plot.py")
    target.write_text(plot_script(kind, csv_path), encoding="utf-8")
    return target
