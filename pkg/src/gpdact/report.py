"""Structured check reports: text, JSON, delimited output, and figures.

JSON reports are byte-identical for identical inputs and seed: checks are
sorted by name and timings are shown only in the text rendering.
"""

import csv
import json
import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""
    timing_ms: float = 0.0


@dataclass
class Report:
    command: str
    inputs: dict
    seed: object = None
    checks: list = field(default_factory=list)
    figures: list = field(default_factory=list)   # (stub, kind, payload)

    def add(self, name, passed, witness=None, timing_ms=0.0):
        text = "" if witness is None else str(witness)
        self.checks.append(Check(name, bool(passed), text, timing_ms))

    def extend(self, triples, prefix=""):
        for name, ok, witness in triples:
            self.add(prefix + name, ok, witness)

    @property
    def status(self):
        return all(c.passed for c in self.checks)

    def exit_code(self):
        return 0 if self.status else 1

    def to_json(self):
        payload = {
            "schema": 1,
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "status": "pass" if self.status else "fail",
            "checks": [
                {"name": c.name, "pass": c.passed, "witness": c.witness}
                for c in sorted(self.checks, key=lambda c: c.name)
            ],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def to_text(self):
        lines = ["# %s" % self.command]
        for key in sorted(self.inputs):
            lines.append("input %s = %s" % (key, self.inputs[key]))
        if self.seed is not None:
            lines.append("seed = %s" % self.seed)
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            extra = ""
            if c.witness and not c.passed:
                extra = "  witness: %s" % c.witness
            if c.timing_ms:
                extra += "  (%.1f ms)" % c.timing_ms
            lines.append("%s  %s%s" % (mark, c.name, extra))
        lines.append("overall: %s" % ("pass" if self.status else "fail"))
        return "\n".join(lines)

    def write_outputs(self, directory):
        """Delimited check table plus one figure file per attached figure."""
        os.makedirs(directory, exist_ok=True)
        table = os.path.join(directory, "%s-checks.csv" % self.command)
        with open(table, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check", "pass", "witness"])
            for c in sorted(self.checks, key=lambda c: c.name):
                writer.writerow([c.name, "pass" if c.passed else "fail", c.witness])
        written = [table]
        for stub, kind, payload in self.figures:
            out = os.path.join(directory, "%s-%s.png" % (self.command, stub))
            _render_figure(kind, payload, out)
            written.append(out)
        return written


def _render_figure(kind, payload, out_path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.5))
    if kind == "bars":
        labels = [str(x) for x in payload["labels"]]
        ax.bar(range(len(labels)), payload["values"], color="#336699")
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel(payload.get("ylabel", ""))
    elif kind == "heatmap":
        im = ax.imshow(payload["matrix"], cmap="viridis")
        fig.colorbar(im, ax=ax, shrink=0.85)
        ax.set_xlabel(payload.get("xlabel", ""))
        ax.set_ylabel(payload.get("ylabel", ""))
    else:
        raise ValueError("unknown figure kind %r" % kind)
    ax.set_title(payload.get("title", ""), fontsize=10)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
