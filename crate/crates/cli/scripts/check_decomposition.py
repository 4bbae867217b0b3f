#!/usr/bin/env python3
"""Re-evaluate `trustgame decompose` output over every coalition and compare
with `trustgame value` for the same coalition.

usage: check_decomposition.py BINARY GRAPH [TOL]
"""
import itertools
import json
import subprocess
import sys


def run(binary, *args):
    out = subprocess.run([binary, *args], check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def main():
    binary, graph = sys.argv[1], sys.argv[2]
    tol = float(sys.argv[3]) if len(sys.argv) > 3 else 1e-9
    labels = run(binary, "shapley", graph)["players"]
    if len(labels) > 12:
        sys.exit("graph too large for exhaustive round-trip (n > 12)")
    dividends = {
        frozenset(k.split(",")): v for k, v in run(binary, "decompose", graph)["dividends"].items()
    }
    worst = 0.0
    checked = 0
    for size in range(1, len(labels) + 1):
        for members in itertools.combinations(labels, size):
            s = frozenset(members)
            rebuilt = sum(c for t, c in dividends.items() if t <= s)
            direct = run(binary, "value", graph, "--coalition", ",".join(members))["total"]
            worst = max(worst, abs(rebuilt - direct))
            checked += 1
    print(f"checked {checked} coalitions, max abs diff {worst:.3e}")
    sys.exit(0 if worst <= tol else 1)


if __name__ == "__main__":
    main()
