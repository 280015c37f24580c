#!/usr/bin/env python3
"""Write the Queen and Mycielski benchmark graphs from the DIMACS COLOR set.

Both families are deterministic constructions, so the instances can be
regenerated exactly instead of downloaded:

  queenN-M   N x M board, one node per square, edges between squares a queen
             can move between (same row, column or diagonal). Nodes are
             numbered row-major starting at 1.
  mycielK    Mycielski transform applied repeatedly to K2. For a graph on n
             nodes, the transform keeps nodes 1..n, adds shadow nodes
             n+1..2n (shadow of u is adjacent to the neighbours of u) and an
             apex node 2n+1 adjacent to every shadow.

Usage: make_instances.py OUTDIR
"""

import itertools
import sys
from pathlib import Path


def queen_edges(rows, cols):
    squares = [(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for a, b in itertools.combinations(range(len(squares)), 2):
        (r1, c1), (r2, c2) = squares[a], squares[b]
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
            edges.append((a + 1, b + 1))
    return len(squares), edges


def mycielski(n, edges):
    out = list(edges)
    for u, v in edges:
        out.append((u, n + v))
        out.append((v, n + u))
    apex = 2 * n + 1
    out.extend((n + u, apex) for u in range(1, n + 1))
    return 2 * n + 1, out


def myciel_edges(k):
    n, edges = 2, [(1, 2)]
    for _ in range(k - 1):
        n, edges = mycielski(n, edges)
    return n, edges


def write_col(path, name, n, edges):
    with open(path, "w") as fh:
        fh.write(f"c {name}\n")
        fh.write(f"p edge {n} {len(edges)}\n")
        for u, v in sorted((min(e), max(e)) for e in edges):
            fh.write(f"e {u} {v}\n")


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    boards = [(5, 5), (6, 6), (7, 7), (8, 8), (9, 9), (8, 12), (11, 11), (13, 13)]
    for rows, cols in boards:
        n, e = queen_edges(rows, cols)
        name = f"queen{rows}-{cols}"
        write_col(out / f"{name}.col", name, n, e)
        print(f"{name}: {n} nodes, {len(e)} edges")
    for k in (3, 4, 5, 6):
        n, e = myciel_edges(k)
        name = f"myciel{k}"
        write_col(out / f"{name}.col", name, n, e)
        print(f"{name}: {n} nodes, {len(e)} edges")


if __name__ == "__main__":
    main()
