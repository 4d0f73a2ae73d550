"""Regenerate src/orbisect/data/small_groups.json.

Candidates: abelian groups, metacyclic groups, direct products and
semidirect products N x| Z_k. They are deduplicated up to isomorphism and
the per-order totals are checked against the known counts before writing.

    python scripts/build_small_groups.py
"""
from __future__ import annotations

import itertools
import json
import sys
import time
from pathlib import Path

from orbisect.smallgroups import (
    GROUP_COUNTS,
    automorphisms,
    cyclic_table,
    group_from_table,
    isomorphic,
    metacyclic_table,
    product_table,
    semidirect_table,
)

MAX = 24
OUT = Path(__file__).resolve().parents[1] / "src" / "orbisect" / "data" / "small_groups.json"


def main() -> int:
    t0 = time.time()
    found: dict[int, list] = {n: [] for n in range(1, MAX + 1)}  # order -> [(name, table, group)]

    def offer(name, table):
        n = len(table)
        if n > MAX:
            return
        G = group_from_table(table)
        if any(isomorphic(G, H) for _, _, H in found[n]):
            return
        # keep G's own table so automorphism ids line up with it
        found[n].append((name, G.mult, G))

    for n in range(1, MAX + 1):
        offer(f"C{n}", cyclic_table(n))
    for m in range(1, MAX + 1):
        for n in range(1, MAX // m + 1):
            for r in range(m):
                for s in range(m):
                    t = metacyclic_table(m, n, r, s)
                    if t is not None:
                        offer(f"M({m},{n},{r},{s})", t)
    for _ in range(2):
        snapshot = [(nm, t) for n in found for nm, t, _ in found[n]]
        for (na, ta), (nb, tb) in itertools.combinations_with_replacement(snapshot, 2):
            if 1 < len(ta) and 1 < len(tb) and len(ta) * len(tb) <= MAX:
                offer(f"{na}x{nb}", product_table(ta, tb))
        for nm, t, G in [(nm, t, G) for n in found for nm, t, G in found[n]]:
            if len(t) < 2:
                continue
            auts = automorphisms(G)
            for k in range(2, MAX // len(t) + 1):
                for a in auts:
                    # alpha^k must be the identity
                    p = list(range(len(t)))
                    for _ in range(k):
                        p = [int(a[x]) for x in p]
                    if p == list(range(len(t))):
                        offer(f"({nm}):C{k}", semidirect_table(t, a, k))

    ok = True
    for n in range(1, MAX + 1):
        have = len(found[n])
        if have != GROUP_COUNTS[n]:
            ok = False
            print(f"order {n}: found {have}, expected {GROUP_COUNTS[n]}", file=sys.stderr)
    if not ok:
        return 1
    payload = []
    for n in range(1, MAX + 1):
        for name, _, G in found[n]:
            payload.append({"order": n, "name": name, "generators": [list(g) for g in G.generators]})
    OUT.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(payload)} groups to {OUT} in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
