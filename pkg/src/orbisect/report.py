"""Rendering sector tables, posets, verdicts and bundle data as text, JSON and DOT."""
from __future__ import annotations

import json

from .linalg import format_fraction
from .sectors import SectorTable, euler_satake
from .specio import gamma_to_json

SCHEMA_VERSION = 1


def element_label(G, a: int) -> str:
    """Cycle notation for permutations, ``e<id>/<order>`` for matrices."""
    if G.kind == "perm":
        p = G.elements[a]
        seen, cycles = set(), []
        for v in range(len(p)):
            if v in seen or p[v] == v:
                continue
            c, w = [], v
            while w not in seen:
                seen.add(w)
                c.append(str(w + 1))
                w = p[w]
            cycles.append("(" + " ".join(c) + ")")
        return "".join(cycles) or "()"
    return f"e{a}/{G.element_order(a)}"


def sector_json(table: SectorTable, s) -> dict:
    G = table.spec.group
    return {
        "sector_id": s.sector_id,
        "class_id": s.class_id,
        "class_size": s.class_size,
        "rep_images": [G.describe(x) for x in s.rep_hom.images],
        "image_order": s.image.order,
        "centralizer_order": s.centralizer.order,
        "dim": s.dim,
        "chi_numerator": s.chi_numerator,
        "chi_es": format_fraction(s.chi_es),
        "is_closed": s.is_closed,
        "is_trivial_class": s.is_trivial_class,
        "support_ref": s.support_ref,
    }


def poset_json(table: SectorTable) -> dict:
    P = table.poset
    return {
        "nodes": [{"node_id": k, "sectors": list(m)} for k, m in enumerate(P.nodes)],
        "edges": [list(e) for e in P.edges],
        "minimal": list(P.minimal_ids),
    }


def table_json(table: SectorTable) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "sector_table",
        "label": table.spec.label,
        "group_order": table.spec.group.order,
        "gamma": gamma_to_json(table.gamma),
        "gamma_label": table.gamma.label,
        "total_hom_count": table.total_hom_count,
        "hom_class_count": table.hom_class_count,
        "empty_classes": list(table.empty_classes),
        "euler_satake": format_fraction(euler_satake(table.spec)),
        "sectors": [sector_json(table, s) for s in table.sectors],
        "poset": poset_json(table),
        "notes": list(table.notes),
    }


def verdict_json(v) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "verdict",
        "status": v.status.value,
        "raw_status": v.raw_status.value if v.raw_status is not None else None,
        "gamma": v.gamma_used.label,
        "covers": v.covers,
        "witnesses": list(v.witnesses),
        "chi_es_values": {str(k): format_fraction(x) for k, x in sorted(v.chi_es_values.items())},
        "uncovered_subgroup_order": v.cover_witness.order if v.cover_witness is not None else None,
        "notes": list(v.notes),
        "table": table_json(v.table),
    }


def bundle_json(table: SectorTable, bundle, rows, good: bool) -> dict:
    G = table.spec.group
    return {
        "schema": SCHEMA_VERSION,
        "kind": "bundle_check",
        "is_good": good,
        "fiber_dim": bundle.rank,
        "sectors": [
            {
                "sector_id": r.sector_id,
                "fiber_rank": r.fiber_rank,
                "base_kernel_order": r.base_kernel.order,
                "fiber_kernel_order": r.fiber_kernel.order,
                "base_kernel": [G.describe(x) for x in sorted(r.base_kernel.members)],
                "fiber_kernel": [G.describe(x) for x in sorted(r.fiber_kernel.members)],
                "good": r.good,
                "oriented": r.oriented,
            }
            for r in rows
        ],
        "table": table_json(table),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# --------------------------------------------------------------------------
# text
# --------------------------------------------------------------------------


def _grid(headers, rows) -> str:
    cols = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(headers))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cols[1:]:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def table_text(table: SectorTable) -> str:
    G = table.spec.group
    head = [
        f"{table.spec.label or 'orbifold'}: |G| = {G.order}, Gamma = {table.gamma.label}",
        f"{table.total_hom_count} homomorphisms in {table.hom_class_count} classes, {len(table.sectors)} sectors, "
        f"chi_ES(Q) = {format_fraction(euler_satake(table.spec))}",
        "",
    ]
    P = table.poset
    rows = []
    for s in table.sectors:
        imgs = ", ".join(element_label(G, x) for x in s.rep_hom.images) or "-"
        rows.append(
            [
                s.sector_id,
                s.class_id,
                s.class_size,
                s.image.order,
                s.centralizer.order,
                s.dim,
                format_fraction(s.chi_es),
                "yes" if s.is_closed else "no",
                P.node_of(s.sector_id),
                imgs,
            ]
        )
    body = _grid(["sector", "class", "size", "|Im|", "|C|", "dim", "chi_ES", "closed", "node", "representative"], rows)
    tail = [
        "",
        "poset edges (lower < upper): " + (", ".join(f"{a}<{b}" for a, b in P.edges) or "none"),
        "minimal nodes: " + ", ".join(map(str, P.minimal_ids)),
    ]
    notes = [f"note: {n}" for n in table.notes]
    return "\n".join(head + [body] + tail + notes) + "\n"


def verdict_text(v) -> str:
    lines = [f"verdict: {v.status.value}"]
    if v.raw_status is not None:
        lines.append(f"raw verdict: {v.raw_status.value}")
    lines.append(f"gamma: {v.gamma_used.label}  covers local groups: {'yes' if v.covers else 'no'}")
    if v.witnesses:
        lines.append("witnesses: " + ", ".join(f"sector {i} (chi_ES = {format_fraction(v.chi_es_values[i])})" for i in v.witnesses))
    else:
        lines.append("witnesses: none")
    lines.append("")
    return "\n".join(lines) + table_text(v.table)


def bundle_text(table, bundle, rows, good: bool) -> str:
    lines = [f"bundle of rank {bundle.rank}: {'good' if good else 'not good'}", ""]
    body = _grid(
        ["sector", "fiber_rank", "|ker base|", "|ker fiber|", "good"],
        [[r.sector_id, r.fiber_rank, r.base_kernel.order, r.fiber_kernel.order, "yes" if r.good else "no"] for r in rows],
    )
    return "\n".join(lines) + body + "\n\n" + table_text(table)


# --------------------------------------------------------------------------
# DOT
# --------------------------------------------------------------------------


def _dot_id(k: int) -> str:
    return f"n{k}"


def poset_dot(table: SectorTable, name: str = "sectors") -> str:
    """Hasse diagram; an edge ``a -> b`` means node ``a`` is covered by node ``b``."""
    P = table.poset
    secs = table.sectors
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for k, members in enumerate(P.nodes):
        s = secs[members[0]]
        chis = ",".join(format_fraction(secs[i].chi_es) for i in members)
        label = f"sectors {','.join(map(str, members))}\\ndim {s.dim}  chi_ES {chis}"
        extra = ", peripheries=2" if k in P.minimal_ids else ""
        lines.append(f'  {_dot_id(k)} [label="{label}"{extra}];')
    for a, b in P.edges:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "table_json",
    "verdict_json",
    "bundle_json",
    "poset_json",
    "sector_json",
    "table_text",
    "verdict_text",
    "bundle_text",
    "poset_dot",
    "dumps",
]
