"""Isomorph-free generation of graphs, orientations and tournaments, the
arboricity filters, and the census of dicritical oriented graphs.

Generation is by vertex extension with canonical-certificate rejection at
every level.  Partial orientations carry their unoriented edges as digons and
a processed/unprocessed vertex partition inside the certificate, so states
whose completions explore isomorphic territory collapse early; that is what
keeps dense underlying graphs (whole tournaments in the worst case) within
reach.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .canon import canonical_cert, canonical_form, graph_cert
from .digraphs import Digraph, Graph, bidirect, iter_bits, underlying_graph

GEN_CAP = 10


def _graph_cert_rows(n: int, rows: Sequence[int]) -> bytes:
    return canonical_cert(Digraph(n, rows))


def gen_graphs(n: int, min_degree: int) -> list[Graph]:
    """All graphs of the given order and minimum degree, one per class.

    Vertex extension with a degree look-ahead: at order t a vertex can still
    gain at most n-t neighbours, so deg >= min_degree-(n-t) already holds in
    every extendable intermediate graph.
    """
    if not 1 <= n <= GEN_CAP:
        raise ValueError(f"order must be within 1..{GEN_CAP}, got {n}")
    if min_degree < 0 or min_degree >= n:
        raise ValueError(f"min degree {min_degree} infeasible at order {n}")
    reps: list[tuple[int, ...]] = [(0,)]
    for t in range(1, n):
        floor = min_degree - (n - t - 1)
        seen: dict[bytes, tuple[int, ...]] = {}
        for rows in reps:
            for mask in range(1 << t):
                if mask.bit_count() < floor:
                    continue
                child = [r | (mask >> i & 1) << t for i, r in enumerate(rows)]
                child.append(mask)
                if floor > 0 and any(
                    r.bit_count() < floor for r in child
                ):
                    continue
                cert = _graph_cert_rows(t + 1, child)
                if cert not in seen:
                    seen[cert] = tuple(child)
        reps = [seen[c] for c in sorted(seen)]
    return [Graph(n, rows) for rows in reps]


def _forest_mask(rows: Sequence[int], mask: int) -> bool:
    """Is the induced undirected subgraph on mask acyclic?"""
    verts = list(iter_bits(mask))
    edges = 0
    comps = 0
    seen = 0
    for s in verts:
        edges += (rows[s] & mask).bit_count()
        if seen >> s & 1:
            continue
        comps += 1
        stack = [s]
        seen |= 1 << s
        while stack:
            v = stack.pop()
            todo = rows[v] & mask & ~seen
            seen |= todo
            for w in iter_bits(todo):
                stack.append(w)
    return edges // 2 == len(verts) - comps


def arboricity(g: Graph) -> int:
    """Vertex arboricity: fewest classes each inducing a forest."""
    n = g.n
    if n == 0:
        return 0
    rows = g.rows

    def ok(k: int) -> bool:
        masks = [0] * k

        def rec(v: int, used: int) -> bool:
            if v == n:
                return True
            for c in range(min(k, used + 1)):
                if _forest_mask(rows, masks[c] | 1 << v):
                    masks[c] |= 1 << v
                    if rec(v + 1, max(used, c + 1)):
                        return True
                    masks[c] &= ~(1 << v)
            return False

        return rec(0, 0)

    k = 1
    while not ok(k):
        k += 1
    return k


def edge_arboricity(g: Graph) -> int:
    """Nash-Williams arboricity: max over subsets of ceil(m_S/(|S|-1)).

    The maximum over subgraphs is attained on induced subgraphs, so vertex
    subsets suffice.
    """
    n = g.n
    best = 0
    for mask in range(1, 1 << n):
        s = mask.bit_count()
        if s < 2:
            continue
        m = sum((g.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2
        val = -(-m // (s - 1))
        if val > best:
            best = val
    return best


def _mixed_cert(n, rows, g, t):
    """Certificate of a partial orientation: oriented arcs as arcs, the not
    yet oriented edges as digons, vertices split processed/unprocessed."""
    prefix_mask = (1 << t) - 1
    mixed = list(rows)
    for v in range(n):
        open_nb = g.rows[v] & ~prefix_mask if v < t else g.rows[v]
        mixed[v] |= open_nb
    return canonical_cert(
        Digraph(n, mixed),
        cells=(list(range(t)), list(range(t, n))),
    )


def _orientation_stream(
    g: Graph,
    min_in: int,
    min_out: int,
    prefix_filter: Callable[[Digraph], bool] | None = None,
    final_filter: Callable[[Digraph], bool] | None = None,
) -> tuple[list[Digraph], int]:
    """Orientation classes of g with the given degree bounds, plus the count
    of raw final-level candidates that met the degree bounds.

    prefix_filter prunes deduplicated partial states (sound only for
    hereditary targets); final_filter runs before the last deduplication, so
    with it the stream is only isomorph-free within the filtered set.
    """
    n = g.n
    if n == 0:
        return [], 0
    states: list[tuple[int, ...]] = [tuple([0] * n)]
    candidates = 0
    for t in range(n):
        back = list(iter_bits(g.rows[t] & ((1 << t) - 1)))
        above = ~((1 << (t + 1)) - 1)
        fut = [(g.rows[v] & above).bit_count() for v in range(t + 1)]
        last = t == n - 1
        seen: dict[bytes, tuple[int, ...]] = {}
        for rows in states:
            for mask in range(1 << len(back)):
                child = list(rows)
                for i, w in enumerate(back):
                    if mask >> i & 1:
                        child[t] |= 1 << w
                    else:
                        child[w] |= 1 << t
                ok = True
                for v in range(t + 1):
                    outd = (child[v] & ((1 << (t + 1)) - 1)).bit_count()
                    ind = sum(child[w] >> v & 1 for w in range(t + 1))
                    if outd + fut[v] < min_out or ind + fut[v] < min_in:
                        ok = False
                        break
                if not ok:
                    continue
                if last:
                    candidates += 1
                    d = Digraph(n, child)
                    if final_filter is not None and not final_filter(d):
                        continue
                    cert = canonical_cert(d)
                else:
                    cert = _mixed_cert(n, child, g, t + 1)
                if cert not in seen:
                    seen[cert] = tuple(child)
        states = [seen[c] for c in sorted(seen)]
        if prefix_filter is not None and not last:
            pm = (1 << (t + 1)) - 1
            states = [
                rows
                for rows in states
                if prefix_filter(Digraph(t + 1, tuple(r & pm for r in rows[: t + 1])))
            ]
    return [Digraph(n, rows) for rows in states], candidates


def gen_orientations(g: Graph, min_in: int, min_out: int) -> list[Digraph]:
    """All orientations of g with minimum in/out degrees as given, one per
    isomorphism class, as digraphs on g's own vertex labels."""
    return _orientation_stream(g, min_in, min_out)[0]


def gen_tournaments(n: int) -> list[Digraph]:
    """One tournament per isomorphism class, by vertex extension."""
    if n < 1:
        raise ValueError("order must be positive")
    reps: list[Digraph] = [Digraph(1, (0,))]
    for t in range(1, n):
        seen: dict[bytes, Digraph] = {}
        for tour in reps:
            rows_base = list(tour.rows)
            for mask in range(1 << t):
                rows = [
                    r | ((~mask >> i & 1) << t) for i, r in enumerate(rows_base)
                ]
                rows.append(mask)
                child = Digraph(t + 1, rows)
                cert = canonical_cert(child)
                if cert not in seen:
                    seen[cert] = child
        reps = [seen[c] for c in sorted(seen)]
    return reps


@dataclass
class CensusReport:
    n: int
    k: int
    count: int
    min_arcs: int | None
    witnesses: list[str]
    all_dicritical: list[str]
    filter: str
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "min_arcs": self.min_arcs,
            "witnesses": self.witnesses,
            "all_dicritical": self.all_dicritical,
            "filter": self.filter,
            "stats": self.stats,
        }


def _census_graph_task(args) -> dict:
    from .formats import d6_decode, d6_encode
    from .solver import is_dicritical, is_k_dicolourable

    g6, k = args
    g = underlying_graph(d6_decode(g6))

    def prefix_ok(d: Digraph) -> bool:
        # every proper induced subdigraph of a k-dicritical digraph is
        # (k-1)-dicolourable, so prefixes that are not can be dropped
        return is_k_dicolourable(d, k - 1) is not None

    def final_ok(d: Digraph) -> bool:
        return is_k_dicolourable(d, k - 1) is None

    survivors, candidates = _orientation_stream(
        g, k - 1, k - 1, prefix_filter=prefix_ok, final_filter=final_ok
    )
    found = []
    for d in survivors:
        if is_dicritical(d, k).is_dicritical:
            found.append(d6_encode(canonical_form(d)))
    return {
        "graph": g6,
        "dicritical": sorted(found),
        "candidates": candidates,
    }


def dicritical_census(
    n: int,
    k: int,
    jobs: int = 1,
    checkpoint: str | None = None,
    filter: str = "vertex",
) -> CensusReport:
    """All k-dicritical oriented graphs of order n.

    Pipeline: graphs of min degree 2(k-1), arboricity filter at k, degree
    bounded orientations, exact dicriticality.  Results are independent of
    the filter choice and the worker count.
    """
    from .formats import d6_decode, d6_encode

    if filter not in ("vertex", "edge"):
        raise ValueError("filter must be 'vertex' or 'edge'")
    if k < 2:
        raise ValueError("census needs k >= 2")
    t0 = time.perf_counter()
    graphs = gen_graphs(n, 2 * (k - 1))
    arbf = arboricity if filter == "vertex" else edge_arboricity
    kept = [g for g in graphs if arbf(g) >= k]
    tasks = [(d6_encode(bidirect(g)), k) for g in kept]

    done: dict[str, dict] = {}
    header = {"kind": "census", "n": n, "k": k, "filter": filter}
    ck = None
    if checkpoint:
        if os.path.exists(checkpoint):
            with open(checkpoint) as fh:
                lines = [json.loads(ln) for ln in fh if ln.strip()]
            if lines and lines[0] != header:
                raise ValueError(
                    f"checkpoint {checkpoint} belongs to a different run"
                )
            for rec in lines[1:]:
                done[rec["graph"]] = rec
        ck = open(checkpoint, "a")
        if not done and ck.tell() == 0:
            ck.write(json.dumps(header) + "\n")
            ck.flush()

    def record(res: dict) -> None:
        done[res["graph"]] = res
        if ck:
            ck.write(json.dumps(res) + "\n")
            ck.flush()

    todo = [t for t in tasks if t[0] not in done]
    try:
        if jobs > 1 and todo:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for res in pool.map(_census_graph_task, todo):
                    record(res)
        else:
            for t in todo:
                record(_census_graph_task(t))
    finally:
        if ck:
            ck.close()

    all_dicritical: list[str] = []
    candidates = 0
    for g6, _ in tasks:
        res = done[g6]
        all_dicritical.extend(res["dicritical"])
        candidates += res["candidates"]
    all_dicritical.sort()
    arcs = [d6_decode(s).m for s in all_dicritical]
    min_arcs = min(arcs) if arcs else None
    witnesses = [s for s, m in zip(all_dicritical, arcs) if m == min_arcs]
    return CensusReport(
        n=n,
        k=k,
        count=len(all_dicritical),
        min_arcs=min_arcs,
        witnesses=witnesses,
        all_dicritical=all_dicritical,
        filter=filter,
        stats={
            "graphs": len(graphs),
            "graphs_after_arboricity": len(kept),
            "orientation_candidates": candidates,
            "seconds": round(time.perf_counter() - t0, 3),
        },
    )


def validate_census(report: CensusReport) -> list[str]:
    """Independent re-verification of a census report; returns a list of
    failure descriptions (empty when everything checks out)."""
    from .digraphs import is_k_diregular, is_oriented
    from .formats import d6_decode
    from .solver import is_dicritical
    from .structure import gallai_property_check

    problems = []
    k = report.k
    for s in report.all_dicritical:
        d = d6_decode(s)
        if not is_oriented(d):
            problems.append(f"{s}: not oriented")
        ir = d.in_rows
        if any(
            d.rows[v].bit_count() < k - 1 or ir[v].bit_count() < k - 1
            for v in range(d.n)
        ):
            problems.append(f"{s}: degree bound violated")
        if not is_dicritical(d, k).is_dicritical:
            problems.append(f"{s}: not {k}-dicritical")
        if not gallai_property_check(d, k):
            problems.append(f"{s}: low vertices not a directed cactus")
        if k == 3 and d.n >= 10:
            if d.m < 21:
                problems.append(f"{s}: order >= 10 with fewer than 21 arcs")
            if is_k_diregular(d, 2):
                problems.append(f"{s}: order >= 10 and 2-diregular")
    if report.witnesses:
        arcs = {d6_decode(s).m for s in report.witnesses}
        if arcs != {report.min_arcs}:
            problems.append("witness arc counts disagree with min_arcs")
    return problems
