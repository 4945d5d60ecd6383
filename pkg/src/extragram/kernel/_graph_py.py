"""Pure-Python graph-unification kernel.

Operates on a scratch graph: node types as a list of type ids, arcs as one
``{feature-id: target}`` dict per node. ``unify_and_pack`` destructively
merges the requested node pairs under the meet table, then emits a canonical
packed form (BFS numbering from the root, arcs in ascending feature order).
Canonical forms are equal iff the rooted graphs are isomorphic, which is what
edge packing and all the idempotence/commutativity properties rely on.

The compiled kernel in ``_graph_c.pyx`` implements the same contract; the two
must return identical results on identical inputs.
"""

from __future__ import annotations

KERNEL_NAME = "python"


def unify_and_pack(types, arcs, pairs, meet, n_types, root, keep):
    """Merge node pairs, then canonicalize from ``root``.

    types : list[int], mutated in place.
    arcs  : list[dict[int, int]], mutated in place.
    pairs : list[(int, int)] initial coreference demands.
    meet  : flat meet table, ``meet[a * n_types + b]`` = GLB id or -1.
    keep  : node ids whose canonical ids the caller needs back.

    Returns ``(ctypes, carcs, kept)`` or None on type clash / cycle.
    ``carcs`` is a list of ``(feat, dst)`` tuples per canonical node, sorted
    by feature; ``kept`` maps each entry of ``keep`` to its canonical id
    (-1 if the node ended up unreachable from the root).
    """
    n = len(types)
    parent = list(range(n))

    def find(x):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    stack = list(pairs)
    while stack:
        a, b = stack.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if ra > rb:
            ra, rb = rb, ra
        t = meet[types[ra] * n_types + types[rb]]
        if t < 0:
            return None
        parent[rb] = ra
        types[ra] = t
        aa, ab = arcs[ra], arcs[rb]
        if ab:
            if aa:
                for f, d in ab.items():
                    if f in aa:
                        stack.append((aa[f], d))
                    else:
                        aa[f] = d
            else:
                arcs[ra] = ab

    # canonical BFS numbering from the root representative
    start = find(root)
    order: list[int] = [start]
    new_id = {start: 0}
    i = 0
    while i < len(order):
        node = order[i]
        i += 1
        for f in sorted(arcs[node]):
            d = find(arcs[node][f])
            if d not in new_id:
                new_id[d] = len(order)
                order.append(d)

    m = len(order)
    ctypes = [types[node] for node in order]
    carcs = [
        tuple((f, new_id[find(arcs[node][f])]) for f in sorted(arcs[node]))
        for node in order
    ]

    # occurs check: the packed graph must be acyclic from the root
    state = [0] * m  # 0 unvisited, 1 on stack, 2 done
    work = [(0, 0)]
    while work:
        node, ai = work[-1]
        if ai == 0:
            if state[node] == 1:
                return None
            if state[node] == 2:
                work.pop()
                continue
            state[node] = 1
        if ai < len(carcs[node]):
            work[-1] = (node, ai + 1)
            child = carcs[node][ai][1]
            if state[child] == 1:
                return None
            if state[child] == 0:
                work.append((child, 0))
        else:
            state[node] = 2
            work.pop()

    kept = [new_id.get(find(k), -1) for k in keep]
    return ctypes, tuple(carcs), kept
