"""Naive all-bracketings enumerator: the chart's independence oracle.

No chart, no memoization, no packing: recursively enumerate every way to
bracket the token span into schema applications and collect the root signs.
Shares only the licensing functions with the parser, so agreement between
the two is a real check of the chart machinery. Exponential; intended for
short sentences.
"""

from __future__ import annotations

from .chart import lexical_edges, MAX_ARITY
from . import schemata


def _splits(start, end, m):
    if m == 1:
        yield ((start, end),)
        return
    for mid in range(start + 1, end - m + 2):
        for tail in _splits(mid, end, m - 1):
            yield ((start, mid),) + tail


def _enumerate_span(grammar, tokens, start, end):
    if end - start == 1:
        words = lexical_edges(grammar, tokens[start], start)
        out = list(words)
        for w in words:
            for res in schemata.apply_schemata(grammar, (w,)):
                out.append(res.mother)
        return out
    out = []
    for m in range(2, min(MAX_ARITY, end - start) + 1):
        for spans in _splits(start, end, m):
            pools = [_enumerate_span(grammar, tokens, s, e) for s, e in spans]
            if any(not p for p in pools):
                continue
            combo = [0] * m
            while True:
                daughters = tuple(pools[i][combo[i]] for i in range(m))
                for res in schemata.apply_schemata(grammar, daughters):
                    out.append(res.mother)
                for i in range(m - 1, -1, -1):
                    combo[i] += 1
                    if combo[i] < len(pools[i]):
                        break
                    combo[i] = 0
                else:
                    break
    return out


def enumerate_root_keys(grammar, tokens) -> set:
    """Distinct root signs over all derivation trees, as canonical keys."""
    tokens = tuple(tokens)
    signs = _enumerate_span(grammar, tokens, 0, len(tokens))
    return {s.key for s in signs if schemata.is_root(grammar, s)}
