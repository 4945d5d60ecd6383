"""Exhaustive bottom-up chart parsing with forest packing.

Edges are packed by (span, sign isomorphism); every licensing derivation of
a packed edge is kept as a separate record for diagnostics. Charts are
filled span by span in a fixed order, so identical input yields an identical
forest object graph on every run.
"""

from __future__ import annotations

from typing import NamedTuple

from .signs import Sign
from . import schemata

MAX_ARITY = 4


class ParseError(Exception):
    pass


class UnknownTokenError(ParseError):
    def __init__(self, token: str, position: int):
        super().__init__(f"unknown token {token!r} at position {position}")
        self.token = token
        self.position = position


class EdgeBudgetError(ParseError):
    pass


class Derivation(NamedTuple):
    """How one edge was licensed: a lexical entry or a schema application."""
    schema: str                       # schema name or "lexical"
    daughters: tuple["Edge", ...]
    head_index: int
    extra_indices: tuple[int, ...]
    bound_extra: tuple[str, ...]
    bound_slash: tuple[str, ...]
    lex: str | None = None            # token for lexical edges
    note: str | None = None


class Edge:
    __slots__ = ("start", "end", "sign", "derivations", "index")

    def __init__(self, start: int, end: int, sign: Sign, index: int):
        self.start = start
        self.end = end
        self.sign = sign
        self.derivations: list[Derivation] = []
        self.index = index

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def __repr__(self):
        return (f"<edge {self.start}-{self.end} {' '.join(self.sign.phon)!r} "
                f"{len(self.derivations)}d>")


def retag(sign: Sign, token: str, position: int) -> Sign:
    """Prefix member source tags with the introducing token and position."""
    pre = f"{token}@{position}:"
    return Sign(sign.phon, sign.fs,
                tuple(pre + t for t in sign.extra_tags),
                tuple(pre + t for t in sign.slash_tags))


def lexical_edges(grammar, token: str, position: int) -> list[Sign]:
    """Closed-lexicon variants of a token, source-tagged for its position."""
    entries = grammar.entries(token)
    if not entries:
        raise UnknownTokenError(token, position)
    return [retag(s, token, position) for s in entries]


class Chart:
    def __init__(self, grammar, tokens: tuple[str, ...]):
        self.grammar = grammar
        self.tokens = tokens
        self.cells: dict[tuple[int, int], list[Edge]] = {}
        self._by_key: dict[tuple, Edge] = {}
        self.n_edges = 0

    def edges(self, start: int, end: int) -> list[Edge]:
        return self.cells.get((start, end), ())

    def all_edges(self) -> list[Edge]:
        out = []
        for span in sorted(self.cells):
            out.extend(self.cells[span])
        return out

    def add(self, start: int, end: int, sign: Sign, der: Derivation) -> Edge:
        key = (start, end, sign.key)
        edge = self._by_key.get(key)
        if edge is None:
            edge = Edge(start, end, sign, self.n_edges)
            self.n_edges += 1
            if self.n_edges > self.grammar.params.edge_budget:
                raise EdgeBudgetError(
                    f"edge budget {self.grammar.params.edge_budget} exceeded "
                    f"while parsing {' '.join(self.tokens)!r}")
            self._by_key[key] = edge
            self.cells.setdefault((start, end), []).append(edge)
        if der not in edge.derivations:
            edge.derivations.append(der)
        return edge

    def roots(self) -> list[Edge]:
        n = len(self.tokens)
        return [e for e in self.edges(0, n)
                if schemata.is_root(self.grammar, e.sign)]


def _compositions(start: int, end: int, m: int):
    """All ways to split [start, end) into m adjacent non-empty spans."""
    if m == 1:
        yield ((start, end),)
        return
    for mid in range(start + 1, end - m + 2):
        for tail in _compositions(mid, end, m - 1):
            yield ((start, mid),) + tail


def parse(grammar, tokens) -> Chart:
    """Exhaustive parse; derivation packing keeps the forest small.

    Raises UnknownTokenError for uncovered tokens and EdgeBudgetError when
    the configured edge budget is exhausted.
    """
    tokens = tuple(tokens)
    chart = Chart(grammar, tokens)
    for i, tok in enumerate(tokens):
        for sign in lexical_edges(grammar, tok, i):
            edge = chart.add(i, i + 1, sign, Derivation(
                "lexical", (), 0, (), (), (), lex=tok))
            r = schemata.apply_schemata(grammar, (edge.sign,))
            for res in r:
                chart.add(i, i + 1, res.mother, Derivation(
                    res.schema, (edge,), res.head_index, res.extra_indices,
                    res.bound_extra, res.bound_slash, note=res.note))
    n = len(tokens)
    for length in range(2, n + 1):
        for start in range(0, n - length + 1):
            end = start + length
            for m in range(2, min(MAX_ARITY, length) + 1):
                for spans in _compositions(start, end, m):
                    _combine(grammar, chart, spans)
    return chart


def _combine(grammar, chart: Chart, spans):
    pools = [chart.edges(*span) for span in spans]
    if any(not p for p in pools):
        return
    combo = [0] * len(pools)
    while True:
        edges = tuple(pools[i][combo[i]] for i in range(len(pools)))
        for res in schemata.apply_schemata(
                grammar, tuple(e.sign for e in edges)):
            chart.add(spans[0][0], spans[-1][1], res.mother, Derivation(
                res.schema, edges, res.head_index, res.extra_indices,
                res.bound_extra, res.bound_slash, note=res.note))
        for i in range(len(pools) - 1, -1, -1):
            combo[i] += 1
            if combo[i] < len(pools[i]):
                break
            combo[i] = 0
        else:
            return
