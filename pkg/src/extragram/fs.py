"""Typed feature structures: rooted, acyclic, possibly reentrant graphs.

A ``FeatureStructure`` is immutable and always stored in canonical form
(node 0 is the root, nodes numbered by BFS in ascending feature order), so
equality of the ``(types, arcs)`` tables is graph isomorphism and structures
can be hashed for packing. All destructive work happens inside a
``Workspace``, which stitches copies of existing structures together, queues
coreference demands, and hands the scratch graph to the unification kernel.

Unification failure is a value (None), never an exception.
"""

from __future__ import annotations

from .hierarchy import TypeHierarchy
from . import kernel


class FeatureStructure:
    __slots__ = ("hier", "types", "arcs", "_hash")

    def __init__(self, hier: TypeHierarchy, types: tuple[int, ...],
                 arcs: tuple[tuple[tuple[int, int], ...], ...]):
        self.hier = hier
        self.types = types
        self.arcs = arcs
        self._hash = hash((types, arcs))

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FeatureStructure)
                and self.types == other.types and self.arcs == other.arcs)

    def __hash__(self):
        return self._hash

    @property
    def key(self):
        """Hashable canonical key; equal keys mean isomorphic structures."""
        return (self.types, self.arcs)

    def __len__(self):
        return len(self.types)

    # -- reading -------------------------------------------------------

    def type_at(self, node: int) -> int:
        return self.types[node]

    def type_name(self, node: int) -> str:
        return self.hier.name_of(self.types[node])

    def get(self, node: int, feat: str) -> int | None:
        try:
            fid = self.hier.feat_id(feat)
        except Exception:
            return None  # unknown feature name: absent, not an error
        for f, d in self.arcs[node]:
            if f == fid:
                return d
        return None

    def resolve(self, path: list[str] | tuple[str, ...], start: int = 0) -> int | None:
        """Follow a feature path from ``start``; None when any arc is absent."""
        node = start
        for feat in path:
            node = self.get(node, feat)
            if node is None:
                return None
        return node

    def features(self, node: int) -> list[str]:
        return [self.hier.feat_name(f) for f, _ in self.arcs[node]]

    def reentrancy_count(self) -> int:
        """Number of nodes reachable by more than one path (in-degree > 1)."""
        indeg = [0] * len(self.types)
        for outgoing in self.arcs:
            for _, d in outgoing:
                indeg[d] += 1
        return sum(1 for d in indeg if d > 1)

    # -- operations ------------------------------------------------------

    def copy(self) -> "FeatureStructure":
        """Fresh object with identical canonical content."""
        return FeatureStructure(self.hier, self.types, self.arcs)

    def unify(self, other: "FeatureStructure") -> "FeatureStructure | None":
        ws = Workspace(self.hier)
        a = ws.add(self)
        b = ws.add(other)
        ws.merge(a, b)
        packed = ws.pack(a)
        return None if packed is None else packed[0]

    def extract(self, node: int) -> "FeatureStructure":
        """Canonical sub-structure rooted at ``node``."""
        ws = Workspace(self.hier)
        off = ws.add(self)
        packed = ws.pack(off + node)
        assert packed is not None
        return packed[0]

    def subsumed_by_type(self, node: int, type_name: str) -> bool:
        return self.hier.subsumes(type_name, self.type_name(node))

    def render(self, node: int = 0, _seen=None, _tags=None) -> str:
        """Compact AVM-ish text rendering, tagging reentrant nodes [n]."""
        if _seen is None:
            indeg = [0] * len(self.types)
            for outgoing in self.arcs:
                for _, d in outgoing:
                    indeg[d] += 1
            _seen = {}
            _tags = {d: i + 1 for i, d in enumerate(
                d for d in range(len(self.types)) if indeg[d] > 1)}
        tag = _tags.get(node)
        if node in _seen:
            return f"#{tag}"
        _seen[node] = True
        prefix = f"#{tag}=" if tag else ""
        body = self.type_name(node)
        if self.arcs[node]:
            inner = ", ".join(
                f"{self.hier.feat_name(f)} {self.render(d, _seen, _tags)}"
                for f, d in self.arcs[node])
            body = f"[{body} {inner}]"
        return prefix + body


class Workspace:
    """Scratch graph for building and unifying feature structures."""

    def __init__(self, hier: TypeHierarchy):
        self.hier = hier
        self.types: list[int] = []
        self.arcs: list[dict[int, int]] = []
        self.pairs: list[tuple[int, int]] = []

    def add(self, fs: FeatureStructure) -> int:
        """Copy a structure into the workspace; returns its root's index."""
        off = len(self.types)
        self.types.extend(fs.types)
        for outgoing in fs.arcs:
            self.arcs.append({f: d + off for f, d in outgoing})
        return off

    def node(self, type_name: str) -> int:
        idx = len(self.types)
        self.types.append(self.hier.id_of(type_name))
        self.arcs.append({})
        return idx

    def arc(self, src: int, feat: str, dst: int):
        fid = self.hier.add_feature(feat)
        existing = self.arcs[src].get(fid)
        if existing is None:
            self.arcs[src][fid] = dst
        else:
            self.pairs.append((existing, dst))

    def merge(self, a: int, b: int):
        self.pairs.append((a, b))

    def set_arc(self, src: int, feat: str, dst: int):
        """Overwrite an arc instead of queueing a coreference."""
        self.arcs[src][self.hier.add_feature(feat)] = dst

    def drop_arc(self, src: int, feat: str):
        self.arcs[src].pop(self.hier.feat_id(feat), None)

    def add_sub(self, fs: FeatureStructure, node: int,
                drop: tuple[str, ...] = ()) -> int:
        """Copy the sub-structure rooted at ``node``, optionally dropping
        some of its root features. Returns the copy's root index."""
        sub = fs.extract(node)
        off = self.add(sub)
        for feat in drop:
            self.drop_arc(off, feat)
        return off

    def pack(self, root: int, keep: tuple[int, ...] = ()):
        """Run the kernel. Returns (FeatureStructure, kept-ids) or None."""
        res = kernel.unify_and_pack(
            list(self.types), [dict(a) for a in self.arcs], list(self.pairs),
            self.hier.meet_table, self.hier.n_types, root, list(keep))
        if res is None:
            return None
        ctypes, carcs, kept = res
        return FeatureStructure(self.hier, tuple(ctypes), carcs), kept


def build(hier: TypeHierarchy, spec) -> FeatureStructure:
    """Build a structure from a nested dict spec.

    ``{"_type": name, "FEAT": subspec | "atom-type-name", ...}``; a bare
    string is an atomic node. Reentrancy: ``{"_tag": "x"}`` introduces or
    references a shared node (first occurrence may carry content).
    """
    ws = Workspace(hier)
    tags: dict[str, int] = {}

    def go(s) -> int:
        if isinstance(s, str):
            return ws.node(s)
        tag = s.get("_tag")
        if tag is not None and tag in tags and len(s) == 1:
            return tags[tag]
        n = ws.node(s.get("_type", "top"))
        if tag is not None:
            if tag in tags:
                ws.merge(tags[tag], n)
            else:
                tags[tag] = n
        for feat, sub in s.items():
            if feat.startswith("_"):
                continue
            ws.arc(n, feat, go(sub))
        return n

    root = go(spec)
    packed = ws.pack(root)
    if packed is None:
        raise ValueError("inconsistent build spec")
    return packed[0]
