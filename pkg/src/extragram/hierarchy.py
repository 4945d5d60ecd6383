"""Type hierarchy with greatest-lower-bound meets.

Types form a partial order rooted in ``top``. Every pair of types either has
a unique greatest lower bound or is incompatible; hierarchies violating GLB
uniqueness are rejected when frozen, so ``meet`` is always well defined.
The hierarchy also carries the feature-name table and the appropriateness
declarations used to validate grammar files.
"""

from __future__ import annotations

TOP = "top"
INCOMPATIBLE = -1


class HierarchyError(Exception):
    """Raised for malformed hierarchies or unknown type/feature names."""


class TypeHierarchy:
    def __init__(self):
        self._names: list[str] = [TOP]
        self._ids: dict[str, int] = {TOP: 0}
        self._parents: dict[int, set[int]] = {0: set()}
        self._feat_names: list[str] = []
        self._feat_ids: dict[str, int] = {}
        # appropriateness: type-id -> {feat-id: value-type-id}
        self._approp: dict[int, dict[int, int]] = {}
        self._frozen = False
        self._meet: list[int] | None = None
        self._descendants: list[set[int]] | None = None

    # -- construction ------------------------------------------------------

    def add_type(self, name: str, parents: list[str] | None = None) -> int:
        if self._frozen:
            raise HierarchyError("hierarchy is frozen")
        if name in self._ids:
            tid = self._ids[name]
        else:
            tid = len(self._names)
            self._names.append(name)
            self._ids[name] = tid
            self._parents[tid] = {0}
        for p in parents or []:
            pid = self._ids.get(p)
            if pid is None:
                raise HierarchyError(f"unknown parent type {p!r} for {name!r}")
            self._parents[tid].add(pid)
        return tid

    def add_feature(self, name: str) -> int:
        fid = self._feat_ids.get(name)
        if fid is None:
            fid = len(self._feat_names)
            self._feat_names.append(name)
            self._feat_ids[name] = fid
        return fid

    def declare_appropriate(self, type_name: str, feat: str, value_type: str):
        tid = self.id_of(type_name)
        fid = self.add_feature(feat)
        vid = self.id_of(value_type)
        self._approp.setdefault(tid, {})[fid] = vid

    def freeze(self):
        """Close the subtype relation and precompute the meet table."""
        if self._frozen:
            return
        n = len(self._names)
        # ancestors via transitive closure; cycle and order checks
        ancestors: list[set[int]] = [set() for _ in range(n)]

        def walk(t: int, seen: tuple[int, ...]) -> set[int]:
            if t in seen:
                chain = " < ".join(self._names[s] for s in seen + (t,))
                raise HierarchyError(f"cycle in type hierarchy: {chain}")
            if ancestors[t]:
                return ancestors[t]
            acc = set()
            for p in self._parents[t]:
                acc.add(p)
                acc |= walk(p, seen + (t,))
            ancestors[t] = acc
            return acc

        for t in range(1, n):
            walk(t, ())
        descendants = [set([t]) for t in range(n)]
        for t in range(n):
            for a in ancestors[t]:
                descendants[a].add(t)
        self._descendants = descendants

        meet = [INCOMPATIBLE] * (n * n)
        for a in range(n):
            for b in range(a, n):
                common = descendants[a] & descendants[b]
                if not common:
                    continue
                # maximal elements of the common lower set
                maxima = [
                    t for t in common
                    if not any(u != t and t in descendants[u] for u in common)
                ]
                if len(maxima) > 1:
                    names = ", ".join(sorted(self._names[m] for m in maxima))
                    raise HierarchyError(
                        f"types {self._names[a]!r} and {self._names[b]!r} have "
                        f"several maximal common subtypes ({names}); GLBs must "
                        "be unique")
                meet[a * n + b] = meet[b * n + a] = maxima[0]
        self._meet = meet
        self._frozen = True

    # -- queries -----------------------------------------------------------

    @property
    def n_types(self) -> int:
        return len(self._names)

    def id_of(self, name: str) -> int:
        tid = self._ids.get(name)
        if tid is None:
            raise HierarchyError(f"unknown type name {name!r}")
        return tid

    def name_of(self, tid: int) -> str:
        return self._names[tid]

    def has_type(self, name: str) -> bool:
        return name in self._ids

    def feat_id(self, name: str) -> int:
        fid = self._feat_ids.get(name)
        if fid is None:
            raise HierarchyError(f"unknown feature name {name!r}")
        return fid

    def feat_name(self, fid: int) -> str:
        return self._feat_names[fid]

    @property
    def meet_table(self) -> list[int]:
        if not self._frozen:
            raise HierarchyError("hierarchy not frozen")
        return self._meet

    def meet(self, a: str, b: str) -> str | None:
        """GLB of two types by name, or None if they are incompatible."""
        if not self._frozen:
            raise HierarchyError("hierarchy not frozen")
        m = self._meet[self.id_of(a) * len(self._names) + self.id_of(b)]
        return None if m == INCOMPATIBLE else self._names[m]

    def meet_id(self, a: int, b: int) -> int:
        return self._meet[a * len(self._names) + b]

    def subsumes(self, a: str, b: str) -> bool:
        """True iff b is a (reflexive) subtype of a."""
        if not self._frozen:
            raise HierarchyError("hierarchy not frozen")
        return self.id_of(b) in self._descendants[self.id_of(a)]

    def subsumes_id(self, a: int, b: int) -> bool:
        return b in self._descendants[a]

    def appropriate_features(self, tid: int) -> dict[int, int]:
        """Features licensed on a type: own declarations plus inherited ones."""
        out: dict[int, int] = {}
        for t, feats in self._approp.items():
            if self.subsumes_id(t, tid):
                out.update(feats)
        return out
