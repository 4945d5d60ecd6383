"""Signs: words and phrases over the feature-structure substrate.

A sign's graph hangs everything off one root:

    root(word|phrase) -LOCAL-> local -CAT->  cat -HEAD-> pos node
                                              -SUBCAT-> cons list
                                 -CONT-> semantic token
                                 -PER->  periphery atom
         -NONLOC-> nonloc -INHER-> inher -EXTRA-> set node -X0..Xk-> local
                                         -SLASH-> set node -Y0..Yk-> local

Inherited EXTRA/SLASH members are locals stored under reserved slot features
X0..X5 / Y0..Y5 on their set node. The slots carry multiset semantics: member
order is canonicalized (members sorted by their standalone canonical form,
ties resolved by whole-graph minimization), so isomorphic signs compare equal
regardless of construction history. Each member is paired with a source tag
naming the word that introduced it; tags feed derivation records and corpus
diagnostics only and never take part in sign identity.
"""

from __future__ import annotations

from itertools import permutations

from .hierarchy import TypeHierarchy
from .fs import FeatureStructure, Workspace

# feature names, interned in this order by install_core
F_LOCAL = "LOCAL"
F_CAT = "CAT"
F_HEAD = "HEAD"
F_SUBCAT = "SUBCAT"
F_CONT = "CONT"
F_PER = "PER"
F_NONLOC = "NONLOC"
F_INHER = "INHER"
F_EXTRA = "EXTRA"
F_SLASH = "SLASH"
F_MOD = "MOD"
F_FORM = "FORM"
F_INV = "INV"
F_SORT = "SORT"
F_FIRST = "FIRST"
F_REST = "REST"

MAX_SET = 6
X_SLOTS = tuple(f"X{i}" for i in range(MAX_SET))
Y_SLOTS = tuple(f"Y{i}" for i in range(MAX_SET))

CORE_FEATURES = (
    F_LOCAL, F_CAT, F_HEAD, F_SUBCAT, F_CONT, F_PER, F_NONLOC, F_INHER,
    F_EXTRA, F_SLASH, F_MOD, F_FORM, F_INV, F_SORT, F_FIRST, F_REST,
) + X_SLOTS + Y_SLOTS

# structural types owned by the engine
T_SIGN = "sign"
T_WORD = "word"
T_PHRASE = "phrase"
T_LOCAL = "local"
T_CAT = "cat"
T_CONT = "cont"
T_NONLOC = "nonloc"
T_INHER = "inher"
T_ESET = "eset"
T_SSET = "sset"
T_LIST = "list"
T_NELIST = "ne-list"
T_NELIST_S = "ne-list-s"  # cons cell holding the subject/specifier member
T_ELIST = "e-list"

# grammar-owned types the engine refers to by name
T_PERIPHERY = "periphery"
T_EXTRA = "extra"
T_NONEXTRA = "non-extra"
T_LEFT = "left"
T_RIGHT = "right"
T_HEADT = "head"
T_NOUN = "noun"
T_VERB = "verb"
T_PREP = "prep"
T_REL = "rel"
T_ADV = "adv"
T_DET = "det"
T_CONJ = "conj"
T_VORP = "verb-or-prep"
T_PORR = "prep-or-rel"
T_BOOL = "bool"
T_PLUS = "plus"
T_MINUS = "minus"
T_FORMT = "form"
T_SORT = "sort"

REQUIRED_GRAMMAR_TYPES = (
    T_PERIPHERY, T_EXTRA, T_NONEXTRA, T_LEFT, T_RIGHT, T_HEADT, T_NOUN,
    T_VERB, T_PREP, T_REL, T_ADV, T_DET, T_CONJ, T_VORP, T_PORR, T_BOOL,
    T_PLUS, T_MINUS, T_FORMT,
)


def install_core(hier: TypeHierarchy):
    """Add engine-owned structural types and intern all core features."""
    hier.add_type(T_SIGN)
    hier.add_type(T_WORD, [T_SIGN])
    hier.add_type(T_PHRASE, [T_SIGN])
    for t in (T_LOCAL, T_CAT, T_CONT, T_NONLOC, T_INHER, T_ESET, T_SSET):
        hier.add_type(t)
    hier.add_type(T_LIST)
    hier.add_type(T_NELIST, [T_LIST])
    hier.add_type(T_NELIST_S, [T_NELIST])
    hier.add_type(T_ELIST, [T_LIST])
    for f in CORE_FEATURES:
        hier.add_feature(f)


class Sign:
    """A word or phrase: token list plus the canonical sign graph."""

    __slots__ = ("phon", "fs", "extra_tags", "slash_tags", "_hash")

    def __init__(self, phon: tuple[str, ...], fs: FeatureStructure,
                 extra_tags: tuple[str, ...], slash_tags: tuple[str, ...]):
        self.phon = phon
        self.fs = fs
        self.extra_tags = extra_tags
        self.slash_tags = slash_tags
        self._hash = hash((phon, fs))

    def __eq__(self, other):
        return (isinstance(other, Sign) and self.phon == other.phon
                and self.fs == other.fs)

    def __hash__(self):
        return self._hash

    @property
    def key(self):
        return (self.phon, self.fs.key)

    def __repr__(self):
        kind = "word" if self.lexical else "phrase"
        return f"<{kind} {' '.join(self.phon)!r}>"

    # -- geometry ------------------------------------------------------

    @property
    def lexical(self) -> bool:
        return self.fs.type_name(0) == T_WORD

    @property
    def local(self) -> int:
        return self.fs.get(0, F_LOCAL)

    @property
    def cat(self) -> int:
        return self.fs.resolve((F_LOCAL, F_CAT))

    @property
    def head(self) -> int:
        return self.fs.resolve((F_LOCAL, F_CAT, F_HEAD))

    def head_pos(self) -> str:
        return self.fs.type_name(self.head)

    def form(self) -> str | None:
        n = self.fs.get(self.head, F_FORM)
        return None if n is None else self.fs.type_name(n)

    def per(self) -> str:
        node = self.fs.resolve((F_LOCAL, F_PER))
        return T_PERIPHERY if node is None else self.fs.type_name(node)

    def subcat(self) -> list[int]:
        """Member local nodes in list order."""
        return [m for _, m, _ in self.subcat_cells()]

    def subcat_cells(self) -> list[tuple[int, int, bool]]:
        """(cell node, member node, is-subject-cell) triples in list order."""
        hier = self.fs.hier
        node = self.fs.resolve((F_LOCAL, F_CAT, F_SUBCAT))
        out = []
        while node is not None and hier.subsumes(T_NELIST, self.fs.type_name(node)):
            out.append((node, self.fs.get(node, F_FIRST),
                        self.fs.type_name(node) == T_NELIST_S))
            node = self.fs.get(node, F_REST)
        return out

    def saturated(self) -> bool:
        return not self.subcat()

    def extra_nodes(self) -> list[int]:
        eset = self.fs.resolve((F_NONLOC, F_INHER, F_EXTRA))
        return [d for _, d in self.fs.arcs[eset]]

    def slash_nodes(self) -> list[int]:
        sset = self.fs.resolve((F_NONLOC, F_INHER, F_SLASH))
        return [d for _, d in self.fs.arcs[sset]]

    @property
    def n_extra(self) -> int:
        return len(self.extra_tags)

    @property
    def n_slash(self) -> int:
        return len(self.slash_tags)

    def head_subsumed_by(self, type_name: str) -> bool:
        return self.fs.hier.subsumes(type_name, self.head_pos())


def periphery_of(sign: Sign) -> str:
    """The sign's periphery value, resolved against the lattice."""
    return sign.per()


def make_list(ws: Workspace, members: list[int], subj_last: bool = False) -> int:
    """Cons list over workspace nodes; returns the head-of-list node.

    With ``subj_last`` the final cell is typed as the subject/specifier slot,
    which the realization schemata consume in a separate prefixed step.
    """
    node = ws.node(T_ELIST)
    for i, m in enumerate(reversed(members)):
        cell = ws.node(T_NELIST_S if subj_last and i == 0 else T_NELIST)
        ws.arc(cell, F_FIRST, m)
        ws.arc(cell, F_REST, node)
        node = cell
    return node


def subcat_without(ws: Workspace, off: int, sign: Sign, drop_index: int) -> int:
    """Workspace node for the sign's SUBCAT minus one cell.

    Cells before the dropped one are fresh copies (same cell type, same
    member node); the tail after it is shared with the original list.
    """
    cells = sign.subcat_cells()
    node = off + sign.fs.get(cells[drop_index][0], F_REST)
    for cell, member, is_subj in reversed(cells[:drop_index]):
        fresh = ws.node(T_NELIST_S if is_subj else T_NELIST)
        ws.arc(fresh, F_FIRST, off + member)
        ws.arc(fresh, F_REST, node)
        node = fresh
    return node


def assemble_sign(ws: Workspace, phon: tuple[str, ...], lexical: bool,
                  local: int, extra: list[tuple[int, str]],
                  slash: list[tuple[int, str]]) -> Sign | None:
    """Pack a workspace into a canonical Sign. None on unification failure."""
    if len(extra) > MAX_SET or len(slash) > MAX_SET:
        return None
    root = ws.node(T_WORD if lexical else T_PHRASE)
    nonloc = ws.node(T_NONLOC)
    inher = ws.node(T_INHER)
    eset = ws.node(T_ESET)
    sset = ws.node(T_SSET)
    ws.arc(root, F_LOCAL, local)
    ws.arc(root, F_NONLOC, nonloc)
    ws.arc(nonloc, F_INHER, inher)
    ws.arc(inher, F_EXTRA, eset)
    ws.arc(inher, F_SLASH, sset)
    for i, (n, _) in enumerate(extra):
        ws.arc(eset, X_SLOTS[i], n)
    for i, (n, _) in enumerate(slash):
        ws.arc(sset, Y_SLOTS[i], n)
    keep = tuple(n for n, _ in extra) + tuple(n for n, _ in slash)
    packed = ws.pack(root, keep)
    if packed is None:
        return None
    fs, kept = packed
    etags = tuple(t for _, t in extra)
    stags = tuple(t for _, t in slash)
    fs, etags, stags = _canonical_member_order(
        fs, kept[:len(extra)], etags, kept[len(extra):], stags)
    return Sign(tuple(phon), fs, etags, stags)


def _relabel_members(fs: FeatureStructure, eorder, epos, sorder, spos):
    """Re-wire X/Y slots per the given member order and repack."""
    ws = Workspace(fs.hier)
    ws.add(fs)
    eset = fs.resolve((F_NONLOC, F_INHER, F_EXTRA))
    sset = fs.resolve((F_NONLOC, F_INHER, F_SLASH))
    for setnode, slots, order, pos in (
            (eset, X_SLOTS, eorder, epos), (sset, Y_SLOTS, sorder, spos)):
        ws.arcs[setnode] = {}
        for i, j in enumerate(order):
            ws.arc(setnode, slots[i], pos[j])
    packed = ws.pack(0)
    assert packed is not None
    return packed[0]


def _canonical_member_order(fs, epos, etags, spos, stags):
    """Sort set members by standalone canonical key; minimize over ties."""
    if not epos and not spos:
        return fs, etags, stags
    ekeys = [fs.extract(p).key for p in epos]
    skeys = [fs.extract(p).key for p in spos]
    ebase = sorted(range(len(epos)), key=lambda i: (ekeys[i], i))
    sbase = sorted(range(len(spos)), key=lambda i: (skeys[i], i))

    def tie_groups(base, keys):
        groups, i = [], 0
        while i < len(base):
            j = i
            while j + 1 < len(base) and keys[base[j + 1]] == keys[base[i]]:
                j += 1
            if j > i:
                groups.append((i, j + 1))
            i = j + 1
        return groups

    egroups = tie_groups(ebase, ekeys)
    sgroups = tie_groups(sbase, skeys)
    if not egroups and not sgroups:
        result = _relabel_members(fs, ebase, epos, sbase, spos)
        return (result, tuple(etags[i] for i in ebase),
                tuple(stags[i] for i in sbase))

    def variants(base, groups):
        outs = [list(base)]
        for lo, hi in groups:
            outs = [
                o[:lo] + list(p) + o[hi:]
                for o in outs for p in permutations(o[lo:hi])
            ]
        return outs

    best = None
    for eo in variants(ebase, egroups):
        for so in variants(sbase, sgroups):
            cand = _relabel_members(fs, eo, epos, so, spos)
            entry = (cand.key, tuple(eo), tuple(so), cand)
            if best is None or entry[:3] < best[:3]:
                best = entry
    _, eo, so, result = best
    return (result, tuple(etags[i] for i in eo),
            tuple(stags[i] for i in so))
