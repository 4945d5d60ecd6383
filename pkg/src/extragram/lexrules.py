"""Lexical rules and the lexicon closure.

Four rules produce the variants of each lexicon entry:

* complement extraposition (CELR): a saturated verbal or prepositional
  SUBCAT member moves into the inherited EXTRA set; the removed member and
  the new EXTRA element are the same node.
* adjunct extraposition (AELR): adds an EXTRA element describing a saturated
  prepositional or relative phrase whose modifiee is the entry's own LOCAL
  and whose semantics is the entry's own CONT (both by structure sharing).
  Recursive up to a configured depth; English restricts it to nouns, German
  allows nouns and verbs.
* INV periphery marking: German non-inverted verbs become [PER right],
  everything else [PER left].
* complement extraction: a SUBCAT member moves into the inherited SLASH set
  (as a periphery-relaxed copy, so fronted partial phrases stay licensable).

Rule application is bounded structurally, so closing an already-closed
lexicon adds nothing: the AELR applies while an entry carries fewer
self-modifying EXTRA members than the depth bound, and CELR/extraction apply
while the entry carries no complement-sourced EXTRA / no SLASH member.
"""

from __future__ import annotations

from .fs import Workspace
from .signs import (
    Sign, assemble_sign,
    F_LOCAL, F_CAT, F_HEAD, F_SUBCAT, F_CONT, F_PER, F_MOD, F_FORM, F_INV,
    F_FIRST, F_REST,
    T_LOCAL, T_CAT, T_ELIST, T_NELIST, T_NELIST_S,
    T_VERB, T_DET, T_VORP, T_PORR, T_LEFT, T_RIGHT, T_MINUS,
)

# verbal SUBCAT members with these forms are cluster/predicative material,
# not clausal complements; they stay out of EXTRA
NON_CLAUSAL_FORMS = ("part", "bse", "inf")

TAG_CELR = "celr"
TAG_SLASH = "slash"
TAG_EXPL = "expl"


class ClosureError(Exception):
    """Lexicon closure exceeded its configured bound."""


def classify_extra_members(entry: Sign) -> tuple[int, int, int]:
    """(aelr-like, celr-like, expletive-like) member counts of a word.

    AELR output is recognizable by the modifiee sharing (MOD|LOC is the
    entry's own LOCAL); expletive members share the entry's CONT without the
    modifiee link; anything else came from the CELR.
    """
    fs = entry.fs
    local = entry.local
    cont = fs.resolve((F_LOCAL, F_CONT))
    n_aelr = n_celr = n_expl = 0
    for m in entry.extra_nodes():
        mod = fs.resolve((F_CAT, F_HEAD, F_MOD), start=m)
        if mod is not None and mod == local:
            n_aelr += 1
        elif cont is not None and fs.get(m, F_CONT) == cont:
            n_expl += 1
        else:
            n_celr += 1
    return n_aelr, n_celr, n_expl


def apply_inv_periphery(entry: Sign, language: str) -> Sign:
    """Set the entry's PER: German [INV -] verbs right, all else left."""
    fs = entry.fs
    per = T_LEFT
    if language == "de" and entry.head_subsumed_by(T_VERB):
        inv = fs.get(entry.head, F_INV)
        if inv is not None and fs.hier.subsumes(T_MINUS, fs.type_name(inv)):
            per = T_RIGHT
    ws = Workspace(fs.hier)
    ws.add(fs)
    local = entry.local
    ws.drop_arc(local, F_PER)
    ws.arc(local, F_PER, ws.node(per))
    extra = list(zip(entry.extra_nodes(), entry.extra_tags))
    slash = list(zip(entry.slash_nodes(), entry.slash_tags))
    out = assemble_sign(ws, entry.phon, True, local, extra, slash)
    assert out is not None
    return out


def _rebuild_subcat_without(ws: Workspace, entry: Sign, drop_index: int) -> None:
    """Point the entry's CAT|SUBCAT at a list skipping one cell. Cells before
    the dropped one are fresh (same types, same members); the tail is shared.
    """
    fs = entry.fs
    cells = entry.subcat_cells()
    after = fs.get(cells[drop_index][0], F_REST)
    node = after
    for cell, member, is_subj in reversed(cells[:drop_index]):
        fresh = ws.node(T_NELIST_S if is_subj else T_NELIST)
        ws.arc(fresh, F_FIRST, member)
        ws.arc(fresh, F_REST, node)
        node = fresh
    ws.set_arc(entry.cat, F_SUBCAT, node)


def _with_members(entry: Sign):
    extra = list(zip(entry.extra_nodes(), entry.extra_tags))
    slash = list(zip(entry.slash_nodes(), entry.slash_tags))
    return extra, slash


def _celr_eligible(entry: Sign, member: int) -> bool:
    fs = entry.fs
    head = fs.resolve((F_CAT, F_HEAD), start=member)
    if head is None or not fs.hier.subsumes(T_VORP, fs.type_name(head)):
        return False
    sub = fs.get(fs.get(member, F_CAT), F_SUBCAT)
    if sub is None or fs.type_name(sub) != T_ELIST:
        return False  # only saturated complements extrapose
    if fs.hier.subsumes(T_VERB, fs.type_name(head)):
        form = fs.get(head, F_FORM)
        if form is not None and fs.type_name(form) in NON_CLAUSAL_FORMS:
            return False
    return True


def apply_celr(entry: Sign) -> list[Sign]:
    """Complement extraposition: one eligible SUBCAT member into EXTRA."""
    if not entry.lexical:
        return []
    out = []
    cells = entry.subcat_cells()
    for i, (_, member, _) in enumerate(cells):
        if not _celr_eligible(entry, member):
            continue
        ws = Workspace(entry.fs.hier)
        ws.add(entry.fs)
        _rebuild_subcat_without(ws, entry, i)
        extra, slash = _with_members(entry)
        extra.append((member, TAG_CELR))
        variant = assemble_sign(ws, entry.phon, True, entry.local, extra, slash)
        if variant is not None:
            out.append(variant)
    return out


def _aelr_once(entry: Sign, tag: str) -> Sign | None:
    ws = Workspace(entry.fs.hier)
    ws.add(entry.fs)
    local = entry.local
    cont = entry.fs.resolve((F_LOCAL, F_CONT))
    member = ws.node(T_LOCAL)
    mcat = ws.node(T_CAT)
    mhead = ws.node(T_PORR)
    ws.arc(member, F_CAT, mcat)
    ws.arc(mcat, F_HEAD, mhead)
    ws.arc(mcat, F_SUBCAT, ws.node(T_ELIST))
    ws.arc(mhead, F_MOD, local)    # modifiee is the entry's own LOCAL
    ws.arc(member, F_CONT, cont)   # semantics shared with the entry
    extra, slash = _with_members(entry)
    extra.append((member, tag))
    return assemble_sign(ws, entry.phon, True, local, extra, slash)


def apply_aelr(entry: Sign, language: str, max_depth: int) -> list[Sign]:
    """Adjunct extraposition, fed recursively up to ``max_depth`` members."""
    if not entry.lexical:
        return []
    allowed = (T_VERB,) if language == "de" else ()
    if not (entry.head_subsumed_by("noun")
            or any(entry.head_subsumed_by(t) for t in allowed)):
        return []
    out = []
    current = entry
    existing = classify_extra_members(entry)[0]
    for depth in range(existing + 1, max_depth + 1):
        current = _aelr_once(current, f"aelr{depth}")
        if current is None:
            break
        out.append(current)
    return out


def apply_complement_extraction(entry: Sign, language: str = "en") -> list[Sign]:
    """Move one SUBCAT member into SLASH.

    Determiner slots never extract (the result would re-derive the same
    string), and English subject slots are left alone. The slashed copy
    drops the member's PER constraint so that fronted partial phrases can
    fill the gap.
    """
    if not entry.lexical:
        return []
    out = []
    cells = entry.subcat_cells()
    for i, (_, member, is_subj) in enumerate(cells):
        head = entry.fs.resolve((F_CAT, F_HEAD), start=member)
        if head is not None and entry.fs.hier.subsumes(
                T_DET, entry.fs.type_name(head)):
            continue
        if is_subj and language == "en":
            continue
        ws = Workspace(entry.fs.hier)
        ws.add(entry.fs)
        _rebuild_subcat_without(ws, entry, i)
        slashed = ws.add_sub(entry.fs, member, drop=(F_PER,))
        extra, slash = _with_members(entry)
        slash.append((slashed, TAG_SLASH))
        variant = assemble_sign(ws, entry.phon, True, entry.local, extra, slash)
        if variant is not None:
            out.append(variant)
    return out


def close_entry(entry: Sign, language: str, max_depth: int,
                bound: int) -> list[Sign]:
    """All rule-closure variants of one entry, duplicate-free, base first."""
    base = apply_inv_periphery(entry, language)
    seen = {base.key: base}
    queue = [base]
    while queue:
        cur = queue.pop(0)
        n_aelr, n_celr, _ = classify_extra_members(cur)
        batch: list[Sign] = []
        if n_celr < 1:
            batch.extend(apply_celr(cur))
        if cur.n_slash < 1:
            batch.extend(apply_complement_extraction(cur, language))
        if n_aelr < max_depth:
            batch.extend(apply_aelr(cur, language, max_depth))
        for v in batch:
            if v.key not in seen:
                seen[v.key] = v
                queue.append(v)
                if len(seen) > bound:
                    raise ClosureError(
                        f"lexical-rule closure of {entry.phon[0]!r} exceeds "
                        f"{bound} variants")
    return list(seen.values())


def close_lexicon(lexicon: dict[str, list[Sign]], language: str,
                  max_depth: int, bound: int = 64) -> dict[str, tuple[Sign, ...]]:
    """Rule closure of every entry, keyed by surface form."""
    out: dict[str, tuple[Sign, ...]] = {}
    for form in lexicon:
        variants: list[Sign] = []
        seen = set()
        for entry in lexicon[form]:
            for v in close_entry(entry, language, max_depth, bound):
                if v.key not in seen:
                    seen.add(v.key)
                    variants.append(v)
        out[form] = tuple(variants)
    return out
