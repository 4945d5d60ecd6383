"""Immediate-dominance schemata, the Nonlocal Feature Principle, the
Periphery Marking Condition, and the linear-precedence constraints.

Licensing is purely functional: every builder takes daughter signs in
surface order and returns zero or more ``SchemaResult``s; failure of any
condition simply yields nothing. The chart and the brute-force enumerator
both go through ``apply_schemata``, so they license exactly the same trees.

Head-complement realization follows the head's pattern:

* ``flat``  - head word takes all its non-subject members at once,
  head-initial (all non-verbs; English non-inverted verbs). With no
  members this is the unary word-to-phrase projection.
* ``inv``   - inverted verbs take one member per step, head-initial,
  subject slot first (English subject-aux inversion; German verb-first,
  which head-filler turns into verb-second).
* ``final`` - German non-inverted verbs take one member per step,
  head-final, innermost member first.

The subject/specifier slot (the dedicated final SUBCAT cell) is realized by
a separate step that puts the subject in front of a phrasal head.
"""

from __future__ import annotations

from itertools import permutations
from typing import NamedTuple

from .fs import Workspace
from .signs import (
    Sign, assemble_sign, subcat_without,
    F_LOCAL, F_CAT, F_HEAD, F_SUBCAT, F_CONT, F_PER, F_MOD, F_FORM, F_INV,
    T_CAT, T_CONT, T_LOCAL,
    T_VERB, T_PREP, T_REL, T_CONJ, T_LEFT, T_RIGHT, T_EXTRA, T_PLUS,
)

S_COMP = "head-complement"
S_ADJ = "head-adjunct"
S_FILLER = "head-filler"
S_EXTRA = "head-extra"
S_COORD = "coordination"

FORM_PART = "part"
FORM_FIN = "fin"


class SchemaResult(NamedTuple):
    schema: str
    mother: Sign
    head_index: int                 # -1 for the unheaded coordination
    extra_indices: tuple[int, ...]  # daughter positions of EXTRA-DTRS
    bound_extra: tuple[str, ...]    # source tags of consumed EXTRA members
    bound_slash: tuple[str, ...]
    note: str | None


# -- the Periphery Marking Condition ------------------------------------

def mark_periphery(schema: str, daughters: list[Sign],
                   head_index: int) -> tuple[str, str | None]:
    """Periphery of a headed, non-extraposition phrase.

    left iff some daughter carries inherited EXTRA and is (a) the rightmost
    daughter and phrasal, or (b) the head daughter, lexical and [PER left];
    otherwise right. Also reports when both clauses fire at once.
    """
    a_hit = b_hit = False
    last = len(daughters) - 1
    for i, d in enumerate(daughters):
        if d.n_extra == 0:
            continue
        if i == last and not d.lexical:
            a_hit = True
        if i == head_index and d.lexical and d.per() == T_LEFT:
            b_hit = True
    note = "pmc-both-clauses" if (a_hit and b_hit) else None
    return (T_LEFT if (a_hit or b_hit) else T_RIGHT), note


# -- linear precedence ----------------------------------------------------

def _lp_class(sign: Sign) -> str | None:
    if sign.head_subsumed_by(T_PREP):
        return "p"
    if sign.head_subsumed_by(T_VERB) or sign.head_subsumed_by(T_REL):
        return "v"
    return None


def check_lp(daughters: list[Sign], schema: str) -> bool:
    """Head before extra daughters; prepositional extra daughters before
    sentential or relative ones. Other orders are free."""
    if schema != S_EXTRA or len(daughters) < 2:
        return True
    classes = [_lp_class(d) for d in daughters[1:]]
    seen_v = False
    for c in classes:
        if c == "v":
            seen_v = True
        elif c == "p" and seen_v:
            return False
    return True


# -- the Nonlocal Feature Principle ---------------------------------------

def percolate_nonlocal(daughters: list[Sign],
                       bound_extra: dict[str, int] | None = None,
                       bound_slash: dict[str, int] | None = None):
    """Mother nonlocal sets as tag multisets: daughter union minus bound.

    Returns ``(extra, slash)`` as sorted tag tuples, or None when something
    not inherited from any daughter is bound (schema failure, not an error).
    """
    def collect(tags_of):
        pool: dict[str, int] = {}
        for d in daughters:
            for t in tags_of(d):
                pool[t] = pool.get(t, 0) + 1
        return pool

    def subtract(pool, bound):
        for t, k in (bound or {}).items():
            if pool.get(t, 0) < k:
                return None
            pool[t] -= k
        return tuple(sorted(t for t, k in pool.items() for _ in range(k)))

    extra = subtract(collect(lambda d: d.extra_tags), bound_extra)
    slash = subtract(collect(lambda d: d.slash_tags), bound_slash)
    if extra is None or slash is None:
        return None
    return extra, slash


def _inherit(ws: Workspace, offs, daughters,
             skip_extra: set[tuple[int, int]] = frozenset(),
             skip_slash: set[tuple[int, int]] = frozenset()):
    extra, slash = [], []
    for i, d in enumerate(daughters):
        for j, (node, tag) in enumerate(zip(d.extra_nodes(), d.extra_tags)):
            if (i, j) not in skip_extra:
                extra.append((offs[i] + node, tag))
        for j, (node, tag) in enumerate(zip(d.slash_nodes(), d.slash_tags)):
            if (i, j) not in skip_slash:
                slash.append((offs[i] + node, tag))
    return extra, slash


def _phon(daughters) -> tuple[str, ...]:
    out: tuple[str, ...] = ()
    for d in daughters:
        out += d.phon
    return out


# -- head-complement family ----------------------------------------------

def realization(grammar, head: Sign) -> str:
    if head.head_subsumed_by(T_VERB):
        fs = head.fs
        inv = fs.get(head.head, F_INV)
        if inv is not None and fs.hier.subsumes(T_PLUS, fs.type_name(inv)):
            return "inv"
        if grammar.language == "de":
            return "final"
    return "flat"


def _member_wants_word(fs, member: int) -> bool:
    form = fs.resolve((F_CAT, F_HEAD, F_FORM), start=member)
    return form is not None and fs.type_name(form) == FORM_PART


def _complement_ok(head: Sign, member: int, comp: Sign) -> bool:
    if _member_wants_word(head.fs, member):
        if not comp.lexical:
            return False
    elif comp.lexical:
        return False
    # upward boundedness: a complete clause is [INHER|EXTRA {}] wherever
    # it is selected
    if (not comp.lexical and comp.head_subsumed_by(T_VERB)
            and comp.saturated() and comp.n_extra > 0):
        return False
    return True


def _comp_mother(grammar, daughters, head_index, head, offs, ws,
                 subcat_node, merges) -> SchemaResult | None:
    for a, b in merges:
        ws.merge(a, b)
    cat = ws.node(T_CAT)
    ws.arc(cat, F_HEAD, offs[head_index] + head.head)
    ws.arc(cat, F_SUBCAT, subcat_node)
    local = ws.node(T_LOCAL)
    ws.arc(local, F_CAT, cat)
    ws.arc(local, F_CONT, offs[head_index] + head.fs.resolve((F_LOCAL, F_CONT)))
    per, note = mark_periphery(S_COMP, daughters, head_index)
    ws.arc(local, F_PER, ws.node(per))
    extra, slash = _inherit(ws, offs, daughters)
    mother = assemble_sign(ws, _phon(daughters), False, local, extra, slash)
    if mother is None:
        return None
    return SchemaResult(S_COMP, mother, head_index, (), (), (), note)


def saturate_flat(grammar, head: Sign, comps: list[Sign]) -> SchemaResult | None:
    """Head word plus all non-subject members at once, head-initial."""
    if not head.lexical or realization(grammar, head) != "flat":
        return None
    cells = head.subcat_cells()
    plains = [(i, m) for i, (_, m, subj) in enumerate(cells) if not subj]
    if len(plains) != len(comps):
        return None
    for (_, member), comp in zip(plains, comps):
        if not _complement_ok(head, member, comp):
            return None
    daughters = [head] + comps
    ws = Workspace(head.fs.hier)
    offs = [ws.add(d.fs) for d in daughters]
    merges = [(offs[0] + m, offs[1 + k] + comps[k].local)
              for k, (_, m) in enumerate(plains)]
    if plains:
        tail = offs[0] + head.fs.get(cells[plains[-1][0]][0], "REST")
    else:
        tail = offs[0] + head.fs.resolve((F_LOCAL, F_CAT, F_SUBCAT))
    return _comp_mother(grammar, daughters, 0, head, offs, ws, tail, merges)


def _one_step(grammar, head: Sign, comp: Sign, cell_index: int,
              head_first: bool) -> SchemaResult | None:
    cells = head.subcat_cells()
    member = cells[cell_index][1]
    if not _complement_ok(head, member, comp):
        return None
    daughters = [head, comp] if head_first else [comp, head]
    head_index = 0 if head_first else 1
    ws = Workspace(head.fs.hier)
    offs = [ws.add(d.fs) for d in daughters]
    off_h, off_c = offs[head_index], offs[1 - head_index]
    merges = [(off_h + member, off_c + comp.local)]
    tail = subcat_without(ws, off_h, head, cell_index)
    return _comp_mother(grammar, daughters, head_index, head, offs, ws,
                        tail, merges)


def saturate_inv_step(grammar, head: Sign, comp: Sign) -> SchemaResult | None:
    """One head-initial step of an inverted verb: subject slot first, then
    the remaining members in order."""
    if realization(grammar, head) != "inv":
        return None
    cells = head.subcat_cells()
    if not cells:
        return None
    subj = [i for i, (_, _, s) in enumerate(cells) if s]
    idx = subj[0] if subj else 0
    return _one_step(grammar, head, comp, idx, head_first=True)


def saturate_final_step(grammar, comp: Sign, head: Sign) -> SchemaResult | None:
    """One head-final step of a German non-inverted verb, innermost member
    first (so the list order equals the surface order left of the head)."""
    if realization(grammar, head) != "final":
        return None
    plains = [i for i, (_, _, s) in enumerate(head.subcat_cells()) if not s]
    if not plains:
        return None
    return _one_step(grammar, head, comp, plains[-1], head_first=False)


def subject_step(grammar, comp: Sign, head: Sign) -> SchemaResult | None:
    """Subject or specifier in front of a phrasal head with exactly the
    subject slot left open."""
    if head.lexical:
        return None
    cells = head.subcat_cells()
    if len(cells) != 1 or not cells[0][2]:
        return None
    return _one_step(grammar, head, comp, 0, head_first=False)


def unary_projection(grammar, word: Sign) -> SchemaResult | None:
    """Zero-complement saturation: projects a word to a phrase."""
    if not word.lexical or realization(grammar, word) != "flat":
        return None
    if any(not subj for _, _, subj in word.subcat_cells()):
        return None
    return saturate_flat(grammar, word, [])


def build_head_complement(grammar, head: Sign,
                          complements: list[Sign]) -> Sign | None:
    """Convenience wrapper: saturate ``head`` with the given complements
    under the head's own realization pattern. Returns the mother sign."""
    pattern = realization(grammar, head)
    if pattern == "flat":
        r = saturate_flat(grammar, head, list(complements))
        return r.mother if r else None
    current = head
    for comp in complements:
        r = (saturate_inv_step(grammar, current, comp) if pattern == "inv"
             else saturate_final_step(grammar, comp, current))
        if r is None:
            return None
        current = r.mother
    return current


# -- head-adjunct ----------------------------------------------------------

def build_head_adjunct(grammar, head: Sign, adjunct: Sign) -> SchemaResult | None:
    """Postmodifying adjunct; succeeds iff the adjunct's MOD|LOC unifies
    with the head's LOCAL (in particular its [PER non-extra] requirement)."""
    if head.lexical or adjunct.lexical or not adjunct.saturated():
        return None
    mod = adjunct.fs.get(adjunct.head, F_MOD)
    if mod is None:
        return None
    daughters = [head, adjunct]
    ws = Workspace(head.fs.hier)
    offs = [ws.add(d.fs) for d in daughters]
    ws.merge(offs[1] + mod, offs[0] + head.local)
    local = ws.node(T_LOCAL)
    ws.arc(local, F_CAT, offs[0] + head.cat)
    ws.arc(local, F_CONT, offs[1] + adjunct.fs.resolve((F_LOCAL, F_CONT)))
    per, note = mark_periphery(S_ADJ, daughters, 0)
    ws.arc(local, F_PER, ws.node(per))
    extra, slash = _inherit(ws, offs, daughters)
    mother = assemble_sign(ws, _phon(daughters), False, local, extra, slash)
    if mother is None:
        return None
    return SchemaResult(S_ADJ, mother, 0, (), (), (), note)


# -- head-filler -----------------------------------------------------------

def build_head_filler(grammar, filler: Sign, head: Sign) -> list[SchemaResult]:
    """Bind one SLASH member of a finite clause against a fronted filler.
    The filler's own inherited EXTRA percolates to the mother, which is what
    licenses extraposition from fronted phrases."""
    if (filler.lexical or head.lexical or head.n_slash == 0
            or not head.head_subsumed_by(T_VERB) or head.form() != FORM_FIN
            or not head.saturated()):
        return []
    out, seen = [], set()
    daughters = [filler, head]
    for j, member in enumerate(head.slash_nodes()):
        ws = Workspace(head.fs.hier)
        offs = [ws.add(d.fs) for d in daughters]
        ws.merge(offs[0] + filler.local, offs[1] + member)
        local = ws.node(T_LOCAL)
        ws.arc(local, F_CAT, offs[1] + head.cat)
        ws.arc(local, F_CONT, offs[1] + head.fs.resolve((F_LOCAL, F_CONT)))
        per, note = mark_periphery(S_FILLER, daughters, 1)
        ws.arc(local, F_PER, ws.node(per))
        extra, slash = _inherit(ws, offs, daughters, skip_slash={(1, j)})
        mother = assemble_sign(ws, _phon(daughters), False, local, extra, slash)
        if mother is None or mother.key in seen:
            continue
        seen.add(mother.key)
        out.append(SchemaResult(S_FILLER, mother, 1, (),
                                (), (head.slash_tags[j],), note))
    return out


# -- head-extra ------------------------------------------------------------

def build_head_extra(grammar, head: Sign,
                     extra_dtrs: list[Sign]) -> list[SchemaResult]:
    """Bind the head's entire inherited EXTRA set as rightward sisters.

    The head must be phrasal and [PER right]; every inherited member is
    consumed at once, each against one extra daughter; the mother is
    [PER extra] with empty inherited EXTRA. English requires both SLASH and
    EXTRA of each extra daughter to be empty, German only EXTRA.
    """
    k = len(extra_dtrs)
    if (k == 0 or head.lexical or head.n_extra != k
            or head.fs.hier.meet(head.per(), T_RIGHT) is None):
        return []
    english = grammar.language == "en"
    for d in extra_dtrs:
        if d.lexical or d.n_extra > 0 or (english and d.n_slash > 0):
            return []
    daughters = [head] + extra_dtrs
    if not check_lp(daughters, S_EXTRA):
        return []
    members = head.extra_nodes()
    tags = head.extra_tags
    out, seen = [], set()
    for perm in permutations(range(k)):
        ws = Workspace(head.fs.hier)
        offs = [ws.add(d.fs) for d in daughters]
        for dtr_i, mem_i in enumerate(perm):
            ws.merge(offs[0] + members[mem_i],
                     offs[1 + dtr_i] + extra_dtrs[dtr_i].local)
        local = ws.node(T_LOCAL)
        ws.arc(local, F_CAT, offs[0] + head.cat)
        ws.arc(local, F_CONT, offs[0] + head.fs.resolve((F_LOCAL, F_CONT)))
        ws.arc(local, F_PER, ws.node(T_EXTRA))
        skip = {(0, j) for j in range(k)}  # all of the head's EXTRA is bound
        extra, slash = _inherit(ws, offs, daughters, skip_extra=skip)
        mother = assemble_sign(ws, _phon(daughters), False, local, extra, slash)
        if mother is None or mother.key in seen:
            continue
        seen.add(mother.key)
        out.append(SchemaResult(
            S_EXTRA, mother, 0, tuple(range(1, k + 1)),
            tuple(tags[mem_i] for mem_i in perm), (), None))
    return out


# -- coordination -----------------------------------------------------------

def build_coordination(grammar, conjuncts: list[Sign],
                       conjunction: Sign) -> list[SchemaResult]:
    """Conjunct CATs and NONLOC sets unify pairwise and are shared with the
    mother (split antecedents); the mother is stipulated [PER right]."""
    if len(conjuncts) < 2 or not conjunction.lexical:
        return []
    if not conjunction.head_subsumed_by(T_CONJ):
        return []
    first, rest = conjuncts[0], conjuncts[1:]
    if any(c.lexical for c in conjuncts):
        return []
    if any(c.n_extra != first.n_extra or c.n_slash != first.n_slash
           for c in rest):
        return []
    daughters = conjuncts[:1] + [conjunction] + rest  # binary corpus case
    ne, ns = first.n_extra, first.n_slash
    out, seen = [], set()
    for eperm in permutations(range(ne)):
        for sperm in permutations(range(ns)):
            ws = Workspace(first.fs.hier)
            offs = [ws.add(d.fs) for d in daughters]
            o1 = offs[0]
            ws_extra = [(o1 + n, t) for n, t in
                        zip(first.extra_nodes(), first.extra_tags)]
            ws_slash = [(o1 + n, t) for n, t in
                        zip(first.slash_nodes(), first.slash_tags)]
            ok = True
            for c, oc in zip(rest, offs[2:]):
                ws.merge(o1 + first.cat, oc + c.cat)
                ce, cs = c.extra_nodes(), c.slash_nodes()
                for j, (node, tag) in enumerate(ws_extra):
                    ws.merge(node, oc + ce[eperm[j]])
                    ws_extra[j] = (node, f"{tag}&{c.extra_tags[eperm[j]]}")
                for j, (node, tag) in enumerate(ws_slash):
                    ws.merge(node, oc + cs[sperm[j]])
                    ws_slash[j] = (node, f"{tag}&{c.slash_tags[sperm[j]]}")
            if not ok:
                continue
            local = ws.node(T_LOCAL)
            ws.arc(local, F_CAT, o1 + first.cat)
            ws.arc(local, F_CONT, ws.node(T_CONT))
            ws.arc(local, F_PER, ws.node(T_RIGHT))
            mother = assemble_sign(ws, _phon(daughters), False, local,
                                   ws_extra, ws_slash)
            if mother is None or mother.key in seen:
                continue
            seen.add(mother.key)
            out.append(SchemaResult(S_COORD, mother, -1, (), (), (), None))
    return out


# -- dispatcher --------------------------------------------------------------

def apply_schemata(grammar, daughters: tuple[Sign, ...]) -> list[SchemaResult]:
    """Every licensed way to combine the daughters, in this surface order."""
    n = len(daughters)
    out: list[SchemaResult] = []
    on = grammar.schema_enabled

    def add(r):
        if r is not None:
            out.append(r)

    if n == 1 and on(S_COMP):
        add(unary_projection(grammar, daughters[0]))
        return out

    if n == 2:
        a, b = daughters
        if on(S_COMP):
            add(saturate_flat(grammar, a, [b]))
            add(saturate_inv_step(grammar, a, b))
            add(saturate_final_step(grammar, a, b))
            add(subject_step(grammar, a, b))
        if on(S_ADJ):
            add(build_head_adjunct(grammar, a, b))
        if on(S_FILLER):
            out.extend(build_head_filler(grammar, a, b))
        if on(S_EXTRA):
            out.extend(build_head_extra(grammar, a, [b]))
        return out

    if n == 3 and on(S_COORD):
        out.extend(build_coordination(
            grammar, [daughters[0], daughters[2]], daughters[1]))
    if on(S_COMP):
        add(saturate_flat(grammar, daughters[0], list(daughters[1:])))
    if on(S_EXTRA):
        out.extend(build_head_extra(grammar, daughters[0], list(daughters[1:])))
    return out


def is_root(grammar, sign: Sign) -> bool:
    """Root admissibility: a finite clause with empty nonlocal sets."""
    return (not sign.lexical and sign.head_subsumed_by(T_VERB)
            and sign.form() in grammar.params.root_forms
            and sign.saturated()
            and sign.n_extra == 0 and sign.n_slash == 0)
