"""Derivation trees over packed charts: expansion, rendering, checks.

A packed edge may license several derivations; ``iter_trees`` expands them
into concrete trees (bounded), ``render_tree`` draws one with categories,
periphery values and binding annotations, and the check helpers implement
the shape assertions the corpus and acceptance suites rely on.
"""

from __future__ import annotations

from typing import NamedTuple

from .chart import Edge
from .signs import Sign, T_VERB
from .schemata import S_EXTRA


class Tree(NamedTuple):
    label: str                    # schema name or "lexical"
    sign: Sign
    span: tuple[int, int]
    children: tuple["Tree", ...]
    head_index: int
    extra_indices: tuple[int, ...]
    bound_extra: tuple[str, ...]
    bound_slash: tuple[str, ...]


def iter_trees(edge: Edge, limit: int = 1000):
    """All derivation trees under a packed edge, up to ``limit``."""
    count = [0]

    def expand(e: Edge):
        for der in e.derivations:
            if count[0] >= limit:
                return
            if der.schema == "lexical":
                count[0] += 1
                yield Tree("lexical", e.sign, e.span, (), 0, (), (), ())
                continue
            for kids in _product([expand_memo(d) for d in der.daughters]):
                if count[0] >= limit:
                    return
                count[0] += 1
                yield Tree(der.schema, e.sign, e.span, tuple(kids),
                           der.head_index, der.extra_indices,
                           der.bound_extra, der.bound_slash)

    memo: dict[int, list[Tree]] = {}

    def expand_memo(e: Edge):
        if e.index not in memo:
            memo[e.index] = list(expand(e))
        return memo[e.index]

    yield from expand(edge)


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _product(pools[1:]):
            yield (head,) + rest


def _cat_label(sign: Sign) -> str:
    pos = sign.head_pos()
    form = sign.form()
    sat = "" if sign.saturated() else f"/{len(sign.subcat())}"
    return f"{pos}{':' + form if form else ''}{sat}"


def render_tree(tree: Tree, show_bindings: bool = True, indent: str = "") -> str:
    """Labeled bracketing with schema names, categories and PER values."""
    phon = " ".join(tree.sign.phon)
    info = f"{_cat_label(tree.sign)} per={tree.sign.per()}"
    if tree.sign.n_extra:
        info += f" extra={{{', '.join(tree.sign.extra_tags)}}}"
    if tree.sign.n_slash:
        info += f" slash={{{', '.join(tree.sign.slash_tags)}}}"
    line = f"{indent}{tree.label} [{info}] {phon!r}"
    if show_bindings and tree.bound_extra:
        line += f"  <binds extra: {', '.join(tree.bound_extra)}>"
    if show_bindings and tree.bound_slash:
        line += f"  <binds slash: {', '.join(tree.bound_slash)}>"
    out = [line]
    for i, child in enumerate(tree.children):
        mark = ""
        if tree.label != "lexical":
            if i == tree.head_index:
                mark = "H "
            elif i in tree.extra_indices:
                mark = "E "
        out.append(render_tree(child, show_bindings, indent + "  " + mark))
    return "\n".join(out)


# -- shape checks -------------------------------------------------------

def head_extra_bindings(tree: Tree) -> list[tuple[Tree, str]]:
    """(binding site, bound tag) pairs over the whole tree."""
    out = []
    if tree.label == S_EXTRA:
        for tag in tree.bound_extra:
            out.append((tree, tag))
    for child in tree.children:
        out.extend(head_extra_bindings(child))
    return out


def binding_level(site: Tree) -> str:
    """'s' when the binding head is a saturated finite-verb projection
    (clause level), otherwise 'below-s' (VP or smaller, NP-internal...)."""
    head = site.children[site.head_index].sign
    if head.head_subsumed_by(T_VERB) and head.saturated():
        return "s"
    return "below-s"


def check_nesting(tree: Tree, subject_token: str, object_token: str) -> bool:
    """Subject-sourced material binds at clause level, object-sourced below.

    Tags carry 'token@position:rule', so the antecedent word is recoverable
    from each binding record.
    """
    ok = True
    for site, tag in head_extra_bindings(tree):
        word = tag.split("@", 1)[0]
        level = binding_level(site)
        if word == subject_token and level != "s":
            ok = False
        if word == object_token and level == "s":
            ok = False
    return ok


def no_stacked_head_extra(tree: Tree) -> bool:
    """No head-extra immediately on top of a head-extra mother."""
    if tree.label == S_EXTRA:
        head_child = tree.children[tree.head_index]
        if head_child.label == S_EXTRA:
            return False
    return all(no_stacked_head_extra(c) for c in tree.children)


def verify_nfp(edge: Edge) -> list[str]:
    """Check the Nonlocal Feature Principle on every derivation reachable
    from ``edge``: mother tag multisets equal daughter union minus bound.
    Returns a list of violation descriptions (empty when conserved)."""
    problems: list[str] = []
    seen: set[int] = set()

    def multiset(tags):
        out: dict[str, int] = {}
        for t in tags:
            out[t] = out.get(t, 0) + 1
        return out

    def visit(e: Edge):
        if e.index in seen:
            return
        seen.add(e.index)
        for der in e.derivations:
            if der.schema == "lexical":
                continue
            if der.schema == "coordination":
                # conjunct sets are shared with the mother, not unioned
                for d in der.daughters:
                    visit(d)
                continue
            for tags_of, bound, label in (
                    (lambda s: s.extra_tags, der.bound_extra, "EXTRA"),
                    (lambda s: s.slash_tags, der.bound_slash, "SLASH")):
                pool = multiset(
                    t for d in der.daughters for t in tags_of(d.sign))
                for t in bound:
                    if pool.get(t, 0) < 1:
                        problems.append(
                            f"{e!r} {der.schema}: binds non-inherited {t}")
                    else:
                        pool[t] -= 1
                if pool != multiset(tags_of(e.sign)):
                    problems.append(
                        f"{e!r} {der.schema}: {label} not conserved")
            for d in der.daughters:
                visit(d)

    visit(edge)
    return problems
