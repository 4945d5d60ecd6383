"""Grammar files: type hierarchy, language parameters, and lexicon.

Line-oriented text format, ``#`` comments, three sections:

    :params
    language en              # en | de
    aelr-max-depth 2
    root-forms fin           # clause forms admissible at the root
    :types
    periphery extra non-extra    # parent child child...
    @ local PER periphery        # appropriateness: type FEAT value-type
    :lexicon
    man   noun  sort=anim subcat=det*
    said  verb  form=fin subcat=s:that,np*
    with  prep  mod=np.anim subcat=np

Lexicon fields: ``form=<form-type>``, ``inv=+|-``, ``sort=<sort-type>``,
``subcat=<desc>,...``, ``mod=<desc>``, ``expletive-extra=<desc>``.

A description is a category shorthand plus optional marks:
``np pp s vp v advp det``, ``:x`` selects FORM x, ``.y`` selects SORT y,
``!nx`` adds [PER non-extra], and a trailing ``*`` (subcat only, last member
only) marks the subject/specifier slot, which is realized before the head.
``s``/``vp`` default to FORM fin; ``vp`` means one unsaturated member.
Modifier descriptions are always [PER non-extra], which is what keeps
adjuncts off extraposition mothers.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from .hierarchy import TypeHierarchy, HierarchyError
from .fs import Workspace
from .signs import (
    Sign, assemble_sign, make_list, install_core,
    F_CAT, F_HEAD, F_SUBCAT, F_CONT, F_PER, F_MOD, F_FORM, F_INV, F_SORT,
    T_LOCAL, T_CAT, T_CONT, T_ELIST, T_NELIST,
    T_NOUN, T_VERB, T_PREP, T_ADV, T_DET, T_PLUS, T_MINUS, T_NONEXTRA,
    REQUIRED_GRAMMAR_TYPES,
)
from . import lexrules


class GrammarError(Exception):
    def __init__(self, source: str, line_no: int, msg: str):
        super().__init__(f"{source}:{line_no}: {msg}")
        self.source = source
        self.line_no = line_no


# shorthand -> (head type, saturation): "sat" = SUBCAT <>, "one" = exactly
# one open slot, "free" = no SUBCAT constraint (used by modifiee descriptions,
# which must fit both bare words and their projections)
SHORTHANDS = {
    "np": (T_NOUN, "sat"),
    "n": (T_NOUN, "free"),
    "pp": (T_PREP, "sat"),
    "s": (T_VERB, "sat"),
    "vp": (T_VERB, "one"),
    "v": (T_VERB, "sat"),
    "advp": (T_ADV, "sat"),
    "det": (T_DET, "sat"),
}
DEFAULT_FORM = {"s": "fin", "vp": "fin"}


@dataclass
class Desc:
    """Parsed category description."""
    shorthand: str
    pos: str
    saturation: str          # "sat", "one" or "free"
    form: str | None = None
    sort: str | None = None
    non_extra: bool = False
    subject: bool = False

    def text(self) -> str:
        s = self.shorthand
        if self.form and self.form != DEFAULT_FORM.get(self.shorthand):
            s += f":{self.form}"
        if self.sort:
            s += f".{self.sort}"
        if self.non_extra:
            s += "!nx"
        if self.subject:
            s += "*"
        return s


@dataclass
class EntrySpec:
    """One parsed lexicon line; kept for dumping."""
    phon: str
    pos: str
    form: str | None = None
    inv: bool | None = None
    sort: str | None = None
    subcat: list[Desc] = field(default_factory=list)
    mod: Desc | None = None
    expletive_extra: Desc | None = None

    def text(self) -> str:
        parts = [self.phon, self.pos]
        if self.form:
            parts.append(f"form={self.form}")
        if self.inv is not None:
            parts.append(f"inv={'+' if self.inv else '-'}")
        if self.sort:
            parts.append(f"sort={self.sort}")
        if self.subcat:
            parts.append("subcat=" + ",".join(d.text() for d in self.subcat))
        if self.mod:
            parts.append(f"mod={self.mod.text()}")
        if self.expletive_extra:
            parts.append(f"expletive-extra={self.expletive_extra.text()}")
        return "  ".join(parts)


@dataclass
class Params:
    language: str = "en"
    aelr_max_depth: int = 2
    root_forms: tuple[str, ...] = ("fin",)
    closure_bound: int = 64
    edge_budget: int = 100_000
    schemata: tuple[str, ...] = (
        "head-complement", "head-adjunct", "head-filler", "head-extra",
        "coordination",
    )


class Grammar:
    def __init__(self, name: str, hier: TypeHierarchy, params: Params,
                 specs: list[EntrySpec], types_lines: list[str]):
        self.name = name
        self.hier = hier
        self.params = params
        self.specs = specs
        self.types_lines = types_lines
        self.base_lexicon: dict[str, list[Sign]] = {}
        self.lexicon: dict[str, tuple[Sign, ...]] = {}

    @property
    def language(self) -> str:
        return self.params.language

    def entries(self, token: str) -> tuple[Sign, ...]:
        return self.lexicon.get(token, ())

    def schema_enabled(self, name: str) -> bool:
        return name in self.params.schemata


def parse_desc(text: str, source: str, line_no: int) -> Desc:
    raw = text
    subject = text.endswith("*")
    if subject:
        text = text[:-1]
    non_extra = text.endswith("!nx")
    if non_extra:
        text = text[:-3]
    sort = None
    if "." in text:
        text, sort = text.split(".", 1)
    form = None
    if ":" in text:
        text, form = text.split(":", 1)
    if text not in SHORTHANDS:
        raise GrammarError(source, line_no, f"unknown category shorthand {raw!r}")
    pos, saturation = SHORTHANDS[text]
    form = form or DEFAULT_FORM.get(text)
    return Desc(text, pos, saturation, form, sort, non_extra, subject)


def build_desc(ws: Workspace, hier: TypeHierarchy, desc: Desc) -> int:
    """A description's local node in the workspace."""
    local = ws.node(T_LOCAL)
    cat = ws.node(T_CAT)
    head = ws.node(desc.pos)
    ws.arc(local, F_CAT, cat)
    ws.arc(cat, F_HEAD, head)
    if desc.saturation == "one":
        ws.arc(cat, F_SUBCAT, make_list(ws, [ws.node(T_LOCAL)]))
    elif desc.saturation == "sat":
        ws.arc(cat, F_SUBCAT, ws.node(T_ELIST))
    if desc.form:
        ws.arc(head, F_FORM, ws.node(desc.form))
    if desc.sort:
        ws.arc(head, F_SORT, ws.node(desc.sort))
    if desc.non_extra:
        ws.arc(local, F_PER, ws.node(T_NONEXTRA))
    return local


def build_entry(hier: TypeHierarchy, spec: EntrySpec) -> Sign:
    ws = Workspace(hier)
    local = ws.node(T_LOCAL)
    cat = ws.node(T_CAT)
    head = ws.node(spec.pos)
    cont = ws.node(T_CONT)
    ws.arc(local, F_CAT, cat)
    ws.arc(local, F_CONT, cont)
    ws.arc(cat, F_HEAD, head)
    if spec.form:
        ws.arc(head, F_FORM, ws.node(spec.form))
    if spec.inv is not None:
        ws.arc(head, F_INV, ws.node(T_PLUS if spec.inv else T_MINUS))
    if spec.sort:
        ws.arc(head, F_SORT, ws.node(spec.sort))
    members = [build_desc(ws, hier, d) for d in spec.subcat]
    subj_last = bool(spec.subcat) and spec.subcat[-1].subject
    ws.arc(cat, F_SUBCAT, make_list(ws, members, subj_last))
    if spec.mod:
        ws.arc(head, F_MOD, build_desc(ws, hier, spec.mod))
    extra = []
    if spec.expletive_extra:
        m = build_desc(ws, hier, spec.expletive_extra)
        ws.arc(m, F_CONT, cont)  # the clause's semantics is the expletive's
        extra.append((m, lexrules.TAG_EXPL))
    sign = assemble_sign(ws, (spec.phon,), True, local, extra, [])
    if sign is None:
        raise ValueError(f"inconsistent lexical entry {spec.phon!r}")
    return sign


def check_appropriateness(hier: TypeHierarchy, sign: Sign, source: str,
                          line_no: int):
    """Every arc on a node whose type declares features must be licensed."""
    fs = sign.fs
    for node in range(len(fs)):
        feats = hier.appropriate_features(fs.type_at(node))
        if not feats:
            continue
        for f, d in fs.arcs[node]:
            if f not in feats:
                raise GrammarError(
                    source, line_no,
                    f"feature {hier.feat_name(f)} not appropriate for type "
                    f"{fs.type_name(node)}")
            if not hier.subsumes_id(feats[f], fs.type_at(d)):
                raise GrammarError(
                    source, line_no,
                    f"value of {hier.feat_name(f)} on {fs.type_name(node)} "
                    f"must be {hier.name_of(feats[f])}, got {fs.type_name(d)}")


def _parse_params(params: Params, fields: list[str], source: str, n: int):
    key, vals = fields[0], fields[1:]
    if not vals:
        raise GrammarError(source, n, f"parameter {key!r} needs a value")
    if key == "language":
        if vals[0] not in ("en", "de"):
            raise GrammarError(source, n, f"language must be en or de")
        params.language = vals[0]
    elif key == "aelr-max-depth":
        params.aelr_max_depth = int(vals[0])
    elif key == "root-forms":
        params.root_forms = tuple(vals)
    elif key == "closure-bound":
        params.closure_bound = int(vals[0])
    elif key == "edge-budget":
        params.edge_budget = int(vals[0])
    elif key == "schemata":
        params.schemata = tuple(vals)
    else:
        raise GrammarError(source, n, f"unknown parameter {key!r}")


def _parse_entry(fields: list[str], source: str, n: int) -> EntrySpec:
    if len(fields) < 2:
        raise GrammarError(source, n, "lexicon line needs: form pos [fields]")
    spec = EntrySpec(phon=fields[0], pos=fields[1])
    for f in fields[2:]:
        if "=" not in f:
            raise GrammarError(source, n, f"malformed field {f!r}")
        key, val = f.split("=", 1)
        if key == "form":
            spec.form = val
        elif key == "inv":
            if val not in ("+", "-"):
                raise GrammarError(source, n, "inv must be + or -")
            spec.inv = val == "+"
        elif key == "sort":
            spec.sort = val
        elif key == "subcat":
            spec.subcat = [parse_desc(d, source, n) for d in val.split(",")]
            for d in spec.subcat[:-1]:
                if d.subject:
                    raise GrammarError(
                        source, n, "subject slot must be the last member")
        elif key == "mod":
            spec.mod = parse_desc(val, source, n)
            spec.mod.non_extra = True  # adjuncts select [MOD|LOC|PER non-extra]
        elif key == "expletive-extra":
            spec.expletive_extra = parse_desc(val, source, n)
        else:
            raise GrammarError(source, n, f"unknown field {key!r}")
    return spec


def loads_grammar(text: str, source: str = "<string>") -> Grammar:
    hier = TypeHierarchy()
    install_core(hier)
    params = Params()
    specs: list[EntrySpec] = []
    types_lines: list[str] = []
    approp_lines: list[tuple[list[str], int]] = []
    entry_lines: list[tuple[EntrySpec, int]] = []
    section = None
    for n, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(":"):
            if line not in (":params", ":types", ":lexicon"):
                raise GrammarError(source, n, f"unknown section {line!r}")
            section = line
            continue
        fields = line.split()
        if section == ":params":
            _parse_params(params, fields, source, n)
        elif section == ":types":
            types_lines.append(line)
            if fields[0] == "@":
                if len(fields) != 4:
                    raise GrammarError(source, n, "use: @ type FEAT value-type")
                approp_lines.append((fields[1:], n))
            else:
                hier.add_type(fields[0])
                for child in fields[1:]:
                    hier.add_type(child, [fields[0]])
        elif section == ":lexicon":
            spec = _parse_entry(fields, source, n)
            specs.append(spec)
            entry_lines.append((spec, n))
        else:
            raise GrammarError(source, n, "content before any section header")

    for t in REQUIRED_GRAMMAR_TYPES:
        if not hier.has_type(t):
            raise GrammarError(source, 0, f"grammar must declare type {t!r}")
    for (tname, feat, vtype), n in approp_lines:
        try:
            hier.declare_appropriate(tname, feat, vtype)
        except HierarchyError as e:
            raise GrammarError(source, n, str(e))
    try:
        hier.freeze()
    except HierarchyError as e:
        raise GrammarError(source, 0, str(e))

    grammar = Grammar(source, hier, params, specs, types_lines)
    for spec, n in entry_lines:
        try:
            entry = build_entry(hier, spec)
        except HierarchyError as e:
            raise GrammarError(source, n, str(e))
        check_appropriateness(hier, entry, source, n)
        grammar.base_lexicon.setdefault(spec.phon, []).append(entry)
    grammar.lexicon = lexrules.close_lexicon(
        grammar.base_lexicon, params.language, params.aelr_max_depth,
        params.closure_bound)
    return grammar


def load_grammar(path: str) -> Grammar:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return loads_grammar(text, source=str(path))


def dump_grammar(grammar: Grammar) -> str:
    """Regenerate grammar text from the parsed representation; reloading the
    dump yields an isomorphic closed lexicon."""
    p = grammar.params
    out = [":params",
           f"language {p.language}",
           f"aelr-max-depth {p.aelr_max_depth}",
           "root-forms " + " ".join(p.root_forms),
           f"closure-bound {p.closure_bound}",
           f"edge-budget {p.edge_budget}",
           "schemata " + " ".join(p.schemata),
           ":types"]
    out.extend(grammar.types_lines)
    out.append(":lexicon")
    out.extend(spec.text() for spec in grammar.specs)
    return "\n".join(out) + "\n"
