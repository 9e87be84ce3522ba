"""Sorted syntax: formulas, structures, sequents, concrete grammar, symmetries.

Terms come in four sorts (positive/negative x pure/shifted).  Connectives are
registered with fixed sort signatures and every Formula/Structure/Sequent is
validated at construction time, so values are well-sorted by construction and
safe to share.  "General" (either-purity) sorts exist only as argument specs,
never as a stored sort.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


class SortError(ValueError):
    """Ill-sorted term, or inadmissible precedent/succedent sort pair."""


class ParseError(ValueError):
    """Lexical or grammatical error in the concrete syntax."""


# ---------------------------------------------------------------------------
# Sorts


@dataclass(frozen=True)
class Sort:
    positive: bool
    shifted: bool

    def __repr__(self) -> str:
        pol = "positive" if self.positive else "negative"
        return ("shifted " if self.shifted else "pure ") + pol


PP = Sort(True, False)    # pure positive
PS = Sort(True, True)     # shifted positive
NP = Sort(False, False)   # pure negative
NS = Sort(False, True)    # shifted negative

# An argument spec is (polarity, shifted-or-None); None accepts both purities.
_ANY_P = (True, None)
_ANY_N = (False, None)


# ---------------------------------------------------------------------------
# Connective registry
#
# Operational tokens:  *  (+)  \  /  (/)  (\)  up  dn
# Structural tokens carry a leading dot; the twelve l/r-variants and the two
# shift adjoints (.upl, .dnr) exist only at the structural layer.

OP_SIG: dict[str, tuple[Sort, tuple[tuple[bool, bool | None], ...]]] = {
    "*": (PP, (_ANY_P, _ANY_P)),
    "(/)": (PP, (_ANY_P, _ANY_N)),
    "(\\)": (PP, (_ANY_N, _ANY_P)),
    "(+)": (NP, (_ANY_N, _ANY_N)),
    "\\": (NP, (_ANY_P, _ANY_N)),
    "/": (NP, (_ANY_N, _ANY_P)),
    "dn": (PS, ((False, False),)),
    "up": (NS, ((True, False),)),
}

STRUCT_SIG: dict[str, tuple[Sort, tuple[tuple[bool, bool | None], ...]]] = {
    ".*": (PP, (_ANY_P, _ANY_P)),
    ".(/)": (PP, (_ANY_P, _ANY_N)),
    ".(\\)": (PP, (_ANY_N, _ANY_P)),
    ".(+)": (NP, (_ANY_N, _ANY_N)),
    ".\\": (NP, (_ANY_P, _ANY_N)),
    "./": (NP, (_ANY_N, _ANY_P)),
    ".dn": (PS, ((False, False),)),
    ".dnr": (PP, ((False, True),)),
    ".up": (NS, ((True, False),)),
    ".upl": (NP, ((True, True),)),
    # l/r-variants: same underlying arities, shifted targets
    ".(+)l": (PS, (_ANY_P, _ANY_N)),
    ".(+)r": (PS, (_ANY_N, _ANY_P)),
    ".\\l": (PS, (_ANY_N, _ANY_N)),
    ".\\r": (PS, (_ANY_P, _ANY_P)),
    "./l": (PS, (_ANY_P, _ANY_P)),
    "./r": (PS, (_ANY_N, _ANY_N)),
    ".*l": (NS, (_ANY_N, _ANY_P)),
    ".*r": (NS, (_ANY_P, _ANY_N)),
    ".(/)l": (NS, (_ANY_N, _ANY_N)),
    ".(/)r": (NS, (_ANY_P, _ANY_P)),
    ".(\\)l": (NS, (_ANY_P, _ANY_P)),
    ".(\\)r": (NS, (_ANY_N, _ANY_N)),
}

# Family F holds the left adjoints/residuals, G the right ones; l/r-variants
# and shift adjoints inherit the family of their base connective.
FAMILY: dict[str, str] = {}
for _t in ("*", "(/)", "(\\)", "up",
           ".*", ".*l", ".*r", ".(/)", ".(/)l", ".(/)r",
           ".(\\)", ".(\\)l", ".(\\)r", ".up", ".upl"):
    FAMILY[_t] = "F"
for _t in ("(+)", "\\", "/", "dn",
           ".(+)", ".(+)l", ".(+)r", ".\\", ".\\l", ".\\r",
           "./", "./l", "./r", ".dn", ".dnr"):
    FAMILY[_t] = "G"

# Order types: 1 = covariant, 'd' = contravariant coordinate.
ORDER_TYPE: dict[str, tuple] = {}
for _t in ("*", ".*", ".*l", ".*r", "(+)", ".(+)", ".(+)l", ".(+)r"):
    ORDER_TYPE[_t] = (1, 1)
for _t in ("\\", ".\\", ".\\l", ".\\r", "(\\)", ".(\\)", ".(\\)l", ".(\\)r"):
    ORDER_TYPE[_t] = ("d", 1)
for _t in ("/", "./", "./l", "./r", "(/)", ".(/)", ".(/)l", ".(/)r"):
    ORDER_TYPE[_t] = (1, "d")
for _t in ("up", "dn", ".up", ".upl", ".dn", ".dnr"):
    ORDER_TYPE[_t] = (1,)

STRUCT_OF_OP = {"*": ".*", "(+)": ".(+)", "\\": ".\\", "/": "./",
                "(/)": ".(/)", "(\\)": ".(\\)", "up": ".up", "dn": ".dn"}
OP_OF_STRUCT = {v: k for k, v in STRUCT_OF_OP.items()}

VARIANT_STRUCTS = frozenset(t for t in STRUCT_SIG
                            if t not in OP_OF_STRUCT and t not in (".upl", ".dnr"))
SHIFT_ADJOINTS = frozenset((".upl", ".dnr"))
STRUCT_SHIFTS = frozenset((".up", ".upl", ".dn", ".dnr"))

# Variant group for each base structural connective, used when a substituted
# argument changes purity or polarity and the node has to be relabelled.
_GROUPS = (
    (".*", ".*l", ".*r"), (".(+)", ".(+)l", ".(+)r"),
    (".\\", ".\\l", ".\\r"), ("./", "./l", "./r"),
    (".(/)", ".(/)l", ".(/)r"), (".(\\)", ".(\\)l", ".(\\)r"),
    (".up", ".upl"), (".dn", ".dnr"),
)
GROUP_OF: dict[str, tuple[str, ...]] = {}
for _g in _GROUPS:
    for _t in _g:
        GROUP_OF[_t] = _g


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Atom:
    name: str
    positive: bool

    def __repr__(self) -> str:
        return f"{self.name}{'' if self.positive else '-'}"


def _check_args(conn: str, sig, args) -> Sort:
    target, specs = sig
    if len(args) != len(specs):
        raise SortError(f"{conn} takes {len(specs)} argument(s), got {len(args)}")
    for i, (arg, (pol, sh)) in enumerate(zip(args, specs)):
        s = arg.sort
        if s.positive != pol or (sh is not None and s.shifted != sh):
            want = Sort(pol, sh) if sh is not None else ("positive" if pol else "negative")
            raise SortError(f"argument {i + 1} of {conn} must be {want}, got {s}")
    return target


@dataclass(frozen=True)
class Formula:
    conn: str | None                      # None for an atom
    atom: Atom | None = None
    args: tuple["Formula", ...] = ()
    sort: Sort = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.conn is None:
            if self.atom is None or self.args:
                raise SortError("atom formula must carry an Atom and no arguments")
            sort = Sort(self.atom.positive, False)
        else:
            if self.conn not in OP_SIG:
                raise SortError(f"unknown operational connective {self.conn!r}")
            sort = _check_args(self.conn, OP_SIG[self.conn], self.args)
        object.__setattr__(self, "sort", sort)

    def __repr__(self) -> str:
        return f"<{render_formula(self)}>"


@dataclass(frozen=True)
class Structure:
    conn: str | None                      # None for a formula leaf
    leaf: Formula | None = None
    args: tuple["Structure", ...] = ()
    sort: Sort = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.conn is None:
            if self.leaf is None or self.args:
                raise SortError("leaf structure must carry a formula and no arguments")
            sort = self.leaf.sort
        else:
            if self.conn not in STRUCT_SIG:
                raise SortError(f"unknown structural connective {self.conn!r}")
            sort = _check_args(self.conn, STRUCT_SIG[self.conn], self.args)
        object.__setattr__(self, "sort", sort)

    def __repr__(self) -> str:
        return f"<{render_structure(self)}>"


def fatom(name: str, positive: bool = True) -> Formula:
    return Formula(None, Atom(name, positive))


def f(conn: str, *args: Formula) -> Formula:
    return Formula(conn, None, tuple(args))


def leaf(formula: Formula) -> Structure:
    return Structure(None, formula)


def s(conn: str, *args: Structure) -> Structure:
    return Structure(conn, None, tuple(args))


# The three admissible-but-underivable sort pairs keep their kind codes so
# reports can name them; everything negative|-positive is rejected outright.
UNDERIVABLE_KINDS = frozenset(("r_", "b.", "n:"))


@dataclass(frozen=True)
class Sequent:
    pre: Structure
    suc: Structure

    def __post_init__(self):
        if not self.pre.sort.positive and self.suc.sort.positive:
            raise SortError("negative precedent with positive succedent is not a sequent")

    @property
    def kind(self) -> str:
        """Turnstile kind, a pure function of the sort pair.

        Codes: family 'r' (positive), 'b' (negative), 'n' (neutral), plus a
        purity marker: '' both pure, '_' shifted|-pure, '.' pure|-shifted,
        ':' both shifted.
        """
        ps, ss = self.pre.sort, self.suc.sort
        if ps.positive and ss.positive:
            fam = "r"
        elif not ps.positive and not ss.positive:
            fam = "b"
        else:
            fam = "n"
        mark = {(False, False): "", (True, False): "_",
                (False, True): ".", (True, True): ":"}[(ps.shifted, ss.shifted)]
        return fam + mark

    def __repr__(self) -> str:
        return f"<{render_sequent(self)}>"


def sort_of(x: Formula | Structure) -> Sort:
    """Sort of a well-formed term (total; terms validate at construction)."""
    return x.sort


# ---------------------------------------------------------------------------
# Concrete syntax

_TOKENS = sorted(
    list(OP_SIG) + list(STRUCT_SIG) + ["|-", "(", ")"],
    key=len, reverse=True)
_WORDY = {"up", "dn"}
_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_'")


def _tokenize(text: str) -> list[str]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and text[j] in _IDENT_CHARS:
                j += 1
            out.append(text[i:j])
            i = j
            continue
        for tok in _TOKENS:
            if tok[0].isalpha():
                continue
            if text.startswith(tok, i):
                # '.up' must not swallow the 'l' of '.upl'; handled by the
                # longest-match ordering plus this wordy-boundary guard
                j = i + len(tok)
                if tok[-1].isalpha() and j < n and text[j] in _IDENT_CHARS:
                    continue
                out.append(tok)
                i = j
                break
        else:
            raise ParseError(f"unexpected character {text[i]!r} at offset {i}")
    return out


class _Parser:
    """Recursive-descent parser over the mixed operational/structural grammar.

    Binary connectives are non-associative: nesting requires parentheses.
    Prefix shifts bind tighter than any binary connective.
    """

    def __init__(self, tokens: list[str], neg_atoms: frozenset[str]):
        self.toks = tokens
        self.pos = 0
        self.neg = neg_atoms

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def term(self):
        t = self.unary()
        nxt = self.peek()
        if nxt is not None and (nxt in OP_SIG or nxt in STRUCT_SIG) and len(ORDER_TYPE[nxt]) == 2:
            self.take()
            rhs = self.unary()
            after = self.peek()
            if after is not None and (after in OP_SIG or after in STRUCT_SIG) and len(ORDER_TYPE.get(after, ())) == 2:
                raise ParseError(f"binary connectives do not associate; parenthesize before {after!r}")
            return (nxt, t, rhs)
        return t

    def unary(self):
        tok = self.peek()
        if tok in ("up", "dn", ".up", ".upl", ".dn", ".dnr"):
            self.take()
            return (tok, self.unary())
        if tok == "(":
            self.take()
            inner = self.term()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return inner
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok in OP_SIG or tok in STRUCT_SIG or tok in ("|-", ")"):
            raise ParseError(f"unexpected token {tok!r}")
        self.take()
        return tok  # identifier

    def done(self) -> bool:
        return self.pos == len(self.toks)


def _raw_to_formula(raw, neg: frozenset[str]) -> Formula:
    if isinstance(raw, str):
        return fatom(raw, raw not in neg)
    conn = raw[0]
    if conn in STRUCT_SIG:
        raise ParseError(f"structural connective {conn!r} inside a formula")
    return f(conn, *(_raw_to_formula(a, neg) for a in raw[1:]))


def _raw_to_structure(raw, neg: frozenset[str]) -> Structure:
    if isinstance(raw, str):
        return leaf(fatom(raw, raw not in neg))
    conn = raw[0]
    if conn in OP_SIG:
        return leaf(_raw_to_formula(raw, neg))
    return s(conn, *(_raw_to_structure(a, neg) for a in raw[1:]))


def parse_formula(text: str, neg_atoms=()) -> Formula:
    neg = frozenset(neg_atoms)
    p = _Parser(_tokenize(text), neg)
    raw = p.term()
    if not p.done():
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return _raw_to_formula(raw, neg)


def parse_structure(text: str, neg_atoms=()) -> Structure:
    neg = frozenset(neg_atoms)
    p = _Parser(_tokenize(text), neg)
    raw = p.term()
    if not p.done():
        raise ParseError(f"trailing input at token {p.peek()!r}")
    return _raw_to_structure(raw, neg)


def parse_sequent(text: str, neg_atoms=()) -> Sequent:
    if "|-" not in text:
        raise ParseError("a sequent needs a |- turnstile")
    left, _, right = text.partition("|-")
    return Sequent(parse_structure(left, neg_atoms), parse_structure(right, neg_atoms))


# ---------------------------------------------------------------------------
# Printing


def _wrap(txt: str, binary: bool) -> str:
    return f"({txt})" if binary else txt


def render_formula(x: Formula) -> str:
    if x.conn is None:
        return x.atom.name
    if len(x.args) == 1:
        a = x.args[0]
        return f"{x.conn} {_wrap(render_formula(a), a.conn is not None and len(a.args) == 2)}"
    l, r = x.args
    lt = _wrap(render_formula(l), l.conn is not None and len(l.args) == 2)
    rt = _wrap(render_formula(r), r.conn is not None and len(r.args) == 2)
    return f"{lt} {x.conn} {rt}"


def _is_binary_struct(x: Structure) -> bool:
    if x.conn is None:
        return x.leaf.conn is not None and len(x.leaf.args) == 2
    return len(x.args) == 2


def render_structure(x: Structure) -> str:
    if x.conn is None:
        return render_formula(x.leaf)
    if len(x.args) == 1:
        a = x.args[0]
        return f"{x.conn} {_wrap(render_structure(a), _is_binary_struct(a))}"
    l, r = x.args
    return (f"{_wrap(render_structure(l), _is_binary_struct(l))} {x.conn} "
            f"{_wrap(render_structure(r), _is_binary_struct(r))}")


def render_sequent(x: Sequent) -> str:
    return f"{render_structure(x.pre)} |- {render_structure(x.suc)}"


_LATEX_OP = {
    "*": r"\otimes", "(+)": r"\oplus", "\\": r"\backslash", "/": r"/",
    "(/)": r"\varoslash", "(\\)": r"\varobslash",
    "up": r"\uparrow", "dn": r"\downarrow",
}
_LATEX_STRUCT = {
    ".*": r"\hat{\otimes}", ".(+)": r"\check{\oplus}", ".\\": r"\check{\backslash}",
    "./": r"\check{/}", ".(/)": r"\hat{\varoslash}", ".(\\)": r"\hat{\varobslash}",
    ".up": r"\hat{\uparrow}", ".upl": r"\hat{\upharpoonleft}",
    ".dn": r"\check{\downarrow}", ".dnr": r"\check{\downharpoonright}",
}
for _b, _l in list(_LATEX_STRUCT.items()):
    if _b in (".up", ".upl", ".dn", ".dnr"):
        continue
    _LATEX_STRUCT[_b + "l"] = _l + r"_{\ell}"
    _LATEX_STRUCT[_b + "r"] = _l + r"_{r}"

_LATEX_TURNSTILE = {
    "": r"\vdash", "_": r"\text{\d{$\Vdash$}}", ".": r"\dot{\Vdash}", ":": r"\Vvdash",
}
_LATEX_COLOR = {"r": "red", "b": "blue", "n": "black"}


def latex_formula(x: Formula) -> str:
    if x.conn is None:
        return rf"\mathit{{{x.atom.name}}}"
    if len(x.args) == 1:
        a = x.args[0]
        return f"{_LATEX_OP[x.conn]} {_wrap(latex_formula(a), a.conn is not None and len(a.args) == 2)}"
    l, r = x.args
    lt = _wrap(latex_formula(l), l.conn is not None and len(l.args) == 2)
    rt = _wrap(latex_formula(r), r.conn is not None and len(r.args) == 2)
    return f"{lt} {_LATEX_OP[x.conn]} {rt}"


def latex_structure(x: Structure) -> str:
    if x.conn is None:
        return latex_formula(x.leaf)
    if len(x.args) == 1:
        return f"{_LATEX_STRUCT[x.conn]} {_wrap(latex_structure(x.args[0]), _is_binary_struct(x.args[0]))}"
    l, r = x.args
    return (f"{_wrap(latex_structure(l), _is_binary_struct(l))} {_LATEX_STRUCT[x.conn]} "
            f"{_wrap(latex_structure(r), _is_binary_struct(r))}")


def latex_sequent(x: Sequent, color: bool = False) -> str:
    kind = x.kind
    stile = _LATEX_TURNSTILE[kind[1:]]
    if color:
        stile = rf"\textcolor{{{_LATEX_COLOR[kind[0]]}}}{{{stile}}}"
    return f"{latex_structure(x.pre)} {stile} {latex_structure(x.suc)}"


def render(x, style: str = "ascii", color: bool = False) -> str:
    """Render a formula, structure or sequent in ascii or latex."""
    if style == "ascii":
        if isinstance(x, Formula):
            return render_formula(x)
        if isinstance(x, Structure):
            return render_structure(x)
        return render_sequent(x)
    if style == "latex":
        if isinstance(x, Formula):
            return latex_formula(x)
        if isinstance(x, Structure):
            return latex_structure(x)
        return latex_sequent(x, color=color)
    raise ValueError(f"unknown style {style!r}")


# ---------------------------------------------------------------------------
# The two Lambek-Grishin symmetries
#
# bowtie is the order-preserving left/right symmetry; infty the order-reversing
# dual.  Both are involutions; bowtie preserves sorts, infty flips polarity and
# keeps purity.  On sequents, infty also swaps the two sides (the turnstile
# kind follows from the sorts).

_BOWTIE = {
    "*": ("*", True), "(+)": ("(+)", True),
    "\\": ("/", True), "/": ("\\", True),
    "(/)": ("(\\)", True), "(\\)": ("(/)", True),
    "up": ("up", False), "dn": ("dn", False),
    ".*": (".*", True), ".(+)": (".(+)", True),
    ".\\": ("./", True), "./": (".\\", True),
    ".(/)": (".(\\)", True), ".(\\)": (".(/)", True),
    ".up": (".up", False), ".upl": (".upl", False),
    ".dn": (".dn", False), ".dnr": (".dnr", False),
    ".\\l": ("./r", True), "./r": (".\\l", True),
    ".\\r": ("./l", True), "./l": (".\\r", True),
    ".*l": (".*r", True), ".*r": (".*l", True),
    ".(+)l": (".(+)r", True), ".(+)r": (".(+)l", True),
    ".(/)l": (".(\\)r", True), ".(\\)r": (".(/)l", True),
    ".(/)r": (".(\\)l", True), ".(\\)l": (".(/)r", True),
}

_INFTY = {
    "*": ("(+)", True), "(+)": ("*", True),
    "\\": ("(/)", True), "(/)": ("\\", True),
    "/": ("(\\)", True), "(\\)": ("/", True),
    "up": ("dn", False), "dn": ("up", False),
    ".*": (".(+)", True), ".(+)": (".*", True),
    ".\\": (".(/)", True), ".(/)": (".\\", True),
    "./": (".(\\)", True), ".(\\)": ("./", True),
    ".up": (".dn", False), ".dn": (".up", False),
    ".upl": (".dnr", False), ".dnr": (".upl", False),
    ".\\l": (".(/)r", True), ".(/)r": (".\\l", True),
    ".\\r": (".(/)l", True), ".(/)l": (".\\r", True),
    ".*l": (".(+)r", True), ".(+)r": (".*l", True),
    ".*r": (".(+)l", True), ".(+)l": (".*r", True),
    "./l": (".(\\)r", True), ".(\\)r": ("./l", True),
    "./r": (".(\\)l", True), ".(\\)l": ("./r", True),
}


def _map_formula(x: Formula, table, flip_atoms: bool) -> Formula:
    if x.conn is None:
        a = x.atom
        return fatom(a.name, not a.positive if flip_atoms else a.positive)
    conn2, swap = table[x.conn]
    args = tuple(_map_formula(a, table, flip_atoms) for a in x.args)
    if swap and len(args) == 2:
        args = (args[1], args[0])
    return Formula(conn2, None, args)


def _map_structure(x: Structure, table, flip_atoms: bool) -> Structure:
    if x.conn is None:
        return leaf(_map_formula(x.leaf, table, flip_atoms))
    conn2, swap = table[x.conn]
    args = tuple(_map_structure(a, table, flip_atoms) for a in x.args)
    if swap and len(args) == 2:
        args = (args[1], args[0])
    return Structure(conn2, None, args)


def bowtie(x):
    """Left/right symmetry; sort-preserving involution."""
    if isinstance(x, Formula):
        return _map_formula(x, _BOWTIE, False)
    if isinstance(x, Structure):
        return _map_structure(x, _BOWTIE, False)
    return Sequent(_map_structure(x.pre, _BOWTIE, False),
                   _map_structure(x.suc, _BOWTIE, False))


def infty(x):
    """Order-reversing dual; flips atom polarity and swaps sequent sides."""
    if isinstance(x, Formula):
        return _map_formula(x, _INFTY, True)
    if isinstance(x, Structure):
        return _map_structure(x, _INFTY, True)
    return Sequent(_map_structure(x.suc, _INFTY, True),
                   _map_structure(x.pre, _INFTY, True))


# ---------------------------------------------------------------------------
# Bounded enumeration (used by property tests and the model-checking sweeps)


def iter_formulas(atoms: tuple[Atom, ...], depth: int) -> Iterator[Formula]:
    older: list[Formula] = []
    frontier: list[Formula] = [Formula(None, a) for a in atoms]
    yield from frontier
    for _ in range(2, depth + 1):
        level: list[Formula] = []
        both = older + frontier
        for conn, (_, specs) in OP_SIG.items():
            if len(specs) == 1:
                for a in frontier:
                    try:
                        level.append(f(conn, a))
                    except SortError:
                        pass
            else:
                for a in frontier:
                    for b in both:
                        for l, r in ((a, b),) if a is b else ((a, b), (b, a)):
                            try:
                                level.append(f(conn, l, r))
                            except SortError:
                                pass
        seen = set()
        level = [x for x in level if not (x in seen or seen.add(x))]
        older = both
        frontier = level
        yield from level


def iter_structures(atoms: tuple[Atom, ...], depth: int,
                    include_variants: bool = True) -> Iterator[Structure]:
    """Exhaustive up to the bound; the space grows fast, keep depth small."""
    conns = [c for c in STRUCT_SIG
             if include_variants or (c not in VARIANT_STRUCTS and c not in SHIFT_ADJOINTS)]
    older: list[Structure] = []
    frontier: list[Structure] = [leaf(fml) for fml in iter_formulas(atoms, depth)]
    yield from frontier
    for _ in range(2, depth + 1):
        level: list[Structure] = []
        both = older + frontier
        for conn in conns:
            arity = len(STRUCT_SIG[conn][1])
            if arity == 1:
                for a in frontier:
                    try:
                        level.append(s(conn, a))
                    except SortError:
                        pass
            else:
                for a in frontier:
                    for b in both:
                        for l, r in ((a, b),) if a is b else ((a, b), (b, a)):
                            try:
                                level.append(s(conn, l, r))
                            except SortError:
                                pass
        seen = set()
        level = [x for x in level if not (x in seen or seen.add(x))]
        older = both
        frontier = level
        yield from level
