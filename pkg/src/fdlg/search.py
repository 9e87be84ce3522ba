"""Backward focused proof search and lexicon-driven sentence parsing.

The search space is the minimal-proof fragment: cut-free, variant-free, no
shift display postulates (every derivable variant-free sequent has such a
proof).  Display postulates are invertible, so within a phase the search
explores the whole display orbit of the current goal breadth-first and
branches only on the non-display expansions of its members; a per-branch
visited set keeps orbits and shift ping-pong from looping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from itertools import product

from .syntax import (Formula, Structure, Sequent, leaf, s as snode,
                     parse_formula, ParseError)
from .rules import (REGISTRY, ORDERED_RULES, SHIFT_DPS, match_sequent,
                    instantiate_sequent, MatchFail)
from .kernel import Derivation, backward_expansions


@dataclass
class SearchConfig:
    max_depth: int = 40
    max_solutions: int = 0          # 0 = no cap
    allow_variants: bool = False
    allow_cuts: bool = False


def _orbit(goal: Sequent, allow_variants: bool):
    """Display orbit of `goal`: list of (member, downward dp path).

    The path lists (rule, conclusion) pairs rebuilding the chain from the
    member down to `goal`; breadth-first, deterministic order.
    """
    dps = [r for r in ORDERED_RULES if r.klass == "dp"
           and r.name not in SHIFT_DPS
           and (allow_variants or not r.schema.uses_variants)]
    seen = {goal}
    out = [(goal, [])]
    frontier = [(goal, [])]
    while frontier:
        nxt = []
        for seq, path in frontier:
            for rule in dps:
                env: dict = {}
                try:
                    match_sequent(rule.schema.conclusion, seq, env)
                    prem = instantiate_sequent(rule.schema.premises[0], env)
                except (MatchFail, KeyError):
                    continue
                if prem in seen:
                    continue
                seen.add(prem)
                entry = (prem, [(rule.name, seq)] + path)
                out.append(entry)
                nxt.append(entry)
        frontier = nxt
    return out


def _expansions(goal: Sequent, cfg: SearchConfig):
    """Non-display backward expansions in the configured fragment."""
    out = []
    for name, prems in backward_expansions(goal, cfg.allow_variants, cfg.allow_cuts):
        if REGISTRY[name].klass == "dp":
            continue
        out.append((name, prems))
    return out


def _wrap_path(d: Derivation, path) -> Derivation:
    """Rebuild the dp chain below a subproof of an orbit member."""
    for rule, concl in path:
        d = Derivation(rule, concl, (d,))
    return d


def prove(goal: Sequent, cfg: SearchConfig | None = None) -> list[Derivation]:
    """All minimal proofs of `goal` up to the height bound, deduplicated.

    Complete for the minimal-proof search space within cfg.max_depth; an
    empty list means no proof was found within the bounds.  max_solutions
    caps the returned list (the enumeration order is deterministic).
    """
    cfg = cfg or SearchConfig()
    sols = _prove(goal, cfg.max_depth, frozenset(), cfg)
    uniq: list[Derivation] = []
    seen = set()
    for d in sols:
        if d not in seen:
            seen.add(d)
            uniq.append(d)
    if cfg.max_solutions:
        uniq = uniq[:cfg.max_solutions]
    return uniq


def _prove(goal: Sequent, depth: int, visited: frozenset,
           cfg: SearchConfig) -> list[Derivation]:
    if depth <= 0 or goal in visited:
        return []
    results: list[Derivation] = []
    orbit = _orbit(goal, cfg.allow_variants)
    blocked = visited | {m for m, _ in orbit}
    for member, path in orbit:
        cost = len(path) + 1
        if cost > depth:
            continue
        for name, prems in _expansions(member, cfg):
            if not prems:
                results.append(_wrap_path(Derivation(name, member), path))
                continue
            sub_lists = []
            dead = False
            for prem in prems:
                subs = _prove(prem, depth - cost, blocked, cfg)
                if not subs:
                    dead = True
                    break
                sub_lists.append(subs)
            if dead:
                continue
            for combo in product(*sub_lists):
                results.append(_wrap_path(Derivation(name, member, tuple(combo)), path))
    return results


# ---------------------------------------------------------------------------
# Lexicon and parsing-as-deduction


class LexiconError(ValueError):
    pass


@dataclass
class Lexicon:
    entries: dict[str, Formula] = field(default_factory=dict)
    neg_atoms: frozenset[str] = frozenset()

    @classmethod
    def from_text(cls, text: str) -> "Lexicon":
        """One `word := formula` per line; `%neg atom` declares a negative
        atom; `#` starts a comment."""
        neg: set[str] = set()
        raw: list[tuple[str, str]] = []
        for ln, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("%neg"):
                neg.update(line[4:].split())
                continue
            if ":=" not in line:
                raise LexiconError(f"line {ln}: expected `word := formula`")
            word, _, body = line.partition(":=")
            raw.append((word.strip(), body.strip()))
        entries = {}
        for word, body in raw:
            try:
                entries[word] = parse_formula(body, neg)
            except ParseError as e:
                raise LexiconError(f"entry for {word!r}: {e}") from None
        return cls(entries, frozenset(neg))

    def to_text(self) -> str:
        from .syntax import render_formula
        lines = [f"%neg {a}" for a in sorted(self.neg_atoms)]
        lines += [f"{w} := {render_formula(fm)}" for w, fm in self.entries.items()]
        return "\n".join(lines) + "\n"


def _bracket(parts: list[Structure], shape) -> Structure:
    if shape is None:                          # right-branching default
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = snode(".*", p, out)
        return out
    if isinstance(shape, int):
        return parts[shape]
    l, r = shape
    return snode(".*", _bracket(parts, l), _bracket(parts, r))


def sentence_sequent(words, lexicon: Lexicon, goal: Formula,
                     bracketing=None) -> Sequent:
    parts = []
    for w in words:
        if w not in lexicon.entries:
            raise LexiconError(f"unknown word {w!r}")
        parts.append(leaf(lexicon.entries[w]))
    if not parts:
        raise LexiconError("empty sentence")
    return Sequent(_bracket(parts, bracketing), leaf(goal))


def parse_sentence(words, lexicon: Lexicon, goal: Formula,
                   cfg: SearchConfig | None = None, bracketing=None):
    """Each returned derivation is a distinct reading of the sentence."""
    seq = sentence_sequent(words, lexicon, goal, bracketing)
    return prove(seq, cfg)
