"""Grammar, sorts, printing, and the two term symmetries."""

import pytest
from hypothesis import given, settings, strategies as st

from fdlg.syntax import (Atom, Formula, Sequent, Sort, SortError, ParseError,
                         PP, PS, NP, NS, parse_formula, parse_structure,
                         parse_sequent, render, render_formula, render_structure,
                         render_sequent, sort_of, bowtie, infty, iter_formulas,
                         iter_structures, UNDERIVABLE_KINDS, leaf, s, f, fatom)

from gen import random_formula, random_structure
import random


def test_atom_parse():
    p = parse_formula("p")
    assert p.sort == PP and p.atom.name == "p"


def test_lexical_entry_is_pure_negative():
    e = parse_formula("(up np) / n", {"s"})
    assert e.sort == NP


def test_composed_shifts_rejected():
    with pytest.raises(SortError):
        parse_formula("dn (dn n)", {"n"})
    with pytest.raises(SortError):
        parse_formula("up (up p)")


def test_sequent_kinds():
    assert parse_sequent("p |- p").kind == "r"
    assert parse_sequent("n |- n", {"n"}).kind == "b"
    assert parse_sequent("dn n .* p |- up (dn n * p)", {"n"}).kind == "n."
    assert parse_sequent("dn n |- .dn n", {"n"}).kind == "r:"
    assert parse_sequent("p |- dn n", {"n"}).kind == "r."


def test_negative_precedent_positive_succedent_rejected():
    with pytest.raises(SortError):
        parse_sequent("n |- p", {"n"})
    with pytest.raises(SortError):
        parse_sequent("up p |- dn n", {"n"})


def test_twelve_kinds_exist():
    texts = {
        "r": "p |- p", "r_": "dn n |- p", "r.": "p |- dn n", "r:": "dn n |- dn n",
        "b": "n |- n", "b_": "up p |- n", "b.": "n |- up p", "b:": "up p |- up p",
        "n": "p |- n", "n_": "dn n |- n", "n.": "p |- up p", "n:": "dn n |- up p",
    }
    for kind, txt in texts.items():
        assert parse_sequent(txt, {"n"}).kind == kind
    assert UNDERIVABLE_KINDS == {"r_", "b.", "n:"}


def test_turnstile_uniqueness():
    # equal sort pairs always produce the same kind
    pool = list(iter_structures((Atom("p", True), Atom("n", False)), 2,
                                include_variants=False))
    seen = {}
    for st_ in pool:
        for su in pool:
            try:
                q = Sequent(st_, su)
            except SortError:
                continue
            key = (st_.sort, su.sort)
            assert seen.setdefault(key, q.kind) == q.kind


def test_sort_of_examples():
    assert sort_of(parse_formula("p")) == PP
    assert sort_of(parse_formula("dn n", {"n"})) == PS
    assert sort_of(parse_structure(".up p")) == NS
    assert sort_of(parse_structure("p .\\r q")) == PS


def test_nonassociative_requires_parens():
    with pytest.raises(ParseError):
        parse_formula("p * q * r")
    parse_formula("(p * q) * r")


def test_render_examples():
    assert render(parse_formula("p * q")) == "p * q"
    assert render(parse_structure("p .* q")) == "p .* q"
    assert "\\vdash" in render(parse_sequent("p |- p"), "latex")


def test_roundtrip_exhaustive_small():
    atoms = (Atom("p", True), Atom("n", False))
    for fml in iter_formulas(atoms, 3):
        assert parse_formula(render_formula(fml), {"n"}) == fml
    for st_ in iter_structures(atoms, 2):
        assert parse_structure(render_structure(st_), {"n"}) == st_


@given(st.integers(0, 10**9), st.integers(2, 5))
@settings(max_examples=120, deadline=None)
def test_roundtrip_random(seed, depth):
    rng = random.Random(seed)
    fml = random_formula(rng, depth)
    assert parse_formula(render_formula(fml), {"n"}) == fml


@given(st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_structure_roundtrip_random(seed):
    rng = random.Random(seed)
    st_ = random_structure(rng, 3, include_variants=True)
    assert parse_structure(render_structure(st_), {"n"}) == st_


def test_bowtie_examples():
    ac = parse_formula("p \\ n", {"n"})
    assert render_formula(bowtie(ac)) == "n / p"
    assert bowtie(parse_formula("p")) == parse_formula("p")
    osl = parse_formula("p (/) n", {"n"})
    assert render_formula(bowtie(osl)) == "n (\\) p"


def test_bowtie_involution_exhaustive():
    atoms = (Atom("p", True), Atom("n", False))
    for fml in iter_formulas(atoms, 4):
        b = bowtie(fml)
        assert b.sort == fml.sort
        assert bowtie(b) == fml
    for st_ in iter_structures(atoms, 2):
        assert bowtie(bowtie(st_)) == st_
    rng = random.Random(1)
    for _ in range(300):
        st_ = random_structure(rng, 4, include_variants=True)
        assert bowtie(bowtie(st_)) == st_


def test_infty_examples():
    ab = parse_formula("p * q")
    assert render_formula(infty(ab)) == "q (+) p"
    sq = parse_sequent("p |- p")
    assert infty(sq).kind == "b"
    assert render_sequent(infty(sq)) == "p |- p"   # atom names stay, polarity flips
    assert not infty(sq).pre.leaf.atom.positive


def test_infty_involution_exhaustive():
    atoms = (Atom("p", True), Atom("n", False))
    for fml in iter_formulas(atoms, 4):
        i = infty(fml)
        assert i.sort.positive != fml.sort.positive
        assert i.sort.shifted == fml.sort.shifted
        assert infty(i) == fml
    rng = random.Random(2)
    for _ in range(300):
        st_ = random_structure(rng, 4, include_variants=True)
        assert infty(infty(st_)) == st_


def test_infty_on_sequent_swaps_and_dualizes():
    sq = parse_sequent("dn n .* p |- up (dn n * p)", {"n"})
    dual = infty(sq)
    assert dual.kind == "n_"
    assert infty(dual) == sq


def test_atom_polarity_fixed_by_declaration():
    a = parse_formula("a")
    b = parse_formula("a", {"a"})
    assert a != b and a.sort == PP and b.sort == NP


def test_roundtrip_on_corpus(corpus_sequents):
    from fdlg.algebra import atoms_of
    for seq in corpus_sequents:
        neg = {a.name for a in atoms_of(seq) if not a.positive}
        assert parse_sequent(render_sequent(seq), neg) == seq
