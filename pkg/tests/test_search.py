"""Focused proof search and parsing-as-deduction."""

import pytest

from fdlg.syntax import parse_sequent, parse_formula, render_sequent
from fdlg.kernel import check_derivation, height
from fdlg.focus import check_strong_focalization, minimize_proof
from fdlg.search import (prove, parse_sentence, sentence_sequent, SearchConfig,
                         Lexicon, LexiconError)
from fdlg.corpus import LEXICON, LEXICON_TEXT, SENTENCE, GOAL


def test_prove_axiom():
    sols = prove(parse_sequent("p |- p"))
    assert len(sols) == 1 and sols[0].rule == "p-Id"


def test_prove_non_standard_fails():
    assert prove(parse_sequent("p * q |- p * q"), SearchConfig(max_depth=12)) == []


def test_prove_standard_unique():
    sols = prove(parse_sequent("p .* q |- p * q"), SearchConfig(max_depth=12))
    assert len(sols) == 1
    assert sols[0].rule == "otimes_R"


def test_prove_outputs_are_sound_and_minimal():
    for txt in ("p .* dn (p \\ n) |- dn n", "dn n |- dn n", "p |- up p",
                "n .(+) m |- n (+) m"):
        for d in prove(parse_sequent(txt, {"n", "m"}), SearchConfig(max_depth=14)):
            assert check_derivation(d).ok
            assert check_strong_focalization(d).ok
            assert minimize_proof(d) == d


def test_prove_deterministic():
    cfg = SearchConfig(max_depth=14)
    seq = parse_sequent("p .* dn (p \\ n) |- dn n", {"n"})
    assert prove(seq, cfg) == prove(seq, cfg)


def test_prove_dedupes():
    sols = prove(parse_sequent("dn n |- dn n", {"n"}), SearchConfig(max_depth=10))
    assert len(sols) == len(set(sols))


def test_max_solutions_cap():
    sols = parse_sentence(list(SENTENCE), LEXICON, GOAL,
                          SearchConfig(max_depth=40, max_solutions=1))
    assert len(sols) == 1


def test_golden_readings(fig_forall_exists, fig_exists_forall):
    sols = parse_sentence(list(SENTENCE), LEXICON, GOAL, SearchConfig(max_depth=40))
    assert fig_forall_exists in sols
    assert fig_exists_forall in sols
    assert all(check_strong_focalization(d).ok for d in sols)


def test_lexicon_roundtrip():
    lex = Lexicon.from_text(LEXICON_TEXT)
    assert lex.entries == LEXICON.entries
    assert lex.neg_atoms == {"s"}
    again = Lexicon.from_text(lex.to_text())
    assert again.entries == lex.entries


def test_single_word_sentence():
    lex = Lexicon.from_text("pword := p\n")
    sols = parse_sentence(["pword"], lex, parse_formula("p"))
    assert len(sols) == 1 and sols[0].rule == "p-Id"


def test_unknown_word():
    with pytest.raises(LexiconError):
        parse_sentence(["nope"], LEXICON, GOAL)


def test_bracketing_argument():
    # explicit right-branching equals the default
    seq_default = sentence_sequent(list(SENTENCE), LEXICON, GOAL)
    seq_explicit = sentence_sequent(list(SENTENCE), LEXICON, GOAL,
                                    bracketing=(0, (1, (2, 3))))
    assert seq_default == seq_explicit
    seq_left = sentence_sequent(list(SENTENCE), LEXICON, GOAL,
                                bracketing=(((0, 1), 2), 3))
    assert seq_left != seq_default


def test_sentence_sequent_matches_figures(fig_forall_exists):
    assert sentence_sequent(list(SENTENCE), LEXICON, GOAL) == \
        fig_forall_exists.conclusion


def test_search_height_within_bound(fig_forall_exists):
    sols = parse_sentence(list(SENTENCE), LEXICON, GOAL, SearchConfig(max_depth=40))
    assert all(height(d) <= 40 for d in sols)
