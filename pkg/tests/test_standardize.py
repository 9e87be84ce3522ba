"""Standard-sequent transforms and their two independent definitions."""

import random

import pytest

from fdlg.syntax import parse_structure, parse_sequent, render_structure, render_sequent
from fdlg.standardize import (ftom, ftoM, standard_sequent, ftom_direct,
                              ftoM_direct, str_of, form_of, StandardizeError)
from fdlg.search import prove, SearchConfig

from gen import random_structure


def test_ftom_examples():
    assert render_structure(ftom(parse_structure("p * q"))) == "p .* q"
    assert render_structure(ftom(parse_structure("p"))) == "p"
    assert render_structure(ftom(parse_structure(".up (p .* q)"))) == ".up (p .* q)"


def test_ftoM_examples():
    assert render_structure(ftoM(parse_structure("n (+) m", {"n", "m"}))) == "n .(+) m"
    assert render_structure(ftoM(parse_structure("n", {"n"}))) == "n"
    assert render_structure(ftoM(parse_structure(".dn (p \\ n)", {"n"}))) == ".dn (p .\\ n)"


def test_standard_sequent():
    got = standard_sequent(parse_sequent("p * q |- p * q"))
    assert render_sequent(got) == "p .* q |- p * q"
    fixed = parse_sequent("p |- p")
    assert standard_sequent(fixed) == fixed


def test_standard_sequent_idempotent():
    rng = random.Random(17)
    for _ in range(300):
        st = random_structure(rng, 4)
        try:
            seq = parse_sequent(f"({render_structure(st)}) |- n", {"n"}) \
                if st.sort.positive else \
                parse_sequent(f"p |- ({render_structure(st)})", {"n"})
        except Exception:
            continue
        try:
            ss = standard_sequent(seq)
        except StandardizeError:
            continue
        assert standard_sequent(ss) == ss


def test_partiality_on_variants():
    with pytest.raises(StandardizeError):
        ftom(parse_structure("p .\\r q"))
    with pytest.raises(StandardizeError):
        ftoM(parse_structure(".upl (dn n)", {"n"}))


def test_str_form_helpers():
    a = parse_structure("p * q").leaf
    assert render_structure(str_of(a)) == "p .* q"
    assert form_of(str_of(a)) == a
    with pytest.raises(StandardizeError):
        form_of(parse_structure("p .\\r q"))


def test_direct_and_recursive_definitions_agree():
    rng = random.Random(7)
    agree = 0
    for _ in range(800):
        st = random_structure(rng, 5, include_variants=True)
        for rec, direct in ((ftom, ftom_direct), (ftoM, ftoM_direct)):
            try:
                got_rec = rec(st)
            except StandardizeError:
                with pytest.raises(StandardizeError):
                    direct(st)
                continue
            assert direct(st) == got_rec, render_structure(st)
            agree += 1
    assert agree > 400


def test_completeness_bridge(corpus_sequents):
    """Whatever the corpus proves, its standard sequent is provable too."""
    cfg = SearchConfig(max_depth=14, max_solutions=1)
    for seq in corpus_sequents:
        if len(render_sequent(seq)) > 40:      # keep the bridge check quick
            continue
        if not prove(seq, cfg):
            continue
        ss = standard_sequent(seq)
        assert prove(ss, SearchConfig(max_depth=16, max_solutions=1)), render_sequent(ss)
