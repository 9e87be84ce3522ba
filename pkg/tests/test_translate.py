"""The companion calculus and the two proof translations."""

import random

import pytest

from fdlg.syntax import parse_formula, parse_sequent, render_formula
from fdlg.kernel import check_derivation, iter_nodes
from fdlg.focus import minimize_proof
from fdlg.translate import (CFormula, catom, cf, parse_cformula, formula_polarity,
                            polarize_formula, unpolarize_formula, depolarize,
                            polarize_sequent, flg_of_sequent, is_normal,
                            FlgSequent, FlgDerivation, fleaf, fs, apply_flg,
                            check_flg, translate_to_fdlg, translate_to_flg,
                            classify_processing_sections, TranslateError,
                            flg_to_json, flg_from_json, render_flg_sequent,
                            logical_rule_count)
from fdlg.corpus import reading_forall_exists, reading_exists_forall

from gen import random_flg_derivation


def test_polarize_examples():
    assert render_formula(polarize_formula(catom("n", False), True)) == "dn n"
    assert render_formula(polarize_formula(catom("p"), False)) == "up p"
    ab = parse_cformula("a * b")
    assert render_formula(polarize_formula(ab, True)) == "a * b"
    assert render_formula(polarize_formula(ab, False)) == "up (a * b)"
    every = parse_cformula("np / n")
    assert render_formula(polarize_formula(every, True)) == "dn (up np / n)"


def test_purity_law():
    rng = random.Random(23)
    from gen import random_formula
    for _ in range(300):
        a = unpolarize_formula(random_formula(rng, 4))
        pos = polarize_formula(a, True)
        neg = polarize_formula(a, False)
        assert pos.sort.shifted != formula_polarity(a)
        assert neg.sort.shifted == formula_polarity(a)


def test_depolarize_roundtrip():
    rng = random.Random(29)
    from gen import random_formula
    for _ in range(300):
        a = unpolarize_formula(random_formula(rng, 4))
        for sign in (True, False):
            assert unpolarize_formula(polarize_formula(a, sign)) == a


def test_depolarize_example():
    likes = parse_formula("dn ((np \\ s) / np)", {"s"})
    assert depolarize(likes) == parse_cformula("(np \\ s) / np", {"s"})


def test_depolarize_rejects_structural_shifts():
    from fdlg.syntax import parse_structure
    with pytest.raises(TranslateError):
        depolarize(parse_structure(".dn n", {"n"}))


def test_normal_sequents():
    assert is_normal(parse_sequent("p |- p"))
    assert is_normal(parse_sequent("p .* q |- p * q"))
    assert not is_normal(parse_sequent("dn n |- .dn n", {"n"}))      # structural shift
    assert is_normal(parse_sequent("p |- up (dn n * p)", {"n"}))
    assert not is_normal(parse_sequent("p |- (up p) .\\l (up q)"))  # variant
    assert is_normal(parse_sequent("p |- up p"))


def test_flg_axiom_and_focus_shapes():
    ax = apply_flg("Ax", [], selector=parse_formula("p").atom)
    assert ax.focus == "suc" and render_flg_sequent(ax) == "p |- [p]"
    nax = apply_flg("Ax", [], selector=parse_formula("n", {"n"}).atom)
    assert nax.focus == "pre" and render_flg_sequent(nax) == "[n] |- n"


def test_flg_mu_side_conditions():
    ax = FlgDerivation("Ax", apply_flg("Ax", [], selector=parse_formula("p").atom))
    defocused = apply_flg("mu*", [ax])
    assert defocused.focus is None
    refocused = apply_flg("mu~", [defocused])
    assert refocused.focus == "pre"
    with pytest.raises(TranslateError):
        apply_flg("mu*", [FlgSequent(fleaf(catom("p")), fleaf(catom("p")), None)])


def test_translate_axiom():
    ax = FlgDerivation("Ax", apply_flg("Ax", [], selector=parse_formula("p").atom))
    out = translate_to_fdlg(ax)
    assert out.rule == "p-Id"


def test_translate_mu_tilde_image():
    # focusing a positive formula on the left becomes the up-shift pair
    ax = FlgDerivation("Ax", apply_flg("Ax", [], selector=parse_formula("p").atom))
    d = FlgDerivation("mu*", apply_flg("mu*", [ax]), (ax,))
    d = FlgDerivation("mu~", apply_flg("mu~", [d]), (d,))
    out = translate_to_fdlg(d)
    rules = [n.rule for _, n in iter_nodes(out)]
    assert rules[:2] == ["up_L", "s-up"]
    assert check_derivation(out).ok


def test_roundtrip_identity_on_corpus(fig_forall_exists, fig_exists_forall):
    for fig in (fig_forall_exists, fig_exists_forall):
        flg = translate_to_flg(fig)
        ok, why = check_flg(flg)
        assert ok, why
        back = translate_to_fdlg(flg)
        assert back == fig
        assert logical_rule_count(flg) == logical_rule_count(fig)


def test_processing_section_patterns(fig_forall_exists):
    patterns = dict(classify_processing_sections(fig_forall_exists))
    assert set(patterns.values()) <= {"defocus-neg", "defocus-pos", "focus-neg",
                                      "focus-neg.", "focus-pos", "focus-pos.",
                                      "refocus-neg", "refocus-pos"}
    assert "focus-neg" in patterns.values()
    assert "defocus-neg" in patterns.values()
    assert "focus-pos" in patterns.values()


def test_refocus_patterns():
    from fdlg.kernel import Derivation, apply_rule_forward
    from fdlg.syntax import Atom
    nid = Derivation("n-Id", apply_rule_forward("n-Id", [], selector=Atom("n", False)))
    d = Derivation("down_L", apply_rule_forward("down_L", [nid.conclusion]), (nid,))
    d = Derivation("down_R", apply_rule_forward("down_R", [d.conclusion]), (d,))
    assert classify_processing_sections(d) == [((), "refocus-neg")]
    flg = translate_to_flg(d)
    assert [n.rule for _, n in _walk(flg)] == ["mu~", "mu*", "Ax"]


def _walk(d, path=()):
    yield path, d
    for i, p in enumerate(d.premises):
        yield from _walk(p, path + (i,))


def test_unmatched_section_reported():
    from fdlg.kernel import Derivation, apply_rule_forward
    from fdlg.syntax import Atom
    pid = Derivation("p-Id", apply_rule_forward("p-Id", [], selector=Atom("p", True)))
    lone = Derivation("up_R", apply_rule_forward("up_R", [pid.conclusion]), (pid,))
    with pytest.raises(TranslateError):
        classify_processing_sections(lone)


def test_random_roundtrips():
    rng = random.Random(31)
    done = 0
    for _ in range(100):
        d = random_flg_derivation(rng, 6)
        image = translate_to_fdlg(d)
        assert check_derivation(image).ok
        assert image.conclusion == polarize_sequent(d.conclusion)
        back = translate_to_flg(image)
        ok, why = check_flg(back)
        assert ok, why
        assert back.conclusion == d.conclusion
        assert logical_rule_count(back) == logical_rule_count(d)
        done += 1
    assert done == 100


def test_translation_injective_on_pool():
    rng = random.Random(37)
    pool = []
    seen = set()
    for _ in range(60):
        d = random_flg_derivation(rng, 5)
        if d not in seen:
            seen.add(d)
            pool.append(d)
    images = [translate_to_fdlg(d) for d in pool]
    assert len(set(images)) == len(pool)


def test_flg_json_roundtrip(fig_forall_exists):
    flg = translate_to_flg(fig_forall_exists)
    text = flg_to_json(flg, {"s"})
    again, neg = flg_from_json(text)
    assert again == flg and neg == {"s"}
