"""Rule schemas, checking, forward/backward application, derivation builders."""

import random

import pytest

from fdlg.syntax import (Atom, Sequent, parse_sequent, parse_structure,
                         render_sequent, leaf)
from fdlg.kernel import (Derivation, CheckReport, check_derivation,
                         apply_rule_forward, backward_expansions, KernelError,
                         identity_expansion, structural_cut, saturate_translations,
                         derivation_to_json, derivation_from_json, make_cut,
                         iter_nodes, neg_atoms_of)
from fdlg.standardize import ftom, ftoM
from fdlg.rules import REGISTRY, CUT_RULES

from gen import forward_closure


def _ax(name, atom, pos=True):
    return Derivation(name, apply_rule_forward(name, [], selector=Atom(atom, pos)))


def test_check_axiom():
    d = Derivation("p-Id", parse_sequent("p |- p"))
    assert check_derivation(d).ok


def test_check_tonicity():
    d = Derivation("otimes_R", parse_sequent("p .* q |- p * q"),
                   (Derivation("p-Id", parse_sequent("p |- p")),
                    Derivation("p-Id", parse_sequent("q |- q"))))
    assert check_derivation(d).ok


def test_check_arity_mismatch():
    d = Derivation("otimes_R", parse_sequent("p .* q |- p * q"),
                   (Derivation("p-Id", parse_sequent("p |- p")),))
    rep = check_derivation(d)
    assert not rep.ok and "2 premise" in rep.reason


def test_check_unknown_rule():
    d = Derivation("frobnicate", parse_sequent("p |- p"))
    rep = check_derivation(d)
    assert not rep.ok and "unknown rule" in rep.reason


def test_check_reports_offending_path():
    bad = Derivation("p-Id", parse_sequent("p |- q"))
    d = Derivation("otimes_R", parse_sequent("p .* q |- p * q"),
                   (Derivation("p-Id", parse_sequent("p |- p")), bad))
    rep = check_derivation(d)
    assert not rep.ok and "premises[1]" in str(rep)


def test_apply_down_L():
    seq = apply_rule_forward("down_L", [parse_sequent("n |- n", {"n"})])
    assert render_sequent(seq) == "dn n |- .dn n" and seq.kind == "r:"


def test_apply_shift_structural_needs_matching_family():
    with pytest.raises(KernelError):
        apply_rule_forward("s-up", [parse_sequent("p |- .dn n", {"n"})])
    seq = apply_rule_forward("s-up", [parse_sequent("p |- n", {"n"})])
    assert render_sequent(seq) == ".up p |- n"


def test_apply_display_postulate():
    seq = apply_rule_forward("dp(.*,.\\)'", [parse_sequent("p .* q |- d", {"d"})])
    assert render_sequent(seq) == "q |- p .\\ d"


def test_backward_expansions_axiom():
    exps = backward_expansions(parse_sequent("p |- p"))
    assert ("p-Id", []) in exps


def test_backward_expansions_tonicity():
    exps = backward_expansions(parse_sequent("p .* q |- p * q"))
    tgt = ("otimes_R", [parse_sequent("p |- p"), parse_sequent("q |- q")])
    assert tgt in exps


def test_backward_expansions_neutral_atomics():
    exps = backward_expansions(parse_sequent("p |- n", {"n"}), allow_cuts=False)
    assert sorted(name for name, _ in exps) == ["s-down'", "s-up'"]


def test_backward_cuts_are_analytic():
    exps = backward_expansions(parse_sequent("p |- n", {"n"}), allow_cuts=True)
    cuts = [(n, prems) for n, prems in exps if n in CUT_RULES]
    assert cuts, "cut instances over subformulas expected"
    for _, prems in cuts:
        assert len(prems) == 2


def test_forward_backward_coherence():
    closure = forward_closure(max_height=4, max_size=8)
    for seq in closure:
        for name, prems in backward_expansions(seq, allow_variants=True):
            if not prems:
                atom = seq.pre.leaf.atom
                assert apply_rule_forward(name, [], selector=atom) == seq
            else:
                assert apply_rule_forward(name, prems) == seq


def test_identity_expansion_atom():
    d = identity_expansion(leaf(parse_structure("p").leaf))
    assert d.rule == "p-Id" and render_sequent(d.conclusion) == "p |- p"


def test_identity_expansion_shifted():
    d = identity_expansion(parse_structure(".dn d", {"d"}))
    assert check_derivation(d).ok
    assert render_sequent(d.conclusion) == "dn d |- .dn d"
    assert d.rule == "down_L"


def test_identity_expansion_embedded_shift_chain():
    psi = parse_structure("p .* (.dn n)", {"n"})
    d = identity_expansion(psi)
    assert check_derivation(d).ok
    assert d.conclusion == Sequent(ftom(psi), ftoM(psi))
    rules = {node.rule for _, node in iter_nodes(d)}
    assert {"s-down", "s-down'", "down_R", "down_L", "otimes_R"} <= rules


def test_identity_expansion_rejects_variants():
    with pytest.raises(Exception):
        identity_expansion(parse_structure(".upl (dn n)", {"n"}))


def test_structural_cut_atomic():
    phi = parse_structure("p")
    d = structural_cut(identity_expansion(phi), identity_expansion(phi), phi)
    assert d.rule in CUT_RULES and check_derivation(d).ok


def test_structural_cut_product_uses_variant_moves():
    # positive residue on the right forces the variant rearrangement
    phi = parse_structure("p .* (.dn n)", {"n"})
    d1 = identity_expansion(phi)
    d2 = identity_expansion(phi)
    out = structural_cut(d1, d2, phi)
    assert check_derivation(out).ok
    assert out.conclusion == Sequent(ftom(phi), ftoM(phi))
    rules = {node.rule for _, node in iter_nodes(out)}
    assert any(r.startswith(("dp(.*,.\\r)", "dp(.*,./l)")) for r in rules)


def test_structural_cut_shifted_root():
    phi = parse_structure(".up (p .* q)")
    out = structural_cut(identity_expansion(phi), identity_expansion(phi), phi)
    assert check_derivation(out).ok
    rules = {node.rule for _, node in iter_nodes(out)}
    assert any(r.startswith("dp(.up,.dnr)") for r in rules)


def test_structural_cut_property():
    cases = ["(p \\ n) ./ p", "n .(+) m", ".dn (p .\\ n)", "p .(/) (.up q)",
             "(.up p) .(\\) q", ".dn ((.up p) .(+) n)"]
    for txt in cases:
        phi = parse_structure(txt, {"n", "m"})
        out = structural_cut(identity_expansion(phi), identity_expansion(phi), phi)
        assert check_derivation(out).ok
        assert out.conclusion == Sequent(ftom(phi), ftoM(phi))
        for _, node in iter_nodes(out):
            assert node.rule in REGISTRY


def test_saturate_precedent():
    base = Derivation("otimes_R", parse_sequent("p .* q |- p * q"),
                      (_ax("p-Id", "p"), _ax("p-Id", "q")))
    step = Derivation("up_R", apply_rule_forward("up_R", [base.conclusion]), (base,))
    step = Derivation("s-up'", apply_rule_forward("s-up'", [step.conclusion]), (step,))
    out = saturate_translations(step, "pre")
    assert check_derivation(out).ok
    assert render_sequent(out.conclusion) == "p * q |- up (p * q)"


def test_saturate_identity_when_formula():
    d = _ax("p-Id", "p")
    assert saturate_translations(d, "pre") == d
    assert saturate_translations(d, "suc") == d


def test_saturate_variant_blocker():
    seq = apply_rule_forward("dp(.upl,.dn)",
                             [parse_sequent("dn n |- .dn n", {"n"})])
    d = Derivation("dp(.upl,.dn)",
                   seq, (Derivation("down_L", parse_sequent("dn n |- .dn n", {"n"}),
                                    (_ax("n-Id", "n", False),)),))
    with pytest.raises(KernelError):
        saturate_translations(d, "pre")


def test_json_roundtrip_bit_exact(fig_forall_exists):
    text = derivation_to_json(fig_forall_exists, {"s"})
    d2, neg = derivation_from_json(text)
    assert d2 == fig_forall_exists and neg == {"s"}
    assert derivation_to_json(d2, neg) == text


def test_neg_atoms_of(fig_forall_exists):
    assert neg_atoms_of(fig_forall_exists) == {"s"}


def test_make_cut_rejects_undisplayed():
    d1 = _ax("p-Id", "p")
    d2 = Derivation("otimes_R", parse_sequent("p .* q |- p * q"),
                    (_ax("p-Id", "p"), _ax("p-Id", "q")))
    with pytest.raises(KernelError):
        make_cut(d1, d2)
