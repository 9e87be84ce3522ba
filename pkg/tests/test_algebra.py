"""Finite models: axioms, constructions, interpretation, rule soundness."""

import random

import pytest

from fdlg.syntax import Atom, parse_sequent, parse_formula
from fdlg.algebra import (FinitePoset, poset_from_pairs, collage,
                          is_weakening_relation, LGAlgebra, lg_from_lattice,
                          chain_poset, diamond_poset, FiniteFPLG,
                          check_fplg_axioms, from_lg, to_lg, lg_isomorphic,
                          interpret, valuations, atoms_of, check_rule_soundness,
                          check_rule_soundness_templates, builtin,
                          random_instances, dual_instance, render_algebra,
                          parse_algebra, AlgebraError)
from fdlg.rules import REGISTRY, RuleSchema, Directed, SeqPat, SVar, FVar, SNode, FNode
from fdlg.corpus import golden_sequents, reading_forall_exists
from fdlg.search import prove, SearchConfig


def test_poset_axioms_checked():
    bad = FinitePoset(("a", "b"), frozenset({("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")}))
    assert any("antisymmetric" in m for m in bad.check())
    good = chain_poset(3)
    assert good.check() == []


def test_collage_examples():
    one = poset_from_pairs(("x",), ())
    other = poset_from_pairs(("y",), ())
    chain = collage(one, other, {("x", "y")})
    assert chain.le("x", "y") and not chain.le("y", "x")
    assert chain.check() == []
    disjoint = collage(one, other, set())
    assert not disjoint.le("x", "y") and disjoint.check() == []


def test_weakening_relation_compatibility():
    p = chain_poset(2, "p")
    q = chain_poset(2, "q")
    assert is_weakening_relation({("p0", "q0"), ("p0", "q1"), ("p1", "q1")}, p, q)
    assert not is_weakening_relation({("p1", "q0")}, p, q)


def test_from_lg_chain2(chain2):
    assert check_fplg_axioms(chain2) == []


def test_from_lg_trivial():
    triv = from_lg(lg_from_lattice(chain_poset(1)))
    assert check_fplg_axioms(triv) == []
    assert len(triv.P.elements) == 1


def test_from_lg_diamond(diamond):
    assert check_fplg_axioms(diamond) == []
    assert len(diamond.P.elements) == 4


def test_broken_instance_reported(chain2):
    broken = FiniteFPLG("broken", chain2.P, chain2.Pd, chain2.N, chain2.Nd,
                        chain2.up, chain2.upl, chain2.dn, chain2.dnr,
                        chain2.wr_shifted_pos, frozenset(), chain2.wr_shifted_neg,
                        chain2.ops, chain2.variants)
    bad = check_fplg_axioms(broken)
    assert any("shift intro/elim" in m for m in bad)


def test_to_lg_quotient_is_lg_algebra(chain2):
    q = to_lg(chain2)
    assert q.check() == []
    # the collage relation never puts a negative copy below a positive one,
    # so the quotient strictly refines the seed: four elements, not two
    assert len(q.poset.elements) == 4
    assert not lg_isomorphic(q, lg_from_lattice(chain_poset(2)))


def test_to_lg_trivial_seed():
    q = to_lg(from_lg(lg_from_lattice(chain_poset(1))))
    assert q.check() == []
    assert len(q.poset.elements) == 2


def test_to_lg_residuation_spot_check(chain2):
    g = to_lg(chain2)
    le = g.poset.le
    es = g.poset.elements
    for a in es:
        for b in es:
            for c in es:
                assert le(g.op("*", a, b), c) == le(b, g.op("\\", a, c))


def test_interpret_reflexive(chain2):
    seq = parse_sequent("p |- p")
    for v in valuations(chain2, atoms_of(seq)):
        assert interpret(seq, chain2, v)


def test_interpret_underivable_but_valid(chain2):
    # reflexivity holds although the sequent is not derivable; completeness
    # targets standard sequents
    seq = parse_sequent("p * q |- p * q")
    for v in valuations(chain2, atoms_of(seq)):
        assert interpret(seq, chain2, v)
    assert prove(seq, SearchConfig(max_depth=10)) == []


def test_interpret_golden_end_sequent(chain2, fig_forall_exists):
    seq = fig_forall_exists.conclusion
    for v in valuations(chain2, atoms_of(seq)):
        assert interpret(seq, chain2, v)


def test_countermodel_for_neutral_atomic(chain2):
    seq = parse_sequent("p |- n", {"n"})
    assert any(not interpret(seq, chain2, v)
               for v in valuations(chain2, atoms_of(seq)))


def test_uninterpretable_kinds_raise(chain2):
    seq = parse_sequent("dn n |- p", {"n"})      # admissible but underivable
    with pytest.raises(AlgebraError):
        interpret(seq, chain2, {("n", False): ("0", "N"), ("p", True): ("0", "P")})


def test_all_rules_sound_on_chain2(chain2):
    for name in REGISTRY:
        rep = check_rule_soundness(name, chain2)
        assert rep.ok, (name, rep.violations[:1])


def test_all_rules_sound_on_diamond(diamond):
    for name in REGISTRY:
        rep = check_rule_soundness(name, diamond)
        assert rep.ok, (name, rep.violations[:1])


def test_template_sweep_matches(chain2):
    rep = check_rule_soundness_templates("otimes_R", chain2,
                                         (Atom("p", True), Atom("n", False)),
                                         depth=2)
    assert rep.ok and rep.checked > 1000


def test_corrupted_rule_caught(chain2):
    inverse_of_tonicity = Directed(RuleSchema(
        "bogus", "tonicity",
        (SeqPat(SNode(".*", (SVar("X", True), SVar("Y", True))),
                FNode("*", (FVar("P", True), FVar("Q", True)))),),
        SeqPat(SVar("X", True), FVar("P", True))))
    rep = check_rule_soundness(inverse_of_tonicity, chain2)
    assert not rep.ok


def test_representedness(chain2):
    # the relations represented by the two adjunctions are weakening relations
    eqql = {(p, nd) for p in chain2.P.elements for nd in chain2.Nd.elements
            if chain2.eqql(p, nd)}
    assert is_weakening_relation(eqql, chain2.P, chain2.Nd)
    prq = {(pd, n) for pd in chain2.Pd.elements for n in chain2.N.elements
           if chain2.preceqq(pd, n)}
    assert is_weakening_relation(prq, chain2.Pd, chain2.N)


def test_random_instances_validate():
    insts = random_instances(12, seed=5)
    assert len(insts) == 12
    for inst in insts:
        assert check_fplg_axioms(inst) == [], inst.name
        assert all(len(inst.poset(t).elements) <= 3 for t in ("P", "Pd", "N", "Nd"))


def test_dual_instance_valid(chain2):
    assert check_fplg_axioms(dual_instance(chain2)) == []


def test_serialization_roundtrip(chain2):
    text = render_algebra(chain2)
    again = parse_algebra(text)
    assert check_fplg_axioms(again) == []
    assert again.ops["*"] == chain2.ops["*"]
    assert render_algebra(again) == text.replace("%name chain2", "%name chain2")


def test_completeness_at_desk_scale(chain2, diamond, corpus_sequents):
    derivable = [s for s in corpus_sequents
                 if prove(s, SearchConfig(max_depth=30, max_solutions=1))]
    assert derivable
    for seq in derivable:
        for alg in (chain2, diamond):
            for v in valuations(alg, atoms_of(seq)):
                assert interpret(seq, alg, v)


def test_instance_collages_are_posets(chain2):
    rp, rn = chain2.ring_pos(), chain2.ring_neg()
    assert rp.check() == [] and rn.check() == []
    assert set(rp.elements) == set(chain2.P.elements) | set(chain2.Pd.elements)
    assert set(rn.elements) == set(chain2.N.elements) | set(chain2.Nd.elements)
