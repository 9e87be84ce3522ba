"""Canonical cut elimination on the worked example.

The input cuts a proof of  p .* dn (p \\ n) |- dn n  against a proof that
takes a deliberately redundant trip through the shift-adjoint postulate.  The
parametric move pushes the cut to the uppermost occurrence of the cut formula
and mutates the section below it: the adjoint postulate becomes the plain
shift postulate and three turnstiles change kind.  A principal move then
reduces the remaining cut away.
"""

from fdlg.corpus import cut_elim_example, cut_elim_parametric_result
from fdlg.cutelim import eliminate_cuts
from fdlg.focus import minimize_proof
from fdlg.kernel import iter_nodes, check_derivation
from fdlg.syntax import render_sequent

ce = cut_elim_example()
print("input (with cut):")
for path, node in iter_nodes(ce):
    print("  " * len(path) + f"{node.rule}: {render_sequent(node.conclusion)}")

trace = []
out = eliminate_cuts(ce, trace)
print("\nmoves:")
for line in trace:
    print("  ", line)

print("\ncut-free output re-checks:", check_derivation(out).ok,
      "| end-sequent preserved:", out.conclusion == ce.conclusion)

ours = minimize_proof(out)
displayed = minimize_proof(eliminate_cuts(cut_elim_parametric_result()))
print("matches the one-parametric-move state up to minimization:", ours == displayed)

print("\nminimized cut-free proof:")
for path, node in iter_nodes(ours):
    print("  " * len(path) + f"{node.rule}: {render_sequent(node.conclusion)}")
