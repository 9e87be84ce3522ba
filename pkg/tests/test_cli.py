"""Exit codes and format round trips through the command line."""

import contextlib
import io
import json
import sys

import pytest

from fdlg.cli import main
from fdlg.corpus import LEXICON_TEXT


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main(argv)
            except SystemExit as e:
                code = e.code
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_prove_found():
    code, out, _ = run(["prove", "p |- p"])
    assert code == 0 and "p-Id" in out


def test_prove_not_found():
    code, _, err = run(["prove", "p * q |- p * q"])
    assert code == 1 and "no proof" in err


def test_usage_error():
    code, _, _ = run(["prove", "p |- # nonsense"])
    assert code == 2


def test_check_and_focalization_roundtrip():
    code, out, _ = run(["prove", "p .* q |- p * q", "--json"])
    assert code == 0
    assert run(["check", "-"], stdin=out)[0] == 0
    assert run(["focalization", "-"], stdin=out)[0] == 0


def test_check_rejects_tampered_document():
    _, out, _ = run(["prove", "p .* q |- p * q", "--json"])
    doc = json.loads(out)
    doc["conclusion"] = "q .* p |- p * q"
    code, text, _ = run(["check", "-"], stdin=json.dumps(doc))
    assert code == 1 and "not an instance" in text


def test_standardize():
    code, out, _ = run(["standardize", "p * q |- p * q"])
    assert code == 0 and out.strip() == "p .* q |- p * q"


def test_parse_readings(tmp_path):
    lex = tmp_path / "sentence.lex"
    lex.write_text(LEXICON_TEXT)
    code, out, err = run(["parse", "everyone likes some teacher",
                          "--lexicon", str(lex), "--goal", "dn s", "--json"])
    assert code == 0
    assert "reading" in err
    docs = out.strip().split("\n{")
    assert len(docs) >= 2
    code, _, _ = run(["parse", "everyone likes some qux",
                      "--lexicon", str(lex), "--goal", "dn s"])
    assert code == 2


def test_cutelim_roundtrip():
    from fdlg.corpus import cut_elim_example
    from fdlg.kernel import derivation_to_json
    doc = derivation_to_json(cut_elim_example(), {"n"})
    code, out, err = run(["cutelim", "-", "--trace"], stdin=doc)
    assert code == 0
    assert "parametric" in err
    assert run(["check", "-"], stdin=out)[0] == 0
    assert '"P-Cut"' not in out and '"Pn-Cut"' not in out


def test_translate_both_ways(fig_forall_exists):
    from fdlg.kernel import derivation_to_json
    doc = derivation_to_json(fig_forall_exists, {"s"})
    code, flg_doc, _ = run(["translate", "--to", "flg", "-"], stdin=doc)
    assert code == 0 and '"calculus": "flg"' in flg_doc
    code, back, _ = run(["translate", "--to", "fdlg", "-"], stdin=flg_doc)
    assert code == 0
    assert run(["check", "-"], stdin=back)[0] == 0


def test_soundness_builtin():
    code, out, _ = run(["soundness", "--algebra", "builtin:chain2"])
    assert code == 0
    assert all(line.endswith("ok") for line in out.strip().splitlines())


def test_latex_outputs():
    code, out, _ = run(["latex", "--sequent", "p |- dn n", "--neg", "n"])
    assert code == 0 and r"\dot{\Vdash}" in out
    _, proof_doc, _ = run(["prove", "p .* q |- p * q", "--json"])
    code, out, _ = run(["latex", "-"], stdin=proof_doc)
    assert code == 0 and r"\BIC" in out and r"\otimes_R" in out


def test_soundness_from_algebra_file(tmp_path):
    from fdlg.algebra import builtin, render_algebra
    path = tmp_path / "chain2.alg"
    path.write_text(render_algebra(builtin("chain2")))
    code, out, _ = run(["soundness", "--algebra", str(path)])
    assert code == 0 and "ok" in out
