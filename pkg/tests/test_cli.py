import json

import pytest
from click.testing import CliRunner

from superconf.cli import main, run


def invoke(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, res.output


class TestBracket:

    def test_k4(self):
        rc, out = invoke("bracket", "--alg", "K:4", "zeta1@1", "eta1@-1")
        assert rc == 0 and out.strip() == "1*D@0 + -1*zeta1eta1@0"

    def test_vir(self):
        rc, out = invoke("bracket", "--alg", "Vir", "E@2", "E@-1")
        assert rc == 0 and out.strip() == "3*E@1"

    def test_parse_error(self):
        assert invoke("bracket", "--alg", "K:4", "zeta9@0", "eta1@0")[0] == 2

    def test_bad_algebra(self):
        assert invoke("bracket", "--alg", "Q:7", "D@0", "D@0")[0] == 2

    def test_json(self, tmp_path):
        path = tmp_path / "b.json"
        rc, _ = invoke("bracket", "--alg", "Vir", "--json", str(path), "E@2", "E@-1")
        assert rc == 0
        assert json.loads(path.read_text())["algebra"]


class TestAudit:

    def test_khat(self):
        rc, out = invoke("audit", "--alg", "Khat:4", "--window", "2")
        assert rc == 0 and "extension identity" in out

    def test_ck6(self):
        rc, out = invoke("audit", "--alg", "CK6", "--window", "1")
        assert rc == 0 and "pfaffian" in out

    def test_fault(self):
        rc, out = invoke("audit", "--alg", "K:4", "--window", "1", "--fault")
        assert rc == 1 and out.startswith("FAIL")

    def test_bad_window(self):
        assert invoke("audit", "--alg", "K:4", "--window", "0")[0] == 2


class TestCocycle:

    def test_psi(self):
        rc, out = invoke("cocycle", "check", "--id", "psi", "--alg", "K:4", "--window", "2")
        assert rc == 0 and out.startswith("ok")

    def test_default_action(self):
        assert invoke("cocycle", "--id", "phi1", "--window", "2")[0] == 0

    def test_d_printed_fails(self):
        assert invoke("cocycle", "--id", "D", "--window", "1")[0] == 1

    def test_d_derived(self):
        assert invoke("cocycle", "--id", "D", "--normalization", "derived", "--window", "1")[0] == 0


class TestModule:

    def test_act(self, tmp_path):
        path = tmp_path / "m.json"
        rc, out = invoke("module", "act", "--alg", "K:4", "--word", "zeta1@1,eta1@-1", "--lambda", "1,1/2",
                         "--delta", "1/3", "--json", str(path))
        assert rc == 0 and out.strip() == "-1*t^0"
        payload = json.loads(path.read_text())
        assert payload["coeff"] == ["-1"]

    def test_unbalanced(self):
        rc, _ = invoke("module", "act", "--alg", "K:4", "--word", "zeta1@1", "--lambda", "1,1/2")
        assert rc == 2

    def test_missing_word(self):
        assert invoke("module", "act", "--alg", "K:4")[0] == 2

    def test_list(self):
        rc, out = invoke("module", "--list")
        assert rc == 0 and "formulasK4.e" in out

    def test_lemma(self):
        assert invoke("module", "--lemma", "formulasK4.e", "--draws", "1")[0] == 0

    def test_unknown_lemma(self):
        assert invoke("module", "--lemma", "nope")[0] == 2


class TestClassify:

    def test_single(self):
        rc, out = invoke("classify", "--alg", "K:6", "--lambda", "1/2,1/2,1/2", "--delta", "1/4")
        assert rc == 0 and "cuspidal=False" in out

    def test_empty_grid(self):
        assert invoke("classify", "--family", "W:2", "--lam-grid", "")[0] == 0

    def test_csv(self, tmp_path):
        path = tmp_path / "c.csv"
        rc, _ = invoke("classify", "--family", "W:2", "--lam-grid", "1/2,-1/2;1,0", "--delta", "1/2,1",
                       "--csv", str(path))
        assert rc == 0
        assert len(path.read_text().strip().splitlines()) == 5


class TestLocality:

    def test_pair(self):
        rc, out = invoke("locality", "--alg", "K2:4", "--a", "zeta2", "--b", "eta2", "--window", "8", "--maxN", "4")
        assert rc == 0 and out.startswith("semi-locality order of (zeta2, eta2): 2")

    def test_small_window(self):
        assert invoke("locality", "--alg", "K:4:D", "--a", "1", "--b", "1", "--window", "2", "--maxN", "4")[0] == 2

    def test_all(self):
        assert invoke("locality", "--alg", "W:1", "--all", "--window", "6", "--maxN", "3")[0] == 0

    def test_missing_pair(self):
        assert invoke("locality", "--alg", "W:1")[0] == 2


class TestJordan:

    def test_table(self):
        rc, out = invoke("jordan", "table", "--alg", "CK6", "--window", "1")
        assert rc == 0 and "1/2*e'(fg)" in out

    def test_compare_reports_printed_mismatch(self):
        rc, out = invoke("jordan", "compare")
        assert rc == 1
        assert "ok   computed CK6 vs computed K4, signed" in out
        assert "FAIL computed CK6 vs printed CK6" in out


def test_export_mc(tmp_path):
    path = tmp_path / "mc.json"
    rc, _ = invoke("export", "--what", "mc", "--json", str(path))
    assert rc == 0 and json.loads(path.read_text())["2"] == {"-1": "-1", "0": "3", "1": "-3", "2": "1"}


def test_run_entry_point():
    assert run(["bracket", "--alg", "Vir", "E@1", "E@-1"]) == 0
    assert run(["bracket", "--alg", "K:4", "zeta9@0", "eta1@0"]) == 2
    assert run(["nonsense"]) == 2
