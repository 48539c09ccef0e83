import io
import json
import shutil
import subprocess
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from hypergroups.cli import main
from hypergroups.textio import parse, parse_all

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(resources.files("hypergroups").joinpath("schema/output.schema.json").read_text())

BUNDLE = (GOLDEN / "k2.hg").read_text() + "\n" + (GOLDEN / "v3.hg").read_text() + """
morphism f : V3 -> K2
map 0 -> 1
map a -> 1
map b -> g

morphism g : V3 -> K2
map 0 -> 1
map a -> g
map b -> g

morphism z : K2 -> K2
map 1 -> 1
map g -> 1

morphism id : K2 -> K2
map 1 -> 1
map g -> g

diagram D
node p V3
node q V3
node r K2
arrow p -> r f
arrow q -> r f
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run("--json", *argv)
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["exit_code"] == code
    return code, payload


@pytest.fixture
def files(tmp_path):
    for p in GOLDEN.glob("*.hg"):
        (tmp_path / p.name).write_text(p.read_text())
    (tmp_path / "bundle.hg").write_text(BUNDLE)
    bad = (GOLDEN / "k2.hg").read_text().replace("g g = 1,g", "g g = g")
    (tmp_path / "b.hg").write_text(bad)
    (tmp_path / "empty.hg").write_text("")
    return tmp_path


class TestContractExamples:
    def test_verify_v3(self, files):
        assert run("verify", files / "v3.hg")[0] == 0

    def test_quotient(self, files):
        code, out, _ = run("quotient", files / "v3.hg", "--sub", "0,a")
        assert code == 0
        Q = parse(out).body
        code, _, _ = run("iso", files / "k2.hg", files / "v3.hg")
        assert Q.order == 2 and Q.table[1, 1] == 0b11

    def test_enumerate_two(self):
        code, out, _ = run("enumerate", "--order", "2")
        assert code == 0
        assert len([d for d in parse_all(out.split("\n", 2)[2])]) == 2


class TestExitCodes:
    def test_failed_check(self, files):
        code, out, _ = run("verify", files / "b.hg")
        assert code == 1 and "FAIL i" in out

    def test_parse_error(self, files):
        code, _, err = run("verify", files / "empty.hg")
        assert code == 2 and "1:1" in err
        assert run("quotient", files / "b.hg", "--sub", "1")[0] == 2

    def test_usage(self, files):
        assert run()[0] == 2
        assert run("bogus")[0] == 2
        assert run("verify")[0] == 2
        assert run("verify", files / "missing.hg")[0] == 2
        assert run("enumerate", "--order", "9")[0] == 2
        assert run("quotient", files / "v3.hg", "--sub", "zz")[0] == 2

    def test_help(self):
        assert run("--help")[0] == 0

    def test_unsupported_is_usage(self, files):
        assert run("cokernel", f"{files / 'bundle.hg'}:g")[0] == 2
        assert run("cokernel", f"{files / 'bundle.hg'}:g", "--force-generated")[0] == 0

    @pytest.mark.parametrize("argv,code", [
        (["commutative", "s3.hg"], 1),
        (["commutative", "v3.hg"], 0),
        (["sip", "s3.hg"], 0),
        (["sip", "k2.hg"], 1),
        (["relational", "k2.hg"], 0),
        (["canon", "v3.hg"], 0),
        (["generate", "s3.hg", "--set", "p120"], 0),
        (["generate-sub", "v3.hg", "--set", "b"], 0),
        (["coset-space", "s3.hg", "--sub", "e,p102"], 1),
        (["coset-space", "s3.hg", "--sub", "e,p120,p201"], 0),
        (["chain", "3"], 0),
        (["product", "k2.hg", "v3.hg"], 0),
        (["direct-sum", "k2.hg", "k2.hg", "--morphisms"], 0),
        (["direct-sum", "s3.hg"], 2),
        (["kernel", "bundle.hg:f"], 0),
        (["image", "bundle.hg:g"], 0),
        (["cokernel", "bundle.hg:f"], 0),
        (["image-full", "bundle.hg:f"], 0),
        (["hom", "k2.hg", "v3.hg"], 0),
        (["hom-table", "k2.hg", "k2.hg"], 0),
        (["bilinearity", "k2.hg", "k2.hg", "k2.hg"], 0),
        (["universal", "kernel", "bundle.hg:f"], 0),
        (["universal", "cokernel", "bundle.hg:f"], 0),
        (["universal", "biproduct", "k2.hg", "k2.hg", "--tests-order", "2"], 0),
        (["universal", "biproduct", "k2.hg", "k2.hg"], 1),
        (["universal", "cone", "bundle.hg:D", "--tests-order", "2"], 0),
        (["exact", "bundle.hg:z", "bundle.hg:id", "--short"], 1),
        (["exact", "bundle.hg:z", "bundle.hg:id"], 0),
        (["exact", "bundle.hg:f", "bundle.hg:id"], 1),
        (["limit", "bundle.hg:D"], 0),
        (["colimit", "bundle.hg:D"], 0),
        (["enumerate", "--order", "3", "--count"], 0),
        (["iso", "k2.hg", "bundle.hg:K2"], 0),
        (["iso", "k2.hg", "z2.hg"], 1),
        (["search", "nonfull-image", "--max-order", "2"], 0),
        (["search", "equalizer-gap", "--max-order", "4"], 2),
    ])
    def test_codes(self, files, argv, code):
        argv = [str(files / a) if a.split(":")[0].endswith(".hg") else a for a in argv]
        assert run(*argv)[0] == code
        assert run_json(*argv)[0] == code


class TestJson:
    def test_error_payload(self, files):
        code, payload = run_json("verify", files / "empty.hg")
        assert code == 2 and payload["error"]["line"] == 1 and payload["error"]["col"] == 1

    def test_semantic_error_carries_report(self, files):
        code, payload = run_json("sip", files / "b.hg")
        assert code == 2 and payload["error"]["report"]["violations"]

    def test_witnesses_replay_through_verify(self, files):
        code, payload = run_json("verify", files / "b.hg")
        assert code == 1
        for v in payload["data"]["report"]["violations"]:
            witness = ",".join(v["names"])
            rc, rep = run_json("verify", files / "b.hg", "--replay", f"{v['axiom']}:{witness}")
            assert rc == 1 and rep["data"]["replay"]["violated"]

    def test_non_witness_replays_clean(self, files):
        rc, rep = run_json("verify", files / "v3.hg", "--replay", "iii:a,b,b")
        assert rc == 0 and not rep["data"]["replay"]["violated"]

    def test_search_payload(self):
        code, payload = run_json("search", "hom-nonassoc", "--max-order", "3")
        assert code == 0 and payload["data"]["found"]
        assert payload["data"]["scanned"] == {"pairs": 43, "morphisms": 73, "triples": 395}
        assert payload["data"]["witness"]["objects"] == {"G": "H3_0", "H": "H3_0"}

    def test_documents_parse(self, files):
        _, payload = run_json("limit", f"{files / 'bundle.hg'}:D")
        docs = parse_all("\n".join(payload["documents"]))
        assert docs[-1].kind == "morphism"


class TestGoldenThroughCli:
    @pytest.mark.parametrize("name", ["t.hg", "z2.hg", "k2.hg", "v3.hg", "s3.hg", "k2_sum_k2.hg"])
    def test_canon_of_golden_is_stable(self, files, name):
        _, first, _ = run("canon", files / name)
        doc = first.split("\n\n", 1)[1]
        (files / "c.hg").write_text(doc)
        _, second, _ = run("canon", files / "c.hg")
        assert first == second

    def test_coset_space_unchecked_matches_golden(self, files):
        code, out, _ = run("coset-space", files / "s3.hg", "--sub", "e,p102", "--unchecked",
                           "--name", "S3modH")
        assert code == 1
        assert out.split("\n\n", 1)[1] == (GOLDEN / "s3_coset.hg").read_text()

    def test_chain_matches_golden(self):
        assert run("chain", "2")[1] == (GOLDEN / "v3.hg").read_text()

    def test_direct_sum_matches_golden(self, files):
        out = run("direct-sum", files / "k2.hg", files / "k2.hg", "--name", "K2sumK2")[1]
        assert out == (GOLDEN / "k2_sum_k2.hg").read_text()


@pytest.mark.skipif(shutil.which("hg") is None, reason="console script not installed")
def test_console_script(files):
    r = subprocess.run(["hg", "verify", str(files / "v3.hg")], capture_output=True, text=True)
    assert r.returncode == 0 and "pass" in r.stdout
