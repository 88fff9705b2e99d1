import io
import json
from pathlib import Path

import jsonschema
import pytest

from qlorentz.cli import main
from qlorentz.verify import Context, check_names

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


@pytest.fixture(scope="module")
def ctx():
    return Context()


def run(argv, ctx=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, ctx, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["nf", "b*a"], "q*a*b"),
        (["nf", "as*a", "--pretty"], "1 - q^2 b b*"),
        (["nf", "es*e", "--algebra", "uq"], "(-q/(q^2 - 1))*kinv^2 + (q/(q^2 - 1))*k^2 + e*es"),
        (["coproduct", "e"], "kinv (x) e + e (x) k"),
        (["antipode", "b"], "-q*b"),
        (["antipode", "--inverse", "b"], "-q^-1*b"),
        (["star", "i*a*b"], "-i*q^-1*as*bs"),
        (["pair", "e", "a*bs"], "-q^(-3/2)"),
        (["act", "b", "B"], "(q^3 - q)*a^2*b^2\n= (q^2 - 1)*B^2"),
        (["podles-check", "A*B"], "true"),
        (["expand-sphere", "B*Bs"], "q^-2*A - q^-2*A^2"),
        (["limit-su2", "R1+iR2", "B"], "-i + 2*i*A"),
        (["limit-su2", "--", "-R3", "B"], "-i*B"),
        (["limit-su2", "iR2-R1", "Bs"], "-i + 2*i*A"),
        (["limit-an", "T0", "A"], "-2*A + 2*A^2"),
    ],
)
def test_commands(ctx, argv, expected):
    code, out, _ = run(argv, ctx)
    assert code == 0
    assert out.strip() == expected


def test_json_output(ctx):
    code, out, _ = run(["pair", "k", "a", "--format", "json"], ctx)
    assert code == 0
    assert json.loads(out) == {"command": "pair", "u": "k", "f": "a", "result": "q^(1/2)"}


def test_printed_output_parses_back(ctx):
    for expr in ("a*b*as + q^(1/2)*bs", "e*es*kinv - k^3"):
        _, once, _ = run(["nf", expr], ctx)
        _, twice, _ = run(["nf", once.strip()], ctx)
        assert once == twice


def test_usage_errors(ctx):
    code, _, err = run(["nf", "x"], ctx)
    assert code == 2 and "unknown generator" in err and "^" in err
    code, _, err = run(["nf", "a*bz"], ctx)
    assert code == 2
    assert run(["frobnicate"], ctx)[0] == 2
    assert run(["verify", "nothing"], ctx)[0] == 2
    assert run(["expand-sphere", "A", "--degree-cap", "0"], ctx)[0] == 2


def test_math_errors_exit_one(ctx):
    code, out, _ = run(["podles-check", "a"], ctx)
    assert code == 1 and out.strip() == "false"
    code, _, err = run(["expand-sphere", "a*b*b"], ctx)
    assert code == 1 and "NotInvariantError" in err
    code, _, err = run(["expand-sphere", "A^3", "--degree-cap", "2"])
    assert code == 1 and "DegreeCapError" in err


def test_verify_scopes(ctx):
    code, out, _ = run(["verify-13a", "--format", "json"], ctx)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0 and report["summary"] == {"total": 12, "passed": 12, "failed": 0}
    code, out, _ = run(["verify", "limits", "--format", "json"], ctx)
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert len([n for n in names if n.startswith(("15a.", "15b."))]) == 18
    assert names == sorted(names)
    code, out, _ = run(["verify-brackets"], ctx)
    assert code == 0 and out.splitlines()[-1].startswith("8/8")
    assert check_names("laws") == check_names("structure")


def test_output_is_deterministic():
    first = run(["verify", "pairing", "--format", "json"])
    second = run(["verify", "pairing", "--format", "json"])
    assert first == second


def test_corrupted_rule_text_report():
    code, out, _ = run(["verify", "relations"], Context(uq_overrides={("e", "k"): "q^2*k*e"}))
    assert code == 1
    assert "FAIL relations.uq.ek" in out
    assert "lhs: q^2*k*e" in out
