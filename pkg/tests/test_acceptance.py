"""Acceptance criteria 1-8, each reported as one pass/fail line."""

import io
import json
import math
from pathlib import Path

import jsonschema
import pytest

from qlorentz.classical import (
    AN_NAMES,
    SU2_NAMES,
    ClassicalElement,
    classical_act,
    derivations,
    quantum_an_numerator,
    quantum_su2_numerator,
)
from qlorentz.cli import main
from qlorentz.hopf import funq, uq
from qlorentz.ncpoly import Element
from qlorentz.verify import Context, run_suite

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


@pytest.fixture(scope="module")
def ctx():
    return Context()


def summarize(report, prefix=()):
    checks = [c for c in report.checks if not prefix or c.name.startswith(prefix)]
    failed = [c.name for c in checks if not c.passed]
    text = f"{len(checks) - len(failed)}/{len(checks)} checks"
    if failed:
        text += f", failing: {', '.join(failed[:5])}"
    return not failed and bool(checks), text


def test_criterion_1_relations(ctx, criterion):
    ok, text = summarize(run_suite("relations", ctx))
    assert criterion(1, "relations, local confluence, 500-sample randomized confluence", ok, text)


def test_criterion_2_hopf_axioms(ctx, criterion):
    ok, text = summarize(run_suite("hopf", ctx))
    assert criterion(2, "Hopf axioms on words of length <= 3", ok, text)


def test_criterion_3_pairing(ctx, criterion):
    ok, text = summarize(run_suite("pairing", ctx))
    assert criterion(3, "pairing table, k^-1 row, star compatibility, products", ok, text)


def test_criterion_4_action_tables(ctx, criterion):
    a_ok, a_text = summarize(run_suite("13a", ctx))
    b_ok, b_text = summarize(run_suite("13b", ctx))
    assert criterion(4, "24 explicit action formulas", a_ok and b_ok, f"U side {a_text}; Fun side {b_text}")


def test_criterion_5_structure(ctx, criterion):
    report = run_suite("structure", ctx)
    ok, text = summarize(report)
    parts = []
    for prefix in ("podles.", "stability.", "laws.9a.", "laws.9b.", "laws.cross."):
        parts.append(f"{prefix[:-1]} {summarize(report, (prefix,))[1]}")
    assert criterion(5, "sphere relations, stability, module-algebra, star and cross laws", ok, f"{text} ({'; '.join(parts)})")


def _direct_numeric(ctx, name, g, q):
    """Float value of the rescaled action near q = 1, without the exact limit machinery."""
    h = ctx.F.gen(g)
    if name in AN_NAMES:
        x, mode = quantum_an_numerator(name, h, ctx.double), "lnq"
    else:
        x, mode = quantum_su2_numerator(name, h, ctx.double)
    poly = ctx.sphere(x)
    scale = 1 / math.log(q) if mode == "lnq" else 1
    return {key: c.evaluate(q) * scale for key, c in poly.terms.items()}


def test_criterion_6_limits(ctx, criterion):
    report = run_suite("limits", ctx)
    exact_ok, exact_text = summarize(report, ("15a.", "15b."))
    rest_ok, rest_text = summarize(report)
    worst = 0.0
    for name in SU2_NAMES + AN_NAMES:
        for g in ("A", "B", "Bs"):
            oracle = classical_act(derivations()[name], ClassicalElement.generator(g)).terms
            for q in (1 + 1e-6, 1 - 1e-6):
                got = _direct_numeric(ctx, name, g, q)
                for key in set(got) | set(oracle):
                    target = complex(oracle[key]) if key in oracle else 0j
                    value = got.get(key, 0j)
                    err = abs(value - target) / abs(target) if target else abs(value)
                    worst = max(worst, err)
    ok = exact_ok and rest_ok and worst < 1e-4
    text = f"exact {exact_text}; all limit checks {rest_text}; numeric max deviation {worst:.2e} (< 1e-4)"
    assert criterion(6, "18 exact q -> 1 limits against the vector-field tables", ok, text)


def test_criterion_7_brackets(ctx, criterion):
    ok, text = summarize(run_suite("brackets", ctx))
    assert criterion(7, "su(2) and an(2) bracket relations", ok, text)


def _cli(argv, context):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, context, out=out, err=err)
    return code, out.getvalue()


def _all_rules():
    for P, key in ((funq(), "funq_overrides"), (uq(), "uq_overrides")):
        for (x, y), rhs in sorted(P.rules.items()):
            lhs = (P.generators[x], P.generators[y])
            yield key, lhs, f"2*({Element(P, rhs)})"


def test_criterion_8_cli(ctx, criterion):
    code, out = _cli(["verify", "all", "--format", "json"], ctx)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    passing = [c["name"] for c in report["checks"] if c["status"] == "pass"]
    clean_ok = code == 0 and len(passing) >= 70 and len(set(passing)) == len(passing)

    missed = []
    for key, lhs, rhs in _all_rules():
        code, out = _cli(["verify", "all", "--format", "json"], Context(**{key: {lhs: rhs}}))
        bad = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
        if code != 1 or not bad or not any(c["lhs"] != c["rhs"] for c in bad):
            missed.append(" ".join(lhs))
    n_rules = len(list(_all_rules()))
    ok = clean_ok and not missed
    text = (
        f"clean run exit 0 with {len(passing)} passing checks; "
        f"{n_rules - len(missed)}/{n_rules} corrupted rules flip the exit code with a counterexample"
    )
    assert criterion(8, "verify all --format json and corrupted-rule detection", ok, text)
