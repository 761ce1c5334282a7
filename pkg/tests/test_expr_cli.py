import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from qweylab.config import ConfigError, parse_config
from qweylab.cli import main
from qweylab.errors import ExprError
from qweylab.expr import format_localized, format_pbw, parse_expression, parse_scalar
from qweylab.qweyl import AlgebraSpec, LocalizedElement
from qweylab.scalars import make_field

QQ_Q = make_field("rational_function_q")
Z3 = make_field("cyclotomic", 3)
S1 = AlgebraSpec.single_parameter(1, QQ_Q)
S2 = AlgebraSpec.single_parameter(2, QQ_Q)
q = QQ_Q.q

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_parse_basic():
    assert parse_expression("d1*x1", S1) == q * S1.x(1) * S1.d(1) + (q - 1)
    assert parse_expression("x1*x1", S1) == S1.x(1, 2)
    assert parse_expression("x1^3", S1) == S1.x(1, 3)
    assert parse_expression("2*x1 - x1", S1) == S1.x(1)
    assert parse_expression("(x1+d1)^2", S1) == (S1.x(1) + S1.d(1)) ** 2
    assert parse_expression("a1", S1) == S1.alpha(1)
    assert parse_expression("-3/4*q^2", S1) == QQ_Q.from_fraction(Fraction(-3, 4)) * q * q


def test_parse_localized():
    v = parse_expression("a1^-2", S1)
    assert isinstance(v, LocalizedElement)
    assert v.denom == (2,)
    w = parse_expression("x1 * a1^-1 + d1", S1)
    assert isinstance(w, LocalizedElement)
    assert w.equals(LocalizedElement(S1.x(1) + S1.d(1) * S1.alpha(1), (1,)))


def test_parse_errors():
    with pytest.raises(ExprError):
        parse_expression("x1^-1", S1)
    with pytest.raises(ExprError):
        parse_expression("x3", S2)
    with pytest.raises(ExprError):
        parse_expression("y1", S1)
    with pytest.raises(ExprError):
        parse_expression("x1 +", S1)
    with pytest.raises(ExprError):
        parse_expression("zeta", S1)
    err = None
    try:
        parse_expression("x1 * %", S1)
    except ExprError as exc:
        err = exc
    assert err is not None and err.column == 6


def test_parse_scalar():
    assert parse_scalar("3/4", QQ_Q) == QQ_Q.from_fraction(Fraction(3, 4))
    assert parse_scalar("q^2 - q", QQ_Q) == q * q - q
    assert parse_scalar("zeta+1", Z3) == Z3.zeta + 1
    with pytest.raises(ExprError):
        parse_scalar("x1", QQ_Q)


def test_format_pbw():
    assert format_pbw(parse_expression("d1*x1", S1)) == "q*x1*d1 + (q-1)"
    assert format_pbw(parse_expression("x1*x1", S1)) == "x1^2"
    assert format_pbw(S1.zero()) == "0"
    assert format_pbw(S1.x(1) - S1.d(1)) == "x1 - d1"
    assert format_localized(LocalizedElement(S1.x(1), (2,))) == "x1*a1^-2"
    assert format_localized(LocalizedElement(S1.one(), (1,))) == "a1^-1"


def test_roundtrip_print_parse():
    import random

    rng = random.Random(4)
    from conftest import random_element

    for _ in range(30):
        u = random_element(rng, S2, 3, 3)
        assert parse_expression(format_pbw(u), S2) == u


def test_config_validation_collects_problems():
    with pytest.raises(ConfigError) as info:
        parse_config({"field": "cyclotomic", "l": 2, "n": 0, "d": 1})
    msg = str(info.value)
    assert "field/l" in msg and "n:" in msg and "A:" in msg


def test_config_l2_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config(
            {"field": "cyclotomic", "l": 2, "n": 1, "d": 1, "A": [[1]]}
        )
    assert "l" in str(info.value)


def test_cli_eval_and_exit_codes(tmp_path, capsys):
    cfg = str(CONFIGS / "n1_l3.json")
    assert main(["eval", "d1*x1", "--config", cfg]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "zeta*x1*d1 + (zeta-1)"
    assert main(["eval", "x1^-1", "--config", cfg]) == 2


def test_cli_verify_report(tmp_path, capsys):
    cfg = str(CONFIGS / "n1_l3.json")
    out_path = tmp_path / "report.json"
    code = main(
        ["verify", "--config", cfg, "--only", "power-identities,delta-power", "--out", str(out_path)]
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["summary"] == {"pass": 2, "fail": 0, "skipped": 0, "total": 2, "ok": True}
    ids = [rec["check_id"] for rec in report["checks"]]
    assert ids == ["power-identities", "delta-power"]
    _ = capsys.readouterr()


def test_cli_verify_determinism(tmp_path):
    cfg = str(CONFIGS / "n1_l3.json")
    reports = []
    for k in range(2):
        out_path = tmp_path / f"r{k}.json"
        assert main(["verify", "--config", cfg, "--out", str(out_path)]) == 0
        rep = json.loads(out_path.read_text())
        for rec in rep["checks"]:
            rec.pop("elapsed")
        reports.append(rep)
    assert reports[0] == reports[1]


def test_cli_failure_exit_code(tmp_path, capsys):
    # a config whose reps include an off-locus rep with trivial commutant is
    # not constructible from the builders; instead break a check by feeding
    # an incompatible A shape
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": "cyclotomic", "l": 2, "n": 1, "d": 0}))
    assert main(["verify", "--config", str(bad)]) == 2
    _ = capsys.readouterr()


def test_cli_offlocus_rep_fails_suite(tmp_path, capsys):
    raw = json.loads((CONFIGS / "n1_l3.json").read_text())
    raw["reps"] = [[{"kind": "diag", "lambda": "1", "b": ["1", "0", "1"]}]]
    cfg = tmp_path / "offlocus.json"
    cfg.write_text(json.dumps(raw))
    out_path = tmp_path / "report.json"
    code = main(
        ["verify", "--config", str(cfg), "--only", "rep-irreducibility", "--out", str(out_path)]
    )
    assert code == 1
    report = json.loads(out_path.read_text())
    assert report["checks"][0]["status"] == "fail"
    _ = capsys.readouterr()


def test_cli_bundled_n2_config(tmp_path, capsys):
    cfg = str(CONFIGS / "n2_l3.json")
    out_path = tmp_path / "report.json"
    assert main(["verify", "--config", cfg, "--out", str(out_path)]) == 0
    report = json.loads(out_path.read_text())
    assert report["summary"]["ok"]
    assert report["summary"]["fail"] == 0
    _ = capsys.readouterr()


def test_cli_entrypoint_subprocess():
    cfg = str(CONFIGS / "n1_l3.json")
    proc = subprocess.run(
        [sys.executable, "-m", "qweylab.cli", "eval", "x1*x1", "--config", cfg],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "x1^2"
