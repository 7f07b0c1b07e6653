import json
from threepoint_gauge.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, build_parser, run, suite_config


def test_reduce(capsys):
    assert run(["reduce", "t^2", "t^-1*u"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2*w1"


def test_reduce_bad_input(capsys):
    assert run(["reduce", "t^x", "t"]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_mu_table_json(capsys):
    assert run(["mu-table", "3", "--format", "json"]) == EXIT_OK
    grid = json.loads(capsys.readouterr().out)
    assert len(grid) == 49
    assert {"k": 1, "l": 0, "num": 1, "den": 1} in grid


def test_bracket(capsys):
    assert run(["bracket", "e@t^2", "f@t^-2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "h@t^0 - 2*w0"
    assert run(["bracket", "e@t^2", "g@t"]) == EXIT_INPUT


def test_bracket_witt_json(capsys):
    assert run(["bracket", "d1@1", "d1@2", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    # [d¹_1, d¹_2] = d_2
    assert payload["witt"] == [{"n": 2, "u": 1, "num": 1, "den": 1}]


def test_char(capsys):
    assert run(["char"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2, 0, -1"


def test_relation(capsys):
    assert run(["relation", "bosonrelations", "2", "-2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "-4 1_0"
    assert run(["relation", "nope", "0", "0"]) == EXIT_INPUT


def test_verify_mu_json(capsys, tmp_path):
    out = tmp_path / "report.json"
    assert run(["verify", "--suite", "mu", "--format", "json", "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["passed"] is True
    assert payload["reports"][0]["suite"] == "mu"


def test_verify_constraint_violation():
    # the gauge suite needs r = 1
    assert run(["verify", "--suite", "gauge", "--r", "0"]) == EXIT_INPUT


def test_bad_flags():
    assert run(["verify", "--suite", "nope"]) == EXIT_INPUT
    assert run(["verify", "--kappa0", "1.5"]) == EXIT_INPUT
    assert run(["verify", "--kappa0", "0", "--suite", "mu"]) == EXIT_INPUT
    assert run(["mu-table", "-1"]) == EXIT_INPUT


def test_suite_config_from_flags():
    args = build_parser().parse_args(["verify", "--kappa0", "2", "--b1", "1,0,1/2", "--modes", "1", "--seed", "7"])
    cfg = suite_config(args)
    assert cfg.params.heis.kappa0 == 2
    assert cfg.params.heis.B1_10 == 1 / 2
    assert cfg.params.constraint_violations() == []
    assert cfg.modes == 1
    assert cfg.seed == 7


def test_budget_exit_code(monkeypatch):
    from threepoint_gauge import config
    monkeypatch.setattr(config, "THREEPOINT_REWRITE_BUDGET", 0)
    assert run(["verify", "--suite", "mu"]) == EXIT_BUDGET


def test_verify_failing_suite_exit_code(capsys):
    # the invariant form at scale 4 breaks the central term of [e_1, f_-1]
    argv = ["verify", "--suite", "current", "--form-scale", "4", "--r", "1", "--modes", "1", "--vectors", "1"]
    assert run(argv) == EXIT_FAIL
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "FAIL"
    assert "[e,f]@r1 m=1 n=-1" in out


def test_verify_virasoro_at_r0(capsys):
    assert run(["verify", "--suite", "virasoro", "--r", "0", "--modes", "1", "--vectors", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip().splitlines()[-1] == "PASS"


def test_r_and_exhaustive_flags():
    cfg = suite_config(build_parser().parse_args(["verify", "--r", "0", "--exhaustive"]))
    assert cfg.params.r == 0 and cfg.orderings == [0]
    assert cfg.exhaustive
    default = suite_config(build_parser().parse_args(["verify"]))
    assert default.params.r == 1 and default.orderings == [0, 1]
    assert not default.exhaustive
