from pathlib import Path
import pytest
from threepoint_gauge import VerificationClient
from threepoint_gauge.errors import ConstraintError
from threepoint_gauge.fock import HeisenbergParams
from threepoint_gauge.realization import RealizationParams
from threepoint_gauge.verify import SuiteConfig

SMALL = SuiteConfig(suites=["mu", "d3", "kahler"], mu_range=2, d3_range=2)

PLAN = """
version: "1"
runs:
  - name: "algebraic"
    suites: ["mu", "d3"]
    overrides:
      mu_range: 2
      d3_range: 2
  - name: "oscillators"
    suites: ["heisenberg"]
    kappa0: "2"
    b0: 1
    b1: [1, 0, "1/2"]
    overrides:
      heisenberg_modes: 1
      vectors: 1
"""


@pytest.mark.asyncio
async def test_run_async_fans_out():
    client = VerificationClient(SMALL, max_workers=2)
    res = await client.run_async()
    assert res.is_ok, res.unwrap_err()
    summary = res.unwrap()
    assert summary.passed
    assert sorted(r.suite for r in summary.reports) == ["d3", "kahler", "mu"]
    assert summary.to_json()["passed"] is True


@pytest.mark.asyncio
async def test_run_suite_async_unknown_suite():
    res = await VerificationClient(SMALL).run_suite_async("nope")
    assert res.is_err
    assert isinstance(res.unwrap_err(), ValueError)


@pytest.mark.asyncio
async def test_suite_errors_are_returned():
    cfg = SuiteConfig(suites=["heisenberg"], params=RealizationParams(heis=HeisenbergParams(chi1=1)))
    res = await VerificationClient(cfg).run_async()
    assert res.is_err
    assert isinstance(res.unwrap_err(), ConstraintError)


def test_run_blocking():
    res = VerificationClient(SMALL).run(["mu"])
    assert res.is_ok
    assert res.unwrap().render_text().splitlines()[-1] == "PASS"


@pytest.mark.asyncio
async def test_run_inside_event_loop():
    res = VerificationClient(SMALL).run(["mu"])
    assert res.is_err
    assert "run_async" in str(res.unwrap_err())


@pytest.mark.asyncio
async def test_interpret_plan_text():
    """Ejecuta un plan YAML completo desde texto."""
    res = await VerificationClient().interpret_async(PLAN, as_text=True)
    assert res.is_ok, f"interpret_async() falló: {res.unwrap_err()}"
    summaries = res.unwrap()
    assert list(summaries) == ["algebraic", "oscillators"]
    assert all(s.passed for s in summaries.values())


@pytest.mark.asyncio
async def test_interpret_plan_file(tmp_path: Path):
    plan = tmp_path / "plan.yml"
    plan.write_text(PLAN, encoding="utf-8")
    res = await VerificationClient().interpret_async(str(plan))
    assert res.is_ok
    assert set(res.unwrap()) == {"algebraic", "oscillators"}


@pytest.mark.asyncio
async def test_interpret_missing_file():
    res = await VerificationClient().interpret_async("/no/such/plan.yml")
    assert res.is_err
    assert isinstance(res.unwrap_err(), FileNotFoundError)


@pytest.mark.asyncio
@pytest.mark.parametrize("text", [
    "runs: []",
    "runs:\n  - name: a\n  - name: a",
    "runs:\n  - name: a\n    suites: [\"nope\"]",
    "runs:\n  - name: a\n    overrides:\n      colour: 3",
    "runs:\n  - name: a\n    kappa0: 0",
])
async def test_invalid_plans(text):
    res = await VerificationClient().interpret_async(text, as_text=True)
    assert res.is_err
    assert isinstance(res.unwrap_err(), ValueError)


def test_repository_plan_parses():
    """El plan de la raíz del repositorio es válido."""
    from threepoint_gauge.verify.interpreter import PlanInterpreter
    yaml_path = Path(__file__).parent.parent / "suites.yml"
    assert yaml_path.exists(), f"No se encontró el archivo {yaml_path}"
    spec = PlanInterpreter(VerificationClient())._parse_spec(yaml_path.read_text(encoding="utf-8"))
    assert spec.is_ok, spec.unwrap_err()
    assert "gauge-kappa1" in [run.name for run in spec.unwrap().runs]


def test_repository_plan_wires_exhaustive_and_r0():
    """Las ejecuciones exhaustiva y r = 0 del plan llegan a SuiteConfig."""
    from threepoint_gauge.verify.interpreter import PlanInterpreter
    interpreter = PlanInterpreter(VerificationClient())
    text = (Path(__file__).parent.parent / "suites.yml").read_text(encoding="utf-8")
    runs = {run.name: run for run in interpreter._parse_spec(text).unwrap().runs}

    exhaustive = interpreter._suite_config(runs["heisenberg-exhaustive"]).unwrap()
    assert exhaustive.exhaustive
    assert (exhaustive.exhaustive_degree, exhaustive.exhaustive_range) == (3, 4)
    assert exhaustive.suites == ["heisenberg"]

    r0 = interpreter._suite_config(runs["virasoro-r0"]).unwrap()
    assert r0.params.r == 0 and r0.orderings == [0]
    assert r0.params.virasoro_violations() == []


@pytest.mark.asyncio
async def test_failing_suite_is_reported_not_raised():
    cfg = SuiteConfig(suites=["current"], modes=1, vectors=1, orderings=[1], form_scale=4, pairs=[("e", "f")])
    res = await VerificationClient(cfg).run_async()
    assert res.is_ok, res.unwrap_err()
    summary = res.unwrap()
    assert not summary.passed
    assert summary.to_json()["passed"] is False
    assert summary.render_text().splitlines()[-1] == "FAIL"
