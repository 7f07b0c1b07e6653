from __future__ import annotations
from typing import Dict
import yaml
from pydantic import ValidationError
from option import Result, Ok, Err
from threepoint_gauge.fock import HeisenbergParams
from threepoint_gauge.realization import RealizationParams
from threepoint_gauge.verify.schema import PlanSpec, RunSpec, RunSummary, SuiteConfig

"""YAML plan interpreter.

Parses a plan (see `schema.py`), builds one SuiteConfig per run and executes the
runs in order through a `VerificationClient`.
"""


class PlanInterpreter:
    """Execute a verification plan with a `VerificationClient` (or compatible)."""

    def __init__(self, client):
        """Create the interpreter.

        Args:
            client: A `VerificationClient` exposing `run_async`.
        """
        self.client = client

    # -------- API pública --------
    async def run_from_text(self, plan_yaml: str) -> Result[Dict[str, RunSummary], Exception]:
        """Parse the YAML and execute every run.

        Args:
            plan_yaml: YAML string.

        Returns:
            Result with {run name: RunSummary}; the first failing run aborts the plan.
        """
        try:
            spec_res = self._parse_spec(plan_yaml)
            if spec_res.is_err:
                return Err(spec_res.unwrap_err())
            out: Dict[str, RunSummary] = {}
            for run in spec_res.unwrap().runs:
                cfg_res = self._suite_config(run)
                if cfg_res.is_err:
                    return Err(cfg_res.unwrap_err())
                summary_res = await self.client.run_async(cfg=cfg_res.unwrap())
                if summary_res.is_err:
                    return Err(summary_res.unwrap_err())
                out[run.name] = summary_res.unwrap()
            return Ok(out)
        except Exception as e:
            return Err(e)

    # -------- Internos --------
    def _parse_spec(self, plan_yaml: str) -> Result[PlanSpec, Exception]:
        """Validate YAML against the Pydantic schema.

        Returns:
            `PlanSpec` instance, or Err(ValueError) when the YAML does not match the schema.
        """
        try:
            raw = yaml.safe_load(plan_yaml) or {}
            return Ok(PlanSpec.model_validate(raw))
        except ValidationError as ve:
            return Err(ValueError(f"Invalid plan: {ve}"))
        except Exception as e:
            return Err(e)

    def _suite_config(self, run: RunSpec) -> Result[SuiteConfig, Exception]:
        """SuiteConfig of one run: gauge constraint set around κ₀, then overrides."""
        try:
            b1_00, b1_01, b1_10 = run.b1
            heis = HeisenbergParams(kappa0=run.kappa0, B0=run.b0, B1_00=b1_00, B1_01=b1_01, B1_10=b1_10)
            params = RealizationParams.gauge_defaults(run.kappa0, r=run.r, heis=heis)
            return Ok(SuiteConfig.model_validate({**run.overrides, "suites": run.suites, "params": params}))
        except ValidationError as ve:
            return Err(ValueError(f"Invalid run {run.name!r}: {ve}"))
        except Exception as e:
            return Err(e)
