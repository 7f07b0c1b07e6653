import asyncio
import time as T
from pathlib import Path
from typing import Dict, Iterable, Optional
from option import Result, Ok, Err
from threepoint_gauge import config
from threepoint_gauge.log.logger_config import get_logger
from threepoint_gauge.verify.interpreter import PlanInterpreter
from threepoint_gauge.verify.schema import CheckReport, RunSummary, SuiteConfig
from threepoint_gauge.verify.suites import SUITES

L = get_logger(name="threepoint-harness")

"""Verification client.

Runs suites as independent tasks (threads bounded by a semaphore) and gathers
their reports. Public methods return `option.Result[T, Exception]`.
"""


class VerificationClient:
    """Facade over the verification suites.

    Attributes:
        config: Default SuiteConfig used when a call does not pass one.
        max_workers: Maximum number of suites running at once.
    """

    def __init__(self, cfg: Optional[SuiteConfig] = None, max_workers: int = config.THREEPOINT_MAX_WORKERS):
        """Initialize the client.

        Args:
            cfg: Default configuration (defaults to `SuiteConfig()`).
            max_workers: Concurrency bound; at least 1.
        """
        self.config = cfg or SuiteConfig()
        self.max_workers = max(1, max_workers)

    # -------- Suites --------
    async def run_suite_async(self, name: str, cfg: Optional[SuiteConfig] = None) -> Result[CheckReport, Exception]:
        """Run one suite in a worker thread.

        Args:
            name: Suite id (see `ALL_SUITES`).
            cfg: Configuration; defaults to the client's.

        Returns:
            Result with the suite's CheckReport.
        """
        try:
            if name not in SUITES:
                raise ValueError(f"unknown suite {name!r}")
            cfg = cfg or self.config
            t1 = T.time()
            report = await asyncio.to_thread(SUITES[name], cfg)
            L.info({"event": "HARNESS.SUITE.DONE",
                    "suite": name,
                    "passed": report.passed,
                    "time": T.time() - t1})
            return Ok(report)
        except Exception as e:
            L.error({"event": "HARNESS.SUITE.ERROR", "suite": name, "error": f"{type(e).__name__}: {e}"})
            return Err(e)

    async def run_async(self, suites: Optional[Iterable[str]] = None,
                        cfg: Optional[SuiteConfig] = None) -> Result[RunSummary, Exception]:
        """Run several suites concurrently.

        Args:
            suites: Suite ids; defaults to `cfg.suites`.
            cfg: Configuration; defaults to the client's.

        Returns:
            Result with a RunSummary; the first suite error is returned as Err.
        """
        try:
            cfg = cfg or self.config
            names = list(suites) if suites is not None else list(cfg.suites)
            sem = asyncio.Semaphore(self.max_workers)
            t1 = T.time()

            async def guarded(name: str) -> Result[CheckReport, Exception]:
                async with sem:
                    return await self.run_suite_async(name, cfg)

            results = await asyncio.gather(*(guarded(name) for name in names))
            reports = []
            for res in results:
                if res.is_err:
                    return Err(res.unwrap_err())
                reports.append(res.unwrap())
            summary = RunSummary(reports=reports, elapsed=T.time() - t1)
            L.info({"event": "HARNESS.RUN.DONE",
                    "suites": names,
                    "passed": summary.passed,
                    "time": summary.elapsed})
            return Ok(summary)
        except Exception as e:
            return Err(e)

    def run(self, suites: Optional[Iterable[str]] = None,
            cfg: Optional[SuiteConfig] = None) -> Result[RunSummary, Exception]:
        """Blocking variant of `run_async`.

        Returns:
            Err(RuntimeError) when called from a running event loop (use `run_async`).
        """
        try:
            return asyncio.run(self.run_async(suites, cfg))
        except RuntimeError as re:
            if "running event loop" in str(re):
                return Err(RuntimeError("Ya hay un event loop ejecutándose. Use run_async(...)."))
            return Err(re)
        except Exception as e:
            return Err(e)

    # -------- Planes --------
    async def interpret_async(self, plan_path_or_text: str, *, as_text: bool = False) -> Result[Dict[str, RunSummary], Exception]:
        """Execute a YAML plan.

        Args:
            plan_path_or_text: Path to a YAML plan, or the YAML itself when `as_text=True`.
            as_text: Treat the input as raw YAML text.

        Returns:
            Result with {run name: RunSummary}.
        """
        try:
            if as_text:
                plan_yaml = plan_path_or_text
            else:
                p = Path(plan_path_or_text)
                if not p.exists():
                    raise FileNotFoundError(f"File not found: {p}")
                plan_yaml = p.read_text(encoding="utf-8")
            return await PlanInterpreter(self).run_from_text(plan_yaml)
        except Exception as e:
            return Err(e)

    def interpret(self, plan_path_or_text: str, *, as_text: bool = False) -> Result[Dict[str, RunSummary], Exception]:
        """Blocking variant of `interpret_async`."""
        try:
            return asyncio.run(self.interpret_async(plan_path_or_text, as_text=as_text))
        except RuntimeError as re:
            if "running event loop" in str(re):
                return Err(RuntimeError("Ya hay un event loop ejecutándose. Use interpret_async(...)."))
            return Err(re)
        except Exception as e:
            return Err(e)
