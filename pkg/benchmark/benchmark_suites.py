import asyncio
import time as T
from threepoint_gauge import VerificationClient
from threepoint_gauge.verify import ALL_SUITES, SuiteConfig

async def run_benchmark_suites(n=3):
    client = VerificationClient(SuiteConfig())
    errors = {name: 0 for name in ALL_SUITES}
    times = {name: 0.0 for name in ALL_SUITES}

    for i in range(n):
        for name in ALL_SUITES:
            # -------- SUITE (una a la vez, para medirla aislada)
            t1 = T.time()
            res = await client.run_suite_async(name)
            times[name] += T.time() - t1
            if res.is_err:
                errors[name] += 1
                # print(f"[{name}] {i} -> {res.unwrap_err()}")
                continue
            if not res.unwrap().passed:
                errors[name] += 1

    for name in ALL_SUITES:
        print(f"{name:<11} media={times[name] / n:.3f}s errores={errors[name]}")
    print(
        f"Resumen suites (n={n}) -> "
        + " ".join(f"{name}:{errors[name]}" for name in ALL_SUITES)
    )

if __name__ == "__main__":
    asyncio.run(run_benchmark_suites())
