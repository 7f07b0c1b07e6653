import asyncio
import time as T
from threepoint_gauge.errors import StepBudgetExceeded
from threepoint_gauge.fock import sample_vectors
from threepoint_gauge.realization import RealizationParams, apply_mode, tau

CUBIC = ("e", "e1")

async def run_benchmark_modes(n=5, modes=2):
    errors = {"budget": 0, "other": 0}
    vectors = sample_vectors(8, 42)
    for r in (0, 1):
        p = RealizationParams(r=r)
        for gen in CUBIC:
            field = tau(gen, p)
            t1 = T.time()
            for i in range(n):
                for m in range(-modes, modes + 1):
                    for _, v in vectors:
                        try:
                            apply_mode(field, m, v, p)
                        except StepBudgetExceeded:
                            errors["budget"] += 1
                        except Exception:
                            errors["other"] += 1
            calls = n * (2 * modes + 1) * len(vectors)
            print(f"tau({gen}) r={r}: {calls} llamadas, {(T.time() - t1) / calls * 1000:.2f} ms/llamada")

    print(f"Resumen apply_mode (n={n}) -> budget:{errors['budget']} other:{errors['other']}")

if __name__ == "__main__":
    asyncio.run(run_benchmark_modes())
