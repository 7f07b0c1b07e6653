from threepoint_gauge.verify.schema import (
    ALL_SUITES, CheckRecord, CheckReport, PlanSpec, RunSpec, RunSummary, SuiteConfig,
)
from threepoint_gauge.verify.suites import (
    SUITES, calibrate_form_scale, check_current_rep, check_d3, check_gauge, check_heisenberg, check_jacobi,
    check_kahler, check_mu, check_virasoro_rep,
)
from threepoint_gauge.verify.interpreter import PlanInterpreter
