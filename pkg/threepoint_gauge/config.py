import os

# ========================
# Configuración de Logs
# ========================
LOG_PATH = os.environ.get("LOG_PATH", "log")
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
LOG_ROTATION_WHEN = os.environ.get("LOG_ROTATION_WHEN", "m")
LOG_ROTATION_INTERVAL = int(os.environ.get("LOG_ROTATION_INTERVAL", "10"))
LOG_TO_FILE = bool(int(os.environ.get("LOG_TO_FILE", "0")))
LOG_ERROR_FILE = bool(int(os.environ.get("LOG_ERROR_FILE", "0")))
THREEPOINT_DEBUG = bool(int(os.environ.get("THREEPOINT_DEBUG", "0")))

# ========================
# Verificación
# ========================
THREEPOINT_SEED = int(os.environ.get("THREEPOINT_SEED", "42"))
# max mode splittings evaluated by a single apply_mode call
THREEPOINT_STEP_BUDGET = int(os.environ.get("THREEPOINT_STEP_BUDGET", "200000"))
# max rewrite steps of reduce_oracle
THREEPOINT_REWRITE_BUDGET = int(os.environ.get("THREEPOINT_REWRITE_BUDGET", "100000"))
THREEPOINT_MAX_WORKERS = int(os.environ.get("THREEPOINT_MAX_WORKERS", "4"))
