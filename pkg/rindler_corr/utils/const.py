from enum import Enum


class Subsystem(str, Enum):
    # Alice's mode-u_i qubit sector
    ALICE = "A"
    # Rob's region-I Fock ladder
    ROB = "R"
    # AntiRob's region-II Fock ladder
    ANTIROB = "AntiR"


class Branch(str, Enum):
    VACUUM = "vacuum"
    ONE_PARTICLE = "one_particle"


class EigenSolver(str, Enum):
    JACOBI = "jacobi"
    LAPACK = "lapack"


class TruncationMode(str, Enum):
    FIXED = "fixed"
    ADAPTIVE = "adaptive"


TOOL_NAME = "rindler-corr"
DEFAULT_VERSION = "0.1.0"

# Tolerances
DEFAULT_TAU_NORM = 1e-9
DEFAULT_TAU_PSD = 1e-10
DEFAULT_JACOBI_TOL = 1e-12
DEFAULT_JACOBI_MAX_SWEEPS = 100
DEFAULT_CLAMP_TOL = 1e-6
DEFAULT_CONSERVATION_TOL = 1e-6
DEFAULT_PURIFICATION_TOL = 1e-8
DEFAULT_KOASHI_WINTER_TOL = 1e-5
# largest change of a record between N and 2N
DEFAULT_TRUNCATION_CONVERGENCE_TOL = 1e-8

# Truncation
DEFAULT_TAIL_EPS = 1e-12
DEFAULT_N_MAX_CAP = 8192

# Optimizer
DEFAULT_GRID_PHI = 64
DEFAULT_GRID_THETA = 32
DEFAULT_OPTIMIZER_XATOL = 1e-9
DEFAULT_OPTIMIZER_FATOL = 1e-13
DEFAULT_OPTIMIZER_MAX_ITERATIONS = 4000

# Sweep grid
DEFAULT_ALPHA_MIN = 0.0
DEFAULT_ALPHA_MAX = 3.0
DEFAULT_STEPS = 121

CSV_SIGNIFICANT_DIGITS = 12
WORKERS_ENV_VAR = "RINDLER_CORR_WORKERS"
