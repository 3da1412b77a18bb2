import os
from dotenv import load_dotenv

load_dotenv()

# ---------------- ENUMERATION ----------------
MAX_WIDTH = 31  # arestas na fronteira (uma palavra de 64 bits)
PRIME_CEILING = 2 ** 62
DEFAULT_PRIME_COUNT = int(os.getenv("DEFAULT_PRIME_COUNT", "2"))
WORKERS = int(os.getenv("WORKERS", "1"))
MEMORY_BUDGET_MB = int(os.getenv("MEMORY_BUDGET_MB", "4096"))
MOVE_CHUNK = int(os.getenv("MOVE_CHUNK", str(1 << 20)))  # assinaturas por bloco do movimento

# ---------------- GROWTH ESTIMATES ----------------
LAMBDA_SQUARE = 1.7445498
LAMBDA_HEX = 1.38724951
BOUND_SAFETY_TERMS = 4

# ---------------- STORAGE ----------------
STORAGE_DIR = os.getenv("STORAGE_DIR", "./storage")
GOLDEN_DIR = os.path.join(STORAGE_DIR, "golden")
SERIES_DIR = os.path.join(STORAGE_DIR, "series")
RESIDUE_DIR = os.path.join(STORAGE_DIR, "residues")

# ---------------- ANALYSIS ----------------
MP_DPS = 60  # dígitos decimais do mpmath
FIT_WINDOW_EXTRA = 3  # janela = parâmetros do ajuste + 3
DEFAULT_FIT_POWERS = (1, 2, 3)
TRIM_FRACTION = 0.10
DEFECTIVE_FACTOR = 0.9
MIN_APPROXIMANTS = 20
PREDICTION_CUTOFF = 1e-2  # espalhamento relativo máximo por termo previsto
M2_PREDICTED_CAP = 4
RATIO_PREDICTED_CAP = None  # sem limite
DEGREE_SPREAD = 2
PREDICTION_ORDER = 3

# ---------------- ORACLE ----------------
DFS_BUDGET = int(os.getenv("DFS_BUDGET", "200000000"))

# ---------------- LOGGING ----------------
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("LOG_FILE")  # opcional; stderr sempre recebe os logs
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
