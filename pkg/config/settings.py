import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Base directory
BASE_DIR = Path(__file__).resolve().parent.parent

# Paths
OUTPUT_DIR = Path(os.getenv("QUADFORGE_OUTPUT_DIR", BASE_DIR / "output"))
FIXTURES_DIR = BASE_DIR / "tests" / "fixtures"

# Runtime
WORKERS = int(os.getenv("QUADFORGE_WORKERS", "1"))
LOG_LEVEL = os.getenv("QUADFORGE_LOG_LEVEL", "WARNING").upper()
SEED = int(os.getenv("QUADFORGE_SEED", "42"))

# Generation limits
MIN_GENERATION_N = 3
MAX_GENERATION_N = 12
DEFAULT_RESTRICTION = (1, 3)

# Output formats accepted per command
MAP_FORMATS = ("mq", "dot", "planar_code")
REPORT_FORMATS = ("text", "csv")
