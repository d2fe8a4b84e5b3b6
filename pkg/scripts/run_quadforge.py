"""
MAIN QUADFORGE EXECUTION SCRIPT

Single command entry point for generation, ancestors and the census.
"""

import sys
from pathlib import Path

# Add project root
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.shell.cli import main

if __name__ == "__main__":
    sys.exit(main())
