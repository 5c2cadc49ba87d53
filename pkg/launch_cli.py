"""
Cube-free group isomorphism engine - command-line launcher
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from loguru import logger

from cubefree.cli import main


if __name__ == "__main__":
    try:
        status = main()
    except KeyboardInterrupt:
        logger.warning("interrupted")
        status = 130
    sys.exit(status)
