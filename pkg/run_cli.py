#!/usr/bin/env python3
"""
Torus Orbifold CLI
Run `python run_cli.py --help` for the list of commands.
"""

import sys
from pathlib import Path

# Ensure project root is in path
project_root = Path(__file__).resolve().parent
sys.path.insert(0, str(project_root))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
