#!/usr/bin/env python3
"""
Main entry point script for Gauss HUP Verifier.

Runs the verifier from a source checkout without installing the package.
"""

import sys
from pathlib import Path

# Add the project directory to Python path
project_dir = Path(__file__).parent
sys.path.insert(0, str(project_dir))

from gauss_hup.cli import main

if __name__ == "__main__":
    main()
