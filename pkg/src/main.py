#!/usr/bin/env python3
"""
Ququart Toolkit - Main Entry Point

Launches the command-line front end.  Works both from source and from the
PyInstaller executable built by build.py.

Licensed under GPL v3
"""

import sys
from pathlib import Path

# Running from source: make sibling modules importable regardless of cwd
if not hasattr(sys, '_MEIPASS'):
    sys.path.insert(0, str(Path(__file__).parent))


def main():
    """Main entry point."""
    from scenario_cli import run
    sys.exit(run())


if __name__ == '__main__':
    main()
