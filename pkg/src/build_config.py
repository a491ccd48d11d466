"""
Ququart Toolkit - Build Configuration

This module is overwritten by build.py at build time to reflect the
selected --grid-points.  The defaults here are used when running from
source during development.
"""

DEFAULT_GRID_POINTS = 201
DEFAULT_SEED = 42
DEFAULT_TRIALS = 1000
DEFAULT_JOBS = 1
