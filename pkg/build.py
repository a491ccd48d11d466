#!/usr/bin/env python3
"""
Ququart Toolkit - Build Script

Automates the PyInstaller build process to create a standalone `ququart`
command-line executable.

Usage:
  python build.py                     # One-file executable
  python build.py --onedir            # Directory bundle instead
  python build.py --grid-points 401   # Bake a different default grid density

Licensed under GPL v3
"""

import shutil
import subprocess
import sys
from pathlib import Path

IS_WINDOWS = sys.platform == 'win32'

APP_NAME = 'ququart'
DEFAULT_GRID_POINTS = 201

HIDDEN_IMPORTS = [
    'build_config',
    'scenario_cli',
    'audit',
    'datasets',
    'scenarios',
    'grid_runner',
    'console',
    'correlation_report',
    'two_qubit_model',
    'entanglement_measures',
    'density_ops',
    'biphoton_core',
    'errors',
]


def detect_grid_points(args: list) -> int:
    """Parse --grid-points flag from command line arguments."""
    for i, arg in enumerate(args):
        if arg == '--grid-points' and i + 1 < len(args):
            try:
                return int(args[i + 1])
            except ValueError:
                return -1
    return DEFAULT_GRID_POINTS


def detect_layout(args: list) -> str:
    """--onefile (default) or --onedir."""
    return 'onedir' if '--onedir' in args else 'onefile'


def write_build_config(project_dir: Path, grid_points: int):
    """Write src/build_config.py with the selected defaults."""
    config_path = project_dir / 'src' / 'build_config.py'
    config_path.write_text(
        '"""\nQuquart Toolkit - Build Configuration\n\n'
        'This module is overwritten by build.py at build time to reflect the\n'
        'selected --grid-points.  The defaults here are used when running from\n'
        'source during development.\n"""\n\n'
        f'DEFAULT_GRID_POINTS = {grid_points!r}\n'
        'DEFAULT_SEED = 42\n'
        'DEFAULT_TRIALS = 1000\n'
        'DEFAULT_JOBS = 1\n'
    )
    print(f"  Wrote build_config.py: DEFAULT_GRID_POINTS = {grid_points!r}")


def generate_spec(project_dir: Path, layout: str, grid_points: int) -> Path:
    """Generate a PyInstaller spec file for the selected layout.

    Returns the path to the generated spec file.
    """
    hiddenimports_str = repr(HIDDEN_IMPORTS)
    header = f"""\
# -*- mode: python ; coding: utf-8 -*-
# Auto-generated by build.py (layout={layout}, grid_points={grid_points})

a = Analysis(
    ['src/main.py'],
    pathex=['src'],
    binaries=[],
    datas=[],
    hiddenimports={hiddenimports_str},
    hookspath=[],
    hooksconfig={{}},
    runtime_hooks=[],
    excludes=['tkinter', 'matplotlib'],
    noarchive=False,
)

pyz = PYZ(a.pure)
"""
    if layout == 'onefile':
        body = f"""
exe = EXE(
    pyz,
    a.scripts,
    a.binaries,
    a.datas,
    [],
    name='{APP_NAME}',
    debug=False,
    bootloader_ignore_signals=False,
    strip=False,
    upx=True,
    runtime_tmpdir=None,
    console=True,
)
"""
    else:
        body = f"""
exe = EXE(
    pyz,
    a.scripts,
    [],
    exclude_binaries=True,
    name='{APP_NAME}',
    debug=False,
    strip=False,
    upx=True,
    console=True,
)

coll = COLLECT(
    exe,
    a.binaries,
    a.datas,
    strip=False,
    upx=True,
    upx_exclude=[],
    name='{APP_NAME}',
)
"""

    # Written inside the project so PyInstaller resolves relative paths correctly.
    spec_path = project_dir / f'{APP_NAME}.generated.spec'
    spec_path.write_text(header + body)
    return spec_path


def clean_build(project_dir: Path) -> bool:
    """Clean previous build artifacts."""
    for dir_name in ('build', 'dist', '__pycache__'):
        dir_path = project_dir / dir_name
        if dir_path.exists():
            print(f"Cleaning {dir_path}...")
            try:
                shutil.rmtree(dir_path)
            except PermissionError as e:
                print(f"WARNING: Could not delete {dir_path}")
                print(f"  {e}")
                print(f"  Close any running {APP_NAME} and try again.")
                return False

    src_pycache = project_dir / 'src' / '__pycache__'
    if src_pycache.exists():
        try:
            shutil.rmtree(src_pycache)
        except PermissionError:
            pass

    return True


def run_pyinstaller(project_dir: Path, spec_file: Path) -> bool:
    """Run PyInstaller to build the executable using the given spec file."""
    if not spec_file.exists():
        print(f"ERROR: Spec file not found: {spec_file}")
        return False

    print("\nBuilding with PyInstaller...")
    print(f"Spec file: {spec_file.name}")
    print("-" * 50)

    try:
        result = subprocess.run(
            [sys.executable, '-m', 'PyInstaller', str(spec_file), '--clean'],
            cwd=str(project_dir),
            check=True
        )
        return result.returncode == 0
    except subprocess.CalledProcessError as e:
        print(f"ERROR: PyInstaller failed with code {e.returncode}")
        return False
    except FileNotFoundError:
        print("ERROR: PyInstaller not found. Install with: pip install pyinstaller")
        return False


def verify_output(project_dir: Path, layout: str) -> bool:
    """Verify the build output exists."""
    exe_name = APP_NAME + ('.exe' if IS_WINDOWS else '')
    if layout == 'onefile':
        exe_path = project_dir / 'dist' / exe_name
    else:
        exe_path = project_dir / 'dist' / APP_NAME / exe_name

    if not exe_path.exists():
        print("\nERROR: Build output not found")
        return False

    size_mb = exe_path.stat().st_size / (1024 * 1024)
    print("\nBuild successful!")
    print(f"Output: {exe_path}")
    print(f"Size: {size_mb:.1f} MB")
    return True


def main():
    """Main build process."""
    project_dir = Path(__file__).parent.absolute()
    layout = detect_layout(sys.argv)
    grid_points = detect_grid_points(sys.argv)

    print("=" * 50)
    print("Ququart Toolkit - Build Script")
    print("=" * 50)
    print(f"\nProject directory: {project_dir}")
    print(f"Layout:           {layout}")
    print(f"Grid points:      {grid_points}")

    if grid_points < 2:
        print("\nERROR: --grid-points must be an integer >= 2")
        return 1

    print("\n[1/4] Writing build configuration...")
    write_build_config(project_dir, grid_points)

    print("\n[2/4] Cleaning previous build...")
    if not clean_build(project_dir):
        return 1
    print("Clean complete.")

    print("\n[3/4] Running PyInstaller...")
    spec_file = generate_spec(project_dir, layout, grid_points)
    if not run_pyinstaller(project_dir, spec_file):
        return 1

    if spec_file.exists():
        spec_file.unlink()

    print("\n[4/4] Verifying output...")
    if not verify_output(project_dir, layout):
        return 1

    print("\n" + "=" * 50)
    print(f"Build completed successfully! ({layout}, grid_points={grid_points})")
    print("=" * 50)
    return 0


if __name__ == '__main__':
    sys.exit(main())
