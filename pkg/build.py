#!/usr/bin/env python3
"""
xibasin - Build & Development Script

Unified script for all development tasks:
    python build.py run -- ARGS  # Run the CLI from source
    python build.py dev          # Install in development mode
    python build.py check        # Check code quality
    python build.py test         # Run the test suite (fast tests only)
    python build.py test-all     # Run the test suite including slow and long tests
    python build.py clean        # Clean build artifacts
"""

import os
import re
import shutil
import subprocess
import sys
from pathlib import Path
from typing import List


def get_version():
    """Get version from pyproject.toml"""
    toml_file = Path("pyproject.toml")
    if toml_file.exists():
        content = toml_file.read_text(encoding='utf-8')
        match = re.search(r'^version\s*=\s*"([^"]+)"', content, re.MULTILINE)
        if match:
            return match.group(1)
    return "unknown"

VERSION = get_version()

BUILD_DIR = Path("build")
DIST_DIR = Path("dist")

OUR_CODE = ["main.py", "build.py", "components/", "cli/", "tests/"]


def print_step(message: str):
    """Print a build step with formatting."""
    print(f"\n[BUILD] {message}")


def print_success(message: str):
    """Print a success message."""
    print(f"[SUCCESS] {message}")


def print_error(message: str):
    """Print an error message."""
    print(f"[ERROR] {message}")


def run_app(args: List[str]):
    """Run the CLI from source."""
    print_step(f"Starting xibasin {VERSION}...")
    result = subprocess.run([sys.executable, "main.py"] + args)
    if result.returncode != 0:
        print_error(f"xibasin exited with code {result.returncode}")
        sys.exit(result.returncode)


def clean_build():
    """Clean build artifacts and temporary files."""
    print_step("Cleaning build artifacts...")

    dirs_to_clean = [
        BUILD_DIR,
        DIST_DIR,
        Path("xibasin.egg-info"),
        Path(".pytest_cache"),
        Path(".hypothesis"),
        Path(".mypy_cache"),
        Path(".ruff_cache"),
    ]

    for dir_path in dirs_to_clean:
        if dir_path.exists():
            shutil.rmtree(dir_path)
            print(f"  Cleaned {dir_path}/")

    for root, dirs, _ in os.walk("."):
        for dir_name in dirs[:]:
            if dir_name == "__pycache__":
                full_path = Path(root) / dir_name
                shutil.rmtree(full_path)
                print(f"  Cleaned {full_path}")
                dirs.remove(dir_name)

    for file_path in Path(".").rglob("*.pyc"):
        file_path.unlink()

    print_success("Build cleanup completed")


def install_dev():
    """Install package in development mode."""
    print_step("Installing in development mode...")
    try:
        cmd = [sys.executable, "-m", "pip", "install", "-e", ".[dev]"]
        subprocess.run(cmd, check=True)
        print_success("Development installation completed")
    except subprocess.CalledProcessError as e:
        print_error(f"Development installation failed: {e}")
        sys.exit(1)


def check_quality():
    """Check code quality with ruff and mypy if available."""
    print_step("Checking code quality...")

    success = True

    if shutil.which("ruff"):
        try:
            subprocess.run(["ruff", "check"] + OUR_CODE, check=True, capture_output=True)
            print_success("Ruff checks passed!")
        except subprocess.CalledProcessError:
            print_error("Ruff found issues")
            success = False
    else:
        print("  Ruff not available")

    if shutil.which("mypy"):
        try:
            for target in ["main.py", "components", "cli"]:
                subprocess.run(["mypy", target, "--ignore-missing-imports", "--explicit-package-bases"],
                               check=True, capture_output=True)
            print_success("MyPy checks passed!")
        except subprocess.CalledProcessError:
            print_error("MyPy found issues")
            success = False
    else:
        print("  MyPy not available")

    return success


def run_tests(include_long: bool = False):
    """Run pytest; slow and long tests are skipped unless requested."""
    print_step("Running tests...")
    cmd = [sys.executable, "-m", "pytest", "tests"]
    if include_long:
        cmd.append("--run-long")
    else:
        cmd += ["-m", "not slow and not long"]
    result = subprocess.run(cmd)
    if result.returncode != 0:
        print_error("Tests failed")
        sys.exit(result.returncode)
    print_success("Tests passed")


def main():
    """Main entry point."""
    if len(sys.argv) < 2:
        print("""
xibasin - Build & Development Script

Usage:
    python build.py <command>

Commands:
    run          Run the CLI from source (arguments after 'run' are passed on)
    dev          Install in development mode
    check        Check code quality
    test         Run fast tests
    test-all     Run every test, including slow and long ones
    clean        Clean build artifacts

Examples:
    python build.py run basins --config runs/poly.cfg --out out/poly
    python build.py test
        """)
        return

    command = sys.argv[1]

    if command == "run":
        run_app([a for a in sys.argv[2:] if a != "--"])
    elif command == "dev":
        install_dev()
    elif command == "check":
        if not check_quality():
            sys.exit(1)
    elif command == "test":
        run_tests()
    elif command == "test-all":
        run_tests(include_long=True)
    elif command == "clean":
        clean_build()
    else:
        print(f"[ERROR] Unknown command: {command}")
        print("Run 'python build.py' for help")
        sys.exit(1)

    if command not in ["run"]:
        print_success("Operation completed!")


if __name__ == "__main__":
    main()
