#!/usr/bin/env python3
"""
Run the framewidth test suites under pytest with coverage.

Suites follow the package layout: ``core`` covers the grid, wavelet and
sequence-space modules, ``frames`` the abstract frame and thresholding code,
``domains`` the extension frames and operator lab, ``experiments`` the rate
drivers with configuration and self-checks, and ``cli`` the command line.

Usage:
    python run_tests.py                      # every suite
    python run_tests.py core frames          # selected suites
    python run_tests.py --fast               # deselect tests marked slow
    python run_tests.py --file wavelets      # a single tests/test_wavelets.py
    python run_tests.py -k pathological      # forward a keyword expression
"""

import argparse
import subprocess
import sys
from pathlib import Path

from colorama import Fore, Style, init

SUITES = {
    "core": ["test_coefficients.py", "test_wavelets.py", "test_besov.py"],
    "frames": ["test_frames.py", "test_thresholding.py"],
    "domains": ["test_domains.py", "test_operators.py"],
    "experiments": ["test_rates.py", "test_experiments.py", "test_config.py", "test_verification.py"],
    "cli": ["test_integration.py"],
}

REQUIRED = ("pytest", "pytest_cov", "numpy", "scipy")


def missing_packages():
    """Names from REQUIRED that cannot be imported."""
    missing = []
    for name in REQUIRED:
        try:
            __import__(name)
        except ImportError:
            missing.append(name)
    return missing


def select_files(root, suites, file_name):
    """Test files for the chosen suites, or the single ``--file`` target."""
    tests = root / "tests"
    if file_name:
        stem = file_name if file_name.startswith("test_") else f"test_{file_name}"
        path = tests / f"{Path(stem).stem}.py"
        return [path] if path.exists() else None
    chosen = suites or list(SUITES)
    return [tests / name for suite in chosen for name in SUITES[suite]]


def build_command(files, args):
    command = [sys.executable, "-m", "pytest", *map(str, files)]
    if args.no_coverage:
        command.append("--no-cov")
    else:
        command += ["--cov=utils", "--cov=framewidth", "--cov-report=term-missing"]
        if args.html:
            command.append("--cov-report=html:coverage_html")
    if args.fast:
        command += ["-m", "not slow"]
    if args.keyword:
        command += ["-k", args.keyword]
    if args.verbose:
        command.append("-vv")
    return command


def main():
    init(autoreset=True)
    parser = argparse.ArgumentParser(
        description="Run the framewidth test suites",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("suites", nargs="*", metavar="SUITE", help=f"suites to run ({', '.join(SUITES)}); default all")
    parser.add_argument("--file", help="run one test module, e.g. 'frames' or 'test_frames'")
    parser.add_argument("--fast", action="store_true", help="deselect tests marked slow")
    parser.add_argument("-k", dest="keyword", help="pytest keyword expression")
    parser.add_argument("--no-coverage", action="store_true", help="skip coverage measurement")
    parser.add_argument("--html", action="store_true", help="also write coverage_html/")
    parser.add_argument("-v", "--verbose", action="store_true", help="verbose pytest output")
    args = parser.parse_args()
    unknown = [name for name in args.suites if name not in SUITES]
    if unknown:
        parser.error(f"unknown suite(s): {', '.join(unknown)}")

    root = Path(__file__).resolve().parent
    missing = missing_packages()
    if missing:
        print(f"{Fore.RED}Missing packages: {', '.join(missing)}")
        print("Install them with: pip install -r requirements.txt")
        return 1

    files = select_files(root, args.suites, args.file)
    if files is None:
        print(f"{Fore.RED}No test module tests/test_{args.file.removeprefix('test_')}.py")
        return 1

    command = build_command(files, args)
    print(f"{Style.BRIGHT}framewidth tests:{Style.RESET_ALL} {' '.join(args.suites) or args.file or 'all suites'}")
    print(f"{Style.DIM}{' '.join(command)}")
    code = subprocess.run(command, cwd=root).returncode
    if code == 0:
        print(f"{Fore.GREEN}All selected tests passed")
        if args.html and not args.no_coverage:
            print(f"Coverage report: {root / 'coverage_html' / 'index.html'}")
    else:
        print(f"{Fore.RED}pytest exited with status {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
