import argparse
import csv
import json
import os
import sys

import numpy as np
from colorama import init, Fore, Style

from utils import console
from utils.config import ExperimentConfig, load_config
from utils.domains import build_domain_frame, domain_preset, load_domain, measure_domain_constants
from utils.errors import ConfigurationError, FrameWidthError
from utils.experiments import WorstCasePolicy, experiment_constants, rate_experiment
from utils.frames import (
    NAMED_FRAMES,
    arc_demonstration,
    check_stability,
    greedy_frame_error,
    load_frame,
    named_frame,
    stability_plan,
)
from utils.thresholding import continuous_n_term
from utils.verification import run_verification
from utils.wavelets import build_system

# Initialize colorama for cross-platform support
init(autoreset=True)

EXIT_OK = 0
EXIT_FAILED = 1
SUBCOMMANDS = ("rates", "frame-bounds", "stability", "threshold-demo", "counterexample", "verify")


def display_banner():
    """
    Display the application banner with ASCII art and metadata.

    Returns:
        None
    """
    VERSION = "v0.2.0"
    AUTHOR = "Ralph Joseph Castro"
    GITHUB = "https://github.com/luhluh-17"

    print(f"{Fore.MAGENTA}{Style.BRIGHT}+----------------------------------------------------------------+")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}|    __                                    _     _ _   _          |")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}|   / _|_ __ __ _ _ __ ___   _____      __(_) __| | |_| |__       |")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}|  | |_| '__/ _` | '_ ` _ \\ / _ \\ \\ /\\ / /| |/ _` | __| '_ \\      |")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}|  |  _| | | (_| | | | | | |  __/\\ V  V / | | (_| | |_| | | |     |")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}|  |_| |_|  \\__,_|_| |_| |_|\\___| \\_/\\_/  |_|\\__,_|\\__|_| |_|     |")
    print(f"{Fore.MAGENTA}{Style.BRIGHT}+----------------------------------------------------------------+")

    print(f"{Fore.MAGENTA}Nonlinear frame widths, wavelet frames on domains and n-term rates")
    print("\n")
    print(f"{Fore.BLUE}Version: {Fore.WHITE}{VERSION}")
    print(f"{Fore.BLUE}Author: {Fore.WHITE}{AUTHOR}")
    print(f"{Fore.BLUE}GitHub: {Fore.WHITE}{GITHUB}")
    print("\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="experiment config file with an [experiment] section")
    common.add_argument("--out", metavar="DIR", help="output directory for artifacts")
    common.add_argument("--seed", metavar="U64", help="seed for every random stream")
    common.add_argument("--quiet", action="store_true", help="no banner, warnings and errors only")
    common.add_argument("--verbose", action="store_true", help="include debug output")

    parser = argparse.ArgumentParser(prog="framewidth", description="Frame width experiments")
    commands = parser.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    commands.required = True

    commands.add_parser("rates", parents=[common], help="worst-case n-term rate experiment")

    bounds = commands.add_parser("frame-bounds", parents=[common], help="measure frame constants")
    bounds.add_argument("frame", help=f"one of {', '.join(NAMED_FRAMES)}, 'domain' or a frame JSON file")
    bounds.add_argument("--size", type=int, help="frame size parameter")
    bounds.add_argument("--box", help="stable box for domain frames, e.g. 0.25:0.75 or 0.3:0.7,0.3:0.7")

    stability = commands.add_parser("stability", parents=[common], help="estimate the stability constant A'")
    stability.add_argument("frame", help=f"one of {', '.join(NAMED_FRAMES)} or a frame JSON file")
    stability.add_argument("--size", type=int, help="frame size parameter")
    stability.add_argument("--probes", type=int, default=8, help="random probes on top of the stable basis")

    demo = commands.add_parser("threshold-demo", parents=[common], help="soft-thresholded n-term approximation")
    demo.add_argument("--frame", default="tight-duplicate", help="named frame or frame JSON file")
    demo.add_argument("--size", type=int, default=16, help="frame size parameter")
    demo.add_argument("--trials", type=int, default=20, help="number of random probes")

    counter = commands.add_parser("counterexample", parents=[common], help="pathological frame demonstrations")
    counter.add_argument("variant", choices=("pathological", "normed-pathological"))
    counter.add_argument("--delta", type=float, default=0.1, help="decay delta in (0, 1)")
    counter.add_argument("--dim", type=int, default=16, help="model dimension D")
    counter.add_argument("--probes", type=int, default=8, help="number of random points of K to approximate")
    counter.add_argument("--epsilon", type=float, help="target accuracy; sets the density of the samples of K")
    counter.add_argument("--C", type=float, default=2.0, dest="admissibility", help="admissibility constant")

    commands.add_parser("verify", parents=[common], help="run the invariant suite")
    return parser


def resolve_config(args):
    """Config file values with ``--out`` and ``--seed`` applied."""
    config = load_config(args.config) if args.config else ExperimentConfig().validate()
    return config.with_overrides(output=args.out, seed=args.seed)


def parse_box(text):
    try:
        return tuple(tuple(float(v) for v in part.split(":")) for part in text.split(","))
    except ValueError as exc:
        raise ConfigurationError(f"box must look like lo:hi[,lo:hi], got {text!r}", field="box") from exc


def resolve_frame(name, size=None, seed=0):
    if os.path.isfile(name):
        return load_frame(name)
    return named_frame(name, size, seed)


def print_constants(constants):
    for label, value in constants.as_dict().items():
        console.field(label, f"{value:.10g}")


def cmd_rates(args, config):
    console.header(f"Rate experiment: {config.kind}")
    console.field("Source", config.source)
    console.field("Target smoothness", config.target_s)
    policy = WorstCasePolicy(random_elements=config.random_elements, seeds=(config.seed,))
    report = rate_experiment(
        config.kind,
        config.source,
        config.target_s,
        n_list=config.n_list,
        policy=policy,
        fit_range=config.fit_range,
        family=config.family,
        levels=config.levels,
    )
    constants = experiment_constants(config.kind, config.family)
    paths = report.write_artifacts(config.output, extra={"constants": constants, "seed": config.seed})
    console.field("Fitted slope", f"{report.slope:.4f} (target {report.target_slope:.4f})")
    console.field("95% band", f"[{report.band[0]:.4f}, {report.band[1]:.4f}]")
    if not report.is_monotone:
        console.warning("Worst-case errors are not non-increasing in n")
    for path in paths.values():
        console.success(f"Wrote {path}")
    return EXIT_OK


def cmd_frame_bounds(args, config):
    if args.frame == "domain":
        box = parse_box(args.box) if args.box else None
        domain = domain_preset(config.domain) if not os.path.isfile(config.domain) else load_domain(config.domain)
        dfp = build_domain_frame(build_system(config.family, domain.dimension), domain, j_max=config.levels)
        _, constants, stable = measure_domain_constants(dfp, box)
        console.header(f"Domain frame {config.family} on {domain.name} (j_max = {dfp.j_max})")
        print_constants(constants)
        if stable is not None:
            console.field("Stable onset", stable.onset)
            console.field("Whole-line Riesz lower bound", f"{stable.riesz_lower:.10g}")
        return EXIT_OK
    frame = resolve_frame(args.frame, args.size, config.seed)
    console.header(f"Frame {frame.name}: {frame.size} elements in dimension {frame.dimension}")
    print_constants(frame.constants)
    return EXIT_OK


def cmd_stability(args, config):
    frame = resolve_frame(args.frame, args.size, config.seed)
    subsets, probes = stability_plan(frame, np.random.default_rng(config.seed), random_probes=args.probes)
    estimate = check_stability(frame, subsets, probes)
    console.header(f"Stability of {frame.name}")
    console.field("Subsets", len(subsets))
    console.field("Probes", len(probes))
    console.field("Estimated A'", f"{estimate:.10g}")
    console.field("Declared A'", f"{frame.constants.A_prime:.10g}")
    return EXIT_OK


def cmd_threshold_demo(args, config):
    frame = resolve_frame(args.frame, args.size, config.seed)
    rng = np.random.default_rng(config.seed)
    console.header(f"Soft thresholding on {frame.name}")
    rows = []
    for _ in range(args.trials):
        f = rng.standard_normal(frame.dimension)
        n = int(rng.integers(1, max(2, frame.dimension)))
        sigma = greedy_frame_error(frame, f, n)
        if not sigma > 0:
            continue
        result = continuous_n_term(frame, f, n, sigma)
        rows.append(result.as_row(n))
    os.makedirs(config.output, exist_ok=True)
    path = os.path.join(config.output, "threshold.csv")
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\r\n")
        writer.writerow(["n", "m", "error", "bound", "sigma_n"])
        for row in rows:
            writer.writerow([row["n"], row["m"], f"{row['error']:.17g}", f"{row['bound']:.17g}", f"{row['sigma_n']:.17g}"])
    violations = 0
    for row in rows:
        line = f"n={row['n']:3d}  m={row['m']:3d}  error={row['error']:.4e}  bound={row['bound']:.4e}"
        if row["m"] <= 2 * row["n"] and row["error"] <= row["bound"] * (1 + 1e-6):
            console.success(line)
        else:
            violations += 1
            console.failure(line)
    console.success(f"Wrote {path}")
    return EXIT_OK if violations == 0 else EXIT_FAILED


def cmd_counterexample(args, config):
    rng = np.random.default_rng(config.seed)
    record = arc_demonstration(args.variant, args.dim, args.probes, rng, args.delta, args.admissibility, args.epsilon)
    console.header(f"{args.variant} frame, delta = {args.delta:g}")
    console.field("Samples of K", record.sample_count)
    console.field("B/A", f"{record.ratio:.10g}")
    console.field(f"Best {record.terms}-term errors", ", ".join(f"{e:.2e}" for e in record.errors))
    os.makedirs(config.output, exist_ok=True)
    path = os.path.join(config.output, "counterexample.json")
    with open(path, "w") as handle:
        json.dump(record.as_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    if record.all_below_epsilon:
        console.success(f"Every probe is within {record.epsilon:g} of a {record.terms}-term span")
    else:
        console.failure(f"Some probe misses {record.epsilon:g}")
    console.success(f"Wrote {path}")
    return EXIT_OK if record.all_below_epsilon else EXIT_FAILED


def cmd_verify(args, config):
    console.header("Invariant suite")
    results = run_verification(config.seed, config.tolerances)
    for result in results:
        line = f"{result.name}: {result.detail}"
        if result.passed:
            console.success(line)
        else:
            console.failure(line)
    failed = sum(not r.passed for r in results)
    if failed:
        console.failure(f"{failed} of {len(results)} checks failed")
        return EXIT_FAILED
    console.success(f"All {len(results)} checks passed")
    return EXIT_OK


COMMANDS = {
    "rates": cmd_rates,
    "frame-bounds": cmd_frame_bounds,
    "stability": cmd_stability,
    "threshold-demo": cmd_threshold_demo,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
}


def main(argv=None):
    """
    Main entry point for the framewidth command line.

    Returns:
        int: Exit status (0 success, 1 failed checks, 2 invalid input, 3 numeric failure)
    """
    args = build_parser().parse_args(argv)
    console.setup_logging(quiet=args.quiet, verbose=args.verbose)
    if not args.quiet:
        display_banner()
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](args, config)
    except ConfigurationError as exc:
        print(f"{Fore.RED}Invalid input: {exc}", file=sys.stderr)
        print(json.dumps(exc.as_diagnostic(), sort_keys=True), file=sys.stderr)
        return exc.exit_status
    except FrameWidthError as exc:
        print(f"{Fore.RED}{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_status


# Run the application
if __name__ == "__main__":
    sys.exit(main())
