"""Command-line front end.

Subcommands: verify, symmetrize, slater, dims, fock-apply, occupancy,
hom, condensate. Exit codes: 0 success, 1 usage, 2 domain or convergence
errors, 3 Pauli-forbidden zero state. Data files are deterministic:
fixed significant digits, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import beamsplitter, first_quantization as fq, fock, thermal
from .errors import (
    ConvergenceError,
    ExclusionError,
    PhysicsDomainError,
    QidentError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_EXCLUSION = 3

VERIFY_TOL = 1e-12


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    """12 significant digits, locale-independent."""
    return f"{x:.12g}"


def _write_text(path: str, text: str, force: bool) -> None:
    if os.path.exists(path) and not force:
        raise _UsageError(f"output file {path} exists; pass --force to overwrite")
    with open(path, "w") as fh:
        fh.write(text)


def _statistics_from_flag(name: str, q: float | None) -> fock.Statistics:
    aliases = {
        "f": "fermion",
        "fermion": "fermion",
        "b": "boson",
        "boson": "boson",
        "quon": "quon",
        "distinguishable": "distinguishable",
        "d": "distinguishable",
    }
    if name not in aliases:
        raise _UsageError(f"unknown statistics {name!r}")
    kind = aliases[name]
    if kind == "quon":
        if q is None:
            raise _UsageError("quon statistics needs --q")
        return fock.quon(q)
    return fock.Statistics(kind)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    rows: list[tuple[str, float]] = []

    for name, value in fq.projector_deviations(max_d=3, max_n=3, vectors_per_case=20).items():
        rows.append((f"projector {name}", value))

    if args.statistics is None:
        suites = [
            (fock.FERMION, 4, 1),
            (fock.BOSON, 2, 6),
            *((fock.quon(q), 1, 8) for q in (-1.0, -0.5, 0.0, 0.5, 1.0)),
        ]
    else:
        stats = _statistics_from_flag(args.statistics, args.q)
        suites = [(stats, args.modes, args.nmax)]
    for stats, modes, nmax in suites:
        report = fock.verify_algebra(stats, modes, nmax)
        for name, value in report.deviations.items():
            rows.append((f"{stats} M={modes} {name}", value))

    width = max(len(name) for name, _ in rows)
    worst = 0.0
    for name, value in rows:
        flag = "ok" if value <= VERIFY_TOL else "FAIL"
        print(f"{name:<{width}}  {value:.3e}  {flag}")
        worst = max(worst, value)
    print(f"max deviation: {worst:.3e} (tolerance {VERIFY_TOL:.0e})")
    return EXIT_OK if worst <= VERIFY_TOL else EXIT_DOMAIN


def _cmd_symmetrize(args) -> int:
    state = fq.load_state(args.infile)
    if isinstance(state, list):
        state = fq.tensor_product(state)
    projected = fq.symmetrize(state) if args.mode == "sym" else fq.antisymmetrize(state)
    if args.normalize:
        if projected.norm <= 1e-12:
            raise ExclusionError("projection is the zero vector; cannot normalize")
        projected = projected.normalized()
    text = json.dumps(fq.nbody_to_json(projected), indent=1) + "\n"
    _write_text(args.out, text, args.force)
    return EXIT_OK


def _cmd_slater(args) -> int:
    parts = fq.load_state(args.infile)
    if not isinstance(parts, list):
        raise _UsageError("slater needs a product-spec JSON file with a 'parts' array")
    state = fq.slater(parts, normalized=args.normalize)
    text = json.dumps(fq.nbody_to_json(state), indent=1) + "\n"
    _write_text(args.out, text, args.force)
    return EXIT_OK


def _cmd_dims(args) -> int:
    dim_s, dim_a, dim_m = fq.subspace_dimensions(args.d, args.n)
    print(f"{dim_s},{dim_a},{dim_m}")
    return EXIT_OK


def _cmd_fock_apply(args) -> int:
    state = fock.load_fock(args.infile)
    for op in args.ops.split(","):
        op = op.strip()
        if len(op) < 2 or op[0] not in "ca" or not op[1:].isdigit():
            raise _UsageError(f"bad operator token {op!r}; use c<mode> or a<mode>")
        mode = int(op[1:])
        state = fock.create(mode, state) if op[0] == "c" else fock.annihilate(mode, state)
    text = json.dumps(fock.fock_to_json(state), indent=1) + "\n"
    if args.out:
        _write_text(args.out, text, args.force)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _stats_for_law(law: str) -> fock.Statistics:
    return {"fd": fock.FERMION, "be": fock.BOSON, "mb": fock.DISTINGUISHABLE}[law]


def _cmd_occupancy(args) -> int:
    if args.statistics not in ("fd", "be", "mb"):
        raise _UsageError("occupancy --statistics must be fd, be, or mb")
    levels = thermal.load_levels(args.levels)
    k_b = thermal.K_B_SI if args.si else 1.0
    stats = _stats_for_law(args.statistics)
    if args.statistics == "mb":
        # Boltzmann has no occupancy bound; normalize by total count directly
        system = thermal.ThermalSystem(levels, args.temp, fock.DISTINGUISHABLE, k_b)
        kt = system.kt
        z = sum(g * np.exp(-(e - system.ground_energy) / kt) for e, g in levels)
        mu = system.ground_energy + kt * np.log(args.particles / z)
    else:
        system = thermal.ThermalSystem(levels, args.temp, stats, k_b)
        mu = thermal.solve_mu(system, args.particles)
    curve = thermal.occupancy_curve(system, mu)
    lines = ["E,occupancy"]
    lines += [f"{_fmt(e)},{_fmt(n)}" for e, n in curve]
    _write_text(args.out, "\n".join(lines) + "\n", args.force)
    print(_fmt(mu))
    return EXIT_OK


def _cmd_hom(args) -> int:
    stats = _statistics_from_flag(args.statistics, None)
    if args.sweep < 2:
        raise _UsageError("--sweep must be >= 2")
    lines = ["s,p_both_left,p_both_right,p_coincidence"]
    for i in range(args.sweep):
        s = i / (args.sweep - 1)
        dist = beamsplitter.closed_form_distribution(s, stats)
        lines.append(
            f"{_fmt(s)},{_fmt(dist.p_both_left)},{_fmt(dist.p_both_right)},{_fmt(dist.p_coincidence)}"
        )
    _write_text(args.out, "\n".join(lines) + "\n", args.force)
    return EXIT_OK


def _cmd_condensate(args) -> int:
    levels = thermal.load_levels(args.levels)
    k_b = thermal.K_B_SI if args.si else 1.0
    if args.steps < 1 or args.tmin <= 0 or args.tmax < args.tmin:
        raise _UsageError("need 0 < tmin <= tmax and steps >= 1")
    lines = ["T,condensate_fraction"]
    for i in range(args.steps):
        t = args.tmin if args.steps == 1 else args.tmin + (args.tmax - args.tmin) * i / (args.steps - 1)
        system = thermal.ThermalSystem(levels, t, fock.BOSON, k_b)
        frac = thermal.condensate_fraction(system, args.particles)
        lines.append(f"{_fmt(t)},{_fmt(frac)}")
    _write_text(args.out, "\n".join(lines) + "\n", args.force)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qident", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the operator-algebra and projector suites")
    p.add_argument("--statistics", choices=["f", "b", "quon"], default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--modes", type=int, default=2)
    p.add_argument("--nmax", type=int, default=6)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("symmetrize", help="project a state onto a symmetry subspace")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", choices=["sym", "antisym"], required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_symmetrize)

    p = sub.add_parser("slater", help="build the determinant state from product parts")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_slater)

    p = sub.add_parser("dims", help="symmetric/antisymmetric/mixed subspace dimensions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("fock-apply", help="apply ladder operators to a Fock state")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument(
        "--ops",
        required=True,
        help="comma list applied left to right, e.g. 'c0,a1' (c=create, a=annihilate)",
    )
    p.add_argument("--out", default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_fock_apply)

    p = sub.add_parser("occupancy", help="solve mu and write the occupancy curve")
    p.add_argument("--statistics", choices=["fd", "be", "mb"], required=True)
    p.add_argument("--levels", required=True)
    p.add_argument("--temp", type=float, required=True)
    p.add_argument("--particles", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--si", action="store_true", help="use the SI Boltzmann constant")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_occupancy)

    p = sub.add_parser("hom", help="two-particle interference vs internal overlap")
    p.add_argument(
        "--statistics", choices=["boson", "fermion", "distinguishable"], required=True
    )
    p.add_argument("--sweep", type=int, default=21)
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_hom)

    p = sub.add_parser("condensate", help="ground-state fraction over a temperature scan")
    p.add_argument("--levels", required=True)
    p.add_argument("--particles", type=float, required=True)
    p.add_argument("--tmin", type=float, required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--si", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_condensate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExclusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXCLUSION
    except (PhysicsDomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (QidentError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
