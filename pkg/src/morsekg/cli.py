"""Command-line front end.

    morsekg table1
    morsekg levels --molecule H2 --n 0..4 --constant-mass
    morsekg levels --complex --u1 1 --u2 0 --u3 0 --m1 0
    morsekg sweep --molecule LiH --n 0
    morsekg wavefn --v1 -0.2 --v2 1 --m0 1 --q-inv 1 --n 0
    morsekg verify --molecule H2 --output report.csv
    morsekg validate-oracle

Exit codes: 0 success, 1 usage error, 2 domain error, 3 a verification or
validation report was written but records mismatches.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import __version__
from .errors import MorseKGError
from .oracle import GridSpec, compare_report, default_x_max, solve_effective, validate_oracle
from .potential import (
    MassModel,
    PotentialSpec,
    complex_potential_params,
    molecular_system,
    reduce,
)
from .reference import PUBLISHED_LEVELS, TABLE_N
from .spectrum import (
    SPECIAL_CASE_SIGN_NOTE,
    complex_constant_mass_energy,
    complex_energy,
    constant_mass_energy,
    pdm_energy,
    quantization_L,
    special_case_energy,
)
from .units import lookup_molecule
from .wavefunction import build_series, determinant_residual, evaluate_psi, normalize_numeric

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- output --------------------------------------------------------------------

def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value) + 0.0:.6g}"  # + 0.0 drops the sign of -0.0
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else None
    if isinstance(value, complex):
        return {"re": _json_value(value.real), "im": _json_value(value.imag)}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    return value


def render(command: str, columns: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str,
           metadata: dict | None = None) -> str:
    """CSV (6 significant digits, '#' metadata lines) or JSON (full precision)."""
    metadata = metadata or {}
    if fmt == "json":
        doc = {
            "command": command,
            "version": __version__,
            "metadata": _json_value(metadata),
            "columns": list(columns),
            "rows": [[_json_value(v) for v in row] for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for key, value in metadata.items():
        if isinstance(value, (list, tuple)):
            value = " ".join(_csv_cell(v) for v in value)
        buf.write(f"# {key}: {_csv_cell(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument helpers --------------------------------------------------------

def parse_n_range(text: str) -> list[int]:
    """``3``, ``0,2,4``, ``0..4`` (inclusive) or ``0..50:10`` (with step)."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                span, _, step = part.partition(":")
                lo, hi = (int(v) for v in span.split(".."))
                out.extend(range(lo, hi + 1, int(step) if step else 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad n-range {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError(f"n-range {text!r} must be non-empty and non-negative")
    return out


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write to this path instead of stdout")


def _add_system(p, complex_ok=True):
    g = p.add_argument_group("system")
    g.add_argument("--molecule", help="registry name (H2, LiH, HCl, ...)")
    g.add_argument("--v1", type=float, help="V1 in MeV (raw parameters)")
    g.add_argument("--v2", type=float, help="V2 in MeV (raw parameters)")
    g.add_argument("--beta", type=float, default=1.0)
    g.add_argument("--m0", type=float, help="m0 c^2 in MeV (raw parameters; default 1 for --complex)")
    g.add_argument("--m1", type=float, help="m1 c^2 in MeV")
    g.add_argument("--inv-M", dest="inv_M", type=float, help="m1/m0 (alternative to --m1)")
    g.add_argument("--q-inv", type=float, help="1/Q in MeV (raw parameters)")
    if complex_ok:
        g.add_argument("--complex", action="store_true", help="non-PT-symmetric parameterization")
        g.add_argument("--u1", type=float)
        g.add_argument("--u2", type=float)
        g.add_argument("--u3", type=float)
        g.add_argument("--q-prime", type=float, default=1.0, help="Q' for the complex case")


def _m1(args, m0: float) -> float:
    if args.m1 is not None and args.inv_M is not None:
        raise UsageError("give at most one of --m1 and --inv-M")
    if args.inv_M is not None:
        return args.inv_M * m0
    return args.m1 if args.m1 is not None else 0.0


def resolve_system(args) -> tuple[PotentialSpec, MassModel, float, str]:
    """(potential, mass, 1/Q, label) from either --molecule or raw parameters."""
    raw = [args.v1, args.v2, args.m0, args.q_inv]
    if getattr(args, "complex", False):
        raise UsageError("complex parameters are not accepted here")
    if args.molecule is not None:
        if any(v is not None for v in raw):
            raise UsageError("give either --molecule or raw parameters, not both")
        mol = lookup_molecule(args.molecule)
        pot, mass, q_inv = molecular_system(mol)
        return pot, MassModel(mass.m0_energy, _m1(args, mass.m0_energy)), q_inv, mol.name
    if any(v is None for v in raw):
        raise UsageError("need --molecule or all of --v1 --v2 --m0 --q-inv")
    mass = MassModel(args.m0, _m1(args, args.m0))
    return PotentialSpec(args.v1, args.v2, args.beta), mass, args.q_inv, "raw"


def _complex_inputs(args):
    if args.molecule is not None or args.v1 is not None or args.v2 is not None:
        raise UsageError("--complex takes --u1 --u2 --u3, not a molecule or V1/V2")
    if args.u1 is None or args.u2 is None or args.u3 is None:
        raise UsageError("--complex needs --u1, --u2 and --u3")
    m0 = args.m0 if args.m0 is not None else 1.0
    return MassModel(m0, _m1(args, m0))


def _branches(text: str) -> list[int]:
    return {"both": [1, -1], "+": [1], "-": [-1]}[text]


# -- commands --------------------------------------------------------------------

LEVEL_COLUMNS = ("n", "branch", "E_re", "E_im", "L_re", "L_im", "source")


def _level_row(lv):
    return (lv.n, lv.branch, lv.energy.real, lv.energy.imag, lv.L.real, lv.L.imag, lv.source)


def cmd_levels(args) -> int:
    ns = parse_n_range(args.n)
    branches = _branches(args.branch)
    meta: dict[str, Any] = {}
    if args.complex:
        mass = _complex_inputs(args)
        meta.update(u1=args.u1, u2=args.u2, u3=args.u3, m0=mass.m0_energy, m1=mass.m1_energy,
                    q_prime=args.q_prime)
        if args.constant_mass:
            if mass.m1_energy != 0:
                raise UsageError("--constant-mass requires m1 = 0")
            levels = [complex_constant_mass_energy(n, args.u1, args.u2, args.u3, mass.m0_energy, b,
                                                   args.q_prime, args.strict_literal)
                      for n in ns for b in branches]
        else:
            levels = [complex_energy(n, args.u1, args.u2, args.u3, mass, b, args.q_prime)
                      for n in ns for b in branches]
    else:
        pot, mass, q_inv, label = resolve_system(args)
        meta.update(system=label, V1=pot.v1.real, V2=pot.v2.real, beta=pot.beta,
                    m0=mass.m0_energy, m1=mass.m1_energy, q_inv=q_inv)
        if args.constant_mass and args.special_case:
            raise UsageError("--constant-mass and --special-case are exclusive")
        if args.constant_mass:
            if mass.m1_energy != 0:
                raise UsageError("--constant-mass requires m1 = 0")
            levels = [constant_mass_energy(n, pot, mass.m0_energy, q_inv, b) for n in ns for b in branches]
        elif args.special_case:
            meta["sign_convention"] = SPECIAL_CASE_SIGN_NOTE
            levels = [special_case_energy(n, pot, mass, q_inv, b) for n in ns for b in branches]
        else:
            levels = [pdm_energy(n, pot, mass, q_inv, b) for n in ns for b in branches]
    _emit(args, render("levels", LEVEL_COLUMNS, [_level_row(lv) for lv in levels], args.format, meta))
    return 0


TABLE_MOLECULES = ("H2", "LiH", "HCl")


def table1_rows() -> tuple[list[str], list[list[float]]]:
    systems = {name: molecular_system(lookup_molecule(name)) for name in TABLE_MOLECULES}
    columns = ["n"] + [f"E_{m}" for m in TABLE_MOLECULES] + [f"published_{m}" for m in TABLE_MOLECULES] \
        + [f"deviation_{m}" for m in TABLE_MOLECULES]
    rows = []
    for i, n in enumerate(TABLE_N):
        energies = []
        for m in TABLE_MOLECULES:
            pot, mass, q_inv = systems[m]
            energies.append(constant_mass_energy(n, pot, mass.m0_energy, q_inv).energy.real)
        published = [PUBLISHED_LEVELS[m][i] for m in TABLE_MOLECULES]
        rows.append([n, *energies, *published, *(e - p for e, p in zip(energies, published))])
    return columns, rows


def cmd_table1(args) -> int:
    columns, rows = table1_rows()
    meta = {"formula": "constant mass", "units": "MeV", "antiparticle": "negatives of the listed levels"}
    _emit(args, render("table1", columns, rows, args.format, meta))
    return 0


def sweep_rows(pot: PotentialSpec, m0: float, q_inv: float, n: int, inv_min: float, inv_max: float,
               points: int, limit_row: bool = True) -> list[tuple[float, float, float]]:
    if not 0 < inv_min < inv_max < 1:
        raise UsageError("need 0 < inv-M min < inv-M max < 1 (m1 in (0, m0))")
    if points < 2:
        raise UsageError("sweep needs at least 2 points")
    grid = np.logspace(math.log10(inv_min), math.log10(inv_max), points)
    ratios = ([0.0] if limit_row else []) + [float(r) for r in grid]
    rows = []
    for r in ratios:
        lv = pdm_energy(n, pot, MassModel(m0, r * m0), q_inv, 1)
        rows.append((r, lv.energy.real, -lv.energy.real))
    return rows


SWEEP_POINTS = 1001


def cmd_sweep(args) -> int:
    if args.molecule is None:
        raise UsageError("sweep needs --molecule")
    mol = lookup_molecule(args.molecule)
    pot, mass, q_inv = molecular_system(mol)
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("sweep takes a single n")
    rows = sweep_rows(pot, mass.m0_energy, q_inv, ns[0], args.inv_m_min, args.inv_m_max, args.points,
                      not args.no_limit_row)
    meta = {"molecule": mol.name, "n": ns[0], "m0": mass.m0_energy, "grid": "log10 in 1/M = m1/m0"}
    _emit(args, render("sweep", ("inv_M", "E_particle", "E_antiparticle"), rows, args.format, meta))
    return 0


def cmd_wavefn(args) -> int:
    signs = "printed" if args.paper_signs else "consistent"
    if args.complex:
        mass = _complex_inputs(args)
        pot = complex_potential_params(args.u1, args.u2, args.u3)
        q_inv = 1.0 / args.q_prime
        level = complex_energy(args.level, args.u1, args.u2, args.u3, mass, 1, args.q_prime)
    else:
        pot, mass, q_inv, _ = resolve_system(args)
        level = pdm_energy(args.level, pot, mass, q_inv, 1)
    rp = reduce(pot, mass, q_inv, level.energy, signs)
    L = quantization_L(args.level, rp)
    ws = build_series(rp, L, args.terms)
    x_max = args.x_max if args.x_max is not None else default_x_max(pot.beta, decades=2)
    xs = np.linspace(0.0, x_max, args.samples)
    scale = 1.0
    if args.normalize:
        scale = normalize_numeric(ws, pot.beta)
    with np.errstate(over="ignore", invalid="ignore"):
        psi = scale * evaluate_psi(ws, xs, pot.beta)
    meta = {
        "n": args.level, "sign_mode": signs,
        "energy_re": level.energy.real, "energy_im": level.energy.imag,
        "L_re": ws.L.real, "L_im": ws.L.imag, "p_re": ws.p.real, "p_im": ws.p.imag,
        "q_re": ws.q.real, "q_im": ws.q.imag, "terms": ws.truncation_index,
        "truncated_exactly": ws.truncated_exactly,
        "determinant_residual": determinant_residual(rp, L, ws.truncation_index),
        "normalization": scale,
        "coefficients_re": [c.real for c in ws.coefficients],
        "coefficients_im": [c.imag for c in ws.coefficients],
    }
    rows = [(float(x), complex(v).real, complex(v).imag) for x, v in zip(xs, psi)]
    _emit(args, render("wavefn", ("x", "re_psi", "im_psi"), rows, args.format, meta))
    return 0


VERIFY_COLUMNS = ("n", "branch", "closed_re", "closed_im", "oracle_re", "oracle_im",
                  "abs_deviation", "rel_deviation", "oracle_bound", "match")


def verify_report(pot, mass, q_inv, k: int, grid: GridSpec, tolerance: float):
    if mass.m1_energy == 0:
        levels = [constant_mass_energy(n, pot, mass.m0_energy, q_inv, b) for n in range(k) for b in (1, -1)]
    else:
        levels = [pdm_energy(n, pot, mass, q_inv, b) for n in range(k) for b in (1, -1)]
    result = solve_effective(pot, mass, q_inv, grid, k)
    return compare_report(levels, result, tolerance), result


def cmd_verify(args) -> int:
    pot, mass, q_inv, label = resolve_system(args)
    grid = GridSpec(args.x_max if args.x_max is not None else default_x_max(pot.beta), args.points)
    report, result = verify_report(pot, mass, q_inv, args.levels, grid, args.tolerance)
    rows = [(r.n, r.branch, r.closed_form.real, r.closed_form.imag, r.oracle.real, r.oracle.imag,
             r.abs_deviation, r.rel_deviation, bool(result.bound[r.n]) if r.n < len(result.bound) else False,
             r.match) for r in report.rows]
    meta = {"system": label, "m1": mass.m1_energy, "grid_points": grid.points, "x_max": grid.x_max,
            "tolerance": args.tolerance, "all_match": report.all_match, "fingerprint": report.fingerprint,
            "boundary": "Dirichlet at x = 0 and x = x_max"}
    _emit(args, render("verify", VERIFY_COLUMNS, rows, args.format, meta))
    return 0 if report.all_match else EXIT_MISMATCH


def cmd_validate_oracle(args) -> int:
    grid = GridSpec(args.x_max, args.points)
    rep = validate_oracle(grid, args.tolerance)
    rows = [("morse", r["n"], r["exact"], r["extrapolated"], r["relative_error"], r["pass"])
            for r in rep.rows()]
    rows.append(("box", 0, 1.0, rep.box_lowest, abs(rep.box_lowest - 1.0), rep.box_ok))
    meta = {"grid_points": grid.points, "x_max": grid.x_max, "box_error_ratio": rep.box_error_ratio,
            "bound_levels": len(rep.morse.bound), "expected_bound_levels": rep.morse.expected_bound,
            "passed": rep.passed, "diagnostics": "; ".join(rep.diagnostics) or "none"}
    _emit(args, render("validate-oracle", ("check", "n", "exact", "computed", "error", "pass"),
                       rows, args.format, meta))
    return 0 if rep.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="morsekg", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("levels", help="closed-form energy levels")
    _add_system(p)
    p.add_argument("--n", default="0", help="0,2,4 | 0..4 | 0..50:10")
    p.add_argument("--branch", choices=("both", "+", "-"), default="both")
    p.add_argument("--constant-mass", action="store_true")
    p.add_argument("--special-case", action="store_true", help="V2 = m1 c^2 oscillator levels")
    p.add_argument("--strict-literal", action="store_true",
                   help="complex constant-mass: use the unprimed V1~ inside the root")
    p.add_argument("--paper-signs", action="store_true", help="no effect on energies; accepted for symmetry")
    _add_output(p)
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("table1", help="constant-mass levels for H2, LiH, HCl vs published values")
    _add_output(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("sweep", help="ground state vs m1/m0 on a log grid")
    p.add_argument("--molecule", required=True)
    p.add_argument("--n", default="0")
    p.add_argument("--points", type=int, default=SWEEP_POINTS)
    p.add_argument("--inv-m-min", type=float, default=1e-6)
    p.add_argument("--inv-m-max", type=float, default=1e-4)
    p.add_argument("--no-limit-row", action="store_true", help="omit the 1/M = 0 row")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wavefn", help="series wavefunction samples")
    _add_system(p)
    p.add_argument("--n", dest="level", type=int, default=0)
    p.add_argument("--terms", type=int, default=8, help="truncation index N of the series")
    p.add_argument("--x-max", type=float)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--paper-signs", action="store_true", help="use p = +Q (V2 - m1 c^2)")
    _add_output(p)
    p.set_defaults(func=cmd_wavefn)

    p = sub.add_parser("verify", help="closed form vs finite-difference oracle")
    _add_system(p, complex_ok=False)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--x-max", type=float)
    p.add_argument("--tolerance", type=float, default=1e-6)
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("validate-oracle", help="oracle self-test")
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--x-max", type=float, default=60.0)
    p.add_argument("--tolerance", type=float, default=1e-6)
    _add_output(p)
    p.set_defaults(func=cmd_validate_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "molecule", None) is None and args.command == "verify" and args.v1 is None:
        args.molecule = "H2"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"morsekg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MorseKGError as exc:
        print(f"morsekg {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
