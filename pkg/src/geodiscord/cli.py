"""
Command-line interface for geodiscord.

Usage:
    geodiscord measures state.json
    geodiscord evolve state.json --channel phase_flip --p 0.5
    geodiscord trajectory state.json --steps 1001 --out t.csv
    geodiscord isosurface --field dg --level 0.35 --res 101 --clip --out m.obj
    geodiscord contour --level 0.0225 --plane-c3 0.3 --out c.csv
    geodiscord freeze state.json
    geodiscord verify-hierarchy --seed 1 --n-belldiag 100000 --n-general 1000

State files hold one of ``{"bell_diag": [c1, c2, c3]}``,
``{"deformed": {"r": r, "s": s, "c": [c1, c2, c3]}}`` or
``{"matrix": [[[re, im], ...], ...]}``.

Exit codes: 0 success, 2 invalid input, 3 unphysical state,
4 verification failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from geodiscord import channels, dynamics, geometry, measures, sampling
from geodiscord.errors import PhysicalityError, PreconditionError, ValidationError
from geodiscord.export import dumps, write_contour_csv, write_obj, write_trajectory_csv
from geodiscord.qstate import BellDiag, DeformedBellDiag, density_to_bloch, state_from_spec

EXIT_INPUT = 2
EXIT_PHYSICALITY = 3
EXIT_VERIFICATION = 4


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def load_state(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot read {path}: {exc.strerror}", EXIT_INPUT)
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})", EXIT_INPUT)
    try:
        return state_from_spec(spec)
    except PhysicalityError as exc:
        _fail(str(exc), EXIT_PHYSICALITY)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)


def _emit(obj) -> None:
    click.echo(dumps(obj))


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise click.BadParameter(f"expected THETAxPHI, e.g. 128x256, got {text!r}")


@click.group()
@click.version_option(package_name="geodiscord")
def cli():
    """Discord, geometric discord and concurrence of two-qubit states."""


@cli.command("measures")
@click.argument("state", type=click.Path(dir_okay=False))
@click.option("--grid", default="128x256", show_default=True, help="Measurement grid for non-Bell-diagonal states.")
def measures_cmd(state, grid):
    """Print I, J, D, D_G and C of a state as JSON."""
    rho, form = load_state(state)
    if isinstance(form, BellDiag):
        out = {
            "I": measures.mutual_information_belldiag(form),
            "J": measures.classical_correlation_belldiag(form),
            "D": measures.quantum_discord_belldiag(form),
            "D_G": measures.geometric_discord_belldiag(form),
            "C": measures.concurrence_xstate(form).C,
            "method": "closed_form",
        }
    else:
        j, _ = measures.classical_correlation_bruteforce(rho, _parse_grid(grid))
        i = measures.mutual_information(rho)
        if isinstance(form, DeformedBellDiag):
            dg = measures.geometric_discord_deformed(form)
        else:
            dg = measures.geometric_discord_general(rho)[0]
        out = {
            "I": i,
            "J": j,
            "D": max(0.0, i - j),
            "D_G": dg,
            "C": measures.concurrence(rho),
            "method": "measurement_search",
        }
    _emit(out)


@cli.command()
@click.argument("state", type=click.Path(dir_okay=False))
@click.option("--channel", "kind", required=True, type=click.Choice(channels.KINDS))
@click.option("--p", "p", required=True, type=float, help="Channel strength, or Gamma*t with --gamma-time.")
@click.option("--gamma-time", is_flag=True, help="Read --p as Gamma*t and use p = 1 - exp(-Gamma*t).")
def evolve(state, kind, p, gamma_time):
    """Apply the same channel to both qubits and print the evolved Bloch data."""
    rho, form = load_state(state)
    try:
        strength = channels.p_from_gamma_time(p) if gamma_time else p
        ch = channels.Channel(kind, strength)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)
    out_rho = channels.apply_channel(rho, ch)
    b = density_to_bloch(out_rho)
    out = {
        "channel": kind,
        "p": ch.p,
        "x": b.x.tolist(),
        "y": b.y.tolist(),
        "T": b.T.tolist(),
        "D_G": measures.geometric_discord_general(out_rho)[0],
        "C": measures.concurrence(out_rho),
    }
    if isinstance(form, BellDiag):
        out["D_G_closed_form"] = channels.geometric_discord_after(form, ch)
    _emit(out)


def _require_bell(form, what: str) -> BellDiag:
    if not isinstance(form, BellDiag):
        _fail(f"{what} needs a 'bell_diag' state", EXIT_INPUT)
    return form


@cli.command()
@click.argument("state", type=click.Path(dir_okay=False))
@click.option("--steps", default=1001, show_default=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def trajectory(state, steps, out_path):
    """Write the phase-flip trajectory of a Bell-diagonal state as CSV."""
    _, form = load_state(state)
    bd = _require_bell(form, "trajectory")
    try:
        traj = dynamics.phase_flip_trajectory(bd, steps)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_trajectory_csv(traj, fh)
    _emit({"samples": len(traj), "out": out_path})


@cli.command()
@click.option("--field", "field_name", default="dg", show_default=True, type=click.Choice(sorted(geometry._FIELD_ALIASES)))
@click.option("--level", required=True, type=float)
@click.option("--res", "resolution", default=geometry.DEFAULT_RESOLUTION, show_default=True, type=int)
@click.option("--clip", is_flag=True, help="Drop cells wholly outside the physical region.")
@click.option("--r", "r", default=0.0, type=float, help="Local Bloch component of A (deformed field).")
@click.option("--s", "s", default=0.0, type=float, help="Local Bloch component of B (deformed field).")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def isosurface(field_name, level, resolution, clip, r, s, out_path):
    """Extract a constant-discord surface as an OBJ mesh."""
    try:
        mesh = geometry.iso_surface(field_name, level, resolution, clip, r, s)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)
    header = f"field={field_name} level={level} res={resolution} clip={clip} r={r} s={s}"
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_obj(mesh, fh, comment=header)
    _emit(
        {
            "vertices": len(mesh.vertices),
            "triangles": len(mesh.triangles),
            "components": mesh.n_components,
            "out": out_path,
        }
    )


@cli.command()
@click.option("--r", "r", required=True, type=float)
@click.option("--s", "s", required=True, type=float)
@click.option("--res", "resolution", default=geometry.DEFAULT_RESOLUTION, show_default=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def boundary(r, s, resolution, out_path):
    """Extract the physical boundary of the deformed family as an OBJ mesh."""
    try:
        mesh = geometry.deformation_boundary(r, s, resolution)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_obj(mesh, fh, comment=f"deformation boundary r={r} s={s} res={resolution}")
    _emit({"vertices": len(mesh.vertices), "triangles": len(mesh.triangles), "out": out_path})


@cli.command()
@click.option("--field", "field_name", default="dg", show_default=True, type=click.Choice(sorted(geometry._FIELD_ALIASES)))
@click.option("--level", required=True, type=float)
@click.option("--plane-c3", "plane_c3", required=True, type=float)
@click.option("--res", "resolution", default=201, show_default=True, type=int)
@click.option("--r", "r", default=0.0, type=float)
@click.option("--s", "s", default=0.0, type=float)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def contour(field_name, level, plane_c3, resolution, r, s, out_path):
    """Write level-set polylines on a plane of constant c3 as CSV."""
    try:
        cs = geometry.contour_slice(field_name, level, plane_c3, resolution, r, s)
    except ValidationError as exc:
        _fail(str(exc), EXIT_INPUT)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_contour_csv(cs, fh)
    _emit({"polylines": len(cs.polylines), "points": len(cs.points), "out": out_path})


@cli.command()
@click.argument("state", type=click.Path(dir_okay=False))
def freeze(state):
    """Report the freezing interval under phase flip and check separability."""
    _, form = load_state(state)
    bd = _require_bell(form, "freeze")
    interval = dynamics.freezing_interval(bd)
    out = {
        "c": list(bd.c),
        "sudden_change_point": dynamics.sudden_change_point(bd),
        "interval": [interval.p_lo, interval.p_hi] if interval else None,
        "value": interval.value if interval else None,
        "separable": None,
    }
    try:
        cert = dynamics.frozen_initial_is_separable(bd)
    except PreconditionError:
        cert = None
    if cert is not None:
        out.update(
            {
                "separable": cert.separable,
                "lambda1": cert.concurrence.lambda1,
                "lambda2": cert.concurrence.lambda2,
                "C": cert.concurrence.C,
                "lambda_bound": cert.bound,
                "ppt_min_eigenvalue": cert.ppt_min_eigenvalue,
            }
        )
    _emit(out)


@cli.command("verify-hierarchy")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--n-belldiag", default=100000, show_default=True, type=int)
@click.option("--n-general", default=1000, show_default=True, type=int)
@click.option("--grid", default="128x256", show_default=True)
def verify_hierarchy_cmd(seed, n_belldiag, n_general, grid):
    """Monte-Carlo check of 2 D_G >= D^2; exit code 4 on any violation."""
    try:
        report = sampling.verify_hierarchy(seed, n_belldiag, n_general, _parse_grid(grid))
    except ValueError as exc:
        _fail(str(exc), EXIT_INPUT)
    _emit(
        {
            "n_samples": report.n_samples,
            "n_violations": report.n_violations,
            "worst_margin": report.worst_margin,
            "seed": report.seed,
        }
    )
    if report.n_violations:
        sys.exit(EXIT_VERIFICATION)


def main(argv=None):
    cli.main(args=argv, prog_name="geodiscord")


if __name__ == "__main__":
    main()
