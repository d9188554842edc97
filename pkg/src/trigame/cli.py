"""Command-line front end: samplers, area reports, figures, spot checks.

Four subcommands over the library: ``sample`` writes a CSV point cloud of
mapped strategies, ``area`` writes an area report as JSON, ``figure`` draws
a side-by-side pair of simplex scatter plots as SVG, ``check`` answers a
feasibility question for one frequency triple as JSON.

Every emitter builds the full output as one string and writes it in a
single pass with ``\\n`` newlines, so identical seeds and configs give
byte-identical files on every platform and under any worker count.
Parallelism is controlled by the ``TRIGAME_WORKERS`` environment variable
(default 1); results never depend on it.

Exit codes: 0 success, 1 usage error, 2 I/O error.
"""

from __future__ import annotations

import json
import math
import os
import sys

import click
import numpy as np

from . import _kernels
from .atlas import SimplexGrid, measure_forward, measure_oracle
from .feasibility import FILTER_ANY, FILTERS, MODEL_CLASSICAL, MODELS, feasible
from .game import (
    CODE_INTRANSITIVE_I,
    CODE_INTRANSITIVE_II,
    STATUS_OUT_OF_SIMPLEX,
    STATUS_SINGULAR,
    classification_from_code,
)
from .geometry import (
    INFINITY,
    Frequencies,
    Rng,
    SpherePoint,
    simplex_to_cartesian,
    sphere_to_stereographic,
)

__all__ = ["main"]

CSV_HEADER = "z_re,z_im,x1,x2,x3,p02,p01,p10,q0,q1,q2,class"

_FIGURES = ("optimal", "intransitive", "transitive")


def _workers() -> int:
    raw = os.environ.get("TRIGAME_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise click.UsageError(f"TRIGAME_WORKERS must be an integer, got {raw!r}")


def _emit(text: str, out: str | None) -> None:
    data = text.encode("utf-8")
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _f(v: float) -> str:
    return repr(float(v))


def _strategy_batch(model: str, m: int, rng: Rng):
    """Arrays (p02, p01, p10, x1, x2, x3) for m sampled strategies."""
    u = rng.draws(m)
    if model == MODEL_CLASSICAL:
        p02, p01, p10 = u[:, 0], u[:, 1], u[:, 2]
        return (
            p02,
            p01,
            p10,
            2.0 * p01 - 1.0,
            2.0 * p10 - 1.0,
            1.0 - 2.0 * p02,
        )
    x3 = 2.0 * u[:, 0] - 1.0
    phi = (2.0 * math.pi) * u[:, 1]
    s = np.sqrt(np.maximum(1.0 - x3 * x3, 0.0))
    x1 = s * np.cos(phi)
    x2 = s * np.sin(phi)
    if model == "quantum-mixed":
        r = np.cbrt(u[:, 2])
        x1, x2, x3 = r * x1, r * x2, r * x3
    return 0.5 * (1.0 - x3), 0.5 * (1.0 + x1), 0.5 * (1.0 + x2), x1, x2, x3


def _z_fields(x1: float, x2: float, x3: float) -> tuple[str, str]:
    """Stereographic label of the radial direction, as two CSV fields."""
    norm = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if norm == 0.0:
        return _f(0.0), _f(0.0)
    z = sphere_to_stereographic(SpherePoint(x1 / norm, x2 / norm, x3 / norm))
    if z is INFINITY:
        return "inf", _f(0.0)
    return _f(z.real), _f(z.imag)


def _sample_csv(model: str, m: int, seed: int) -> str:
    p02, p01, p10, x1, x2, x3 = _strategy_batch(model, m, Rng(seed))
    q0, q1, q2, status, cls = _kernels.forward_map(p02, p01, p10)
    lines = [CSV_HEADER]
    classical = model == MODEL_CLASSICAL
    for i in range(m):
        if classical:
            z_re = z_im = ""
        else:
            z_re, z_im = _z_fields(float(x1[i]), float(x2[i]), float(x3[i]))
        st = int(status[i])
        if st == _kernels.OK:
            qs = (_f(q0[i]), _f(q1[i]), _f(q2[i]))
            token = classification_from_code(int(cls[i])).label()
        else:
            qs = ("", "", "")
            token = STATUS_OUT_OF_SIMPLEX if st == _kernels.OUT_OF_SIMPLEX else STATUS_SINGULAR
        lines.append(
            ",".join(
                (
                    z_re,
                    z_im,
                    _f(x1[i]),
                    _f(x2[i]),
                    _f(x3[i]),
                    _f(p02[i]),
                    _f(p01[i]),
                    _f(p10[i]),
                    *qs,
                    token,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _report_json(report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


# Plot geometry: unit simplex edge scaled to 400 px, baseline at y = 380.
_PANEL = 400.0
_BASE_Y = 380.0
_APEX_Y = _BASE_Y - _PANEL * (math.sqrt(3.0) / 2.0)


def _panel_path(model: str, which: str, m: int, rng: Rng) -> str:
    """SVG path data plotting the mapped points of the requested class."""
    p02, p01, p10, *_ = _strategy_batch(model, m, rng)
    q0, q1, q2, status, cls = _kernels.forward_map(p02, p01, p10)
    keep = status == _kernels.OK
    if which == "intransitive":
        keep &= (cls == CODE_INTRANSITIVE_I) | (cls == CODE_INTRANSITIVE_II)
    elif which == "transitive":
        keep &= cls <= 5
    u = q1[keep] + 0.5 * q2[keep]
    v = (math.sqrt(3.0) / 2.0) * q2[keep]
    xs = u * _PANEL
    ys = _BASE_Y - v * _PANEL
    return "".join(f"M{x:.2f} {y:.2f}h0" for x, y in zip(xs, ys))


def _figure_svg(which: str, quantum_model: str, m: int, seed: int) -> str:
    corners = [simplex_to_cartesian(Frequencies(*c)) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    outline = " ".join(
        f"{'M' if i == 0 else 'L'}{u * _PANEL:.2f} {_BASE_Y - v * _PANEL:.2f}"
        for i, (u, v) in enumerate(corners)
    )
    panels = []
    for i, (model, color) in enumerate(((MODEL_CLASSICAL, "#1f77b4"), (quantum_model, "#d62728"))):
        path = _panel_path(model, which, m, Rng(seed, stream=i))
        panels.append(
            f'<g transform="translate({20 + 440 * i},20)">'
            f'<text x="200" y="{_BASE_Y + 34:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{model}</text>'
            f'<path d="{path}" stroke="{color}" stroke-width="1.4" '
            f'stroke-linecap="round" fill="none" opacity="0.45"/>'
            f'<path d="{outline} Z" stroke="#333333" stroke-width="1" fill="none"/>'
            f'<text x="-4" y="{_BASE_Y + 14:.0f}" font-family="sans-serif" font-size="12">q0</text>'
            f'<text x="{_PANEL - 6:.0f}" y="{_BASE_Y + 14:.0f}" '
            f'font-family="sans-serif" font-size="12">q1</text>'
            f'<text x="{_PANEL / 2 - 8:.0f}" y="{_APEX_Y - 8:.0f}" '
            f'font-family="sans-serif" font-size="12">q2</text>'
            "</g>"
        )
    body = "".join(panels)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 880 460" '
        'width="880" height="460">'
        f'<title>{which} regions</title>{body}</svg>\n'
    )


def _parse_q(text: str, eps: float) -> Frequencies:
    parts = text.split(",")
    if len(parts) != 3:
        raise click.UsageError(f"--q needs three comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise click.UsageError(f"--q needs three comma-separated numbers, got {text!r}")
    if min(vals) < 0.0:
        raise click.UsageError(f"--q components must be nonnegative, got {text!r}")
    s = sum(vals)
    if abs(s - 1.0) > eps:
        raise click.UsageError(f"--q components sum to {s!r}, not 1 within eps={eps!r}")
    return Frequencies(vals[0] / s, vals[1] / s, vals[2] / s)


def _witness_dict(probs) -> dict:
    x1, x2, x3 = probs.bloch()
    return {
        "p02": probs.p02,
        "p01": probs.p01,
        "p10": probs.p10,
        "x1": x1,
        "x2": x2,
        "x3": x3,
    }


def _check_format(fmt: str | None, expected: str) -> None:
    if fmt is not None and fmt != expected:
        raise click.UsageError(f"this command emits {expected}, not {fmt}")


@click.group()
def cli() -> None:
    """Strategy-region toolkit for the three-option pair-offer game."""


@cli.command()
@click.option("--model", type=click.Choice(MODELS), default=MODEL_CLASSICAL, show_default=True)
@click.option("--n-samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Default: stdout.")
@click.option("--format", "fmt", type=click.Choice(["csv"]), default=None)
def sample(model: str, n_samples: int, seed: int, out: str | None, fmt: str | None) -> None:
    """Sample strategies, map them to frequency triples, write a CSV cloud.

    Columns: z_re,z_im (stereographic label; empty for the classical model),
    x1,x2,x3 (symmetric coordinates), p02,p01,p10 (conditional
    probabilities), q0,q1,q2 (mapped frequencies; empty when the map fails),
    class (preference class, or singular / out-of-simplex).
    """
    _check_format(fmt, "csv")
    _emit(_sample_csv(model, n_samples, seed), out)


@cli.command()
@click.option("--model", type=click.Choice(MODELS), default=MODEL_CLASSICAL, show_default=True)
@click.option("--method", type=click.Choice(["oracle", "forward"]), default="oracle",
              show_default=True)
@click.option("--grid", type=click.IntRange(min=1), default=256, show_default=True)
@click.option("--n-samples", type=click.IntRange(min=1), default=100_000, show_default=True,
              help="Sample count for the forward method.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Default: stdout.")
@click.option("--format", "fmt", type=click.Choice(["json"]), default=None)
def area(model: str, method: str, grid: int, n_samples: int, seed: int,
         out: str | None, fmt: str | None) -> None:
    """Measure region areas on the frequency simplex, write a JSON report."""
    _check_format(fmt, "json")
    g = SimplexGrid(grid)
    if method == "oracle":
        report = measure_oracle(model, g, workers=_workers())
    else:
        report = measure_forward(model, g, n_samples, Rng(seed), workers=_workers())
    _emit(_report_json(report), out)


@cli.command()
@click.option("--which", type=click.Choice(_FIGURES), default="optimal", show_default=True)
@click.option("--model", type=click.Choice(MODELS), default="quantum-pure", show_default=True,
              help="Model for the right panel; the left is always classical.")
@click.option("--n-samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Default: stdout.")
@click.option("--format", "fmt", type=click.Choice(["svg"]), default=None)
def figure(which: str, model: str, n_samples: int, seed: int,
           out: str | None, fmt: str | None) -> None:
    """Draw the classical and quantum point clouds side by side as SVG.

    `optimal` plots every mapped point, `intransitive` only the points whose
    strategy is cyclic, `transitive` only the strictly ordered ones.
    """
    _check_format(fmt, "svg")
    _emit(_figure_svg(which, model, n_samples, seed), out)


@cli.command()
@click.option("--q", "q_text", required=True, help="Frequency triple, e.g. 0.2,0.3,0.5.")
@click.option("--model", type=click.Choice(MODELS), default=None,
              help="Default: report all three models.")
@click.option("--filter", "class_filter", type=click.Choice(FILTERS), default=FILTER_ANY,
              show_default=True)
@click.option("--eps", type=float, default=1e-9, show_default=True,
              help="Tolerance on the component sum of --q.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Default: stdout.")
@click.option("--format", "fmt", type=click.Choice(["json"]), default=None)
def check(q_text: str, model: str | None, class_filter: str, eps: float,
          out: str | None, fmt: str | None) -> None:
    """Decide feasibility of one frequency triple, write the answer as JSON."""
    _check_format(fmt, "json")
    if eps <= 0.0:
        raise click.UsageError("--eps must be positive")
    q = _parse_q(q_text, eps)
    results = []
    for m in MODELS if model is None else (model,):
        res = feasible(q, m, class_filter)
        results.append(
            {
                "model": m,
                "filter": class_filter,
                "feasible": res.feasible,
                "witness": _witness_dict(res.witness) if res.feasible else None,
            }
        )
    payload = {"q": [q.q0, q.q1, q.q2], "results": results}
    _emit(json.dumps(payload, indent=2) + "\n", out)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit codes (0 ok, 1 usage, 2 I/O)."""
    try:
        cli.main(args=argv, prog_name="trigame", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
