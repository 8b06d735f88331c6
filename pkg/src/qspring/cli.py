"""Command-line front end: ``qspring scan`` and ``qspring profile``.

Exit codes: 0 success, 2 invalid request, 3 non-positive Omega on the support.
Errors are a single line on stderr, ``error: <kind>: <detail>``.
"""
from __future__ import annotations

import sys

import click

from qspring.errors import DomainError, NonPositiveOmega, UnsupportedExtension, ValidationError
from qspring.nonlinearity import ModulationProfile, NonlinearityFamily, make_family
from qspring.scan import FORMATS, ScanRequest, render, run_scan

EXIT_VALIDATION = 2
EXIT_OMEGA = 3


def read_spectrum(path: str) -> list[float]:
    """One real per line, line n holding e_n; blank lines and #-comments skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ValidationError(f"spectrum file {path} line {lineno}: not a number: {text!r}") from None
    return values


def read_config_file(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; keys are flag names without the dashes."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValidationError(f"config {path} line {lineno}: expected key = value")
            key, value = (s.strip() for s in text.split("=", 1))
            out[key.lstrip("-").replace("_", "-")] = value
    return out


def _load_config(ctx: click.Context, param: click.Parameter, value):
    if value is None:
        return value
    try:
        raw = read_config_file(value)
    except (OSError, ValidationError) as exc:
        _fail_validation(str(exc))
    by_flag = {}
    for p in ctx.command.params:
        for opt in getattr(p, "opts", []):
            by_flag[opt.lstrip("-")] = p.name
    defaults = dict(ctx.default_map or {})
    for key, v in raw.items():
        if key not in by_flag or key == "config":
            _fail_validation(f"config {value}: unknown key {key!r}")
        defaults[by_flag[key]] = v
    ctx.default_map = defaults
    return value


def _fail_validation(msg: str):
    click.echo(f"error: validation: {msg}", err=True)
    sys.exit(EXIT_VALIDATION)


def _fail_omega(exc: NonPositiveOmega):
    where = "unknown" if exc.p is None else str(exc.p)
    click.echo(f"error: non_positive_omega: p={where} omega={exc.omega_value!r}", err=True)
    sys.exit(EXIT_OMEGA)


def build_family(family, lam, mu, m, spectrum) -> NonlinearityFamily:
    e = read_spectrum(spectrum) if spectrum else None
    return make_family(family, lam=lam, mu=mu, m=m, e=e)


def profile_table(family: NonlinearityFamily, p_max: int) -> str:
    if p_max < 0:
        raise ValidationError(f"p_max must be >= 0, got {p_max}")
    prof = ModulationProfile(family)
    rows = ["p\tf\tOmega"]
    for p in range(p_max + 1):
        rows.append(f"{p}\t{prof.f(p):.12g}\t{prof.omega(p):.12g}")
    return "\n".join(rows) + "\n"


def family_options(fn):
    opts = [
        click.option("--family", required=True, help="identity, q_deformed, photon_added, rai_agarwal or custom."),
        click.option("--lambda", "lam", type=float, help="q-deformation parameter (> 0)."),
        click.option("--mu", type=float, help="Rai-Agarwal modulation strength (>= 0)."),
        click.option("--m", type=int, help="Photons added; negative for |alpha, -m> states."),
        click.option("--spectrum", type=click.Path(dir_okay=False), help="File with e_n, one per line."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Nonlinear quantum optical spring simulator."""


@main.command()
@click.option("--config", type=click.Path(dir_okay=False), is_eager=True, expose_value=False,
              callback=_load_config, help="key = value file; flags override it.")
@family_options
@click.option("--nbar", type=float, required=True, help="Mean photon number |alpha|^2 of the source.")
@click.option("--omega", type=float, default=1.0, show_default=True)
@click.option("--tau-start", type=float, default=0.0, show_default=True)
@click.option("--tau-end", type=float, default=10.0, show_default=True)
@click.option("--steps", type=int, default=1001, show_default=True)
@click.option("--quantities", default=None, help="Comma list from p0,pcl,sx,sp (default: all available).")
@click.option("--out", "out", default="-", show_default=True, help="Output file, - for stdout.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--plot", type=click.Path(dir_okay=False), default=None, help="Also write an SVG chart here.")
@click.option("--eps-trunc", type=float, default=1e-12, show_default=True)
@click.option("--p-max", "p_max", type=int, default=1024, show_default=True, help="Poisson support cap.")
@click.option("--omega-policy", type=click.Choice(["strict", "absolute"]), default="strict", show_default=True)
def scan(family, lam, mu, m, spectrum, nbar, omega, tau_start, tau_end, steps, quantities, out, fmt, plot,
         eps_trunc, p_max, omega_policy):
    """Scan P0, P_cl, S_x, S_p over a uniform tau = omega t / 2pi grid."""
    try:
        fam = build_family(family, lam, mu, m, spectrum)
        qs = None
        if quantities:
            qs = tuple(q.strip().lower() for q in quantities.split(",") if q.strip())
        request = ScanRequest(
            family=fam, nbar=nbar, omega=omega, tau_start=tau_start, tau_end=tau_end, steps=steps,
            quantities=qs, output_path=out, format=fmt, plot=plot, eps_trunc=eps_trunc,
            p_max_cap=p_max, omega_policy=omega_policy,
        )
        result = run_scan(request)
    except NonPositiveOmega as exc:
        _fail_omega(exc)
    except (ValidationError, DomainError, UnsupportedExtension, OSError) as exc:
        _fail_validation(str(exc))
    if out == "-":

        click.echo(render(result, request), nl=False)
    s = result.summary()
    line = f"rows={s['rows']} support={s['support_size']} residual_mass={s['residual_mass']:.3e}"
    if "squeezing_support_size" in s:
        line += f" squeezing_support={s['squeezing_support_size']}"
    click.echo(line, err=True)
    for w in s["warnings"]:
        click.echo(f"warning: {w}", err=True)


@main.command()
@family_options
@click.option("--p-max", "p_max", type=int, default=10, show_default=True)
def profile(family, lam, mu, m, spectrum, p_max):
    """Print f(p) and Omega(p) for p = 0..p_max."""
    try:
        fam = build_family(family, lam, mu, m, spectrum)
        click.echo(profile_table(fam, p_max), nl=False)
    except (ValidationError, DomainError, OSError) as exc:
        _fail_validation(str(exc))


if __name__ == "__main__":
    main()
