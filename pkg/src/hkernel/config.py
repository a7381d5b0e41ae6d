"""Central tolerance and quadrature configuration records."""

from dataclasses import dataclass, fields, replace

from .errors import ConfigError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every module."""

    series_term: float = 1e-14      # relative term cutoff for power series
    series_max_terms: int = 20_000_000
    disk_margin: float = 1e-7       # |omega| <= 1 - disk_margin for the interior series
    quad_abs: float = 1e-10
    quad_rel: float = 1e-12
    quad_limit: int = 400
    abel_levels: tuple = (4, 14)    # radii r_j = 1 - 2**-j, j in [lo, hi]
    abel_consistency: float = 1e-8
    psi_series: float = 1e-10
    contour: float = 1e-8
    pole_guard: float = 1e-12
    sphere: float = 1e-9
    tail: float = 1e-6              # t-boundary magnitude relative to max for |T|


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation parameters for pairings, averages and convolutions.

    The defaults were tuned on the n = 1 gallery; every route reports its own
    error estimate so coarser settings can be judged from the output.
    """

    # sphere averages
    sphere_points: int = 64
    sphere_seed: int = 20240611
    sphere_check: bool = True
    # spatial pairing
    eps0: float = 0.02
    spatial_rel: float = 1e-9
    # angular pairing
    theta_panels: int = 8
    theta_nodes: int = 24
    # spectral pairing
    k_cutoff: int = 64
    k_max: int = 60_000
    k_scale: float = 40.0
    lambda_cutoff: float = 16.0
    lambda_min: float = 1e-3
    lambda_panels: int = 12
    lambda_nodes: int = 16
    tau_panels: int = 24
    tau_nodes: int = 16
    t_step: float = 0.05
    spectral_tol: float = 1e-3
    # convolution
    conv_r1: float = 4.0
    conv_r2: float = 10.0
    conv_rho_panels: int = 8
    conv_rho_nodes: int = 12
    conv_theta_panels: int = 8
    conv_theta_nodes: int = 12
    conv_sphere_points: int = 48
    conv_box_panels: int = 10
    conv_box_nodes: int = 8
    conv_t_panels: int = 10
    # finite differences
    stencil_order: int = 6
    grid_h: float = 0.125
    grid_t_half: float = 8.0
    grid_t_count: int = 128

    def with_updates(self, **kw):
        return replace(self, **kw)


DEFAULT_QUADRATURE = QuadratureSpec()


def _coerce(kind, raw, key):
    try:
        if kind is bool:
            low = raw.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is tuple:
            return tuple(int(p) for p in raw.replace(",", " ").split())
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc


def parse_config_text(text, quad=DEFAULT_QUADRATURE, tol=DEFAULT_TOLERANCES):
    """Parse flat ``key = value`` text into (QuadratureSpec, Tolerances, extra).

    ``#`` starts a comment.  Keys are the field names of either record, or one
    of the run-level keys ``n``, ``alpha``, ``seed``.  Anything else is an error.
    """
    qtypes = {f.name: type(getattr(quad, f.name)) for f in fields(quad)}
    ttypes = {f.name: type(getattr(tol, f.name)) for f in fields(tol)}
    extra_types = {"n": int, "alpha": float, "seed": int}
    qkw, tkw, extra = {}, {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key in qtypes:
            qkw[key] = _coerce(qtypes[key], raw, key)
        elif key in ttypes:
            tkw[key] = _coerce(ttypes[key], raw, key)
        elif key in extra_types:
            extra[key] = _coerce(extra_types[key], raw, key)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return replace(quad, **qkw), replace(tol, **tkw), extra


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())
