"""Sectioned key-value problem configurations.

Format::

    # comment
    seed = 7

    [family]
    kind = double_phase
    p = 2
    q = 3
    a = x^2 + y^2
    a_lipschitz = 3.0

    [grid]
    side = 1.0
    n = 65

    [boundary]
    expr = x^2 - y^2

    [ball]
    center = 0.5, 0.5
    rho = 0.2
    R = 0.35

    [schedule]
    mode = auto            # or explicit with alpha/beta/gamma/delta/nu/mu
    n = 2

    [sweep]
    amplitudes = 0.5, 1, 2, 4, 8
    # or: pairs = (0.05, 0.45), (0.25, 0.45), (0.33, 0.45), (0.41, 0.45)

    [solver]
    tolerance = 1e-8
    max_iter = 20000

Arithmetic expressions are allowed only in coefficient and boundary fields
(variables x, y; operators + - * / ^; functions exp, log, min, max).
Parse errors carry the config line (and column, for expressions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .expressions import Expression, ExpressionError, parse_expression
from .exponents import (
    ExponentParams,
    MU_UNBOUNDED,
    MoserSchedule,
    ParamRejection,
    anisotropic_params,
    auto_exponential_params,
    auto_px_params,
    default_params,
    double_phase_params,
    is_rejected,
    moser_exponents,
    select_mu_nu,
    sobolev_context,
)
from .integrand import (
    Anisotropic,
    Ball,
    Coefficient,
    DoublePhase,
    Exponential,
    IntegrandFamily,
    LogPxLaplacian,
    MultiPhase,
    PLaplacian,
    PxLaplacian,
    VeryDegenerate,
)
from .solver import SolveOptions


class ConfigError(ValueError):
    """Anchored parse/validation error: path, 1-based line, optional column."""

    def __init__(self, message: str, path: str = "<config>", line: int = 0, column: Optional[int] = None):
        anchor = f"{path}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{anchor}: {message}")
        self.path = path
        self.line = line
        self.column = column
        self.reason = message


@dataclass
class _Entry:
    value: str
    line: int


@dataclass
class ProblemConfig:
    """Parsed config: sections of key -> (value, line)."""

    path: str
    sections: dict
    top: dict

    def section(self, name: str) -> dict:
        return self.sections.get(name, {})

    def require_section(self, name: str) -> dict:
        if name not in self.sections:
            raise ConfigError(f"missing [{name}] section", self.path, 0)
        return self.sections[name]

    # --- typed getters ------------------------------------------------------

    def _entry(self, sect: str, key: str, default=None, required=False) -> Optional[_Entry]:
        entry = self.section(sect).get(key)
        if entry is None:
            if required:
                raise ConfigError(f"[{sect}] is missing the key {key!r}", self.path, 0)
            return default
        return entry

    def get_str(self, sect, key, default=None, required=False):
        e = self._entry(sect, key, None, required)
        return default if e is None else e.value

    def get_float(self, sect, key, default=None, required=False):
        e = self._entry(sect, key, None, required)
        if e is None:
            return default
        try:
            return float(e.value)
        except ValueError:
            raise ConfigError(f"{key} = {e.value!r} is not a number", self.path, e.line) from None

    def get_number(self, sect, key, default=None, required=False):
        """Fraction when the text is exact (int, ratio, or decimal), else float."""
        e = self._entry(sect, key, None, required)
        if e is None:
            return default
        txt = e.value
        try:
            if "/" in txt or ("e" not in txt.lower() and "." not in txt):
                return Fraction(txt)
            return Fraction(txt) if "e" not in txt.lower() else float(txt)
        except (ValueError, ZeroDivisionError):
            try:
                return float(txt)
            except ValueError:
                raise ConfigError(f"{key} = {txt!r} is not a number", self.path, e.line) from None

    def get_int(self, sect, key, default=None, required=False):
        e = self._entry(sect, key, None, required)
        if e is None:
            return default
        try:
            return int(e.value)
        except ValueError:
            raise ConfigError(f"{key} = {e.value!r} is not an integer", self.path, e.line) from None

    def get_expression(self, sect, key, required=False) -> Optional[Expression]:
        e = self._entry(sect, key, None, required)
        if e is None:
            return None
        try:
            return parse_expression(e.value)
        except ExpressionError as exc:
            raise ConfigError(
                f"bad expression for {key}: {exc.reason}", self.path, e.line, exc.column
            ) from None

    def get_float_list(self, sect, key, required=False):
        e = self._entry(sect, key, None, required)
        if e is None:
            return None
        try:
            return [float(tok) for tok in e.value.replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"{key} = {e.value!r} is not a number list", self.path, e.line) from None

    def get_pair_list(self, sect, key):
        e = self._entry(sect, key)
        if e is None:
            return None
        txt = e.value
        pairs = []
        try:
            chunks = [c.strip() for c in txt.replace("(", " ").split(")") if c.strip()]
            for c in chunks:
                a, b = [float(tok) for tok in c.replace(",", " ").split()]
                pairs.append((a, b))
        except ValueError:
            raise ConfigError(
                f"{key} must be a list of (rho, R) pairs, got {txt!r}", self.path, e.line
            ) from None
        return pairs


def parse_config(text: str, path: str = "<config>") -> ProblemConfig:
    sections: dict = {}
    top: dict = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise ConfigError(f"malformed section header {raw.strip()!r}", path, lineno)
            current = line[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError("empty key", path, lineno)
        entry = _Entry(value=value, line=lineno)
        if current is None:
            top[key] = entry
        else:
            if key in sections[current]:
                raise ConfigError(f"duplicate key {key!r} in [{current}]", path, lineno)
            sections[current][key] = entry
    return ProblemConfig(path=path, sections=sections, top=top)


def load_config(path) -> ProblemConfig:
    with open(path) as fh:
        return parse_config(fh.read(), path=str(path))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _coefficient(cfg: ProblemConfig, sect: str, key: str, required=True) -> Optional[Coefficient]:
    expr = cfg.get_expression(sect, key, required=required)
    if expr is None:
        return None
    lip = cfg.get_float(sect, f"{key}_lipschitz", default=0.0)
    return Coefficient(expr, lipschitz=lip, source=expr.source)


def build_family(cfg: ProblemConfig) -> IntegrandFamily:
    sect = cfg.require_section("family")
    kind = cfg.get_str("family", "kind", required=True)
    line = sect["kind"].line
    try:
        if kind == "p_laplacian":
            return PLaplacian(cfg.get_float("family", "p", required=True))
        if kind == "very_degenerate":
            return VeryDegenerate(cfg.get_float("family", "p", required=True))
        if kind == "exponential":
            return Exponential(
                _coefficient(cfg, "family", "a"), cfg.get_float("family", "tau", default=2.0)
            )
        if kind == "px_laplacian":
            return PxLaplacian(_coefficient(cfg, "family", "p_expr"))
        if kind == "log_px_laplacian":
            return LogPxLaplacian(_coefficient(cfg, "family", "p_expr"))
        if kind == "double_phase":
            return DoublePhase(
                cfg.get_float("family", "p", required=True),
                cfg.get_float("family", "q", required=True),
                _coefficient(cfg, "family", "a"),
            )
        if kind == "multi_phase":
            return MultiPhase(
                cfg.get_float("family", "p", required=True),
                cfg.get_float("family", "q", required=True),
                _coefficient(cfg, "family", "a"),
                cfg.get_float("family", "b", required=True),
            )
        if kind == "anisotropic":
            q = cfg.get_float("family", "q", required=True)
            if cfg.get_str("family", "base_p") is not None:
                p = cfg.get_float("family", "base_p")
                consts = None
                if cfg.get_str("family", "c1") is not None:
                    consts = (
                        cfg.get_float("family", "c1"),
                        cfg.get_float("family", "c2", required=True),
                        cfg.get_float("family", "c3", required=True),
                    )
                return Anisotropic(q, base_p=p, base_constants=consts)
            aij = (
                _coefficient(cfg, "family", "a11"),
                _coefficient(cfg, "family", "a12"),
                _coefficient(cfg, "family", "a22"),
            )
            return Anisotropic(q, aij=aij)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid family parameters: {exc}", cfg.path, line) from None
    raise ConfigError(f"unknown family kind {kind!r}", cfg.path, line)


def build_boundary(cfg: ProblemConfig):
    expr = cfg.get_expression("boundary", "expr", required=True)
    return lambda x, y: expr(x, y)


def build_grid_spec(cfg: ProblemConfig):
    side = cfg.get_float("grid", "side", required=True)
    n = cfg.get_int("grid", "n", required=True)
    x0 = cfg.get_float("grid", "x0", default=0.0)
    y0 = cfg.get_float("grid", "y0", default=0.0)
    return side, n, x0, y0


def build_ball(cfg: ProblemConfig):
    sect = cfg.require_section("ball")
    center = cfg.get_float_list("ball", "center", required=True)
    if len(center) != 2:
        raise ConfigError("ball center must be two numbers", cfg.path, sect["center"].line)
    rho = cfg.get_float("ball", "rho", required=True)
    R = cfg.get_float("ball", "R", required=True)
    if not 0 < rho < R:
        raise ConfigError(f"need 0 < rho < R, got rho={rho}, R={R}", cfg.path, sect["rho"].line)
    return (center[0], center[1]), rho, R


def build_solver_options(cfg: ProblemConfig, tolerance_override: Optional[float] = None) -> SolveOptions:
    tol = cfg.get_float("solver", "tolerance", default=1e-8)
    if tolerance_override is not None:
        tol = tolerance_override
    return SolveOptions(
        max_iter=cfg.get_int("solver", "max_iter", default=20000),
        tolerance=tol,
        c1=cfg.get_float("solver", "c1", default=1e-4),
        backtrack=cfg.get_float("solver", "backtrack", default=0.5),
        epsilon=cfg.get_float("solver", "epsilon", default=1e-8),
    )


def resolve_params(cfg: ProblemConfig, family: IntegrandFamily, ball: Ball):
    """ExponentParams from the [schedule] section: 'auto' per family kind,
    or explicit (alpha, beta, gamma, delta)."""
    mode = cfg.get_str("schedule", "mode", default="auto")
    n = cfg.get_int("schedule", "n", default=2)
    ts = cfg.get_number("schedule", "two_star", default=None)
    if mode == "explicit":
        alpha = cfg.get_number("schedule", "alpha", required=True)
        gamma = cfg.get_number("schedule", "gamma", default=None)
        delta = cfg.get_number("schedule", "delta", default=None)
        if gamma is None and delta is None:
            gamma, delta = Fraction(1), Fraction(0)
        elif gamma is None:
            gamma = 1 + delta
        elif delta is None:
            delta = gamma - 1
        beta = cfg.get_number("schedule", "beta", required=True)
        ctx = sobolev_context(n, ts, alpha=alpha, gamma=gamma)
        theta = cfg.get_number("schedule", "theta", default=None)
        return ExponentParams(alpha, beta, gamma, delta, ctx, theta=theta)
    if mode != "auto":
        raise ConfigError(f"schedule mode must be auto or explicit, got {mode!r}", cfg.path, 0)
    omega = cfg.get_number("schedule", "omega", default=Fraction(1, 100))
    if isinstance(family, PLaplacian) or isinstance(family, VeryDegenerate):
        return default_params(n, cfg.get_number("schedule", "alpha", default=Fraction(2)),
                              cfg.get_number("schedule", "delta", default=Fraction(0)), ts)
    if isinstance(family, Anisotropic):
        p = Fraction(family.p).limit_denominator(10**9)
        q = Fraction(family.q).limit_denominator(10**9)
        return anisotropic_params(p, q, n, ts)
    if isinstance(family, MultiPhase):
        p = Fraction(family.p).limit_denominator(10**9)
        q = Fraction(family.q).limit_denominator(10**9)
        return double_phase_params(p, q, n, ts, third_phase=True)
    if isinstance(family, DoublePhase):
        p = Fraction(family.p).limit_denominator(10**9)
        q = Fraction(family.q).limit_denominator(10**9)
        return double_phase_params(p, q, n, ts)
    if isinstance(family, Exponential):
        lo, hi = family.a.range_on_ball(ball)
        return auto_exponential_params(
            Fraction(lo).limit_denominator(10**9), Fraction(hi).limit_denominator(10**9), n, ts
        )
    if isinstance(family, PxLaplacian):
        lo, hi = family.pfun.range_on_ball(ball)
        return auto_px_params(
            Fraction(lo).limit_denominator(10**9),
            Fraction(hi).limit_denominator(10**9),
            n,
            omega,
            ts,
        )
    if isinstance(family, LogPxLaplacian):
        return ParamRejection(
            "resolve_params",
            "no certified auto recipe for the log-variant exponent class; "
            "supply an explicit schedule",
        )
    raise ConfigError(f"no auto schedule for family kind {family.kind!r}", cfg.path, 0)


@dataclass
class ResolvedSchedule:
    """Either a full schedule or params whose iteration machinery degenerates."""

    params: ExponentParams
    schedule: Optional[MoserSchedule]
    degenerate_reason: Optional[str] = None


def resolve_schedule(cfg: ProblemConfig, family: IntegrandFamily, ball: Ball):
    """MoserSchedule (or ParamRejection / degenerate ResolvedSchedule)."""
    params = resolve_params(cfg, family, ball)
    if is_rejected(params):
        return params
    K = cfg.get_int("schedule", "K", default=8)
    nu_cfg = cfg.get_number("schedule", "nu", default=None)
    mu_txt = cfg.get_str("schedule", "mu", default=None)
    if mu_txt is not None and mu_txt.lower() in ("unbounded", "inf", "infinity"):
        pair = (nu_cfg if nu_cfg is not None else Fraction(1), MU_UNBOUNDED)
    elif mu_txt is not None:
        pair = (nu_cfg if nu_cfg is not None else Fraction(1), cfg.get_number("schedule", "mu"))
    else:
        pair = select_mu_nu(params, nu=nu_cfg)
    if is_rejected(pair):
        return ResolvedSchedule(params=params, schedule=None, degenerate_reason=pair.describe())
    nu, mu = pair
    try:
        sched = moser_exponents(params, nu, mu, K=K)
    except (ValueError, ArithmeticError) as exc:
        return ResolvedSchedule(params=params, schedule=None, degenerate_reason=str(exc))
    return ResolvedSchedule(params=params, schedule=sched)
