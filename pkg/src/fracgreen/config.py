"""Run configuration: flat key-value files with [table] blocks.

Grammar (documented in the README):
  - `[name]` opens a block; keys before any block land in the "" block
  - `key = value` with value one of: integer, float, true/false,
    "quoted string", or a bracketed list of numbers `[1, 2.5, 3]`
  - `#` starts a comment; blank lines are ignored
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .params import ProblemParams, sharp_hardy_constant, theta_of_gamma
from .quadrature import QuadratureSpec


class ConfigError(ValueError):
    """Malformed configuration file or inconsistent settings."""


def _parse_scalar(tok: str):
    tok = tok.strip()
    if tok.lower() in ("true", "false"):
        return tok.lower() == "true"
    if len(tok) >= 2 and tok[0] == '"' and tok[-1] == '"':
        return tok[1:-1]
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        raise ConfigError(f"cannot parse value {tok!r}")


def parse_config_text(text: str) -> dict:
    blocks: dict[str, dict] = {"": {}}
    current = blocks[""]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: empty block name")
            current = blocks.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if val.startswith("[") and val.endswith("]"):
            inner = val[1:-1].strip()
            items = [t for t in inner.split(",") if t.strip()]
            current[key] = [_parse_scalar(t) for t in items]
        else:
            current[key] = _parse_scalar(val)
    return blocks


def load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


@dataclass
class RunConfig:
    """Validated settings for one CLI invocation."""

    dim: int = 3
    order: float = 0.5
    theta: float | None = None
    gamma: float | None = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    seed: int = 20250811
    fmt: str = "csv"
    out: str | None = None
    blocks: dict = field(default_factory=dict)

    @classmethod
    def from_blocks(cls, blocks: dict) -> "RunConfig":
        cfg = cls(blocks=blocks)
        p = {**blocks.get("", {}), **blocks.get("params", {})}
        if "N" in p:
            cfg.dim = int(p["N"])
        if "s" in p:
            cfg.order = float(p["s"])
        if "theta" in p:
            cfg.theta = float(p["theta"])
        if "gamma" in p:
            cfg.gamma = float(p["gamma"])
        q = blocks.get("quadrature", {})
        try:
            cfg.quad = QuadratureSpec(
                inner_radius=float(q.get("inner_radius", 1e-3)),
                outer_radius=float(q.get("outer_radius", 1e3)),
                max_depth=int(q.get("max_depth", 30)),
                rel_tol=float(q.get("rel_tol", 1e-7)),
                angular_order=int(q.get("angular_order", 16)),
            )
        except DomainError as ex:
            raise ConfigError(str(ex))
        o = blocks.get("output", {})
        if "format" in o:
            cfg.fmt = str(o["format"])
        if "path" in o:
            cfg.out = str(o["path"])
        if "seed" in o:
            cfg.seed = int(o["seed"])
        cfg.validate()
        return cfg

    def validate(self):
        if self.dim < 1:
            raise ConfigError(f"N={self.dim} must be a positive integer")
        if not 0.0 < self.order < 1.0:
            raise ConfigError(f"s={self.order} must lie in (0,1)")
        if self.dim <= 2 * self.order:
            raise ConfigError(f"need N > 2s, got N={self.dim}, s={self.order}")
        lam = sharp_hardy_constant(self.dim, self.order)
        if self.theta is not None and not 0.0 < self.theta < lam:
            raise ConfigError(
                f"theta={self.theta} must lie in (0, Lambda) with "
                f"Lambda(N={self.dim}, s={self.order}) = {lam:.12g}")
        half = (self.dim - 2.0 * self.order) / 2.0
        if self.gamma is not None and not 0.0 < self.gamma < half:
            raise ConfigError(
                f"gamma={self.gamma} must lie in (0, (N-2s)/2 = {half:.12g})")
        if self.theta is not None and self.gamma is not None:
            implied = theta_of_gamma(self.gamma, self.dim, self.order)
            if abs(implied - self.theta) > 1e-8 * lam:
                raise ConfigError(
                    f"theta={self.theta} and gamma={self.gamma} disagree "
                    f"(gamma implies theta={implied:.12g})")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format={self.fmt!r} must be csv or json")

    def params(self, default_gamma: float | None = None) -> ProblemParams:
        """Problem parameters; theta wins over gamma when both given."""
        if self.theta is not None:
            return ProblemParams.from_theta(self.dim, self.order, self.theta)
        if self.gamma is not None:
            return ProblemParams.from_gamma(self.dim, self.order, self.gamma)
        if default_gamma is not None:
            half = (self.dim - 2.0 * self.order) / 2.0
            return ProblemParams.from_gamma(self.dim, self.order,
                                            default_gamma * half)
        raise ConfigError("needs --theta or --gamma")
