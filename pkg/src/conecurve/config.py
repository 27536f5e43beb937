from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Config:
    tolerance: float = DEFAULT_TOL
    max_depth: int = 32
    max_expansions: int = 1_000_000
    samples: int = 64
    svg_scale: float = 100.0

    def __post_init__(self):
        if not (0 < self.tolerance < 1e-3):
            raise ValueError("tolerance must lie in (0, 1e-3)")
        if self.max_depth <= 0 or self.max_expansions <= 0 or self.samples <= 0 or self.svg_scale <= 0:
            raise ValueError("config values must be positive")

    @classmethod
    def load(cls, path=None, env=None) -> "Config":
        """Defaults, then ``--config`` file, then the CONECURVE_TOL override."""
        env = os.environ if env is None else env
        cfg = cls()
        if path:
            with open(path) as fh:
                data = json.load(fh)
            unknown = set(data) - set(asdict(cfg))
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
            cfg = replace(cfg, **data)
        if env.get("CONECURVE_TOL"):
            cfg = replace(cfg, tolerance=float(env["CONECURVE_TOL"]))
        return cfg
