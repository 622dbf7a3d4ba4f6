"""
Parameter sweeps behind the `spectrum`, `zeta`, `coeff` and `walk` commands.

A sweep evaluates one table row per parameter combination, in config
order. A row that raises a library error becomes an error row and the
sweep carries on; `SweepRunner.failed` records that it happened.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.walkzeta.errors import ParameterError, UnsupportedError, WalkZetaError
from src.walkzeta.lattice.walks import LatticeState, ctqw_pmf, ctrw_pmf, kernel
from src.walkzeta.linalg.dense import matrix_power_trace
from src.walkzeta.linalg.evolution import XI_CLASSICAL, XI_QUANTUM, EvolutionParams, evolution_matrix
from src.walkzeta.spectra.graphs import TorusSpec, TransitionMatrix, build_torus_transition
from src.walkzeta.spectra.matrix_io import read_matrix_csv
from src.walkzeta.spectra.spectrum import Spectrum, hermitian_eigenvalues, torus_spectrum
from src.walkzeta.zeta.engine import (
    ctm_coeff,
    ctm_zeta_inverse_determinant,
    ctm_zeta_inverse_spectral,
    dtm_coeff,
    dtm_zeta_inverse,
    dtm_zeta_inverse_determinant,
)
from src.walkzeta.zeta.torus import (
    DEFAULT_LIMIT_GRID,
    dtrw_return_estimate,
    torus_coeff_finite,
    torus_coeff_limit_bessel,
    torus_coeff_limit_quadrature,
    torus_dtm_coeff_finite,
    torus_dtm_zeta_inverse_finite,
    torus_dtm_zeta_inverse_limit,
    torus_zeta_inverse_finite,
    torus_zeta_inverse_limit,
)
from src.walkzeta.zeta.values import ZetaValue, validate_index

logger = logging.getLogger("walkzeta")

ProgressCallback = Callable[[str, Optional[str]], None]

XI_TOKENS = {"classical": XI_CLASSICAL, "quantum": XI_QUANTUM}

SPECTRUM_COLUMNS = ["index", "re", "im"]
ZETA_COLUMNS = [
    "model", "graph", "xi", "t", "u_re", "u_im", "method",
    "log_zeta_inverse_re", "log_zeta_inverse_im", "zeta_inverse_re", "zeta_inverse_im",
    "uncertainty", "det_re", "det_im", "det_residual", "error",
]
COEFF_COLUMNS = [
    "model", "graph", "xi", "t", "r", "c_re", "c_im",
    "limit_re", "limit_im", "limit_uncertainty", "bessel_re", "bessel_im",
    "trace_re", "trace_im", "error",
]
WALK_COLUMNS = ["site", "re", "im", "probability"]

NAN = float("nan")


class Model(str, Enum):
    CTM = "ctm"
    DTM = "dtm"


class WalkKind(str, Enum):
    CTRW = "ctrw"
    CTQW = "ctqw"
    KERNEL = "kernel"


# Parsing of CLI lists

def _split(text: str, sep: str = ",") -> List[str]:
    items = [item.strip() for item in text.split(sep)]
    if not text.strip() or any(not item for item in items):
        raise ParameterError(f"Empty entry in list {text!r}")
    return items


def parse_float_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in _split(text)]
    except ValueError:
        raise ParameterError(f"Expected comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in values):
        raise ParameterError(f"Values must be finite, got {text!r}")
    return values


def parse_xi_list(text: str) -> List[float]:
    """Radians, or the tokens `classical` (0) and `quantum` (pi/2)."""
    values = []
    for item in _split(text):
        token = item.lower()
        if token in XI_TOKENS:
            values.append(XI_TOKENS[token])
            continue
        try:
            values.append(float(item))
        except ValueError:
            raise ParameterError(f"xi must be a number or one of {sorted(XI_TOKENS)}, got {item!r}")
    return values


def parse_u_list(text: str) -> List[complex]:
    """Semicolon-separated points, each `re` or `re,im`."""
    values = []
    for item in _split(text, ";"):
        parts = _split(item)
        if len(parts) > 2:
            raise ParameterError(f"u must be given as 're,im', got {item!r}")
        try:
            re = float(parts[0])
            im = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise ParameterError(f"u must be given as 're,im', got {item!r}")
        values.append(complex(re, im))
    return values


def parse_r_list(text: str) -> List[int]:
    values = []
    for item in _split(text):
        try:
            values.append(validate_index(int(item)))
        except ValueError:
            raise ParameterError(f"r must be a positive integer, got {item!r}")
    return values


@dataclass(frozen=True)
class GraphSource:
    """Either a torus T^d_N or a transition matrix file; exactly one is set."""
    torus: Optional[TorusSpec] = None
    matrix_path: Optional[Path] = None

    def __post_init__(self):
        if (self.torus is None) == (self.matrix_path is None):
            raise ParameterError("Give exactly one of --torus and --matrix")

    @property
    def label(self) -> str:
        if self.torus is not None:
            return f"torus({self.torus.d},{self.torus.N})"
        return f"matrix({self.matrix_path})"

    @property
    def vertex_count(self) -> Optional[int]:
        return self.torus.vertex_count if self.torus is not None else None


@dataclass(frozen=True)
class SweepConfig:
    model: Model
    graph: GraphSource
    xi_list: Sequence[float] = (0.0,)
    t_list: Sequence[float] = (1.0,)
    u_list: Sequence[complex] = (0.0,)
    r_list: Sequence[int] = (1,)
    limit: Optional[int] = None
    grid: int = DEFAULT_LIMIT_GRID
    output_format: str = "csv"
    output_path: Optional[Path] = None

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        for name in ("xi_list", "t_list", "u_list", "r_list"):
            values = tuple(getattr(self, name))
            if not values:
                raise ParameterError(f"{name} must not be empty")
            object.__setattr__(self, name, values)
        if self.limit is not None and self.graph.torus is None:
            raise ParameterError("A limit grid needs a torus graph")
        if self.output_format not in ("csv", "json"):
            raise ParameterError(f"Unknown output format {self.output_format!r}")

    @property
    def quadrature_grid(self) -> int:
        return self.limit if self.limit is not None else self.grid


def _split_complex(prefix: str, value: Optional[complex]) -> Dict[str, float]:
    if value is None:
        return {f"{prefix}_re": NAN, f"{prefix}_im": NAN}
    value = complex(value)
    return {f"{prefix}_re": value.real, f"{prefix}_im": value.imag}


class SweepRunner:
    """
    Evaluates sweep tables for one graph.

    Args:
        config: The sweep parameters.
        determinant_vertices: Largest vertex count for which the
            determinant and trace cross-checks also run.
    """

    def __init__(self, config: SweepConfig, determinant_vertices: int = 512):
        self.config = config
        self.determinant_vertices = determinant_vertices
        self.failed = False
        self._matrix: Optional[TransitionMatrix] = None
        self._spectrum: Optional[Spectrum] = None
        self._evolution: Dict[Tuple[float, float], np.ndarray] = {}

    # Graph data, loaded lazily

    @property
    def graph(self) -> GraphSource:
        return self.config.graph

    def matrix(self) -> TransitionMatrix:
        if self._matrix is None:
            if self.graph.torus is not None:
                self._matrix = build_torus_transition(self.graph.torus)
            else:
                self._matrix = read_matrix_csv(self.graph.matrix_path)
        return self._matrix

    def spectrum(self) -> Spectrum:
        """
        Raises:
            UnsupportedError: For a non-symmetric matrix file.
        """
        if self._spectrum is None:
            if self.graph.torus is not None:
                self._spectrum = torus_spectrum(self.graph.torus)
            else:
                m = self.matrix()
                if not m.is_symmetric:
                    raise UnsupportedError("Spectrum of a non-symmetric matrix is not computed")
                self._spectrum = hermitian_eigenvalues(m)
        return self._spectrum

    def vertex_count(self) -> int:
        n = self.graph.vertex_count
        return n if n is not None else self.matrix().n

    def _cross_check(self) -> bool:
        return self.vertex_count() <= self.determinant_vertices

    def _has_spectrum(self) -> bool:
        return self.graph.torus is not None or self.matrix().is_symmetric

    def _evolution_matrix(self, params: EvolutionParams) -> np.ndarray:
        key = (params.xi, params.t)
        if key not in self._evolution:
            self._evolution[key] = evolution_matrix(self.matrix(), params)
        return self._evolution[key]

    def _row(self, base: Dict[str, Any], columns: List[str], compute: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        row = {column: NAN for column in columns}
        row.update(base)
        row["error"] = ""
        try:
            row.update(compute())
        except WalkZetaError as e:
            self.failed = True
            row["error"] = f"{type(e).__name__}: {e}"
            logger.warning(f"Row {base} failed: {e}")
        return row

    @staticmethod
    def _advance(callback: Optional[ProgressCallback], step: str) -> None:
        if callback:
            callback(step, None)

    # Tables

    def spectrum_table(self) -> pd.DataFrame:
        values = self.spectrum().values
        return pd.DataFrame(
            {"index": np.arange(values.size), "re": values.real, "im": values.imag},
            columns=SPECTRUM_COLUMNS,
        )

    def zeta_points(self) -> List[Tuple[float, float, complex]]:
        c = self.config
        if c.model is Model.DTM:
            return [(NAN, NAN, u) for u in c.u_list]
        return list(itertools.product(c.xi_list, c.t_list, c.u_list))

    def coeff_points(self) -> List[Tuple[float, float, int]]:
        c = self.config
        if c.model is Model.DTM:
            return [(NAN, NAN, r) for r in c.r_list]
        return list(itertools.product(c.xi_list, c.t_list, c.r_list))

    def zeta_table(self, callback: Optional[ProgressCallback] = None) -> pd.DataFrame:
        rows = []
        for xi, t, u in self.zeta_points():
            base = {"model": self.config.model.value, "graph": self.graph.label, "xi": xi, "t": t}
            base.update(_split_complex("u", u))
            rows.append(self._row(base, ZETA_COLUMNS, lambda: self._zeta_row(xi, t, u)))
            self._advance(callback, "zeta")
        return pd.DataFrame(rows, columns=ZETA_COLUMNS)

    def _zeta_row(self, xi: float, t: float, u: complex) -> Dict[str, Any]:
        c = self.config
        ctm = c.model is Model.CTM
        params = EvolutionParams(xi, t) if ctm else None
        torus = self.graph.torus

        value: Optional[ZetaValue] = None
        if c.limit is not None:
            method = "limit-quadrature"
            if ctm:
                value = torus_zeta_inverse_limit(torus.d, params, u, c.limit)
            else:
                value = torus_dtm_zeta_inverse_limit(torus.d, u, c.limit)
        elif torus is not None:
            method = "torus-grid"
            if ctm:
                value = torus_zeta_inverse_finite(torus, params, u)
            else:
                value = torus_dtm_zeta_inverse_finite(torus, u)
        elif self._has_spectrum():
            method = "spectral"
            if ctm:
                value = ctm_zeta_inverse_spectral(self.spectrum(), params, u)
            else:
                value = dtm_zeta_inverse(self.spectrum(), u)
        else:
            method = "determinant"

        out: Dict[str, Any] = {"method": method}
        if value is not None:
            out.update(_split_complex("log_zeta_inverse", value.log_zeta_inverse))
            out.update(_split_complex("zeta_inverse", value.zeta_inverse))
            if value.uncertainty is not None:
                out["uncertainty"] = value.uncertainty

        if c.limit is None and self._cross_check():
            if ctm:
                det = ctm_zeta_inverse_determinant(self.matrix(), params, u)
            else:
                det = dtm_zeta_inverse_determinant(self.matrix(), u)
            out.update(_split_complex("det", det))
            if value is not None:
                out["det_residual"] = abs(det - value.power(self.vertex_count())) / (1.0 + abs(det))
        elif value is None:
            raise UnsupportedError(
                f"Non-symmetric matrix with {self.vertex_count()} vertices is above the "
                f"determinant limit {self.determinant_vertices}"
            )
        return out

    def coeff_table(self, callback: Optional[ProgressCallback] = None) -> pd.DataFrame:
        rows = []
        for xi, t, r in self.coeff_points():
            base = {"model": self.config.model.value, "graph": self.graph.label, "xi": xi, "t": t, "r": r}
            rows.append(self._row(base, COEFF_COLUMNS, lambda: self._coeff_row(xi, t, r)))
            self._advance(callback, "coeff")
        return pd.DataFrame(rows, columns=COEFF_COLUMNS)

    def _optional(self, label: str, compute: Callable[[], Any]) -> Any:
        # Side columns that fall outside their own envelope are left empty.
        try:
            return compute()
        except WalkZetaError as e:
            logger.warning(f"{label} unavailable: {e}")
            return None

    def _coeff_row(self, xi: float, t: float, r: int) -> Dict[str, Any]:
        c = self.config
        ctm = c.model is Model.CTM
        params = EvolutionParams(xi, t) if ctm else None
        torus = self.graph.torus
        out: Dict[str, Any] = {}

        trace = None
        if self._cross_check():
            m = self._evolution_matrix(params) if ctm else self.matrix().entries
            trace = matrix_power_trace(m, r) / self.vertex_count()
            out.update(_split_complex("trace", trace))

        if torus is not None:
            finite = torus_coeff_finite(torus, params, r) if ctm else torus_dtm_coeff_finite(torus, r)
        elif self._has_spectrum():
            finite = ctm_coeff(self.spectrum(), params, r) if ctm else dtm_coeff(self.spectrum(), r)
        elif trace is not None:
            finite = None
            out.update(_split_complex("c", trace))
        else:
            raise UnsupportedError(
                f"Non-symmetric matrix with {self.vertex_count()} vertices is above the "
                f"determinant limit {self.determinant_vertices}"
            )
        if finite is not None:
            out.update(_split_complex("c", finite.c))

        if torus is not None:
            grid = c.quadrature_grid
            if ctm:
                limit = self._optional("limit quadrature", lambda: torus_coeff_limit_quadrature(torus.d, params, r, grid))
                bessel = self._optional("Bessel closed form", lambda: torus_coeff_limit_bessel(torus.d, params, r))
                if bessel is not None:
                    out.update(_split_complex("bessel", bessel.c))
            else:
                limit = self._optional("return probability", lambda: dtrw_return_estimate(torus.d, r, grid))
            if limit is not None:
                out.update(_split_complex("limit", limit.c))
                out["limit_uncertainty"] = limit.uncertainty
        return out

    @staticmethod
    def walk_table(kind: WalkKind, xi: float, t: float, radius: int) -> pd.DataFrame:
        """
        ctrw and ctqw tabulate P(S_t = x) and P(X_t = x) for |x| <= radius;
        kernel tabulates g_{e^{i xi} t}, widening the radius as needed.
        Exact zeros at both ends are dropped.
        """
        kind = WalkKind(kind)
        if kind is WalkKind.KERNEL:
            state = kernel(EvolutionParams(xi, t), radius).as_state().trimmed()
            probability = [NAN] * state.values.size
        else:
            pmf = ctrw_pmf if kind is WalkKind.CTRW else ctqw_pmf
            sites = range(-radius, radius + 1)
            state = LatticeState(-radius, [pmf(t, x) for x in sites]).trimmed()
            probability = state.values.real
        return pd.DataFrame(
            {
                "site": state.sites,
                "re": state.values.real,
                "im": state.values.imag,
                "probability": probability,
            },
            columns=WALK_COLUMNS,
        )
