"""
Self-verification suite behind the `verify` command.

Each check evaluates the same quantity along two independent paths (closed
form vs matrix, series vs quadrature, ...) over a parameter set and
compares the worst disagreement with a fixed tolerance. The `quick` level
uses small graphs; `full` covers every size and parameter listed below.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.export.csv_exporter import render_csv
from src.walkzeta.lattice.walks import ctqw_pmf, ctrw_pmf, kernel, pde_residual
from src.walkzeta.linalg.dense import matrix_power_trace
from src.walkzeta.linalg.evolution import XI_CLASSICAL, XI_QUANTUM, EvolutionParams, evolution_matrix
from src.walkzeta.services.sweep import GraphSource, Model, SweepConfig, SweepRunner
from src.walkzeta.spectra.graphs import TorusSpec, build_torus_transition
from src.walkzeta.spectra.spectrum import hermitian_eigenvalues, torus_spectrum
from src.walkzeta.special.bessel import bessel_i, bessel_j
from src.walkzeta.zeta.engine import ctm_coeff, ctm_zeta_inverse_determinant, ctm_zeta_inverse_spectral, log_zeta_series
from src.walkzeta.zeta.torus import (
    dtrw_return_probability,
    torus_coeff_finite,
    torus_coeff_limit_bessel,
    torus_dtm_coeff_finite,
)

logger = logging.getLogger("walkzeta")

LEVELS = ("quick", "full")

XI_ENDPOINTS = (XI_CLASSICAL, XI_QUANTUM)
XI_SET = (XI_CLASSICAL, math.pi / 4, XI_QUANTUM)
U_SET = (0.3, 0.5j, -0.25 + 0.25j)

ProgressCallback = Callable[[str, Optional[str]], None]


@dataclass
class CheckResult:
    name: str
    description: str
    passed: bool
    worst_error: float
    tolerance: float
    cases: int
    detail: str = ""

    def to_dict(self) -> Dict:
        return asdict(self)


def _result(name: str, description: str, errors: Sequence[float], tolerance: float) -> CheckResult:
    worst = float(max(errors)) if errors else 0.0
    passed = bool(errors) and math.isfinite(worst) and worst <= tolerance
    return CheckResult(name, description, passed, worst, tolerance, len(errors))


def _i_power(x: int) -> complex:
    return (1, 1j, -1, -1j)[x % 4]


class Verifier:
    """
    Runs the verification checks for a level.

    Args:
        level: "quick" or "full".
    """

    def __init__(self, level: str = "quick"):
        if level not in LEVELS:
            raise ValueError(f"Unknown verification level {level!r}, expected one of {LEVELS}")
        self.level = level

    @property
    def full(self) -> bool:
        return self.level == "full"

    def _tori(self, quick: Sequence[Tuple[int, int]], extra: Sequence[Tuple[int, int]]) -> List[TorusSpec]:
        specs = list(quick) + (list(extra) if self.full else [])
        return [TorusSpec(d, n) for d, n in specs]

    def checks(self) -> List[Tuple[str, str, Callable[[], CheckResult]]]:
        return [
            ("jacobi_spectrum", "Jacobi eigenvalues match the torus closed form", self.check_jacobi_spectrum),
            ("oracle_triangle", "det(I - uM) equals exp(n log zeta^-1)", self.check_oracle_triangle),
            ("coefficient_triple", "Closed form, trace and grid coefficients agree", self.check_coefficient_triple),
            ("series_identity", "-log zeta^-1 equals the log series to r = 60", self.check_series_identity),
            ("bessel_limit", "Grid coefficient at N = 128 matches the Bessel limit", self.check_bessel_limit),
            ("dtrw_return", "DTRW return probabilities from the grid", self.check_dtrw_return),
            ("evolution_endpoints", "Unitary at xi = pi/2, stochastic at xi = 0", self.check_evolution_endpoints),
            ("lattice_conservation", "CTRW and CTQW distributions sum to 1", self.check_lattice_conservation),
            ("pde_residual", "Kernel satisfies the evolution equation", self.check_pde_residual),
            ("pde_order", "Central-difference residual shrinks by about 4 when h halves", self.check_pde_order),
            ("kernel_origin", "Kernel at the origin equals the d = 1, r = 1 limit", self.check_kernel_origin),
            ("rotation_identity", "I_x(it) = i^x J_x(t)", self.check_rotation_identity),
            ("output_determinism", "Repeated coefficient sweeps give identical CSV", self.check_output_determinism),
        ]

    def run(self, callback: Optional[ProgressCallback] = None) -> List[CheckResult]:
        results = []
        for name, description, check in self.checks():
            if callback:
                callback("verify", f"Checking {name}...")
            try:
                result = check()
            except Exception as e:
                logger.error(f"Check {name} raised: {e}")
                result = CheckResult(name, description, False, float("nan"), float("nan"), 0, f"{type(e).__name__}: {e}")
            logger.debug(f"{name}: worst {result.worst_error:.3e} over {result.cases} cases")
            results.append(result)
            if callback:
                callback("verify", None)
        return results

    # Checks

    def check_jacobi_spectrum(self) -> CheckResult:
        errors = []
        for spec in self._tori([(1, 5), (2, 3), (1, 16), (2, 4)], [(3, 4), (2, 8), (1, 64), (4, 3)]):
            jacobi = hermitian_eigenvalues(build_torus_transition(spec)).values.real
            closed = np.sort(torus_spectrum(spec).values.real)[::-1]
            errors.append(float(np.max(np.abs(jacobi - closed))))
        return _result("jacobi_spectrum", "Jacobi eigenvalues match the torus closed form", errors, 1e-10)

    def check_oracle_triangle(self) -> CheckResult:
        errors = []
        t_values = (0.0, 0.5, 2.0)
        for spec in self._tori([(1, 4), (2, 4), (1, 64)], [(2, 16), (3, 8)]):
            p = build_torus_transition(spec)
            s = torus_spectrum(spec)
            for xi in XI_SET:
                for t in t_values:
                    params = EvolutionParams(xi, t)
                    for u in U_SET:
                        det = ctm_zeta_inverse_determinant(p, params, u)
                        power = ctm_zeta_inverse_spectral(s, params, u).power(p.n)
                        errors.append(abs(det - power) / (1.0 + abs(det)))
        return _result("oracle_triangle", "det(I - uM) equals exp(n log zeta^-1)", errors, 1e-8)

    def check_coefficient_triple(self) -> CheckResult:
        errors = []
        for spec in self._tori([(1, 8), (2, 4)], [(1, 16), (3, 3), (2, 6)]):
            p = build_torus_transition(spec)
            s = torus_spectrum(spec)
            for xi in XI_SET:
                for t in (0.5, 2.0):
                    params = EvolutionParams(xi, t)
                    m = evolution_matrix(p, params)
                    for r in range(1, 7):
                        closed = ctm_coeff(s, params, r).c
                        trace = matrix_power_trace(m, r) / p.n
                        grid = torus_coeff_finite(spec, params, r).c
                        errors.append(max(abs(closed - trace), abs(closed - grid)))
        return _result("coefficient_triple", "Closed form, trace and grid coefficients agree", errors, 1e-9)

    def check_series_identity(self) -> CheckResult:
        errors = []
        s = torus_spectrum(TorusSpec(1, 8))
        u_values = U_SET + ((0.5, -0.5j, 0.35 + 0.35j) if self.full else ())
        for xi in XI_SET:
            for t in (0.5, 2.0):
                params = EvolutionParams(xi, t)
                for u in u_values:
                    log_value = ctm_zeta_inverse_spectral(s, params, u).log_zeta_inverse
                    errors.append(abs(-log_value - log_zeta_series(s, params, u, 60)))
        return _result("series_identity", "-log zeta^-1 equals the log series to r = 60", errors, 1e-10)

    def check_bessel_limit(self) -> CheckResult:
        errors = []
        dims = (1, 2, 3) if self.full else (1, 2)
        pairs = [(r, t) for r in (1, 2, 5) for t in (0.5, 1.0, 2.0) if r * t <= 10]
        for d in dims:
            spec = TorusSpec(d, 128)
            for xi in XI_ENDPOINTS:
                for r, t in pairs:
                    params = EvolutionParams(xi, t)
                    grid = torus_coeff_finite(spec, params, r).c
                    closed = torus_coeff_limit_bessel(d, params, r).c
                    errors.append(abs(grid - closed))
        return _result("bessel_limit", "Grid coefficient at N = 128 matches the Bessel limit", errors, 1e-10)

    def check_dtrw_return(self) -> CheckResult:
        # Errors are reported as multiples of each case's own tolerance.
        errors = []
        line = TorusSpec(1, 128)
        plane = TorusSpec(2, 128)
        r_max = 20 if self.full else 10
        for r in range(1, r_max + 1):
            exact = dtrw_return_probability(1, r)
            grid = torus_dtm_coeff_finite(line, r).c
            if r % 2:
                errors.append(abs(grid) / 1e-15)
            else:
                errors.append(abs(grid - exact) / 1e-13)
            plane_grid = torus_dtm_coeff_finite(plane, r).c
            errors.append(abs(plane_grid - exact * exact) / 1e-12)
        return _result("dtrw_return", "DTRW return probabilities from the grid", errors, 1.0)

    def check_evolution_endpoints(self) -> CheckResult:
        errors = []
        for spec in self._tori([(1, 4), (2, 4), (1, 8)], [(2, 8), (3, 4), (1, 32)]):
            p = build_torus_transition(spec)
            identity = np.eye(p.n)
            for t in (0.5, 2.0):
                unitary = evolution_matrix(p, EvolutionParams.quantum(t))
                errors.append(float(np.max(np.abs(unitary.conj().T @ unitary - identity))) / 1e-10)
                stochastic = evolution_matrix(p, EvolutionParams.classical(t))
                column_error = float(np.max(np.abs(stochastic.sum(axis=0) - 1.0))) / 1e-12
                negativity = max(0.0, -float(np.min(stochastic.real))) / 1e-14
                errors.append(max(column_error, negativity))
        return _result("evolution_endpoints", "Unitary at xi = pi/2, stochastic at xi = 0", errors, 1.0)

    def check_lattice_conservation(self) -> CheckResult:
        errors = []
        sites = range(-80, 81)
        for t in (0.5, 1.0, 2.0, 5.0, 10.0):
            errors.append(abs(1.0 - math.fsum(ctrw_pmf(t, x) for x in sites)))
            errors.append(abs(1.0 - math.fsum(ctqw_pmf(t, x) for x in sites)))
        return _result("lattice_conservation", "CTRW and CTQW distributions sum to 1", errors, 1e-10)

    def check_pde_residual(self) -> CheckResult:
        errors = [pde_residual(EvolutionParams(xi, 1.0), 1.0, 1e-3) for xi in XI_SET]
        return _result("pde_residual", "Kernel satisfies the evolution equation", errors, 1e-6)

    def check_pde_order(self) -> CheckResult:
        errors = []
        for xi in XI_SET:
            params = EvolutionParams(xi, 1.0)
            ratio = pde_residual(params, 1.0, 1e-3) / pde_residual(params, 1.0, 5e-4)
            errors.append(abs(ratio - 4.0))
        return _result("pde_order", "Central-difference residual shrinks by about 4 when h halves", errors, 1.0)

    def check_kernel_origin(self) -> CheckResult:
        errors = []
        for xi in XI_SET:
            for t in (0.5, 1.0, 2.0):
                params = EvolutionParams(xi, t)
                errors.append(abs(kernel(params).value_at(0) - torus_coeff_limit_bessel(1, params, 1).c))
        return _result("kernel_origin", "Kernel at the origin equals the d = 1, r = 1 limit", errors, 1e-12)

    def check_rotation_identity(self) -> CheckResult:
        errors = []
        for t in (0.5, 1.0, 2.0, 5.0):
            for x in range(-20, 21):
                errors.append(abs(bessel_i(x, 1j * t) - _i_power(x) * bessel_j(x, t)))
        return _result("rotation_identity", "I_x(it) = i^x J_x(t)", errors, 1e-11)

    def check_output_determinism(self) -> CheckResult:
        config = SweepConfig(
            model=Model.CTM,
            graph=GraphSource(torus=TorusSpec(1, 16)),
            xi_list=XI_SET,
            t_list=(0.5, 1.0),
            r_list=(1, 2, 3),
        )
        first = render_csv(SweepRunner(config).coeff_table())
        second = render_csv(SweepRunner(config).coeff_table())
        return _result("output_determinism", "Repeated coefficient sweeps give identical CSV",
                       [0.0 if first == second else 1.0], 0.0)
