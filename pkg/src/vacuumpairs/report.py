"""Reproduction report: recompute every headline quantity and compare it
against the published reference values, with one versioned tolerance table.

Rows with a reference and tolerance gate the exit status of the ``report``
CLI command; informational rows record quantities whose quoted values are
known not to follow from the formulas here (they are listed, not asserted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import dispersion, statmech, vacuum_response
from .constants import CODATA
from .numerics import QuadratureSpec
from .particles import SpeciesRegistry, default_registry, weighted_degeneracy_sum

#: Default seed for the report's Monte Carlo rows (explicit, no env override).
REPORT_SEED = 20260810


@dataclass(frozen=True)
class ReportRow:
    """One computed quantity compared against its reference value.

    ``reference`` + ``abs_tol`` gate pass/fail; a row with ``abs_tol`` but no
    reference passes when ``computed <= abs_tol`` (deviation-style checks);
    a row with neither is informational.
    """

    quantity: str
    computed: float
    unit: str
    provenance: str  # "published", "derived" or "exact"
    reference: float | None = None
    abs_tol: float | None = None
    note: str = ""
    status: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.provenance not in ("published", "derived", "exact"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not self.status:
            object.__setattr__(self, "status", self._evaluate())

    def _evaluate(self) -> str:
        if self.reference is not None:
            if self.abs_tol is None:
                raise ValueError(f"{self.quantity}: reference without tolerance")
            return "pass" if abs(self.computed - self.reference) <= self.abs_tol else "fail"
        if self.abs_tol is not None:
            return "pass" if self.computed <= self.abs_tol else "fail"
        return "info"

    @property
    def rel_diff(self) -> float | None:
        if self.reference is None or self.reference == 0:
            return None
        return (self.computed - self.reference) / self.reference

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "computed": self.computed,
            "unit": self.unit,
            "reference": self.reference,
            "abs_tol": self.abs_tol,
            "rel_diff": self.rel_diff,
            "provenance": self.provenance,
            "status": self.status,
            "note": self.note,
        }


CSV_FIELDS = (
    "quantity",
    "computed",
    "unit",
    "reference",
    "abs_tol",
    "rel_diff",
    "provenance",
    "status",
    "note",
)


def _box_count_ratio() -> float:
    length = 1e-10
    # Lattice radius ~140: count ~1.4e6, boundary layer well under the 2% gate.
    energy = 140.0 * CODATA.h_c_mev_m / (2.0 * length)
    count = statmech.count_box_modes((length, length, length), energy)
    pc = energy * CODATA.mev_to_j / CODATA.c_m_per_s
    continuum = 4.0 * math.pi * pc**3 * length**3 / (3.0 * CODATA.h_j_s**3)
    return count / continuum


def _stefan_boltzmann_max_dev() -> float:
    devs = []
    for t_k in (2.725, 300.0, 6000.0):
        state = statmech.ThermalState(t_k)
        quad = statmech.integrate_thermal_density(state)
        devs.append(abs(quad / statmech.stefan_boltzmann_density(state) - 1.0))
    return max(devs)


def _mean_energy_fd_max_dev(seed: int) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        x = float(rng.uniform(0.05, 30.0))
        t_k = float(rng.uniform(1.0, 6000.0))
        state = statmech.ThermalState(t_k)
        omega = x / (CODATA.hbar_j_s * state.beta_per_j)

        def log_z(beta: float) -> float:
            y = CODATA.hbar_j_s * omega * beta
            return -0.5 * y - math.log(-math.expm1(-y))

        beta = state.beta_per_j
        d_beta = 1e-6 * beta
        fd = -(log_z(beta + d_beta) - log_z(beta - d_beta)) / (2.0 * d_beta)
        exact = statmech.mean_energy(omega, state)
        worst = max(worst, abs(fd / exact - 1.0))
    return worst


def _probability_sum_max_dev() -> float:
    worst = 0.0
    for x in (0.05, 0.3, 1.0, 5.0):
        state = statmech.ThermalState(300.0)
        omega = x / (CODATA.hbar_j_s * state.beta_per_j)
        total = math.fsum(
            statmech.state_probability(omega, n, state) for n in range(2000)
        )
        worst = max(worst, abs(total - 1.0))
    return worst


def _quadrature_closed_form_max_dev(seed: int) -> float:
    rng = np.random.default_rng(seed)
    spec = QuadratureSpec(rel_tol=1e-12)
    worst = 0.0
    for _ in range(100):
        mass = float(10.0 ** rng.uniform(-1.0, 3.3))
        cutoff = float(10.0 ** rng.uniform(0.0, 3.0))
        species = default_registry().get("e")
        probe = type(species)(
            name="probe",
            mass_mev=mass,
            charge_q=species.charge_q,
            color_factor=1,
            spin_degeneracy=2,
        )
        closed = vacuum_response.inverse_alpha_single(probe, cutoff)
        quad = vacuum_response.inverse_alpha_single_quadrature(probe, cutoff, spec=spec)
        worst = max(worst, abs(quad / closed - 1.0))
    return worst


def _mc_rows(seed: int) -> tuple[float, float, float]:
    """(max |sd-analytic|/SE over L in {1,4,16}, scaling exponent, paths z)."""
    model = dispersion.LifetimeModel.half_compton()
    n = 20_000
    max_z = 0.0
    log_l, log_sd = [], []
    for i, length in enumerate((1.0, 4.0, 16.0, 64.0)):
        config = dispersion.FlightConfig(
            length_m=length,
            lifetime_model=model,
            n_photons=n,
            seed=seed + i,
        )
        result = dispersion.simulate_flight(config)
        se = result.analytic_sigma_s / math.sqrt(2.0 * (n - 1))
        if length <= 16.0:
            max_z = max(
                max_z, abs(result.stddev_delay_s - result.analytic_sigma_s) / se
            )
        log_l.append(math.log(length))
        log_sd.append(math.log(result.stddev_delay_s))
    exponent = float(np.polyfit(log_l, log_sd, 1)[0])

    # Aggregate vs per-interaction sampling at an artificially long lifetime
    # (interaction counts ~3000, where the explicit loop is feasible).
    base = dispersion.FlightConfig(
        length_m=1.0,
        lifetime_model=dispersion.LifetimeModel.custom(1e-12),
        n_photons=4000,
        seed=seed + 100,
        delay_distribution=dispersion.DelayDistribution.EXPONENTIAL_TAU,
    )
    agg = dispersion.simulate_flight(base)
    loop = dispersion.simulate_flight(
        replace(
            base,
            sampling=dispersion.SamplingMethod.PER_INTERACTION,
            seed=seed + 101,
        )
    )
    se = math.hypot(
        agg.stddev_delay_s / math.sqrt(2.0 * (base.n_photons - 1)),
        loop.stddev_delay_s / math.sqrt(2.0 * (base.n_photons - 1)),
    )
    paths_z = abs(agg.stddev_delay_s - loop.stddev_delay_s) / se
    return max_z, exponent, paths_z


def build_report(
    registry: SpeciesRegistry | None = None,
    seed: int = REPORT_SEED,
    overrides: dict[str, float] | None = None,
) -> list[ReportRow]:
    """Compute all report rows; ``overrides`` injects wrong values (test hook)."""
    reg = registry or default_registry()
    overrides = overrides or {}
    target = CODATA.inverse_alpha_target
    electron = reg.get("e")
    rows: list[ReportRow] = []

    def add(quantity, computed, unit, provenance, reference=None, abs_tol=None, note=""):
        computed = float(overrides.get(quantity, computed))
        rows.append(
            ReportRow(
                quantity=quantity,
                computed=computed,
                unit=unit,
                provenance=provenance,
                reference=reference,
                abs_tol=abs_tol,
                note=note,
            )
        )

    add(
        "weighted-degeneracy-sum",
        weighted_degeneracy_sum(reg),
        "1",
        "published",
        reference=9.5,
        abs_tol=0.0,
    )

    global_policy = vacuum_response.fit_cutoff(reg, target)
    breakdown = vacuum_response.inverse_alpha_total(reg, global_policy)
    ranked = breakdown.ranked()
    add(
        "global-cutoff-mev",
        global_policy.cutoff_mev,
        "MeV",
        "published",
        reference=292.0,
        abs_tol=2.0,
    )
    add(
        "alpha-leading-contributors-ok",
        1.0 if (ranked[0][0], ranked[1][0]) == ("e", "u") else 0.0,
        "bool",
        "published",
        reference=1.0,
        abs_tol=0.0,
        note="electron largest, u quark second",
    )
    minor_share = max(
        value / breakdown.total_inverse_alpha
        for name, value in ranked
        if name not in ("e", "u")
    )
    add(
        "max-minor-species-share",
        minor_share,
        "1",
        "published",
        note=(
            "quoted only as 'percent level and below'; a sub-2% reading is "
            "arithmetically incompatible with the 292 MeV cutoff (d quark), "
            "so the share is recorded, not gated"
        ),
    )

    electron_only = reg.subset(["e"])
    e_policy = vacuum_response.fit_cutoff(
        electron_only, target, bracket_mev=(10.0, 2000.0)
    )
    add(
        "electron-only-cutoff-over-mc2",
        e_policy.cutoff_mev / electron.mass_mev,
        "1",
        "derived",
        reference=862.6,
        abs_tol=0.1,
        note="order-of-magnitude quote is 861 = 2*pi/alpha",
    )
    add(
        "inverse-alpha-at-861-mc2",
        vacuum_response.inverse_alpha_single(electron, 861.0 * electron.mass_mev),
        "1",
        "published",
        reference=136.8,
        abs_tol=0.1,
    )

    mass_policy = vacuum_response.fit_cutoff(
        reg, target, vacuum_response.PolicyKind.MASS_PROPORTIONAL
    )
    add(
        "mass-proportional-scale-a",
        mass_policy.scale_a,
        "1",
        "published",
        reference=6.48,
        abs_tol=0.05,
        note="quoted as ~6.5",
    )
    add(
        "pair-volume-compton-units",
        vacuum_response.average_pair_volume(electron, mass_policy.scale_a)
        / CODATA.compton_length_m(electron.mass_mev) ** 3,
        "1",
        "published",
        reference=0.218,
        abs_tol=0.005,
        note="quoted as ~0.22",
    )

    ratio = (
        vacuum_response.inverse_alpha_total(
            reg, vacuum_response.CutoffPolicy.global_constant(electron.mass_mev)
        ).total_inverse_alpha
        / target
    )
    add(
        "inverse-alpha-ratio-at-electron-mass-cutoff",
        ratio,
        "1",
        "published",
        note="quoted as 'only 0.1%'; computed value recorded, not forced",
    )
    shift = (
        vacuum_response.fit_cutoff(reg, target + 0.5).cutoff_mev
        - vacuum_response.fit_cutoff(reg, target - 0.5).cutoff_mev
    ) / 2.0
    add(
        "global-cutoff-shift-per-half-unit-of-inverse-alpha",
        shift,
        "MeV",
        "derived",
        note="sensitivity of the fitted cutoff to +-0.5 in the 1/alpha target",
    )

    add(
        "stefan-boltzmann-max-rel-dev",
        _stefan_boltzmann_max_dev(),
        "1",
        "derived",
        abs_tol=1e-6,
        note="thermal Planck integral vs closed form at 2.725, 300, 6000 K",
    )
    add(
        "wien-peak-x",
        statmech.wien_peak_x(),
        "1",
        "derived",
        reference=2.821,
        abs_tol=0.001,
    )
    add(
        "box-count-continuum-ratio",
        _box_count_ratio(),
        "1",
        "derived",
        reference=1.0,
        abs_tol=0.02,
    )
    add(
        "mean-energy-fd-max-rel-dev",
        _mean_energy_fd_max_dev(seed),
        "1",
        "derived",
        abs_tol=1e-6,
    )
    add(
        "probability-sum-max-dev",
        _probability_sum_max_dev(),
        "1",
        "derived",
        abs_tol=1e-12,
    )
    add(
        "quadrature-closed-form-max-rel-dev",
        _quadrature_closed_form_max_dev(seed),
        "1",
        "derived",
        abs_tol=1e-8,
    )

    add(
        "sigma-half-compton-fs-per-sqrt-m",
        dispersion.sigma_coefficient(dispersion.LifetimeModel.half_compton()) * 1e15,
        "fs*m^-1/2",
        "published",
        reference=1.465,
        abs_tol=0.05,
        note="quoted as ~1.5 fs",
    )
    add(
        "sigma-k-scaled-fs-per-sqrt-m",
        dispersion.sigma_coefficient(dispersion.LifetimeModel.k_scaled()) * 1e15,
        "fs*m^-1/2",
        "published",
        reference=0.259,
        abs_tol=0.01,
        note="quoted as ~0.26 fs",
    )
    add(
        "sigma-quasistationary-ns-per-sqrt-m",
        dispersion.sigma_coefficient(dispersion.LifetimeModel.quasistationary()) * 1e9,
        "ns*m^-1/2",
        "published",
        reference=0.455,
        abs_tol=0.02,
        note="quoted as ~0.46 ns",
    )

    mc_z, exponent, paths_z = _mc_rows(seed)
    add(
        "mc-stddev-max-z",
        mc_z,
        "1",
        "derived",
        abs_tol=3.0,
        note="MC stddev vs analytic sigma, in standard errors, L in {1,4,16} m",
    )
    add(
        "mc-scaling-exponent",
        exponent,
        "1",
        "derived",
        reference=0.5,
        abs_tol=0.02,
    )
    add(
        "mc-sampling-paths-z",
        paths_z,
        "1",
        "derived",
        abs_tol=3.0,
        note="aggregate vs per-interaction sampling at large lifetime",
    )

    add(
        "sensitivity-fs-per-sqrt-m",
        dispersion.experiment_sensitivity(2e-15, 0.01, 1e4) * 1e15,
        "fs*m^-1/2",
        "published",
        reference=0.00284,
        abs_tol=0.0001,
        note="quoted as ~0.003",
    )
    add(
        "attosecond-fwhm-13cm-as",
        dispersion.fwhm_from_rms(dispersion.pulse_broadening(0.0, 0.05e-15, 0.13))
        * 1e18,
        "as",
        "published",
        reference=42.5,
        abs_tol=0.5,
        note="quoted as 43 as after 13 cm",
    )
    add(
        "attosecond-fwhm-zero-width-1cm-as",
        dispersion.fwhm_from_rms(dispersion.pulse_broadening(0.0, 0.05e-15, 0.01))
        * 1e18,
        "as",
        "published",
        note="quoted 16 as does not follow from the quadrature sum; unresolved",
    )
    rms_43as = dispersion.rms_from_fwhm(43e-18)
    add(
        "attosecond-fwhm-43as-seed-1cm-as",
        dispersion.fwhm_from_rms(dispersion.pulse_broadening(rms_43as, 0.05e-15, 0.01))
        * 1e18,
        "as",
        "published",
        note="quoted 57 as does not follow from the quadrature sum; unresolved",
    )

    verdict = dispersion.compare_to_limits(dispersion.LifetimeModel.quasistationary())
    add(
        "quasistationary-band-excluded",
        1.0 if verdict.band_verdict == "excluded" else 0.0,
        "bool",
        "published",
        reference=1.0,
        abs_tol=0.0,
        note=f"sigma {verdict.sigma_fs_per_sqrt_m:.3g} fs vs band 0.2-0.3 fs",
    )
    return rows


def all_pass(rows: list[ReportRow]) -> bool:
    return all(row.status != "fail" for row in rows)
