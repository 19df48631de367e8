import json
import math

import numpy as np
import pytest

from vacuumpairs import numerics, statmech
from vacuumpairs.constants import CODATA
from vacuumpairs.particles import default_registry
from vacuumpairs.vacuum_response import (
    AlphaBreakdown,
    CutoffPolicy,
    LandauMode,
    NegativeRadicandError,
    OscillatorModel,
    PolicyKind,
    average_pair_volume,
    chiral_cutoff_policy,
    dipole_max,
    dipole_time_averaged,
    fit_cutoff,
    fixed_gap_omega,
    inverse_alpha_fixed_gap,
    inverse_alpha_single,
    inverse_alpha_single_quadrature,
    inverse_alpha_total,
    landau_energy,
    pair_electric_dipole,
    pair_separation,
    permeability_from_alpha,
    relativistic_magnetic_moment,
)

TARGET = CODATA.inverse_alpha_target
REG = default_registry()
ELECTRON = REG.get("e")


def oscillator_matrix_element(mass_energy_mev, omega):
    """Quadrature oracle for q_e <psi_1|x|psi_0> of the harmonic oscillator.

    In z = x*sqrt(m w/hbar) the integrand is sqrt(2/pi) z^2 exp(-z^2); the
    Gaussian tail is negligible beyond |z| = 12.
    """
    m_kg = CODATA.mass_kg(mass_energy_mev)
    scale = math.sqrt(CODATA.hbar_j_s / (m_kg * omega))
    value = numerics.integrate(
        lambda z: math.sqrt(2.0 / math.pi) * z * z * math.exp(-z * z),
        -12.0,
        12.0,
        numerics.QuadratureSpec(rel_tol=1e-12),
    )
    return CODATA.q_e_coulomb * scale * value


class TestDipoleMoments:
    def test_omega_scaling(self):
        omega = fixed_gap_omega(ELECTRON.mass_mev)
        assert abs(
            dipole_max(ELECTRON.mass_mev, 4.0 * omega)
            / (0.5 * dipole_max(ELECTRON.mass_mev, omega))
            - 1.0
        ) < 1e-12

    def test_gaussian_quadrature_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            mass = float(10.0 ** rng.uniform(-0.5, 3.0))
            omega = fixed_gap_omega(mass) * float(rng.uniform(0.2, 5.0))
            oracle = oscillator_matrix_element(mass, omega)
            assert abs(dipole_max(mass, omega) / oracle - 1.0) < 1e-8

    def test_electron_fixed_gap_is_half_compton_length(self):
        # With hbar*w = 2 m c^2 the closed form collapses to q_e*hbar/(2 m c).
        omega = fixed_gap_omega(ELECTRON.mass_mev)
        value = dipole_max(ELECTRON.mass_mev, omega)
        exact = CODATA.q_e_coulomb * CODATA.compton_length_m(ELECTRON.mass_mev) / 2.0
        assert abs(value / exact - 1.0) < 1e-12
        assert abs(value / oscillator_matrix_element(ELECTRON.mass_mev, omega) - 1.0) < 1e-8

    def test_time_averaged_zero_field(self):
        omega = fixed_gap_omega(ELECTRON.mass_mev)
        assert dipole_time_averaged(ELECTRON.mass_mev, omega, 0.0) == 0.0

    def test_time_averaged_identity(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            mass = float(10.0 ** rng.uniform(-0.5, 3.0))
            omega = fixed_gap_omega(mass) * float(rng.uniform(0.3, 3.0))
            field = float(10.0 ** rng.uniform(0.0, 6.0))
            via_dmax = 2.0 * dipole_max(mass, omega) ** 2 / (
                CODATA.hbar_j_s * omega
            ) * field
            assert abs(dipole_time_averaged(mass, omega, field) / via_dmax - 1.0) < 1e-12

    def test_half_of_doubled_reference_expression(self):
        # The fixed-gap expressions here carry factors 1/sqrt(2) and 1/2
        # relative to the variant that doubles the dipole response.
        omega = fixed_gap_omega(ELECTRON.mass_mev)
        field = 1e4
        doubled = 2.0 * CODATA.q_e_coulomb**2 / (
            CODATA.mass_kg(ELECTRON.mass_mev) * omega**2
        ) * field
        assert abs(
            dipole_time_averaged(ELECTRON.mass_mev, omega, field) / doubled - 0.5
        ) < 1e-12


class TestInverseAlphaSingle:
    def test_electron_at_861(self):
        value = inverse_alpha_single(ELECTRON, 861.0 * ELECTRON.mass_mev)
        assert abs(value - 136.78259085098546) < 1e-9
        assert abs(value - 136.8) < 0.1

    def test_small_cutoff_series_limit(self):
        cutoff = 1e-4 * ELECTRON.mass_mev
        x = cutoff / ELECTRON.mass_mev
        series = (x**3 / 3.0 - x**5 / 5.0) / (2.0 * math.pi)
        assert abs(inverse_alpha_single(ELECTRON, cutoff) / series - 1.0) < 1e-6

    def test_quadrature_cross_check(self):
        closed = inverse_alpha_single(ELECTRON, 292.0)
        quad = inverse_alpha_single_quadrature(ELECTRON, 292.0)
        assert abs(quad / closed - 1.0) < 1e-8

    def test_randomised_quadrature_agreement(self):
        rng = np.random.default_rng(17)
        spec = numerics.QuadratureSpec(rel_tol=1e-12)
        for _ in range(25):
            mass = float(10.0 ** rng.uniform(-1.0, 3.3))
            cutoff = float(10.0 ** rng.uniform(0.0, 3.0))
            probe = type(ELECTRON)("probe", mass, ELECTRON.charge_q, 1, 2)
            closed = inverse_alpha_single(probe, cutoff)
            quad = inverse_alpha_single_quadrature(probe, cutoff, spec=spec)
            assert abs(quad / closed - 1.0) < 1e-8

    def test_monotone_in_cutoff(self):
        values = [inverse_alpha_single(ELECTRON, a) for a in (10.0, 50.0, 292.0, 900.0)]
        assert values == sorted(values)
        assert len(set(values)) == len(values)


class TestInverseAlphaTotal:
    def test_published_global_cutoff_recovers_target(self):
        breakdown = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        assert abs(breakdown.total_inverse_alpha / TARGET - 1.0) < 0.01

    def test_ranking_electron_then_u(self):
        breakdown = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        ranked = breakdown.ranked()
        assert ranked[0][0] == "e"
        assert ranked[1][0] == "u"

    def test_electron_mass_cutoff_ratio(self):
        breakdown = inverse_alpha_total(
            REG, CutoffPolicy.global_constant(ELECTRON.mass_mev)
        )
        ratio = breakdown.total_inverse_alpha / TARGET
        # Far below 1%; the recorded value, a few parts in 1e4.
        assert ratio < 0.01
        assert abs(ratio - 2.6896212411826745e-4) < 1e-8

    def test_contributions_sum_to_total(self):
        breakdown = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        assert breakdown.total_inverse_alpha == math.fsum(
            breakdown.per_species.values()
        )

    def test_mass_proportional_contributions_mass_independent(self):
        breakdown = inverse_alpha_total(REG, CutoffPolicy.mass_proportional(6.478))
        per_weight = {
            name: breakdown.per_species[name] / float(REG.get(name).charge_weight)
            for name in REG.names
        }
        values = list(per_weight.values())
        assert max(values) - min(values) < 1e-15 * values[0]
        assert abs(
            breakdown.total_inverse_alpha
            / inverse_alpha_fixed_gap(REG, 6.478)
            - 1.0
        ) < 1e-12

    def test_chiral_policy_reports_deficit(self):
        policy = chiral_cutoff_policy(REG, 100.0, 292.0)
        breakdown = inverse_alpha_total(REG, policy)
        full = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        assert breakdown.cutoffs_mev["u"] == 100.0
        assert breakdown.cutoffs_mev["e"] == 292.0
        assert breakdown.total_inverse_alpha < full.total_inverse_alpha

    def test_unscreened_charge_scale_hook(self):
        base = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        scaled = inverse_alpha_total(
            REG, CutoffPolicy.global_constant(292.0), charge_scale={"e": 2.0}
        )
        assert abs(scaled.per_species["e"] / base.per_species["e"] - 4.0) < 1e-12
        assert scaled.per_species["u"] == base.per_species["u"]

    def test_breakdown_json_round_trip(self):
        breakdown = inverse_alpha_total(REG, CutoffPolicy.global_constant(292.0))
        restored = AlphaBreakdown.from_dict(json.loads(json.dumps(breakdown.to_dict())))
        assert restored == breakdown


class TestFixedGap:
    def test_closed_form_vs_quadrature(self):
        spec = numerics.QuadratureSpec(rel_tol=1e-13)
        for a in (0.5, 2.0, 6.478444302297101):
            total = math.fsum(
                inverse_alpha_single_quadrature(
                    s, a * s.mass_mev, OscillatorModel.FIXED_GAP, spec
                )
                for s in REG
            )
            assert abs(total / inverse_alpha_fixed_gap(REG, a) - 1.0) < 1e-10

    def test_vanishes_with_cutoff(self):
        assert inverse_alpha_fixed_gap(REG, 1e-6) < 1e-17

    def test_inversion_recovers_target(self):
        # Frozen closed-form inversion oracle: a* = cbrt(6*pi*target/9.5).
        a_star = 6.478444302297101
        assert abs(inverse_alpha_fixed_gap(REG, a_star) / TARGET - 1.0) < 1e-3


class TestFitCutoff:
    def test_global_fit_round_trip(self):
        policy = fit_cutoff(REG, TARGET)
        assert 290.0 <= policy.cutoff_mev <= 294.0
        total = inverse_alpha_total(REG, policy).total_inverse_alpha
        assert abs(total - TARGET) < 1e-4

    def test_electron_only_fit(self):
        # Frozen from a 200-step bisection oracle: x* = 862.5922125024447.
        policy = fit_cutoff(REG.subset(["e"]), TARGET, bracket_mev=(10.0, 2000.0))
        assert abs(policy.cutoff_mev / ELECTRON.mass_mev - 862.5922125024447) < 1e-4

    def test_mass_proportional_fit(self):
        policy = fit_cutoff(REG, TARGET, PolicyKind.MASS_PROPORTIONAL)
        assert abs(policy.scale_a - 6.478444302297101) < 1e-8

    def test_monotone_fit_inverse(self):
        # fit is the exact inverse of evaluation within the root tolerance
        for target in (100.0, 137.035999, 150.0):
            policy = fit_cutoff(REG, target)
            total = inverse_alpha_total(REG, policy).total_inverse_alpha
            assert abs(total - target) < 1e-3

    def test_bad_bracket_raises(self):
        with pytest.raises(numerics.NoSignChangeError):
            fit_cutoff(REG, TARGET, bracket_mev=(1000.0, 2000.0))


class TestAveragePairVolume:
    def test_published_scale(self):
        # a ~ 6.476 reproduces the ~0.22 Compton-cubed volume within 1%.
        lam3 = CODATA.compton_length_m(ELECTRON.mass_mev) ** 3
        assert abs(average_pair_volume(ELECTRON, 6.476) / (0.22 * lam3) - 1.0) < 0.01

    def test_fitted_scale(self):
        lam3 = CODATA.compton_length_m(ELECTRON.mass_mev) ** 3
        volume = average_pair_volume(ELECTRON, 6.478444302297101)
        assert abs(volume / lam3 - 0.21779043774550835) < 1e-12

    def test_inverse_cube_scaling(self):
        assert abs(
            average_pair_volume(ELECTRON, 13.0)
            / (average_pair_volume(ELECTRON, 6.5) / 8.0)
            - 1.0
        ) < 1e-12

    def test_consistent_with_vacuum_density_integral(self):
        a = 6.478444302297101
        p_max = a * ELECTRON.mass_mev * CODATA.mev_to_j / CODATA.c_m_per_s
        density = numerics.integrate(
            statmech.vacuum_density, 0.0, p_max, numerics.QuadratureSpec(rel_tol=1e-12)
        )
        assert abs(average_pair_volume(ELECTRON, a) * density - 1.0) < 1e-10


class TestPermeability:
    def test_epsilon0(self):
        response = permeability_from_alpha(137.035999)
        assert abs(response.epsilon0_f_per_m / 8.8541878128e-12 - 1.0) < 1e-4
        assert response.light_speed_defined

    def test_product_consistency(self):
        response = permeability_from_alpha(123.0)
        product = response.epsilon0_f_per_m * response.mu0_h_per_m * CODATA.c_m_per_s**2
        assert abs(product - 1.0) < 1e-12

    def test_bare_vacuum(self):
        response = permeability_from_alpha(0.0)
        assert response.epsilon0_f_per_m == 0.0
        assert response.inv_mu0_m_per_henry == 0.0
        assert not response.light_speed_defined
        assert response.mu0_h_per_m is None


class TestMagneticMoment:
    def test_bohr_magneton(self):
        value = relativistic_magnetic_moment(ELECTRON.mass_mev)
        assert abs(value / 9.2740100783e-24 - 1.0) < 1e-4

    def test_inverse_energy_scaling(self):
        assert abs(
            relativistic_magnetic_moment(2.0 * ELECTRON.mass_mev)
            / (0.5 * relativistic_magnetic_moment(ELECTRON.mass_mev))
            - 1.0
        ) < 1e-12

    def test_dipole_relation_beta_equals_half_d_c(self):
        # beta = (d/2) c with d = q_e * hbar c / eps_f holds algebraically.
        for energy in (0.511, 1.0, 939.0, 1e5):
            beta = relativistic_magnetic_moment(energy)
            d = pair_electric_dipole(energy)
            assert abs(beta / (0.5 * d * CODATA.c_m_per_s) - 1.0) < 1e-12

    def test_pair_separation_is_compton_length_at_rest(self):
        assert pair_separation(ELECTRON.mass_mev) == CODATA.compton_length_m(
            ELECTRON.mass_mev
        )


class TestLandauLevels:
    M = CODATA.electron_mass_energy_mev

    def test_field_off_reduces_to_dispersion(self):
        value = landau_energy(self.M, 0.3, 0.0, 2)
        assert abs(value / statmech.dispersion_energy(self.M, 0.3) - 1.0) < 1e-12

    def test_first_order_matches_relativistic_at_common_fields(self):
        for spin in (0.5, -0.5):
            rel = landau_energy(self.M, 0.0, 1.0, 0, 2.0, spin, LandauMode.RELATIVISTIC)
            first = landau_energy(self.M, 0.0, 1.0, 0, 2.0, spin, LandauMode.FIRST_ORDER)
            assert abs(rel / first - 1.0) < 1e-9

    def test_non_relativistic_matches_expanded_relativistic(self):
        p_z = 1e-3 * self.M
        rel = landau_energy(self.M, p_z, 1.0, 0, 2.0, -0.5, LandauMode.RELATIVISTIC)
        nr = landau_energy(self.M, p_z, 1.0, 0, 2.0, -0.5, LandauMode.NON_RELATIVISTIC)
        assert abs((rel - self.M) / nr - 1.0) < 1e-6

    def test_magnetic_term_scale(self):
        # Level shift for (n=0, s=-1/2, g=2) is 2 * beta_B * B.
        b = 1.0
        shift = (
            landau_energy(self.M, 0.0, b, 0, 2.0, -0.5, LandauMode.NON_RELATIVISTIC)
            * CODATA.mev_to_j
        )
        assert abs(shift / (2.0 * 9.2740100783e-24 * b) - 1.0) < 1e-4

    def test_negative_radicand(self):
        with pytest.raises(NegativeRadicandError):
            landau_energy(self.M, 0.0, 1e12, 0, 10.0, 0.5, LandauMode.RELATIVISTIC)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            landau_energy(self.M, 0.0, -1.0, 0)
        with pytest.raises(ValueError):
            landau_energy(self.M, 0.0, 1.0, -1)


class TestCutoffPolicy:
    def test_validation(self):
        with pytest.raises(ValueError):
            CutoffPolicy.global_constant(0.0)
        with pytest.raises(ValueError):
            CutoffPolicy.mass_proportional(-1.0)
        with pytest.raises(ValueError):
            CutoffPolicy.per_species({})

    def test_cutoff_for(self):
        assert CutoffPolicy.global_constant(292.0).cutoff_for(ELECTRON) == 292.0
        assert CutoffPolicy.mass_proportional(2.0).cutoff_for(ELECTRON) == pytest.approx(
            2.0 * ELECTRON.mass_mev
        )
        with pytest.raises(KeyError):
            CutoffPolicy.per_species({"u": 100.0}).cutoff_for(ELECTRON)
