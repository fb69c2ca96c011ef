import math

import numpy as np
from django.test import SimpleTestCase

from hqst.constants import DecayKind
from hqst.core import ComplexSignal, TimeGrid, sample
from hqst.dynamics import (GROUND, DecayModel, EmissionMetrics, SolverOptions, Trajectory, decay_metrics,
                           default_gamma_r, effective_cooperativity, emission_metrics, g2_time_reversed,
                           integrate_general, integrate_ideal, integrate_with_decay, simulate_transfer,
                           slowly_varying_emission, stark_shift, steady_state, transfer_grid, verify_time_reversal)
from hqst.errors import DegenerateEmissionError, ValidationError
from hqst.transform import timed_ideal
from hqst.wavepacket import LinkParams, UnitaryParams, design_emission

REFERENCE = LinkParams(gamma1=2.0, gamma2=1.0, zeta=50.0, k=2.0)


def decay_link(r: float) -> LinkParams:
    return LinkParams(gamma1=2.0, gamma2=1.0, zeta=0.0, k=1.0 / r)


def trajectory(grid: TimeGrid, alpha2: np.ndarray) -> Trajectory:
    zeros = np.zeros(grid.n)
    return Trajectory(grid, np.vstack([zeros, zeros, alpha2, zeros]))


class TestSolverOptions(SimpleTestCase):
    def test_defaults(self):
        options = SolverOptions()
        self.assertEqual(options.method, 'DOP853')
        self.assertEqual(options.rtol, 1e-9)
        self.assertEqual(options.atol, 1e-12)

    def test_invalid(self):
        self.assertRaises(ValidationError, SolverOptions(rtol=0.0).validate)
        self.assertRaises(ValidationError, SolverOptions(method=1).validate)


class TestDecayModel(SimpleTestCase):
    def test_default(self):
        model = DecayModel()
        self.assertEqual(model.kind, DecayKind.NONE)
        self.assertIsNone(model.C1)

    def test_kind_from_value(self):
        self.assertEqual(DecayModel(kind='large-detuning', C1=5.0).kind, DecayKind.LARGE_DETUNING)

    def test_large_detuning_has_no_gamma_r(self):
        self.assertEqual(DecayModel(kind=DecayKind.LARGE_DETUNING, C1=5.0, Gamma_r=0.3).Gamma_r, 0.0)

    def test_finite_detuning(self):
        model = DecayModel.finite_detuning(100.0)
        self.assertEqual(model.kind, DecayKind.FINITE_DETUNING)
        self.assertAlmostEqual(model.Gamma_r, 0.02)
        self.assertEqual(DecayModel.finite_detuning(5.0, 0.1).Gamma_r, 0.1)

    def test_invalid_kind(self):
        with self.assertRaises(ValidationError) as cm:
            DecayModel(kind='strong', C1=5.0)
        self.assertIn('kind', cm.exception.errors)

    def test_cooperativity_required(self):
        self.assertRaises(ValidationError, DecayModel, kind=DecayKind.LARGE_DETUNING)
        self.assertRaises(ValidationError, DecayModel, kind=DecayKind.LARGE_DETUNING, C1=0.0)


class TestCooperativity(SimpleTestCase):
    def test_effective_cooperativity(self):
        self.assertAlmostEqual(effective_cooperativity(5 / 6), 5.0)
        self.assertEqual(effective_cooperativity(0.0), 0.0)
        self.assertEqual(effective_cooperativity(1.0), math.inf)

    def test_metrics_property(self):
        self.assertAlmostEqual(EmissionMetrics(efficiency=0.5, overlap=1.0).effective_cooperativity, 1.0)

    def test_default_gamma_r(self):
        self.assertAlmostEqual(default_gamma_r(4.0), 0.05)
        self.assertAlmostEqual(default_gamma_r(100.0), 0.02)


class TestSteadyState(SimpleTestCase):
    grid = TimeGrid(t0=0.0, dt=0.01, n=1001)

    def test_settled(self):
        self.assertTrue(steady_state(trajectory(self.grid, np.ones(self.grid.n))))

    def test_rising(self):
        self.assertFalse(steady_state(trajectory(self.grid, np.sqrt(self.grid.times / 10))))

    def test_norm(self):
        traj = trajectory(self.grid, np.full(self.grid.n, 0.5))
        np.testing.assert_allclose(traj.norm, 0.25)
        self.assertAlmostEqual(traj.transferred, 0.25)

    def test_shape(self):
        self.assertRaises(ValidationError, Trajectory, self.grid, np.zeros((4, 10)))


class TestDrives(SimpleTestCase):
    grid = TimeGrid(t0=0.0, dt=0.01, n=501)

    def test_stark_shift(self):
        drive = ComplexSignal(self.grid, np.full(self.grid.n, 1 + 1j))
        np.testing.assert_allclose(stark_shift(drive, 0.5), 1.0)

    def test_g2_time_reversed(self):
        pulse = ComplexSignal(self.grid, self.grid.times)
        target = TimeGrid(t0=1.0, dt=0.01, n=101)
        g2 = g2_time_reversed(pulse, 0.5, 6.0, target)
        np.testing.assert_allclose(g2.values.real, 0.5 * 0.5 * (6.0 - target.times), atol=1e-9)

    def test_g2_extrapolated(self):
        pulse = ComplexSignal(self.grid, self.grid.times)
        with self.assertLogs('hqst.dynamics', 'WARNING'):
            g2_time_reversed(pulse, 1.0, 20.0, self.grid)

    def test_undriven(self):
        drive = ComplexSignal(self.grid, np.zeros(self.grid.n))
        traj = integrate_general(drive, None, REFERENCE)
        np.testing.assert_allclose(np.abs(traj.alpha1), 1.0, atol=1e-9)
        np.testing.assert_allclose(traj.beta1, 0.0, atol=1e-9)

    def test_rabi(self):
        # Without cavity decay a constant drive swaps the excitation at t = pi / 2.
        link = LinkParams(gamma1=1e-9, gamma2=1.0, zeta=0.0, k=1.0)
        grid = TimeGrid(t0=0.0, dt=0.001, n=int(round(math.pi / 2 / 0.001)) + 1)
        traj = integrate_general(ComplexSignal(grid, np.ones(grid.n)), None, link)
        self.assertAlmostEqual(abs(traj.beta1[-1]) ** 2, 1.0, places=5)
        np.testing.assert_allclose(traj.norm, 1.0, atol=1e-6)

    def test_node2_requires_unitary(self):
        drive = ComplexSignal(self.grid, np.zeros(self.grid.n))
        self.assertRaises(ValidationError, integrate_general, drive, drive, REFERENCE)

    def test_ground(self):
        drive = ComplexSignal(self.grid, np.ones(self.grid.n))
        traj = integrate_general(drive, None, REFERENCE, init=GROUND)
        np.testing.assert_allclose(traj.norm, 0.0)


class TestDecay(SimpleTestCase):
    def test_large_detuning_efficiency(self):
        for cooperativity in (1.0, 5.0, 20.0):
            with self.subTest(C1=cooperativity):
                metrics = decay_metrics(decay_link(5.0), DecayModel(kind=DecayKind.LARGE_DETUNING, C1=cooperativity))
                expected = cooperativity / (1 + cooperativity)
                self.assertAlmostEqual(metrics.efficiency, expected, delta=0.01 * expected)

    def test_shape_overlap(self):
        for r in (0.25, 5.0):
            with self.subTest(r=r):
                metrics = decay_metrics(decay_link(r), DecayModel(kind=DecayKind.LARGE_DETUNING, C1=5.0))
                self.assertGreater(metrics.overlap, 0.98)
                self.assertLessEqual(metrics.overlap, 1.0 + 1e-6)

    def test_finite_detuning_reduces_to_large_detuning(self):
        link = decay_link(1.0)
        large = decay_metrics(link, DecayModel(kind=DecayKind.LARGE_DETUNING, C1=5.0))
        finite = decay_metrics(link, DecayModel.finite_detuning(5.0, 0.0))
        self.assertAlmostEqual(large.efficiency, finite.efficiency, places=6)

    def test_efficiency_grows_with_cooperativity(self):
        link = decay_link(5.0)
        efficiencies = [decay_metrics(link, DecayModel(kind=DecayKind.LARGE_DETUNING, C1=value)).efficiency
                        for value in (1.0, 10.0, 100.0)]
        self.assertEqual(efficiencies, sorted(efficiencies))
        self.assertGreater(efficiencies[-1], 0.97)

    def test_no_decay(self):
        emission = design_emission(decay_link(1.0))
        self.assertRaises(ValidationError, integrate_with_decay, DecayModel(), emission.pulse, decay_link(1.0))

    def test_degenerate_emission(self):
        link = decay_link(1.0)
        emission = design_emission(link)
        dark = emission.pulse.with_values(np.zeros(emission.pulse.grid.n))
        traj = integrate_with_decay(DecayModel(kind=DecayKind.LARGE_DETUNING, C1=5.0), dark, link)
        self.assertRaises(DegenerateEmissionError, emission_metrics, traj, emission.beta1, link.gamma1)


class TestSlowlyVarying(SimpleTestCase):
    def test_slow_target(self):
        metrics = slowly_varying_emission(4.0, 0.125)
        self.assertGreater(metrics.overlap, 0.999)
        self.assertAlmostEqual(metrics.efficiency, 1.0, delta=5e-3)

    def test_overlap_grows_with_r(self):
        fast = slowly_varying_emission(2.0, 1.0)
        slow = slowly_varying_emission(2.0, 0.25)
        self.assertLess(fast.overlap, slow.overlap)


class TestTransfer(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.emission = design_emission(REFERENCE)
        cls.ideal, _ = timed_ideal(cls.emission.beta1, REFERENCE, 10.0)
        cls.nominal = cls.ideal.unitary(10.0)

    def test_ideal(self):
        traj = simulate_transfer(self.emission, REFERENCE, self.nominal, self.nominal)
        self.assertGreater(traj.transferred, 0.9999)
        self.assertLessEqual(traj.transferred, 1.0 + 1e-6)
        self.assertTrue(traj.steady)

    def test_time_reversal_full_capture(self):
        ideal, _ = timed_ideal(self.emission.beta1, REFERENCE, 14.0)
        u = ideal.unitary(14.0)
        traj = simulate_transfer(self.emission, REFERENCE, u, u)
        self.assertLess(verify_time_reversal(traj, REFERENCE, u), 1e-3)

    def test_time_reversal_left_in_cavity(self):
        # The capture ends with |beta1(t_s)| still in the node 1 cavity.
        traj = simulate_transfer(self.emission, REFERENCE, self.nominal, self.nominal)
        left = abs(sample(self.emission.beta1, np.array([self.nominal.t_s]))[0][0])
        self.assertAlmostEqual(left, 1.23e-3, delta=5e-5)
        self.assertAlmostEqual(verify_time_reversal(traj, REFERENCE, self.nominal), left, delta=1e-4)

    def test_time_reversal_without_transformation(self):
        u = self.nominal.replace(t_l=0.0)
        traj = simulate_transfer(self.emission, REFERENCE, u, self.nominal)
        self.assertLess(traj.transferred, 0.01)
        self.assertGreater(verify_time_reversal(traj, REFERENCE, self.nominal), 0.9)

    def test_time_reversal_symmetric_packet(self):
        link = LinkParams(gamma1=2.0, gamma2=2.0, zeta=0.0, k=1.0)
        u = UnitaryParams(omega0=0.0, xi=1.0, T=0.0, t_l=0.0)
        traj = simulate_transfer(design_emission(link), link, u, u)
        self.assertGreater(traj.transferred, 0.999)
        self.assertLess(verify_time_reversal(traj, link, u), 1e-3)

    def test_error_case(self):
        u = self.nominal.replace(xi=0.75, T=17.0)
        traj = simulate_transfer(self.emission, REFERENCE, u, self.nominal)
        self.assertAlmostEqual(traj.transferred, 0.186, delta=1e-3)

    def test_norm_never_grows(self):
        u = self.nominal.replace(xi=0.75, T=17.0)
        traj = simulate_transfer(self.emission, REFERENCE, u, self.nominal)
        self.assertTrue(np.all(traj.norm <= 1.0 + 1e-6))

    def test_undriven_node2(self):
        grid = transfer_grid(self.emission, REFERENCE, self.nominal, self.nominal)
        traj = integrate_ideal(self.emission.pulse, ComplexSignal(grid, np.zeros(grid.n)), REFERENCE, self.nominal)
        self.assertLess(traj.transferred, 1e-12)
        self.assertEqual(traj.grid, grid)
