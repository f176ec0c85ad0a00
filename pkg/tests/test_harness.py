"""
Tests for the experiment harness.
"""

import math

import pytest

from spherelab.config.settings import Config
from spherelab.constants.derived import InvalidConfigurationError
from spherelab.geometry.models import InductiveConfiguration, RandomStream, UnitVector
from spherelab.regions.models import Antipode, Cap, empty_region, full_sphere
from spherelab.regions.measure import cap_with_measure, latitude_partition
from spherelab.utils.stats import clopper_pearson_upper
from spherelab.harness.bounds import make_bound, recompute_bound
from spherelab.harness.models import (
   EVIDENCE,
   MARGIN,
   EXACT,
   ExperimentReport,
   ExperimentSpec,
   SpecError,
)
from spherelab.harness.experiments import (
   ExperimentHarness,
   PartitionError,
   as_stream,
   negative_part_shrinking,
   proportion_summary,
   run_experiment,
)


def hemisphere(n):
   return Cap(UnitVector.basis(n, 0), 0.0)


def cap_spec(**overrides):
   spec = {
      "experiment": "pairwise_density",
      "n": 10,
      "r": 0.5,
      "samples": 2000,
      "seed": 11,
      "regions": [
         {"type": "cap", "axis": {"basis": 0}, "measure": 0.5},
         {"type": "cap", "axis": {"basis": 1}, "measure": 0.3},
      ],
   }
   spec.update(overrides)
   return spec


class TestProportionSummary:
   """Test cases for proportion_summary."""

   def test_interior(self):
       """Test an ordinary outcome."""
       summary = proportion_summary(250, 1000, 0.95)
       assert summary["estimate"] == 0.25
       assert summary["std_error"] == pytest.approx(math.sqrt(0.25 * 0.75 / 1000))
       assert summary["ci_low"] < 0.25 < summary["ci_high"]
       assert not summary["zero_hit"]

   def test_zero_hits(self):
       """Test that zero hits report the Clopper-Pearson upper bound."""
       summary = proportion_summary(0, 1000, 0.95)
       assert summary["zero_hit"]
       assert summary["ci_low"] == 0.0
       assert summary["ci_high"] == clopper_pearson_upper(0, 1000, 0.95)
       assert summary["ci_high"] > 0.0

   def test_all_hits(self):
       """Test that a full outcome has ci_high exactly 1."""
       summary = proportion_summary(1000, 1000, 0.95)
       assert summary["ci_high"] == 1.0
       assert summary["std_error"] == 0.0


class TestAsStream:
   """Test cases for as_stream."""

   def test_accepts_seed(self):
       """Test integer seeds."""
       assert as_stream(5).seed == 5

   def test_passes_stream(self):
       """Test that streams pass through."""
       stream = RandomStream(3)
       assert as_stream(stream) is stream

   def test_rejects_other(self):
       """Test other types."""
       with pytest.raises(TypeError):
           as_stream("seed")


class TestPairwiseDensity:
   """Test cases for pairwise_density."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())

   def test_full_sphere(self):
       """Test that the full sphere hits every pair and passes both checks."""
       report = self.harness.pairwise_density(full_sphere(), full_sphere(), 0.0, 10, 2000, RandomStream(1))
       assert report.estimate == 1.0
       assert report.ci_high == 1.0
       assert not report.assertable_failures()
       assert report.criterion("two_set_density_main_term").mode == MARGIN
       assert report.criterion("orthogonal_pair_fraction").mode == EVIDENCE

   def test_empty_region(self):
       """Test that the empty region gives zero hits and a zero bound."""
       report = self.harness.pairwise_density(empty_region(), full_sphere(), 0.3, 10, 2000, RandomStream(1))
       assert report.estimate == 0.0
       assert report.details["zero_hit"]
       assert report.bound("two_set_density_main_term").value == 0.0
       assert not report.assertable_failures()

   def test_caps(self):
       """Test two hemispheres at r = 1/2 against the main term."""
       n = 10
       report = self.harness.pairwise_density(hemisphere(n), hemisphere(n), 0.5, n, 5000, RandomStream(2))
       assert report.bound("two_set_density_main_term").value == pytest.approx(0.25 ** 2)
       assert report.estimate > 0.25
       assert report.criterion("two_set_density_main_term").passed
       assert report.criterion("orthogonal_pair_fraction") is None

   def test_main_term_does_not_assert_at_small_n(self):
       """Test that the sigma(A) sigma(B) main term is reported, not asserted, at finite n."""
       n = 8
       cap = cap_with_measure(n, 0.3)
       report = self.harness.pairwise_density(cap, cap, 0.0, n, 20000, RandomStream(7))
       criterion = report.criterion("two_set_density_main_term")
       assert criterion.mode == MARGIN
       assert not criterion.assertable
       assert report.details["main_term_margin"] == pytest.approx(report.estimate - 0.09)
       assert "two_set_density_main_term" not in [c.name for c in report.assertable_failures()]

   def test_agrees_with_two_point_containment(self):
       """Test that A = B at r = 0 matches containment of an orthogonal pair."""
       n = 20
       A = cap_with_measure(n, 0.3)
       pair = self.harness.pairwise_density(A, A, 0.0, n, 20000, RandomStream(41))
       tuples = self.harness.tuple_containment(A, InductiveConfiguration((0.0,)), n, 20000, RandomStream(42))
       assert abs(pair.estimate - tuples.estimate) <= 5 * (pair.std_error + tuples.std_error)

   def test_bounds_recompute(self):
       """Test that recorded bounds recompute from their parameters."""
       n = 10
       report = self.harness.pairwise_density(hemisphere(n), hemisphere(n), 0.0, n, 2000, RandomStream(2))
       for record in report.bounds:
           assert recompute_bound(record) == record.value

   def test_rejects_bad_r(self):
       """Test r validation."""
       with pytest.raises(ValueError):
           self.harness.pairwise_density(full_sphere(), full_sphere(), 1.0, 10, 2000, RandomStream(1))

   def test_report_json_has_no_runtime(self):
       """Test that the report JSON leaves runtime out."""
       report = self.harness.pairwise_density(full_sphere(), full_sphere(), 0.2, 5, 1000, RandomStream(1))
       assert "runtime" not in report.to_json()


class TestGoodSetMass:
   """Test cases for good_set_mass."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())

   def test_nested_budget(self):
       """Test that a too small inner budget is refused."""
       with pytest.raises(ValueError):
           self.harness.good_set_mass(hemisphere(10), 0.3, 10, 500, RandomStream(1), subsphere_samples=10)

   def test_report(self):
       """Test the report of a small run."""
       n = 10
       report = self.harness.good_set_mass(hemisphere(n), 0.3, n, 300, RandomStream(4), subsphere_samples=200)
       assert report.details["points_in_A"] > 0
       assert report.bound("good_set_mass") is not None
       assert report.bound("good_vector_threshold").value == pytest.approx(0.5 * 0.5 ** (1.3 / 0.7))
       criterion = report.criterion("good_set_mass")
       assert not criterion.assertable
       assert report.estimate <= report.details["points_in_A"] / 300

   def test_empty_region(self):
       """Test that sigma(A) = 0 is refused."""
       with pytest.raises(ValueError):
           self.harness.good_set_mass(empty_region(), 0.3, 10, 500, RandomStream(1), subsphere_samples=200)

   def test_concentrated_cap(self):
       """Test that nearly all of a sigma = 0.3 cap is good at r = 0 in high dimension."""
       n = 500
       report = self.harness.good_set_mass(cap_with_measure(n, 0.3), 0.0, n, 1000, RandomStream(47),
                                           subsphere_samples=200)
       assert report.details["points_in_A"] > 200
       assert report.details["good_fraction_of_A"] >= 1 - 1e-3


class TestConcentration:
   """Test cases for orthogonal concentration."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())

   def test_full_sphere_is_never_exceptional(self):
       """Test that every x sees the full sphere on its orthogonal link."""
       report = self.harness.orthogonal_concentration(full_sphere(), 8, 200, RandomStream(1), subsphere_samples=100)
       assert report.estimate == 0.0

   def test_trend_rows(self):
       """Test the trend report over a small grid."""
       region = {"type": "cap", "axis": {"basis": 0}, "measure": 0.5}
       report = self.harness.concentration_trend(region, [5, 10], 200, RandomStream(3), subsphere_samples=100)
       assert [row["n"] for row in report.rows] == [5, 10]
       assert all(row["experiment"] == "concentration_trend" for row in report.rows)
       assert len(report.details["exceptional_fractions"]) == 2
       assert isinstance(report.details["nonincreasing"], bool)
       assert not report.criteria


class TestContainment:
   """Test cases for tuple and mixed sign containment."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())

   def test_invalid_configuration(self):
       """Test that a configuration violating the diameter condition is not sampled."""
       with pytest.raises(InvalidConfigurationError, match="Refusing to sample"):
           self.harness.tuple_containment(full_sphere(), InductiveConfiguration.simplex(3, -0.5), 10,
                                          1000, RandomStream(1))

   def test_too_many_points(self):
       """Test that k > n is refused."""
       with pytest.raises(ValueError):
           self.harness.tuple_containment(full_sphere(), InductiveConfiguration.simplex(4, 0.2), 3,
                                          1000, RandomStream(1))

   def test_orthogonal_full_sphere(self):
       """Test the orthogonal reference on the full sphere."""
       config = InductiveConfiguration((0.0, 0.0))
       report = self.harness.tuple_containment(full_sphere(), config, 6, 1000, RandomStream(1))
       assert report.estimate == 1.0
       assert report.bound("orthogonal_simplex_reference").value == 1.0
       assert report.details["ratio_to_reference"] == 1.0
       assert report.details["C_R"] == 4.0

   def test_hemisphere_simplex(self):
       """Test that a hemisphere contains some triangles."""
       n = 10
       config = InductiveConfiguration.simplex(3, 0.5)
       report = self.harness.tuple_containment(hemisphere(n), config, n, 2000, RandomStream(5))
       assert 0.0 < report.estimate < 0.5
       assert report.bound("inductive_reference").value == pytest.approx(0.5 ** 13)
       assert report.bound("orthogonal_simplex_reference") is None

   def test_orthogonal_simplex_near_product(self):
       """Test three orthogonal points against sigma^3 with the pairwise r = 0 correlation."""
       n = 400
       A = cap_with_measure(n, 0.4)
       pair = self.harness.pairwise_density(A, A, 0.0, n, 10000, RandomStream(43))
       correlation = pair.estimate / 0.4 ** 2
       report = self.harness.tuple_containment(A, InductiveConfiguration((0.0, 0.0)), n, 5000, RandomStream(44))
       heuristic = 0.4 ** 3 * correlation ** 3
       assert 0.5 * heuristic <= report.estimate <= 1.5 * heuristic

   def test_mixed_sign_full_sphere(self):
       """Test that antipodes of the full sphere are the full sphere."""
       config = InductiveConfiguration((0.1,))
       report = self.harness.mixed_sign_containment(full_sphere(), config, 1, 5, 1000, RandomStream(1))
       assert report.estimate == 1.0
       assert report.inputs["b"] == 1
       assert not report.bounds

   def test_mixed_sign_opposite_hemispheres(self):
       """Test that x in A and y in -A cannot hold at inner product close to 1."""
       n = 6
       config = InductiveConfiguration((0.99,))
       report = self.harness.mixed_sign_containment(Cap(UnitVector.basis(n, 0), 0.5), config, 1, n,
                                                    1000, RandomStream(2))
       assert report.estimate == 0.0

   def test_mixed_sign_rejects_b(self):
       """Test b validation."""
       with pytest.raises(ValueError):
           self.harness.mixed_sign_containment(full_sphere(), InductiveConfiguration((0.1,)), 3, 5,
                                               1000, RandomStream(1))


class TestReverseHypercontractivity:
   """Test cases for the reverse hypercontractive check."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())

   def test_full_sphere_margin(self):
       """Test that the full sphere sits exactly on the bound."""
       report = self.harness.reverse_hc_check(full_sphere(), full_sphere(), 0.4, 8, 1000, RandomStream(1))
       assert report.details["margin"] == 0.0
       assert report.details["negative_part"] == 0.0
       assert report.inputs["p"] == pytest.approx(0.6)
       criterion = report.criterion("reverse_hc_margin")
       assert criterion.mode == MARGIN
       assert criterion.passed
       assert not criterion.assertable

   def test_negative_r_uses_antipode(self):
       """Test that r < 0 matches |r| with g replaced by its antipodal preimage."""
       n = 10
       f = Cap(UnitVector.basis(n, 0), 0.2)
       g = Cap(UnitVector.basis(n, 1), -0.1)
       negative = self.harness.reverse_hc_check(f, g, -0.3, n, 3000, RandomStream(6))
       flipped = self.harness.reverse_hc_check(f, Antipode(g), 0.3, n, 3000, RandomStream(6))
       assert negative.estimate == flipped.estimate
       assert negative.inputs["p"] == flipped.inputs["p"]

   def test_trend(self):
       """Test the trend report over a small grid."""
       region = {"type": "cap", "axis": {"basis": 0}, "measure": 0.2}
       report = self.harness.reverse_hc_trend(region, region, 0.3, [10, 20], 2000, RandomStream(8))
       assert [row["n"] for row in report.rows] == [10, 20]
       assert all("margin" in row and "negative_part" in row for row in report.rows)
       assert len(report.details["margins"]) == 2
       assert isinstance(report.details["negative_part_shrinking"], bool)

   def test_negative_part_shrinking(self):
       """Test the shrink check on hand-built reports."""
       def fake(negative_part, std_error=0.001):
           return ExperimentReport("reverse_hc_check", {}, 0.0, std_error, 0.0, 0.0, 1000,
                                   details={"negative_part": negative_part})

       assert negative_part_shrinking([fake(0.05), fake(0.02), fake(0.0)])
       assert not negative_part_shrinking([fake(0.0), fake(0.05)])
       assert negative_part_shrinking([fake(0.010), fake(0.011)])


class TestRamseyColoring:
   """Test cases for the coloring demo."""

   def setup_method(self):
       """Setup test fixtures."""
       self.harness = ExperimentHarness(Config())
       self.config = InductiveConfiguration.simplex(3, 0.5)

   def test_single_color(self):
       """Test that one color holds every copy."""
       report = self.harness.ramsey_coloring_demo([full_sphere()], self.config, 6, 1000, RandomStream(1))
       assert report.details["frequencies"] == [1.0]
       assert report.criterion("monochromatic_copy_found").passed
       assert report.criterion("monochromatic_copy_found").mode == EXACT

   def test_latitude_coloring(self):
       """Test a two-band coloring."""
       n = 8
       report = self.harness.ramsey_coloring_demo(latitude_partition(n, 2), self.config, n, 2000, RandomStream(2))
       assert len(report.details["counts"]) == 2
       assert sum(report.details["frequencies"]) <= 1.0
       assert report.estimate == max(report.details["frequencies"])
       assert report.criterion("monochromatic_copy_found").passed

   def test_hemispheres_match_pairwise(self):
       """Test each hemisphere's orthogonal pair frequency against pairwise_density."""
       n = 200
       samples = 20000
       colors = latitude_partition(n, 2)
       report = self.harness.ramsey_coloring_demo(colors, InductiveConfiguration((0.0,)), n, samples,
                                                  RandomStream(45))
       for i, color in enumerate(colors):
           pair = self.harness.pairwise_density(color, color, 0.0, n, samples, RandomStream(46 + i))
           frequency = report.details["frequencies"][i]
           std_error = math.sqrt(frequency * (1 - frequency) / samples)
           assert abs(frequency - pair.estimate) <= 5 * (std_error + pair.std_error)

   def test_overlapping_colors(self):
       """Test that overlapping colors are rejected."""
       with pytest.raises(PartitionError):
           self.harness.ramsey_coloring_demo([full_sphere(), full_sphere()], self.config, 6, 1000, RandomStream(1))

   def test_no_colors(self):
       """Test that an empty coloring is rejected."""
       with pytest.raises(PartitionError):
           self.harness.ramsey_coloring_demo([], self.config, 6, 1000, RandomStream(1))


class TestExperimentSpec:
   """Test cases for spec validation."""

   def test_valid(self):
       """Test a valid spec."""
       spec = ExperimentSpec.from_dict(cap_spec()).validate()
       assert len(spec.materialize_regions(10)) == 2

   def test_unknown_experiment(self):
       """Test unknown experiment names."""
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(cap_spec(experiment="frankl")).validate()

   def test_too_few_samples(self):
       """Test the sample floor."""
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(cap_spec(samples=10)).validate()

   def test_missing_region(self):
       """Test region count."""
       spec = cap_spec()
       spec["regions"] = spec["regions"][:1]
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(spec).validate()

   def test_unknown_field(self):
       """Test unknown fields."""
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(cap_spec(colour="red"))

   def test_missing_seed(self):
       """Test required fields."""
       spec = cap_spec()
       del spec["seed"]
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(spec)

   def test_trend_needs_grid(self):
       """Test that trends need an n-grid."""
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(cap_spec(experiment="reverse_hc_trend")).validate()

   def test_bad_region(self):
       """Test that region errors surface as spec errors."""
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(cap_spec(regions=[{"type": "torus"}, {"type": "torus"}])).validate()

   def test_mixed_sign_needs_b(self):
       """Test the mixed sign split."""
       spec = cap_spec(experiment="mixed_sign_containment", r_values=[0.2])
       with pytest.raises(SpecError):
           ExperimentSpec.from_dict(spec).validate()

   def test_round_trip(self):
       """Test dict form."""
       spec = ExperimentSpec.from_dict(cap_spec())
       assert ExperimentSpec.from_dict(spec.to_dict()) == spec


class TestHarnessRun:
   """Test cases for spec dispatch and reproducibility."""

   def test_run_pairwise(self):
       """Test dispatching a spec."""
       report = run_experiment(ExperimentSpec.from_dict(cap_spec()), Config())
       assert report.experiment == "pairwise_density"
       assert report.inputs["seed"] == 11
       assert report.bound("two_set_density_main_term").value == pytest.approx((0.5 * 0.3) ** 2)

   def test_same_seed_same_report(self):
       """Test that identical specs give identical JSON."""
       spec = ExperimentSpec.from_dict(cap_spec())
       assert run_experiment(spec, Config()).to_json() == run_experiment(spec, Config()).to_json()

   def test_worker_count_does_not_change_report(self):
       """Test that 1 and 4 workers give identical reports."""
       config = Config()
       config.chunk_size = 300
       spec = ExperimentSpec.from_dict(cap_spec(samples=3000))
       single = ExperimentHarness(config, workers=1).run(spec)
       parallel = ExperimentHarness(config, workers=4).run(spec)
       assert parallel.to_json() == single.to_json()

   def test_run_trend_spec(self):
       """Test dispatching a trend spec."""
       spec = ExperimentSpec.from_dict(cap_spec(
           experiment="reverse_hc_trend", n=None, n_grid=[10, 15], r=0.3,
       ))
       report = run_experiment(spec, Config())
       assert report.experiment == "reverse_hc_trend"
       assert len(report.rows) == 2

   def test_make_bound_unknown(self):
       """Test unknown bound formulas."""
       with pytest.raises(KeyError):
           make_bound("frankl_rodl", sigma=0.5)
