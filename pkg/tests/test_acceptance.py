"""
Tests for the acceptance suite.
"""

import pytest

from spherelab import SphereLab
from spherelab.config.settings import Config
from spherelab.spectral import gegenbauer
from spherelab.harness.acceptance import AcceptanceResult, AcceptanceSuite, run_acceptance


class TestAcceptanceSuite:
   """Test cases for AcceptanceSuite."""

   def setup_method(self):
       """Setup test fixtures."""
       self.suite = AcceptanceSuite(Config(), scale=0.01)

   def test_exact_criteria_pass(self):
       """Test the deterministic criteria."""
       results = self.suite.run(only=[1, 3, 5, 6, 7])
       assert [r.number for r in results] == [1, 3, 5, 6, 7]
       failed = [(r.number, r.detail) for r in results if not r.passed]
       assert not failed

   def test_identities(self):
       """Test the semigroup, self-adjointness and measure identities."""
       result = self.suite.run(only=[9])[0]
       assert result.passed, result.detail

   def test_reproducibility(self):
       """Test that 1 and 8 workers give the same report."""
       result = self.suite.run(only=[10])[0]
       assert result.passed, result.detail

   def test_corrupted_recurrence_fails_oracle(self, monkeypatch):
       """Test that a mutated recurrence coefficient fails criterion 1."""
       original = gegenbauer.recurrence_coefficients

       def corrupted(k, n):
           a, b, d = original(k, n)
           return a, b * (1.0 + 1e-6), d

       monkeypatch.setattr(gegenbauer, "recurrence_coefficients", corrupted)
       result = self.suite.run(only=[1])[0]
       assert not result.passed

   def test_errors_become_failures(self, monkeypatch):
       """Test that a raising check is reported as failed."""
       def broken():
           raise RuntimeError("boom")

       monkeypatch.setattr(self.suite, "constants_closed_form", broken)
       result = self.suite.run(only=[6])[0]
       assert not result.passed
       assert "boom" in result.detail

   def test_unknown_criterion(self):
       """Test that unknown numbers are rejected."""
       with pytest.raises(ValueError):
           self.suite.run(only=[11])

   def test_budget_floor(self):
       """Test budget scaling with its floor."""
       assert self.suite.budget(1_000_000) == 10_000
       assert self.suite.budget(10_000) == 1000
       assert self.suite.budget(10_000, floor=10) == 100

   def test_bad_scale(self):
       """Test scale validation."""
       with pytest.raises(ValueError):
           AcceptanceSuite(Config(), scale=-1.0)

   def test_result_dict_has_no_runtime(self):
       """Test that results compare and serialize without runtime."""
       a = AcceptanceResult(6, "constants closed form", True, "ok", runtime=1.0)
       b = AcceptanceResult(6, "constants closed form", True, "ok", runtime=2.0)
       assert a == b
       assert "runtime" not in a.to_dict()


class TestFacade:
   """Test cases for the SphereLab facade."""

   def setup_method(self):
       """Setup test fixtures."""
       self.lab = SphereLab(config=Config())

   def test_constants(self):
       """Test constants through the facade."""
       assert self.lab.constants([0.5, 0.5]).C_R == pytest.approx(13.0)

   def test_spectral_table(self):
       """Test the eigenvalue table through the facade."""
       frame = self.lab.spectral_table(10, 0.5, K=4)
       assert list(frame.columns) == ["k", "mu", "r_power_k", "deviation"]
       assert len(frame) == 5

   def test_estimate_from_dict(self):
       """Test running a dict spec."""
       report = self.lab.estimate({
           "experiment": "pairwise_density",
           "n": 6,
           "r": 0.0,
           "samples": 1000,
           "seed": 3,
           "regions": [{"type": "complement", "region": {"type": "union", "members": []}}] * 2,
       })
       assert report.estimate == 1.0
       assert self.lab.get_harness() is self.lab.harness

   def test_verify(self):
       """Test the acceptance entry point."""
       results = run_acceptance(Config(), scale=0.01, only=[6])
       assert results[0].passed
       assert self.lab.verify(scale=0.01, only=[6])[0].passed
