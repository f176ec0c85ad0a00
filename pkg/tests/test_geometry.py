"""
Tests for the geometry module.
"""

import pytest
import numpy as np
from scipy.stats import kstest, ks_2samp

from spherelab.geometry.models import (
   UnitVector,
   GramSpec,
   GramMatrixError,
   InductiveConfiguration,
   RandomStream,
   check_dimension,
)
from spherelab.geometry.cholesky import pivoted_cholesky
from spherelab.regions.measure import cap_measure
from spherelab.geometry.sampling import (
   sample_uniform,
   sample_uniform_batch,
   sample_subsphere,
   sample_subsphere_batch,
   sample_link_points,
   sample_configuration,
   sample_configuration_batch,
   haar_frame,
   project_to_link,
   project_to_link_batch,
   link_inner_products,
)


class TestUnitVector:
   """Test cases for UnitVector."""

   def test_basis_vector(self):
       """Test standard basis vectors."""
       e = UnitVector.basis(5, 2)
       assert e.dimension == 5
       assert e.coords[2] == 1.0
       assert e.dot(e) == 1.0

   def test_rejects_non_unit(self):
       """Test that a non-normalized vector is rejected."""
       with pytest.raises(ValueError):
           UnitVector(np.array([1.0, 1.0, 0.0]))

   def test_from_array_normalizes(self):
       """Test normalizing an arbitrary vector."""
       v = UnitVector.from_array([3.0, 4.0, 0.0])
       assert np.allclose(v.coords, [0.6, 0.8, 0.0])

   def test_from_array_zero(self):
       """Test that the zero vector cannot be normalized."""
       with pytest.raises(ValueError):
           UnitVector.from_array([0.0, 0.0, 0.0])

   def test_negation(self):
       """Test antipodal point."""
       v = UnitVector.basis(3, 0)
       assert (-v).dot(v) == -1.0

   def test_dimension_check(self):
       """Test that n < 3 is rejected."""
       with pytest.raises(ValueError):
           check_dimension(2)
       with pytest.raises(ValueError):
           UnitVector(np.array([1.0, 0.0]))


class TestGramSpec:
   """Test cases for GramSpec and InductiveConfiguration."""

   def test_identity(self):
       """Test identity Gram matrix."""
       assert GramSpec.identity(4).k == 4

   def test_rejects_non_psd(self):
       """Test that an impossible Gram matrix is rejected."""
       entries = np.full((3, 3), -0.9)
       np.fill_diagonal(entries, 1.0)
       with pytest.raises(GramMatrixError):
           GramSpec(entries)

   def test_rejects_asymmetric(self):
       """Test that an asymmetric matrix is rejected."""
       with pytest.raises(GramMatrixError):
           GramSpec(np.array([[1.0, 0.1], [0.2, 1.0]]))

   def test_band_matrix(self):
       """Test the band pattern R(r_1, r_2, r_3)."""
       config = InductiveConfiguration((0.1, 0.2, 0.3))
       R = config.band_matrix()
       assert config.k == 4
       assert R[0, 3] == 0.1
       assert R[1, 2] == 0.2
       assert R[2, 3] == 0.3
       assert np.array_equal(R, R.T)

   def test_simplex(self):
       """Test the equal-inner-product configuration."""
       config = InductiveConfiguration.simplex(4, 0.25)
       assert config.r_values == (0.25, 0.25, 0.25)

   def test_round_trip(self):
       """Test dict form."""
       config = InductiveConfiguration((0.5, -0.2))
       assert InductiveConfiguration.from_dict(config.to_dict()) == config

   def test_rejects_out_of_range(self):
       """Test that r must lie in (-1, 1)."""
       with pytest.raises(ValueError):
           InductiveConfiguration((1.0,))


class TestPivotedCholesky:
   """Test cases for the pivoted Cholesky factorization."""

   def test_full_rank(self):
       """Test factoring a positive definite matrix."""
       R = InductiveConfiguration.simplex(4, 0.3).band_matrix()
       B, rank = pivoted_cholesky(R)
       assert rank == 4
       assert np.max(np.abs(B @ B.T - R)) < 1e-12

   def test_rank_deficient(self):
       """Test the degenerate three-point simplex at r = -1/2."""
       R = InductiveConfiguration.simplex(3, -0.5).band_matrix()
       B, rank = pivoted_cholesky(R)
       assert rank == 2
       assert B.shape == (3, 2)
       assert np.max(np.abs(B @ B.T - R)) < 1e-10

   def test_negative_pivot(self):
       """Test that an indefinite matrix is rejected."""
       with pytest.raises(GramMatrixError):
           pivoted_cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestRandomStream:
   """Test cases for RandomStream."""

   def test_reproducible(self):
       """Test that identical streams give identical draws."""
       a = RandomStream(7).child(3).generator.standard_normal(5)
       b = RandomStream(7).child(3).generator.standard_normal(5)
       assert np.array_equal(a, b)

   def test_children_differ(self):
       """Test that sibling substreams differ."""
       a = RandomStream(7).child(0).generator.standard_normal(5)
       b = RandomStream(7).child(1).generator.standard_normal(5)
       assert not np.array_equal(a, b)

   def test_rejects_negative_seed(self):
       """Test seed validation."""
       with pytest.raises(ValueError):
           RandomStream(-1)


class TestSampling:
   """Test cases for the samplers."""

   def setup_method(self):
       """Setup test fixtures."""
       self.rng = RandomStream(12345)

   def test_uniform_points_are_unit(self):
       """Test that uniform samples lie on the sphere."""
       X = sample_uniform_batch(10, 1000, self.rng)
       assert X.shape == (1000, 10)
       assert np.allclose(np.linalg.norm(X, axis=1), 1.0)
       assert isinstance(sample_uniform(10, np.random.default_rng(0)), UnitVector)

   def test_uniform_mean_near_zero(self):
       """Test that the first coordinate is centered with variance 1/n."""
       X = sample_uniform_batch(20, 20000, self.rng)
       assert abs(X[:, 0].mean()) < 0.01
       assert abs(X[:, 0].var() - 1.0 / 20) < 0.005

   def test_uniform_latitude_distribution(self):
       """Test the law of x.e1 against the analytic cap measure."""
       n = 20
       X = sample_uniform_batch(n, 5000, self.rng)
       cdf = np.vectorize(lambda t: 1.0 - cap_measure(n, float(t)))
       assert kstest(X[:, 0], cdf).pvalue > 1e-3

   def test_subsphere_inner_product(self):
       """Test that link samples have exactly x.y = r."""
       X = sample_uniform_batch(15, 500, self.rng.child(0))
       Y = sample_subsphere_batch(X, -0.4, self.rng.child(1))
       assert np.allclose(np.sum(X * Y, axis=1), -0.4, atol=1e-12)
       assert np.allclose(np.linalg.norm(Y, axis=1), 1.0)

   def test_subsphere_single(self):
       """Test the UnitVector wrapper."""
       x = UnitVector.basis(6, 0)
       y = sample_subsphere(x, 0.3, self.rng)
       assert abs(x.dot(y) - 0.3) < 1e-12

   def test_link_points(self):
       """Test many link points around one center."""
       x = UnitVector.basis(8, 1).coords
       Y = sample_link_points(x, 0.5, 200, self.rng)
       assert Y.shape == (200, 8)
       assert np.allclose(Y @ x, 0.5)

   def test_subsphere_rejects_bad_r(self):
       """Test that |r| = 1 is rejected."""
       with pytest.raises(ValueError):
           sample_subsphere_batch(sample_uniform_batch(5, 3, self.rng), 1.0, self.rng)

   def test_haar_frame_orthonormal(self):
       """Test that frames have orthonormal columns."""
       Q = haar_frame(7, 3, 50, self.rng)
       assert Q.shape == (50, 7, 3)
       gram = np.einsum("snk,snj->skj", Q, Q)
       assert np.allclose(gram, np.eye(3))

   def test_haar_frame_too_wide(self):
       """Test that k > n is rejected."""
       with pytest.raises(ValueError):
           haar_frame(3, 4, 1, self.rng)

   def test_configuration_reproduces_gram(self):
       """Test that sampled tuples have the target Gram matrix."""
       R = GramSpec(InductiveConfiguration((0.5, 0.2, -0.1)).band_matrix())
       T = sample_configuration_batch(12, R, 300, self.rng)
       assert T.shape == (300, 4, 12)
       gram = np.einsum("skn,sjn->skj", T, T)
       assert np.max(np.abs(gram - R.entries)) < 1e-10

   def test_configuration_degenerate(self):
       """Test sampling the rank-deficient configuration."""
       R = GramSpec(InductiveConfiguration.simplex(3, -0.5).band_matrix())
       points = sample_configuration(5, R, self.rng)
       assert len(points) == 3
       total = points[0].coords + points[1].coords + points[2].coords
       assert np.linalg.norm(total) < 1e-10

   def test_link_is_uniform_on_subsphere(self):
       """Test that link points around a fixed center are uniform on the (n-2)-sphere."""
       n = 12
       x = UnitVector.basis(n, 0).coords
       Y = sample_link_points(x, 0.6, 4000, self.rng.child(2))
       W = (Y - 0.6 * x) / 0.8
       assert np.allclose(W[:, 0], 0.0, atol=1e-12)
       cdf = np.vectorize(lambda t: 1.0 - cap_measure(n - 1, float(t)))
       assert kstest(W[:, 1], cdf).pvalue > 1e-3

   def test_subsphere_of_uniform_center_is_uniform(self):
       """Test that y on S_{x,r} with x uniform matches fresh uniform points."""
       n = 12
       X = sample_uniform_batch(n, 4000, self.rng.child(3))
       Y = sample_subsphere_batch(X, 0.6, self.rng.child(4))
       U = sample_uniform_batch(n, 4000, self.rng.child(5))
       assert ks_2samp(Y[:, 0], U[:, 0]).pvalue > 1e-3
       assert ks_2samp(Y[:, 3], U[:, 3]).pvalue > 1e-3

   def test_configuration_points_are_exchangeable(self):
       """Test that every point of a simplex draw is marginally uniform."""
       n = 10
       R = GramSpec(InductiveConfiguration.simplex(3, 0.5).band_matrix())
       T = sample_configuration_batch(n, R, 4000, self.rng.child(6))
       cdf = np.vectorize(lambda t: 1.0 - cap_measure(n, float(t)))
       for i in range(3):
           assert kstest(T[:, i, 0], cdf).pvalue > 1e-3
       assert ks_2samp(T[:, 0, 4], T[:, 2, 4]).pvalue > 1e-3

   def test_configuration_rotation_invariance(self):
       """Test that a fixed rotation of the draws leaves their law unchanged."""
       n = 10
       R = GramSpec(InductiveConfiguration((0.5, 0.2)).band_matrix())
       Q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((n, n)))
       T = sample_configuration_batch(n, R, 4000, self.rng.child(7))
       rotated = T @ Q.T
       fresh = sample_configuration_batch(n, R, 4000, self.rng.child(8))
       gram = np.einsum("skn,sjn->skj", rotated, rotated)
       assert np.max(np.abs(gram - R.entries)) < 1e-10
       for i in range(3):
           assert ks_2samp(rotated[:, i, 0], fresh[:, i, 0]).pvalue > 1e-3

   def test_configuration_needs_room(self):
       """Test that k > n is rejected."""
       with pytest.raises(ValueError):
           sample_configuration_batch(3, GramSpec.identity(4), 1, self.rng)


class TestProjection:
   """Test cases for link projection."""

   def setup_method(self):
       """Setup test fixtures."""
       self.rng = RandomStream(99)

   def test_projected_simplex(self):
       """Test that an r = 1/2 simplex projects to inner product 1/3."""
       R = GramSpec(InductiveConfiguration.simplex(3, 0.5).band_matrix())
       T = sample_configuration_batch(50, R, 200, self.rng)
       for s in range(200):
           P = project_to_link_batch(T[s, 0], T[s, 1:], 0.5)
           assert abs(P[0] @ P[1] - 1.0 / 3.0) < 1e-10

   def test_project_checks_inner_product(self):
       """Test that a wrong c is rejected."""
       x = UnitVector.basis(4, 0)
       y = UnitVector.basis(4, 1)
       with pytest.raises(ValueError):
           project_to_link(x, y, 0.5)

   def test_project_rejects_degenerate_link(self):
       """Test that |c| >= 1 is rejected."""
       x = UnitVector.basis(4, 0)
       with pytest.raises(ValueError):
           project_to_link(x, x, 1.0)

   def test_link_inner_products_match_closed_form(self):
       """Test recursive projection against r/(1+(i-1)r)."""
       k, r = 5, 0.3
       R = GramSpec(InductiveConfiguration.simplex(k, r).band_matrix())
       points = sample_configuration(20, R, self.rng)
       values = link_inner_products(points)
       expected = [r / (1 + (i - 1) * r) for i in range(1, k)]
       assert np.allclose(values, expected, atol=1e-10)
