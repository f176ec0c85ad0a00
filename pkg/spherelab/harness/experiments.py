"""
Monte Carlo experiments against the density bounds on the sphere.

Every experiment draws from substreams of one RandomStream: a fixed child
per purpose (main estimate, measures, inner estimates), and inside it one
child per chunk. Reports are therefore reproducible for any worker count.
"""

import math
from typing import Callable, Dict, List, Optional, Sequence, Union as TypingUnion

import numpy as np

from ..config.settings import Config
from ..constants.derived import (
    InvalidConfigurationError,
    check_diameter_condition,
    derive_constants,
    gram_from_inductive,
)
from ..geometry.models import InductiveConfiguration, RandomStream, check_dimension
from ..geometry.sampling import (
    sample_configuration_batch,
    sample_link_points,
    sample_subsphere_batch,
    sample_uniform_batch,
)
from ..regions.measure import measure
from ..regions.models import Antipode, Region
from ..regions.serialization import region_from_dict
from ..utils.logging import get_logger, log_performance
from ..utils.montecarlo import MonteCarloRunner
from ..utils.stats import clopper_pearson_upper, wilson_interval, z_score
from .bounds import make_bound
from .models import (
    EVIDENCE,
    EXACT,
    MARGIN,
    NOT_REFUTED,
    Criterion,
    ExperimentReport,
    ExperimentSpec,
)

# Substream purposes
MAIN_STREAM = 0
MEASURE_STREAM = 1

ORTHOGONAL_TOLERANCE = 0.1
MARGIN_SIGMAS = 5.0

RegionSource = TypingUnion[Region, Dict, Callable[[int], Region]]


class PartitionError(ValueError):
    """Raised when a coloring does not partition the sampled points."""


def as_stream(rng) -> RandomStream:
    """Accept a RandomStream or an integer seed."""
    if isinstance(rng, RandomStream):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RandomStream(int(rng))
    raise TypeError(f"Experiments need a RandomStream or integer seed, got {type(rng).__name__}")


def _region_for(source: RegionSource, n: int) -> Region:
    if isinstance(source, Region):
        return source
    if isinstance(source, dict):
        return region_from_dict(source, n)
    return source(n)


def proportion_summary(hits: int, trials: int, confidence: float) -> Dict[str, float]:
    """Estimate, binomial standard error and Wilson interval for hits/trials.

    A zero-hit outcome reports the one-sided Clopper-Pearson upper bound as
    ci_high.
    """
    p = hits / trials
    low, high = wilson_interval(hits, trials, confidence)
    if hits == 0:
        low, high = 0.0, clopper_pearson_upper(0, trials, confidence)
    elif hits == trials:
        high = 1.0
    return {
        "estimate": p,
        "std_error": math.sqrt(p * (1.0 - p) / trials),
        "ci_low": low,
        "ci_high": high,
        "zero_hit": hits == 0,
    }


class ExperimentHarness:
    """Runs experiments with a configured Monte Carlo runner."""

    def __init__(self, config: Optional[Config] = None, workers: Optional[int] = None):
        """Initialize harness."""
        self.config = config or Config()
        self.runner = MonteCarloRunner.from_config(self.config, workers=workers)
        self.logger = get_logger(__name__)

    # helpers

    def _sigma(self, region: Region, n: int, samples: int, stream: RandomStream, index: int):
        result = measure(region, n, mode="auto", samples=samples,
                         rng=stream.child(MEASURE_STREAM).child(index), runner=self.runner,
                         confidence=self.config.confidence)
        return result

    def _count(self, kernel, samples: int, stream: RandomStream, desc: str) -> np.ndarray:
        """Sum of per-sample count vectors over all chunks, in chunk order."""
        tally = self.runner.tally(kernel, samples, stream.child(MAIN_STREAM), desc=desc)
        return np.rint(np.atleast_1d(tally.total)).astype(int)

    def _check_inner_budget(self, subsphere_samples: Optional[int]) -> int:
        inner = subsphere_samples or self.config.subsphere_samples
        if inner < self.config.min_subsphere_samples:
            raise ValueError(
                f"Nested sample budget {inner} is below the minimum {self.config.min_subsphere_samples}"
            )
        return int(inner)

    def _report(self, experiment: str, inputs: dict, hits: int, samples: int, confidence: float,
                **kwargs) -> ExperimentReport:
        summary = proportion_summary(hits, samples, confidence)
        details = kwargs.pop("details", {})
        details = dict(details, zero_hit=summary["zero_hit"], hits=hits)
        return ExperimentReport(
            experiment=experiment,
            inputs=inputs,
            estimate=summary["estimate"],
            std_error=summary["std_error"],
            ci_low=summary["ci_low"],
            ci_high=summary["ci_high"],
            samples=samples,
            details=details,
            **kwargs,
        )

    # experiments

    @log_performance
    def pairwise_density(self, A: Region, B: Region, r: float, n: int, samples: int, rng,
                         confidence: Optional[float] = None) -> ExperimentReport:
        """Pr(x in A, y in B) for x uniform and y uniform on S_{x,r}."""
        n = check_dimension(n)
        if not -1.0 < r < 1.0:
            raise ValueError(f"r must lie in (-1, 1), got {r}")
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        sigma_a = self._sigma(A, n, samples, stream, 0)
        sigma_b = self._sigma(B, n, samples, stream, 1)

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            X = sample_uniform_batch(n, size, gen)
            Y = sample_subsphere_batch(X, r, gen)
            return (A.contains_batch(X) & B.contains_batch(Y)).astype(float)

        hits = int(self._count(kernel, samples, stream, "pairwise density")[0])
        report = self._report(
            "pairwise_density",
            {"n": n, "r": r, "samples": samples, "seed": stream.seed,
             "regions": [A.to_dict(), B.to_dict()]},
            hits, samples, confidence,
            details={"sigma_A": sigma_a.to_dict(), "sigma_B": sigma_b.to_dict()},
        )

        main = make_bound("two_set_density_main_term", sigma_a=sigma_a.value, sigma_b=sigma_b.value, r=r)
        report.bounds.append(main)
        margin = report.estimate - main.value
        report.details["main_term_margin"] = margin
        # the main term carries an O_r(1/n) sqrt(sigma_A sigma_B) correction at finite n
        report.criteria.append(Criterion(
            name="two_set_density_main_term",
            mode=MARGIN,
            passed=margin >= -MARGIN_SIGMAS * report.std_error,
            assertable=False,
            detail=f"margin {margin!r}, std_error {report.std_error!r}; slack O_r(1/n)",
            bound=main.formula,
        ))
        if r == 0.0:
            pair = make_bound("orthogonal_pair_fraction", sigma_a=sigma_a.value, sigma_b=sigma_b.value, factor=0.9)
            report.bounds.append(pair)
            report.criteria.append(Criterion(
                name="orthogonal_pair_fraction",
                mode=EVIDENCE,
                passed=report.ci_low >= pair.value,
                assertable=True,
                detail=f"ci_low {report.ci_low!r} vs 0.9 sigma(A) sigma(B) = {pair.value!r}",
                bound=pair.formula,
            ))
        self.logger.info(f"pairwise_density n={n} r={r}: {report.estimate:.6g} ({hits}/{samples})")
        return report

    @log_performance
    def good_set_mass(self, A: Region, r: float, n: int, samples: int, rng,
                      subsphere_samples: Optional[int] = None,
                      confidence: Optional[float] = None) -> ExperimentReport:
        """sigma(A_good) where x in A is good if sigma_{x,r}(A) >= 1/2 sigma(A)^{(1+|r|)/(1-|r|)}."""
        n = check_dimension(n)
        if not -1.0 < r < 1.0:
            raise ValueError(f"r must lie in (-1, 1), got {r}")
        inner = self._check_inner_budget(subsphere_samples)
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        sigma = self._sigma(A, n, samples, stream, 0)
        if sigma.value <= 0.0:
            raise ValueError("good_set_mass needs sigma(A) > 0")
        threshold = make_bound("good_vector_threshold", sigma=sigma.value, r=r)

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            X = sample_uniform_batch(n, size, gen)
            in_a = A.contains_batch(X)
            good = np.zeros(size, dtype=bool)
            for i in np.flatnonzero(in_a):
                link = sample_link_points(X[i], r, inner, gen)
                good[i] = A.contains_batch(link).mean() >= threshold.value
            return np.column_stack([in_a, good]).astype(float)

        in_a, good = (int(v) for v in self._count(kernel, samples, stream, "good set"))
        report = self._report(
            "good_set_mass",
            {"n": n, "r": r, "samples": samples, "subsphere_samples": inner,
             "seed": stream.seed, "regions": [A.to_dict()]},
            good, samples, confidence,
            details={
                "sigma_A": sigma.to_dict(),
                "points_in_A": in_a,
                "good_fraction_of_A": good / in_a if in_a else None,
            },
        )
        mass = make_bound("good_set_mass", sigma=sigma.value, r=r)
        report.bounds.extend([mass, threshold])
        report.criteria.append(Criterion(
            name="good_set_mass",
            mode=NOT_REFUTED,
            passed=report.ci_high >= mass.value,
            assertable=False,
            detail="bound holds up to an O_r(1/n) sigma(A) term",
            bound=mass.formula,
        ))
        return report

    @log_performance
    def orthogonal_concentration(self, A: Region, n: int, samples: int, rng,
                                 subsphere_samples: Optional[int] = None,
                                 confidence: Optional[float] = None,
                                 tolerance: float = ORTHOGONAL_TOLERANCE) -> ExperimentReport:
        """Fraction of x with |sigma_{x,0}(A)/sigma(A) - 1| > tolerance."""
        n = check_dimension(n)
        inner = self._check_inner_budget(subsphere_samples)
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        sigma = self._sigma(A, n, samples, stream, 0)
        if sigma.value <= 0.0:
            raise ValueError("orthogonal_concentration needs sigma(A) > 0")

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            X = sample_uniform_batch(n, size, gen)
            exceptional = np.zeros(size)
            for i in range(size):
                ratio = A.contains_batch(sample_link_points(X[i], 0.0, inner, gen)).mean() / sigma.value
                exceptional[i] = abs(ratio - 1.0) > tolerance
            return exceptional

        hits = int(self._count(kernel, samples, stream, "orthogonal concentration")[0])
        return self._report(
            "orthogonal_concentration",
            {"n": n, "samples": samples, "subsphere_samples": inner, "seed": stream.seed,
             "tolerance": tolerance, "regions": [A.to_dict()]},
            hits, samples, confidence,
            details={"sigma_A": sigma.to_dict()},
        )

    def concentration_trend(self, A: RegionSource, n_grid: Sequence[int], samples: int, rng,
                            subsphere_samples: Optional[int] = None,
                            confidence: Optional[float] = None) -> ExperimentReport:
        """orthogonal_concentration across an n-grid; reports the decay, asserts nothing."""
        stream = as_stream(rng)
        reports = [
            self.orthogonal_concentration(_region_for(A, n), n, samples, stream.child(2 + i),
                                          subsphere_samples, confidence)
            for i, n in enumerate(n_grid)
        ]
        fractions = [rep.estimate for rep in reports]
        trend = self._trend_report("concentration_trend", reports, stream, n_grid, samples)
        trend.details["exceptional_fractions"] = fractions
        trend.details["nonincreasing"] = all(b <= a for a, b in zip(fractions, fractions[1:]))
        return trend

    def _trend_report(self, name: str, reports: List[ExperimentReport], stream: RandomStream,
                      n_grid: Sequence[int], samples: int) -> ExperimentReport:
        last = reports[-1]
        rows = []
        for n, rep in zip(n_grid, reports):
            row = rep.csv_rows()[0]
            row["experiment"] = name
            row["n"] = n
            rows.append(row)
        return ExperimentReport(
            experiment=name,
            inputs={"n_grid": list(n_grid), "samples": samples, "seed": stream.seed,
                    "per_n": [rep.inputs for rep in reports]},
            estimate=last.estimate,
            std_error=last.std_error,
            ci_low=last.ci_low,
            ci_high=last.ci_high,
            samples=last.samples,
            rows=rows,
        )

    def _containment(self, regions: List[Region], config: InductiveConfiguration, n: int,
                     samples: int, stream: RandomStream, desc: str) -> int:
        valid, reason = check_diameter_condition(config)
        if not valid:
            raise InvalidConfigurationError(f"Refusing to sample: {reason}")
        R = gram_from_inductive(config)
        if R.k > n:
            raise ValueError(f"Cannot place {R.k} points in R^{n}")

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            tuples = sample_configuration_batch(n, R, size, gen)
            inside = np.ones(size, dtype=bool)
            for i, region in enumerate(regions):
                inside &= region.contains_batch(tuples[:, i, :])
            return inside.astype(float)

        return int(self._count(kernel, samples, stream, desc)[0])

    @log_performance
    def tuple_containment(self, A: Region, config: InductiveConfiguration, n: int, samples: int, rng,
                          confidence: Optional[float] = None) -> ExperimentReport:
        """Pr(x_1, ..., x_k all in A) for tuples uniform on Delta(n, R)."""
        n = check_dimension(n)
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        hits = self._containment([A] * config.k, config, n, samples, stream, "tuple containment")
        sigma = self._sigma(A, n, samples, stream, 0)
        constants = derive_constants(config)
        report = self._report(
            "tuple_containment",
            {"n": n, "r_values": list(config.r_values), "samples": samples,
             "seed": stream.seed, "regions": [A.to_dict()]},
            hits, samples, confidence,
            details={"sigma_A": sigma.to_dict(), "C_R": constants.C_R, "eps_R": constants.eps_R},
        )
        reference = make_bound("inductive_reference", sigma=sigma.value, r_values=list(config.r_values))
        report.bounds.append(reference)
        report.details["ratio_to_reference"] = report.estimate / reference.value if reference.value > 0 else None
        if all(r == 0.0 for r in config.r_values):
            report.bounds.append(make_bound("orthogonal_simplex_reference", sigma=sigma.value, k=config.k))
        return report

    @log_performance
    def mixed_sign_containment(self, A: Region, config: InductiveConfiguration, b: int, n: int,
                               samples: int, rng, confidence: Optional[float] = None) -> ExperimentReport:
        """Pr(x_1..x_b in A, x_{b+1}..x_k in -A); reported without a bound."""
        n = check_dimension(n)
        if not 0 <= b <= config.k:
            raise ValueError(f"b must lie in [0, {config.k}], got {b}")
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        regions = [A] * b + [Antipode(A)] * (config.k - b)
        hits = self._containment(regions, config, n, samples, stream, "mixed sign containment")
        sigma = self._sigma(A, n, samples, stream, 0)
        return self._report(
            "mixed_sign_containment",
            {"n": n, "r_values": list(config.r_values), "b": b, "samples": samples,
             "seed": stream.seed, "regions": [A.to_dict()]},
            hits, samples, confidence,
            details={"sigma_A": sigma.to_dict()},
        )

    @log_performance
    def reverse_hc_check(self, f_region: Region, g_region: Region, r: float, n: int, samples: int, rng,
                         confidence: Optional[float] = None) -> ExperimentReport:
        """E_{x.y=r}[f(x) g(y)] against ||f||_p ||g||_p at p = 1 - |r| for indicators.

        r < 0 is run as |r| with g replaced by its antipodal preimage.
        """
        n = check_dimension(n)
        if not -1.0 < r < 1.0:
            raise ValueError(f"r must lie in (-1, 1), got {r}")
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        g_eff = Antipode(g_region) if r < 0 else g_region
        r_eff = abs(r)
        p = 1.0 - r_eff
        sigma_f = self._sigma(f_region, n, samples, stream, 0)
        sigma_g = self._sigma(g_region, n, samples, stream, 1)

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            X = sample_uniform_batch(n, size, gen)
            Y = sample_subsphere_batch(X, r_eff, gen)
            return (f_region.contains_batch(X) & g_eff.contains_batch(Y)).astype(float)

        hits = int(self._count(kernel, samples, stream, "reverse hc")[0])
        report = self._report(
            "reverse_hc_check",
            {"n": n, "r": r, "p": p, "samples": samples, "seed": stream.seed,
             "regions": [f_region.to_dict(), g_region.to_dict()]},
            hits, samples, confidence,
            details={"sigma_f": sigma_f.to_dict(), "sigma_g": sigma_g.to_dict()},
        )
        bound = make_bound("reverse_hc_product_norm", sigma_f=sigma_f.value, sigma_g=sigma_g.value, p=p)
        report.bounds.append(bound)
        margin = report.estimate - bound.value
        report.details["margin"] = margin
        report.details["negative_part"] = max(0.0, -margin)
        report.details["l2_scale"] = math.sqrt(sigma_f.value * sigma_g.value)
        report.criteria.append(Criterion(
            name="reverse_hc_margin",
            mode=MARGIN,
            passed=margin >= -MARGIN_SIGMAS * report.std_error,
            assertable=False,
            detail=f"margin {margin!r}, std_error {report.std_error!r}; slack O_r(1/n)",
            bound=bound.formula,
        ))
        return report

    def reverse_hc_trend(self, f_region: RegionSource, g_region: RegionSource, r: float,
                         n_grid: Sequence[int], samples: int, rng,
                         confidence: Optional[float] = None) -> ExperimentReport:
        """reverse_hc_check across an n-grid; reports whether the negative part shrinks."""
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        reports = [
            self.reverse_hc_check(_region_for(f_region, n), _region_for(g_region, n), r, n, samples,
                                  stream.child(2 + i), confidence)
            for i, n in enumerate(n_grid)
        ]
        trend = self._trend_report("reverse_hc_trend", reports, stream, n_grid, samples)
        for row, rep in zip(trend.rows, reports):
            row["margin"] = rep.details["margin"]
            row["negative_part"] = rep.details["negative_part"]
        trend.details["negative_part_shrinking"] = negative_part_shrinking(reports, confidence)
        trend.details["margins"] = [rep.details["margin"] for rep in reports]
        return trend

    @log_performance
    def ramsey_coloring_demo(self, colors: List[Region], config: InductiveConfiguration, n: int,
                             samples: int, rng, confidence: Optional[float] = None) -> ExperimentReport:
        """Per-color frequency of monochromatic configuration copies."""
        n = check_dimension(n)
        if not colors:
            raise PartitionError("A coloring needs at least one color")
        valid, reason = check_diameter_condition(config)
        if not valid:
            raise InvalidConfigurationError(f"Refusing to sample: {reason}")
        stream = as_stream(rng)
        confidence = confidence or self.config.confidence
        R = gram_from_inductive(config)
        if R.k > n:
            raise ValueError(f"Cannot place {R.k} points in R^{n}")

        def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
            points = sample_configuration_batch(n, R, size, gen).reshape(-1, n)
            membership = np.stack([c.contains_batch(points) for c in colors])
            per_point = membership.sum(axis=0)
            if np.any(per_point != 1):
                bad = int(np.count_nonzero(per_point != 1))
                raise PartitionError(f"{bad} sampled points lie in zero or several colors")
            mono = membership.reshape(len(colors), size, R.k).all(axis=2)
            return mono.T.astype(float)

        counts = self._count(kernel, samples, stream, "ramsey coloring")
        frequencies = [int(c) / samples for c in counts]
        sigmas = [self._sigma(c, n, samples, stream, i).to_dict() for i, c in enumerate(colors)]
        best = int(np.argmax(counts))
        report = self._report(
            "ramsey_coloring_demo",
            {"n": n, "r_values": list(config.r_values), "samples": samples, "seed": stream.seed,
             "regions": [c.to_dict() for c in colors]},
            int(counts[best]), samples, confidence,
            details={"frequencies": frequencies, "counts": [int(c) for c in counts],
                     "color_measures": sigmas, "best_color": best},
        )
        report.criteria.append(Criterion(
            name="monochromatic_copy_found",
            mode=EXACT,
            passed=bool(counts.max() > 0),
            assertable=True,
            detail=f"max monochromatic frequency {max(frequencies)!r}",
        ))
        return report

    # dispatch

    def run(self, spec: ExperimentSpec) -> ExperimentReport:
        """Validate a spec and run the experiment it names."""
        spec.validate(self.config.min_samples)
        stream = RandomStream(spec.seed)
        name = spec.experiment
        self.logger.info(f"Running {name} (samples={spec.samples}, seed={spec.seed})")
        if name.endswith("_trend"):
            docs = spec.regions
            if name == "concentration_trend":
                return self.concentration_trend(docs[0], spec.n_grid, spec.samples, stream,
                                                spec.subsphere_samples, spec.confidence)
            return self.reverse_hc_trend(docs[0], docs[1], spec.r, spec.n_grid, spec.samples, stream,
                                         spec.confidence)

        regions = spec.materialize_regions(spec.n)
        n = spec.n
        if name == "pairwise_density":
            return self.pairwise_density(regions[0], regions[1], spec.r, n, spec.samples, stream, spec.confidence)
        if name == "good_set_mass":
            return self.good_set_mass(regions[0], spec.r, n, spec.samples, stream,
                                      spec.subsphere_samples, spec.confidence)
        if name == "orthogonal_concentration":
            return self.orthogonal_concentration(regions[0], n, spec.samples, stream,
                                                 spec.subsphere_samples, spec.confidence)
        if name == "tuple_containment":
            return self.tuple_containment(regions[0], spec.configuration, n, spec.samples, stream,
                                          spec.confidence)
        if name == "mixed_sign_containment":
            return self.mixed_sign_containment(regions[0], spec.configuration, spec.mixed_sign_b, n,
                                               spec.samples, stream, spec.confidence)
        if name == "reverse_hc_check":
            return self.reverse_hc_check(regions[0], regions[1], spec.r, n, spec.samples, stream,
                                         spec.confidence)
        return self.ramsey_coloring_demo(regions, spec.configuration, n, spec.samples, stream, spec.confidence)


def negative_part_shrinking(reports: List[ExperimentReport], confidence: float = 0.95) -> bool:
    """Whether max(0, -margin) is nonincreasing along the grid within the combined CI."""
    z = z_score(confidence)
    for prev, cur in zip(reports, reports[1:]):
        slack = z * math.hypot(prev.std_error, cur.std_error)
        if cur.details["negative_part"] > prev.details["negative_part"] + slack:
            return False
    return True


def run_experiment(spec: ExperimentSpec, config: Optional[Config] = None,
                   workers: Optional[int] = None) -> ExperimentReport:
    """Run one spec with a fresh harness."""
    return ExperimentHarness(config, workers=workers).run(spec)
