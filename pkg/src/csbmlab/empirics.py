"""Monte Carlo and exact empirical measurement: class statistics, sweep
harnesses, and verification of every probabilistic statement in scope.

Trials are indexed; every random stream is derived from (seed, trial_index)
so aggregation is independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import theory
from .csbm import CsbmParams, Features, Graph, check_regime, sample_features, sample_graph
from .propagation import (
    APPNP,
    PPNP,
    RANDOM_WALK,
    SYMMETRIC,
    OperatorSpec,
    appnp_step,
    exact_variance_profile,
    ppnp,
    propagate,
    rw_step,
    sym_step,
)
from .seeding import SPLIT_STREAM, rng_for
from .structure import (
    bfs_distances,
    contains_triangle,
    is_bipartite,
    random_connected_graph,
    triangle_with_pendant,
)

STATEMENTS = (
    "MeanGap",
    "VarianceBounds",
    "DegreeConcentration",
    "NeighborhoodBound",
    "VarianceLimit",
    "SymMonotone",
    "ReluNoGain",
)

POPULATION_RULE = "population"
EMPIRICAL_RULE = "empirical"


@dataclass(frozen=True)
class ClassStats:
    """Empirical per-class moments at one depth: class means, the pooled
    (n-1 denominator) within-class variance averaged over classes and
    dimensions, and pairwise L2 distances between class means."""

    depth: int
    class_means: np.ndarray
    pooled_within_var: float
    pairwise_mean_dists: np.ndarray

    @property
    def mixing_metric(self) -> float:
        """Mean off-diagonal pairwise distance (the single inter-class mean
        distance when C = 2)."""
        c = self.pairwise_mean_dists.shape[0]
        if c < 2:
            return 0.0
        off = ~np.eye(c, dtype=bool)
        return float(self.pairwise_mean_dists[off].mean())


@dataclass(frozen=True)
class SweepRow:
    """One (operator, depth) cell of a layerwise sweep, averaged over trials."""

    depth: int
    operator: str
    train_acc: float
    test_acc: float
    train_acc_stderr: float
    test_acc_stderr: float
    mixing_metric: float
    denoising_metric: float
    empirical_z: float


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one statement check: fraction of unit checks that passed,
    the worst observed deviation, and (where meaningful) the smallest
    constant that would make the bound hold across trials."""

    statement: str
    trials: int
    pass_fraction: float
    worst_deviation: float
    implied_constant: float
    passed: bool
    threshold: float
    detail: str = ""


@dataclass(frozen=True)
class Split:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray


@dataclass(frozen=True)
class MomentCurves:
    """Trial-averaged per-depth gap and pooled within-class variance with
    across-trial standard errors."""

    depths: np.ndarray
    gap_mean: np.ndarray
    gap_stderr: np.ndarray
    var_mean: np.ndarray
    var_stderr: np.ndarray


def make_split(n_nodes: int, fractions: tuple[float, float, float], rng: np.random.Generator) -> Split:
    """Seeded permutation split; fractions (train, val, test) must sum to 1."""
    if abs(sum(fractions) - 1.0) > 1e-9 or any(f <= 0 for f in fractions):
        raise ValueError(f"split fractions must be positive and sum to 1, got {fractions}")
    perm = rng.permutation(n_nodes)
    n_train = int(round(fractions[0] * n_nodes))
    n_val = int(round(fractions[1] * n_nodes))
    return Split(train=perm[:n_train], val=perm[n_train : n_train + n_val], test=perm[n_train + n_val :])


def class_stats(h: np.ndarray, labels: np.ndarray, depth: int = 0) -> ClassStats:
    """Per-class empirical means and the pooled unbiased within-class
    variance of the rows of h."""
    hm = np.asarray(h, dtype=np.float64)
    if hm.ndim == 1:
        hm = hm[:, None]
    labels = np.asarray(labels)
    if len(labels) != hm.shape[0]:
        raise ValueError("labels length must match representation rows")
    classes = np.unique(labels)
    means = np.empty((len(classes), hm.shape[1]))
    variances = []
    for i, c in enumerate(classes):
        rows = hm[labels == c]
        if rows.shape[0] == 0:
            raise ValueError(f"class {c} is empty")
        means[i] = rows.mean(axis=0)
        if rows.shape[0] > 1:
            variances.append(rows.var(axis=0, ddof=1).mean())
    pooled = float(np.mean(variances)) if variances else 0.0
    diffs = means[:, None, :] - means[None, :, :]
    dists = np.sqrt((diffs**2).sum(axis=2))
    return ClassStats(depth=depth, class_means=means, pooled_within_var=pooled, pairwise_mean_dists=dists)


def empirical_zscore(stats: ClassStats) -> float:
    """Half the inter-class mean distance over the pooled within-class
    standard deviation (reduces to z = gap/(2 sigma) at d = 1)."""
    sd = math.sqrt(stats.pooled_within_var)
    if sd == 0.0:
        return math.inf if stats.mixing_metric > 0 else 0.0
    return 0.5 * stats.mixing_metric / sd


def _project_and_threshold(
    h: np.ndarray, direction: np.ndarray, threshold: float, low_label: int, high_label: int
) -> np.ndarray:
    scores = h @ direction
    return np.where(scores > threshold, high_label, low_label)


def threshold_accuracy(h: np.ndarray, labels: np.ndarray, split: Split) -> tuple[float, float]:
    """Two-class accuracy of the midpoint rule with train-estimated means:
    project onto the empirical mean-difference direction and threshold at the
    projected midpoint."""
    hm = np.asarray(h, dtype=np.float64)
    if hm.ndim == 1:
        hm = hm[:, None]
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if len(classes) != 2:
        raise ValueError(f"threshold rule needs exactly two classes, got {len(classes)}")
    lo, hi = int(classes[0]), int(classes[1])
    train_labels = labels[split.train]
    if lo not in train_labels or hi not in train_labels:
        missing = lo if lo not in train_labels else hi
        raise ValueError(f"train split is missing class {missing}")
    m_lo = hm[split.train][train_labels == lo].mean(axis=0)
    m_hi = hm[split.train][train_labels == hi].mean(axis=0)
    direction = m_hi - m_lo
    threshold = float(direction @ (m_lo + m_hi) / 2.0)
    pred = _project_and_threshold(hm, direction, threshold, lo, hi)
    train_acc = float((pred[split.train] == labels[split.train]).mean())
    test_acc = float((pred[split.test] == labels[split.test]).mean())
    return train_acc, test_acc


def population_accuracy(
    h: np.ndarray, labels: np.ndarray, split: Split, class_means: tuple[float, float]
) -> tuple[float, float]:
    """Two-class accuracy of the fixed generative-midpoint hyperplane
    sum_j x_j > (d/2)(mu1 + mu2), the Bayes rule with known class means.

    Unlike the train-estimated rule this threshold cannot track the common
    collapse value of deep convolutions, so it exposes the mixing effect.
    """
    hm = np.asarray(h, dtype=np.float64)
    if hm.ndim == 1:
        hm = hm[:, None]
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if len(classes) != 2:
        raise ValueError(f"population rule needs exactly two classes, got {len(classes)}")
    lo, hi = int(classes[0]), int(classes[1])
    d = hm.shape[1]
    direction = np.ones(d)
    threshold = d / 2.0 * (class_means[0] + class_means[1])
    pred = _project_and_threshold(hm, direction, threshold, lo, hi)
    train_acc = float((pred[split.train] == labels[split.train]).mean())
    test_acc = float((pred[split.test] == labels[split.test]).mean())
    return train_acc, test_acc


def _advance(graph: Graph, h: np.ndarray, x: np.ndarray, op: OperatorSpec) -> np.ndarray:
    if op.kind == RANDOM_WALK:
        return rw_step(graph, h)
    if op.kind == SYMMETRIC:
        return sym_step(graph, h)
    if op.kind == APPNP:
        return appnp_step(graph, h, x, op.alpha)
    raise AssertionError(op.kind)


def layerwise_sweep(
    source: CsbmParams | tuple[Graph, Features, np.ndarray],
    operators: list[OperatorSpec],
    n_max: int,
    trials: int,
    split_fractions: tuple[float, float, float] = (0.6, 0.2, 0.2),
    rule: str = "auto",
    seed: int | None = None,
) -> list[SweepRow]:
    """Per-operator, per-depth accuracy and mixing/denoising metrics.

    CSBM sources resample graph and features each trial; ingested sources
    keep them fixed and only the split varies.  Depth n+1 reuses depth n
    (one propagation pass per operator per trial).  rule selects the
    decision boundary: "population" (generative midpoint; default for CSBM
    sources, where it reflects the Bayes analysis) or "empirical"
    (train-estimated; the only option without known class means).
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    is_csbm = isinstance(source, CsbmParams)
    if rule == "auto":
        rule = POPULATION_RULE if is_csbm else EMPIRICAL_RULE
    if rule not in (POPULATION_RULE, EMPIRICAL_RULE):
        raise ValueError(f"unknown decision rule {rule!r}")
    if rule == POPULATION_RULE and not is_csbm:
        raise ValueError("population rule needs generative class means (CSBM source)")
    if is_csbm and seed is None:
        seed = source.seed
    if seed is None:
        seed = 0

    n_ops = len(operators)
    shape = (n_ops, n_max + 1, trials)
    train_acc = np.zeros(shape)
    test_acc = np.zeros(shape)
    mixing = np.zeros(shape)
    denoising = np.zeros(shape)
    emp_z = np.zeros(shape)

    for t in range(trials):
        if is_csbm:
            graph = sample_graph(source, t)
            feats = sample_features(source, graph.labels, t)
        else:
            graph, feats, labels_in = source
            if not isinstance(feats, Features):
                feats = Features(matrix=np.asarray(feats, dtype=np.float64), class_means=None)
        labels = graph.labels if is_csbm else np.asarray(labels_in)
        split = make_split(graph.n_nodes, split_fractions, rng_for(seed, t, SPLIT_STREAM))
        x = feats.matrix

        for oi, op in enumerate(operators):
            if op.kind == PPNP:
                h_fixed, _ = ppnp(graph, x, op.alpha, op.truncation)
            h = x.copy()
            for n in range(n_max + 1):
                if op.kind == PPNP:
                    h_eval = h_fixed
                else:
                    if n > 0:
                        h = _advance(graph, h, x, op)
                    h_eval = h
                if op.terminal_relu:
                    h_eval = np.maximum(h_eval, 0.0)
                stats = class_stats(h_eval, labels, depth=n)
                mixing[oi, n, t] = stats.mixing_metric
                denoising[oi, n, t] = stats.pooled_within_var
                emp_z[oi, n, t] = empirical_zscore(stats)
                if rule == POPULATION_RULE:
                    tr, te = population_accuracy(h_eval, labels, split, feats.class_means)
                else:
                    tr, te = threshold_accuracy(h_eval, labels, split)
                train_acc[oi, n, t] = tr
                test_acc[oi, n, t] = te

    def stderr(a: np.ndarray) -> np.ndarray:
        if trials == 1:
            return np.zeros(a.shape[:2])
        return a.std(axis=2, ddof=1) / math.sqrt(trials)

    rows = []
    tr_se, te_se = stderr(train_acc), stderr(test_acc)
    for oi, op in enumerate(operators):
        for n in range(n_max + 1):
            rows.append(
                SweepRow(
                    depth=n,
                    operator=op.label,
                    train_acc=float(train_acc[oi, n].mean()),
                    test_acc=float(test_acc[oi, n].mean()),
                    train_acc_stderr=float(tr_se[oi, n]),
                    test_acc_stderr=float(te_se[oi, n]),
                    mixing_metric=float(mixing[oi, n].mean()),
                    denoising_metric=float(denoising[oi, n].mean()),
                    empirical_z=float(emp_z[oi, n].mean()),
                )
            )
    return rows


def monte_carlo_moments(
    params: CsbmParams, op: OperatorSpec, n_max: int, trials: int
) -> MomentCurves:
    """Trial-averaged empirical gap (class-2 mean minus class-1 mean, averaged
    over feature dimensions) and pooled within-class variance per depth."""
    if trials < 2:
        raise ValueError(f"trials must be >= 2 for standard errors, got {trials}")
    gaps = np.zeros((trials, n_max + 1))
    variances = np.zeros((trials, n_max + 1))
    for t in range(trials):
        graph = sample_graph(params, t)
        feats = sample_features(params, graph.labels, t)
        x = feats.matrix
        h = x.copy()
        if op.kind == PPNP:
            h_fixed, _ = ppnp(graph, x, op.alpha, op.truncation)
        for n in range(n_max + 1):
            if op.kind == PPNP:
                h_eval = h_fixed
            else:
                if n > 0:
                    h = _advance(graph, h, x, op)
                h_eval = h
            stats = class_stats(h_eval, graph.labels, depth=n)
            gaps[t, n] = float((stats.class_means[1] - stats.class_means[0]).mean())
            variances[t, n] = stats.pooled_within_var
    sq = math.sqrt(trials)
    return MomentCurves(
        depths=np.arange(n_max + 1),
        gap_mean=gaps.mean(axis=0),
        gap_stderr=gaps.std(axis=0, ddof=1) / sq,
        var_mean=variances.mean(axis=0),
        var_stderr=variances.std(axis=0, ddof=1) / sq,
    )


def counterexample_search(
    graphs: list[Graph], n_max: int, sigma2: float = 1.0, tol: float = 1e-12
) -> list[tuple[Graph, int, int]]:
    """Exhaustive scan for per-node variance increases under the random-walk
    operator: returns (graph, node, depth) for every strict increase from
    depth-1 to depth (> tol)."""
    hits: list[tuple[Graph, int, int]] = []
    for graph in graphs:
        prev = exact_variance_profile(graph, OperatorSpec.random_walk(), 0, sigma2).per_node
        for n in range(1, n_max + 1):
            cur = exact_variance_profile(graph, OperatorSpec.random_walk(), n, sigma2).per_node
            increased = np.flatnonzero(cur > prev + tol)
            hits.extend((graph, int(v), n) for v in increased)
            prev = cur
    return hits


# ---------------------------------------------------------------------------
# Statement verification harnesses
# ---------------------------------------------------------------------------


def _verify_mean_gap(
    params: CsbmParams, trials: int, cfg: theory.ConcentrationConfig, c_budget: float
) -> VerificationReport:
    """Empirical gap vs the population formula: the implied constant is the
    largest |deviation| * sqrt(N(p+q)) over trials and depths 1..K."""
    radius_unit = 1.0 / math.sqrt(params.n_nodes * (params.p_intra + params.q_inter))
    k_max = cfg.horizon_k
    worst = 0.0
    inside = 0
    total = 0
    op = OperatorSpec.random_walk()
    for t in range(trials):
        graph = sample_graph(params, t)
        feats = sample_features(params, graph.labels, t)
        h = feats.matrix.copy()
        for k in range(1, k_max + 1):
            h = _advance(graph, h, feats.matrix, op)
            stats = class_stats(h, graph.labels, depth=k)
            emp = float((stats.class_means[1] - stats.class_means[0]).mean())
            dev = abs(emp - theory.mean_gap(params, k))
            worst = max(worst, dev)
            total += 1
            if dev <= c_budget * radius_unit:
                inside += 1
    implied = worst / radius_unit
    return VerificationReport(
        statement="MeanGap",
        trials=trials,
        pass_fraction=inside / total,
        worst_deviation=worst,
        implied_constant=implied,
        passed=bool(implied <= c_budget),
        threshold=c_budget,
        detail=f"max |empirical - theory| * sqrt(N(p+q)) over depths 1..{k_max}",
    )


def _verify_variance_bounds(
    params: CsbmParams, trials: int, depths: tuple[int, ...], min_pass: float
) -> VerificationReport:
    """Pooled within-class variance against the un-floored band
    [(min(a,2)/10)(Np)^-n, upper] * sigma2 (the simulated within-class
    variance tracks the decaying tree bound, not the 1/N ensemble floor)."""
    n_max = max(depths)
    inside = 0
    total = 0
    worst = 0.0
    raw = np.zeros((trials, n_max + 1))
    for t in range(trials):
        graph = sample_graph(params, t)
        feats = sample_features(params, graph.labels, t)
        h = feats.matrix.copy()
        for n in range(1, n_max + 1):
            h = rw_step(graph, h)
            raw[t, n] = class_stats(h, graph.labels).pooled_within_var
    for n in depths:
        lower, upper = theory.variance_bounds(params, n, floored=False)
        for t in range(trials):
            v = raw[t, n]
            total += 1
            if lower <= v <= upper:
                inside += 1
            else:
                worst = max(worst, lower - v if v < lower else v - upper)
    frac = inside / total
    return VerificationReport(
        statement="VarianceBounds",
        trials=trials,
        pass_fraction=frac,
        worst_deviation=worst,
        implied_constant=float("nan"),
        passed=bool(frac >= min_pass),
        threshold=min_pass,
        detail=f"per-trial pooled within-class variance inside the un-floored band, depths {list(depths)}",
    )


def _verify_degree_concentration(params: CsbmParams, trials: int, min_pass: float) -> VerificationReport:
    """Fraction of nodes with degree inside [dbar/2, 3 dbar/2]; the implied
    constant is the smallest half-width multiple covering every node."""
    dbar = (params.half - 1) * params.p_intra + params.half * params.q_inter
    inside = 0
    total = 0
    worst_rel = 0.0
    for t in range(trials):
        graph = sample_graph(params, t)
        deg = graph.degree_vector
        rel = np.abs(deg - dbar) / dbar
        worst_rel = max(worst_rel, float(rel.max()))
        inside += int((rel <= 0.5).sum())
        total += graph.n_nodes
    frac = inside / total
    return VerificationReport(
        statement="DegreeConcentration",
        trials=trials,
        pass_fraction=frac,
        worst_deviation=worst_rel,
        implied_constant=worst_rel,
        passed=bool(frac >= min_pass),
        threshold=min_pass,
        detail=f"degrees inside [dbar/2, 3dbar/2], dbar={dbar:.4g}",
    )


def _verify_neighborhood_bound(
    params: CsbmParams, trials: int, depths: tuple[int, ...], min_pass: float, root_sample: int = 100
) -> VerificationReport:
    """Ball sizes |N_n| against (10/min(a,2)) (Np)^n: pass per trial when every
    inspected root at every depth is within the bound; implied constant is
    the largest |N_n| min(a,2) / (Np)^n observed (the 10 replacement)."""
    m = min(check_regime(params).a_parameter, 2.0)
    passed_trials = 0
    worst_ratio = 0.0
    implied = 0.0
    max_depth = max(depths)
    for t in range(trials):
        graph = sample_graph(params, t)
        rng = rng_for(params.seed, t, SPLIT_STREAM)
        if graph.n_nodes > 2000 or max_depth > 1:
            roots = rng.choice(graph.n_nodes, size=min(root_sample, graph.n_nodes), replace=False)
        else:
            roots = None
        ok = True
        for n in depths:
            bound = theory.neighborhood_bound(params, n)
            if n == 1:
                balls = graph.degree_vector + 1  # exact for every node
            else:
                sizes = []
                for root in roots:
                    dist = bfs_distances(graph, int(root))
                    sizes.append(int(((dist >= 0) & (dist <= n)).sum()))
                balls = np.asarray(sizes)
            biggest = float(balls.max())
            implied = max(implied, biggest * m / (params.n_nodes * params.p_intra) ** n)
            ratio = biggest / bound
            worst_ratio = max(worst_ratio, ratio)
            if biggest > bound:
                ok = False
        passed_trials += int(ok)
    frac = passed_trials / trials
    return VerificationReport(
        statement="NeighborhoodBound",
        trials=trials,
        pass_fraction=frac,
        worst_deviation=worst_ratio,
        implied_constant=implied,
        passed=bool(frac >= min_pass),
        threshold=min_pass,
        detail=f"ball sizes vs (10/min(a,2))(Np)^n at depths {list(depths)}",
    )


def _verify_variance_limit(graph: Graph, sigma2: float, depth: int, tol: float) -> VerificationReport:
    """Exact profile at large depth against the stationary limit
    ||d||^2/||d||_1^2 * sigma2."""
    limit = theory.variance_limit(graph) * sigma2
    profile = exact_variance_profile(graph, OperatorSpec.random_walk(), depth, sigma2)
    dev = float(np.abs(profile.per_node - limit).max())
    return VerificationReport(
        statement="VarianceLimit",
        trials=1,
        pass_fraction=1.0 if dev < tol else 0.0,
        worst_deviation=dev,
        implied_constant=float("nan"),
        passed=bool(dev < tol),
        threshold=tol,
        detail=f"max |profile(n={depth}) - limit| on {graph.n_nodes} nodes",
    )


def _verify_sym_monotone(
    n_graphs: int, max_nodes: int, n_max: int, seed: int, tol: float = 1e-12
) -> VerificationReport:
    """Per-node variance under the symmetric operator must be non-increasing
    in depth on every connected graph."""
    rng = np.random.Generator(np.random.PCG64(seed))
    increases = 0
    total = 0
    worst = 0.0
    for _ in range(n_graphs):
        graph = random_connected_graph(rng, max_nodes=max_nodes)
        prev = exact_variance_profile(graph, OperatorSpec.symmetric(), 0, 1.0).per_node
        for n in range(1, n_max + 1):
            cur = exact_variance_profile(graph, OperatorSpec.symmetric(), n, 1.0).per_node
            delta = cur - prev
            worst = max(worst, float(delta.max()))
            increases += int((delta > tol).sum())
            total += len(delta)
            prev = cur
    frac = 1.0 - increases / total
    return VerificationReport(
        statement="SymMonotone",
        trials=n_graphs,
        pass_fraction=frac,
        worst_deviation=worst,
        implied_constant=float("nan"),
        passed=bool(increases == 0),
        threshold=1.0,
        detail=f"{n_graphs} random connected graphs (<= {max_nodes} nodes), depths 1..{n_max}",
    )


def _verify_relu_no_gain(
    params: CsbmParams, trials: int, depth: int, rule: str
) -> VerificationReport:
    """Terminal-ReLU test error minus linear test error; the claim is that the
    difference is >= 0 up to noise (ReLU cannot help), with equality when
    mu1 >= -mu2."""
    diffs = np.zeros(trials)
    op_lin = OperatorSpec.random_walk()
    for t in range(trials):
        graph = sample_graph(params, t)
        feats = sample_features(params, graph.labels, t)
        split = make_split(graph.n_nodes, (0.6, 0.2, 0.2), rng_for(params.seed, t, SPLIT_STREAM))
        h = propagate(graph, feats, op_lin, depth).matrix
        h_relu = np.maximum(h, 0.0)
        if rule == POPULATION_RULE:
            _, acc_lin = population_accuracy(h, graph.labels, split, feats.class_means)
            _, acc_relu = population_accuracy(h_relu, graph.labels, split, feats.class_means)
        else:
            _, acc_lin = threshold_accuracy(h, graph.labels, split)
            _, acc_relu = threshold_accuracy(h_relu, graph.labels, split)
        diffs[t] = (1.0 - acc_relu) - (1.0 - acc_lin)
    mean_diff = float(diffs.mean())
    stderr = float(diffs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    no_gain_per_trial = float((diffs >= -1e-12).mean())
    return VerificationReport(
        statement="ReluNoGain",
        trials=trials,
        pass_fraction=no_gain_per_trial,
        worst_deviation=mean_diff,
        implied_constant=mean_diff / stderr if stderr > 0 else 0.0,
        passed=bool(mean_diff >= -2.0 * stderr),
        threshold=-2.0,
        detail=f"mean(relu error - linear error) at depth {depth}, stderr {stderr:.3g}",
    )


def verify(
    statement: str,
    *,
    params: CsbmParams | None = None,
    graph: Graph | None = None,
    trials: int = 100,
    cfg: theory.ConcentrationConfig | None = None,
    c_budget: float = 3.0,
    depths: tuple[int, ...] | None = None,
    min_pass: float = 0.99,
    sigma2: float = 1.0,
    limit_depth: int = 200,
    limit_tol: float = 1e-6,
    sym_graphs: int = 50,
    sym_max_nodes: int = 50,
    sym_n_max: int = 10,
    relu_depth: int = 2,
    rule: str = POPULATION_RULE,
    seed: int = 0,
) -> VerificationReport:
    """Monte Carlo / exact verification of one theoretical statement.

    Statement-specific inputs: MeanGap, VarianceBounds, DegreeConcentration,
    NeighborhoodBound and ReluNoGain need `params`; VarianceLimit needs
    `graph` (defaults to the bundled triangle-with-pendant fixture);
    SymMonotone is self-contained (seeded random graphs).
    """
    if statement not in STATEMENTS:
        raise ValueError(f"unknown statement {statement!r}; expected one of {STATEMENTS}")
    cfg = cfg or theory.ConcentrationConfig()

    if statement == "MeanGap":
        if params is None:
            raise ValueError("MeanGap verification needs CSBM params")
        return _verify_mean_gap(params, trials, cfg, c_budget)
    if statement == "VarianceBounds":
        if params is None:
            raise ValueError("VarianceBounds verification needs CSBM params")
        return _verify_variance_bounds(params, trials, depths or tuple(range(1, 9)), min_pass)
    if statement == "DegreeConcentration":
        if params is None:
            raise ValueError("DegreeConcentration verification needs CSBM params")
        return _verify_degree_concentration(params, trials, min_pass)
    if statement == "NeighborhoodBound":
        if params is None:
            raise ValueError("NeighborhoodBound verification needs CSBM params")
        return _verify_neighborhood_bound(params, trials, depths or (1,), min_pass)
    if statement == "VarianceLimit":
        target = graph if graph is not None else triangle_with_pendant()
        return _verify_variance_limit(target, sigma2, limit_depth, limit_tol)
    if statement == "SymMonotone":
        return _verify_sym_monotone(sym_graphs, sym_max_nodes, sym_n_max, seed)
    if statement == "ReluNoGain":
        if params is None:
            raise ValueError("ReluNoGain verification needs CSBM params")
        return _verify_relu_no_gain(params, trials, relu_depth, rule)
    raise AssertionError(statement)


def structural_consistency(graph: Graph) -> bool:
    """contains_triangle implies not bipartite; cheap cross-check."""
    tri = contains_triangle(graph)
    bip = is_bipartite(graph)
    return (not tri) or (not bip)
