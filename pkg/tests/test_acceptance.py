"""Acceptance suite: one test per shipped behavioral guarantee.

Each test prints a single ``criterion N [PASS|FAIL]`` line (run with
``pytest tests/test_acceptance.py -s`` to see them) and enforces both the
numeric tolerance and the runtime budget of its criterion.
"""

import time

import numpy as np

from archrank.cli import main as cli_main
from archrank.config import task_presets
from archrank.dataset import split
from archrank.encoding import EncoderSpec, decode, encode
from archrank.ensemble import fit_ensemble
from archrank.gp import GaussianProcess, ZeroMean, fit_linear_mean
from archrank.kernels import EnsembleKernel, SqrtRBF, WeightedSqrtRBF
from archrank.labels import (
    LeftSkewedScores,
    NormalScores,
    ranks_to_scores,
    rerank_subset,
    score_like,
    scores_to_ranks,
)
from archrank.learners import KNNRegressor, SupportVectorRegressor
from archrank.metrics import kendall_tau
from archrank.ablation import run_ablation
from archrank.synth import make_synth_task
from archrank.tuner import TuneSpec, tune_weights

from test_learners import knn_oracle, svr_dual_objective_by_projected_gradient
from test_metrics import tau_by_pair_enumeration


def report(number, ok, detail, started, budget):
    elapsed = time.time() - started
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"criterion {number:2d} [{status}] {detail} ({elapsed:.1f}s / {budget:.0f}s)")
    assert ok, f"criterion {number}: {detail}"
    assert elapsed < budget, f"criterion {number}: took {elapsed:.1f}s of {budget}s"


def test_criterion_1_encoder_golden_and_identity():
    started = time.time()
    one_hot = encode(np.arange(4)[:, None], EncoderSpec(1, (4,))).data
    two_hot = encode(np.arange(4)[:, None], EncoderSpec(2, (4,))).data
    golden_ok = (
        one_hot.tolist()
        == [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
        and two_hot.tolist()
        == [[0, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
    )
    rng = np.random.default_rng(0)
    identity_ok = True
    for i in range(1000):
        k = (1, 2, 3, 9)[i % 4]
        dim = int(rng.integers(1, 5))
        cards = tuple(int(c) for c in rng.integers(2, 7, size=dim))
        feats = rng.integers(0, cards, size=(int(rng.integers(1, 9)), dim))
        spec = EncoderSpec(k=k, cardinalities=cards)
        if not np.array_equal(decode(encode(feats, spec)), feats):
            identity_ok = False
            break
    report(
        1,
        golden_ok and identity_ok,
        "encoder golden rows bit-exact; decode(encode(.)) identity on 1000 datasets",
        started,
        budget=1.0,
    )


def test_criterion_2_kernel_algebra():
    started = time.time()
    rng = np.random.default_rng(1)
    dim = 6
    rbf = SqrtRBF(1.7)
    weighted_id = WeightedSqrtRBF(1.7, np.ones(dim))
    weighted = WeightedSqrtRBF(1.7, rng.uniform(0, 2, dim))
    ens = EnsembleKernel(0.18, 0.82, rbf, weighted)
    ok = True
    for _ in range(500):
        x, y = rng.normal(size=dim), rng.normal(size=dim)
        ok &= rbf(x, y) == rbf(y, x)
        ok &= ens(x, y) == ens(y, x)
        ok &= rbf(x, x) == 1.0 and weighted(x, x) == 1.0
        ok &= abs(ens(x, x) - 1.0) < 1e-15
        ok &= abs(weighted_id(x, y) - rbf(x, y)) <= 1e-12
    X = rng.normal(size=(40, dim))
    Y = rng.normal(size=(25, dim))
    ok &= np.array_equal(
        ens.gram(X, Y), 0.18 * rbf.gram(X, Y) + 0.82 * weighted.gram(X, Y)
    )
    ok &= np.array_equal(ens.gram(X), 0.18 * rbf.gram(X) + 0.82 * weighted.gram(X))
    report(
        2,
        bool(ok),
        "kernel symmetry, unit self-similarity, identity-weight reduction, conic sum",
        started,
        budget=1.0,
    )


def test_criterion_3_gp_against_explicit_inverse():
    started = time.time()
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 21))
        X = rng.normal(size=(n, 3))
        y = rng.normal(size=n)
        X_star = rng.normal(size=(5, 3))
        sigma = float(rng.choice([1e-6, 1e-3, 1e-1]))
        kernel = SqrtRBF(float(rng.uniform(0.5, 3.0)))
        prior = fit_linear_mean(X, y, ridge=1e-6)
        gp = GaussianProcess(kernel, prior, sigma).fit(X, y)
        A = kernel.gram(X) + (sigma + gp.jitter_used) * np.eye(n)
        oracle = prior.predict(X_star) + kernel.gram(X_star, X) @ (
            np.linalg.inv(A) @ (y - prior.predict(X))
        )
        got = gp.predict(X_star)
        worst = max(worst, np.linalg.norm(got - oracle) / np.linalg.norm(oracle))
    interp_worst = 0.0
    for _ in range(10):
        X = rng.normal(size=(12, 3))
        y = rng.normal(size=12)
        gp = GaussianProcess(SqrtRBF(1.0), ZeroMean(), sigma_n2=0.0).fit(X, y)
        interp_worst = max(interp_worst, float(np.abs(gp.predict(X) - y).max()))
    report(
        3,
        worst <= 1e-8 and interp_worst <= 1e-6,
        f"posterior vs explicit inverse (worst rel {worst:.2e}); "
        f"noiseless interpolation (worst {interp_worst:.2e})",
        started,
        budget=10.0,
    )


def test_criterion_4_kendall_tau_oracle():
    started = time.time()
    ok = kendall_tau([1, 2, 3, 4], [1, 2, 3, 4]).tau == 1.0
    ok &= kendall_tau([1, 2, 3, 4], [4, 3, 2, 1]).tau == -1.0
    example = kendall_tau([1, 2, 3, 4, 5], [1, 3, 2, 5, 4])
    ok &= example.concordant == 8 and example.discordant == 2 and example.tau == 0.6
    rng = np.random.default_rng(3)
    checked = 0
    while checked < 1000:
        n = int(rng.integers(2, 51))
        x = rng.integers(0, 6, n).astype(float)
        y = rng.integers(0, 6, n).astype(float)
        if np.all(x == x[0]) or np.all(y == y[0]):
            continue
        if kendall_tau(x, y) != tau_by_pair_enumeration(x, y):
            ok = False
            break
        checked += 1
    report(
        4,
        bool(ok),
        "tau-b equals the O(n^2) enumeration oracle on 1000 tied vectors + fixed cases",
        started,
        budget=5.0,
    )


def test_criterion_5_label_transform():
    started = time.time()
    rng = np.random.default_rng(4)
    ok = True
    for dist in (NormalScores(), LeftSkewedScores(shape=-4.0)):
        for _ in range(25):
            n = int(rng.integers(2, 60))
            ranks = rng.permutation(n) + 1
            scores = ranks_to_scores(ranks, dist)
            order = np.argsort(ranks)
            ok &= bool(np.all(np.diff(scores[order]) < 0))
            ok &= np.array_equal(scores_to_ranks(scores), ranks)
    mu = 2.5
    sym = ranks_to_scores(np.arange(1, 12), NormalScores(mu=mu, sigma=1.3))
    ok &= bool(np.allclose(sym + sym[::-1], 2 * mu, atol=1e-10))
    from scipy import stats

    sample = stats.skewnorm.rvs(-4.0, size=100_000, random_state=np.random.default_rng(5))
    ok &= sample.mean() < np.median(sample) - 0.05
    report(
        5,
        bool(ok),
        "order reversal, round-trip, antisymmetry about mu, Monte-Carlo left skew",
        started,
        budget=5.0,
    )


def test_criterion_6_svr_and_knn_oracles():
    started = time.time()
    rng = np.random.default_rng(6)
    kernel = SqrtRBF(1.0)
    worst_gap = 0.0
    box_ok = True
    for _ in range(20):
        n = int(rng.integers(4, 16))
        X = rng.normal(size=(n, 3))
        y = rng.normal(size=n)
        C, eps = 2.0, 0.05
        model = SupportVectorRegressor(
            kernel, C=C, epsilon=eps, tol=1e-6, max_iter=200_000
        ).fit(X, y)
        box_ok &= bool(
            np.all(model.alpha >= 0)
            and np.all(model.alpha <= C + 1e-12)
            and np.all(model.alpha_star >= 0)
            and np.all(model.alpha_star <= C + 1e-12)
        )
        reference = svr_dual_objective_by_projected_gradient(
            kernel.gram(X), y, C=C, epsilon=eps, iters=1500
        )
        worst_gap = max(worst_gap, abs(model.dual_objective() - reference))
    knn_ok = True
    X = rng.normal(size=(15, 4))
    y = rng.normal(size=15)
    model = KNNRegressor(k=4).fit(X, y)
    queries = rng.normal(size=(100, 4))
    knn_ok &= bool(
        np.allclose(model.predict(queries), knn_oracle(X, y, queries, 4), atol=1e-12)
    )
    report(
        6,
        worst_gap <= 1e-4 and box_ok and knn_ok,
        f"SVR dual gap vs projected gradient {worst_gap:.2e}; box held; KNN oracle",
        started,
        budget=30.0,
    )


def test_criterion_7_tuner_finds_planted_feature():
    started = time.time()
    config = task_presets()["task5"]
    beats_uniform = 0
    identifies_block = 0
    for seed in range(5):
        ds, _ = make_synth_task(
            100, dim=6, cardinality=4, noise=0.1, seed=700 + seed, informative=[0]
        )
        spec = TuneSpec(dims=6, budget=60, init_points=10, seed=seed)
        weights, trace = tune_weights(ds, config, spec)
        beats_uniform += trace.best_value >= trace.values[0]
        identifies_block += weights[0] > np.mean(weights[1:])
    report(
        7,
        beats_uniform >= 4 and identifies_block >= 4,
        f"tuned >= uniform on {beats_uniform}/5 seeds; "
        f"informative weight dominates on {identifies_block}/5 seeds",
        started,
        budget=300.0,
    )


def test_criterion_8_end_to_end_pipeline():
    started = time.time()
    config = task_presets()["task0"]
    results = {}
    for noise, floor in ((0.0, 0.9), (0.1, 0.7)):
        taus = []
        for seed in range(5):
            ds, _ = make_synth_task(
                200, dim=4, cardinality=3, noise=noise, seed=800 + seed
            )
            plan = split(ds, 0.8, seed)
            model = fit_ensemble(rerank_subset(ds, plan.train_indices), config)
            pred, _ = model.predict(ds.features[plan.validation_indices])
            truth = score_like(ds.labels, "rank")[plan.validation_indices]
            taus.append(kendall_tau(pred, truth).tau)
        results[noise] = (min(taus), floor)
    ok = all(worst >= floor for worst, floor in results.values())
    report(
        8,
        ok,
        "validation tau: "
        + "; ".join(
            f"noise {noise:g} worst {worst:.3f} (floor {floor})"
            for noise, (worst, floor) in results.items()
        ),
        started,
        budget=120.0,
    )


def test_criterion_9_ablation_ladder_never_regresses():
    started = time.time()
    ds, _ = make_synth_task(200, dim=4, cardinality=3, noise=0.1, seed=900)
    rows = run_ablation(ds, task_presets()["task0"], seeds=range(5))
    plain = rows[0].mean
    full = rows[-1].mean
    report(
        9,
        full >= plain - 0.02,
        f"full ensemble {full:.4f} vs plain ordinal GP {plain:.4f} (allowed -0.02)",
        started,
        budget=300.0,
    )


def test_criterion_10_cli_determinism(tmp_path):
    started = time.time()
    data = tmp_path / "data.csv"
    assert (
        cli_main(
            ["synth", "--n", "60", "--dim", "4", "--cardinality", "3",
             "--noise", "0.1", "--seed", "10", "--out", str(data)]
        )
        == 0
    )
    artifacts = []
    for tag in ("a", "b"):
        model = tmp_path / f"model_{tag}.json"
        preds = tmp_path / f"preds_{tag}.csv"
        assert cli_main(["train", "--dataset", str(data), "--config", "task0", "--out", str(model)]) == 0
        assert cli_main(["predict", "--model", str(model), "--dataset", str(data), "--out", str(preds)]) == 0
        artifacts.append((model.read_bytes(), preds.read_bytes()))
    ok = artifacts[0] == artifacts[1]
    report(10, ok, "train+predict twice: model and prediction files byte-identical", started, budget=60.0)
