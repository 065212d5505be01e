import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from tiecut import (
    BinaryGraph,
    ConfigError,
    DegenerateSplitError,
    EmptyGraphError,
    GenConfig,
    NoGiantComponentError,
    ThresholdLadder,
    UnitConversion,
    ValuedGraph,
    conversion_factor,
    dichotomize,
    giant_component_threshold,
    ladder_for_densities,
    load_rank_matrix,
    sample_graph,
    threshold_for_density,
    to_valued_units,
)
from conftest import DATA


def graph_from(entries, n, directed=False):
    w = np.zeros((n, n))
    for i, j, v in entries:
        w[i, j] = v
        if not directed:
            w[j, i] = v
    return ValuedGraph(weights=w, directed=directed)


def two_cliques_bridged(bridge=0.5):
    # two unit-weight triangles joined by one weaker edge
    w = np.zeros((6, 6))
    for a, b in ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)):
        w[a, b] = w[b, a] = 1.0
    w[2, 3] = w[3, 2] = bridge
    return ValuedGraph(weights=w)


class TestLadder:
    def test_strictly_increasing_required(self):
        ThresholdLadder(thresholds=(0.5, 1.0, 2.0))
        with pytest.raises(ConfigError):
            ThresholdLadder(thresholds=(1.0, 1.0))
        with pytest.raises(ConfigError):
            ThresholdLadder(thresholds=(2.0, 1.0))
        with pytest.raises(ConfigError):
            ThresholdLadder(thresholds=())

    def test_target_alignment(self):
        lad = ThresholdLadder(thresholds=(1.0, 2.0), target_density=(4.0, 2.0))
        assert lad.target_density == (4.0, 2.0)
        with pytest.raises(ConfigError):
            ThresholdLadder(thresholds=(1.0, 2.0), target_density=(4.0,))

    def test_iteration(self):
        lad = ThresholdLadder(thresholds=(1.0, 3.0))
        assert list(lad) == [1.0, 3.0]
        assert len(lad) == 2


class TestDichotomize:
    def test_keeps_ties_at_or_above_tau(self):
        g = graph_from([(0, 1, 2.0), (1, 2, 1.0), (0, 2, 0.5)], 3)
        b = dichotomize(g, 1.0)
        assert b.adjacency[0, 1] == 1
        assert b.adjacency[1, 2] == 1  # equality kept
        assert b.adjacency[0, 2] == 0
        assert b.source_threshold == 1.0

    def test_diagonal_stays_zero_even_at_nonpositive_tau(self):
        g = graph_from([(0, 1, 1.0)], 3)
        b = dichotomize(g, 0.0)
        assert np.all(np.diagonal(b.adjacency) == 0)
        assert b.adjacency[0, 2] == 1  # zero weight >= 0

    def test_binary_unit_and_weights(self):
        g = graph_from([(0, 1, 5.0)], 2)
        b = dichotomize(g, 1.0)
        assert b.unit_label == "Phil"
        assert b.weights.dtype == float
        assert b.adjacency.dtype == np.int8
        assert b.edge_count() == 1
        assert b.edges_per_node() == pytest.approx(0.5)

    def test_nested_in_tau(self):
        g = sample_graph(GenConfig(n=20, seed=5))
        taus = np.quantile(g.weights[np.triu_indices(20, k=1)], [0.2, 0.5, 0.8])
        prev = dichotomize(g, taus[0]).adjacency
        for tau in taus[1:]:
            cur = dichotomize(g, tau).adjacency
            assert np.all(cur <= prev)
            prev = cur

    def test_rejects_nonfinite_tau(self):
        g = graph_from([(0, 1, 1.0)], 2)
        with pytest.raises(ValueError):
            dichotomize(g, float("nan"))

    def test_binary_graph_validation(self):
        with pytest.raises(ValueError):
            BinaryGraph(adjacency=np.array([[0, 2], [2, 0]]))
        asym = np.array([[0, 1], [0, 0]])
        with pytest.raises(ValueError):
            BinaryGraph(adjacency=asym, directed=False)
        BinaryGraph(adjacency=asym, directed=True)


class TestThresholdForDensity:
    def test_picks_closest_count(self):
        # weights 5, 3, 3, 1 on 4 nodes: cut at 3 keeps 3 edges
        g = graph_from([(0, 1, 5.0), (0, 2, 3.0), (1, 3, 3.0), (2, 3, 1.0)], 4)
        assert threshold_for_density(g, 3 / 4) == 3.0
        assert threshold_for_density(g, 1 / 4) == 5.0
        assert threshold_for_density(g, 4 / 4) == 1.0

    def test_tie_goes_to_sparser_cut(self):
        # counts 1 and 3 straddle a target of 2: equal distance, keep fewer
        g = graph_from([(0, 1, 5.0), (0, 2, 3.0), (1, 3, 3.0)], 4)
        assert threshold_for_density(g, 2 / 4) == 5.0

    def test_rejects_bad_target(self):
        g = graph_from([(0, 1, 1.0)], 2)
        with pytest.raises(ConfigError):
            threshold_for_density(g, 0.0)
        with pytest.raises(ConfigError):
            threshold_for_density(g, -1.0)

    def test_empty_graph(self):
        g = ValuedGraph(weights=np.zeros((3, 3)))
        with pytest.raises(EmptyGraphError):
            threshold_for_density(g, 1.0)

    def test_directed_counts_arcs(self):
        w = np.zeros((3, 3))
        w[0, 1], w[1, 0], w[1, 2] = 4.0, 2.0, 1.0
        g = ValuedGraph(weights=w, directed=True)
        assert threshold_for_density(g, 1 / 3) == 4.0
        assert threshold_for_density(g, 3 / 3) == 1.0


class TestLadderForDensities:
    def test_dedup_and_sorted(self):
        g = graph_from([(0, 1, 5.0), (0, 2, 3.0), (1, 3, 3.0), (2, 3, 1.0)], 4)
        lad = ladder_for_densities(g, [1.0, 0.75, 0.25])
        assert lad.thresholds == (1.0, 3.0, 5.0)
        assert lad.target_density == (1.0, 0.75, 0.25)

    def test_duplicate_cut_keeps_largest_target(self):
        g = graph_from([(0, 1, 5.0), (0, 2, 3.0)], 4)
        lad = ladder_for_densities(g, [0.5, 0.4])
        # both targets resolve to the same cut
        assert len(lad.thresholds) == 1
        assert lad.target_density == (0.5,)

    def test_target_above_density_rejected(self):
        g = graph_from([(0, 1, 5.0)], 4)
        with pytest.raises(ConfigError):
            ladder_for_densities(g, [2.0])

    def test_all_zero_rejected(self):
        with pytest.raises(EmptyGraphError):
            ladder_for_densities(ValuedGraph(weights=np.zeros((3, 3))), [0.5])


class TestConversionFactor:
    def test_hand_example(self):
        # ordered pairs: 5, 5, 3, 3, 1, 1 and six structural zeros
        g = graph_from([(0, 1, 5.0), (0, 2, 3.0), (1, 3, 1.0)], 4)
        c = conversion_factor(g, 3.0)
        high = (5 + 5 + 3 + 3) / 4
        low = (1 + 1 + 0 * 6) / 8
        assert c.factor == pytest.approx(high - low, rel=1e-14)
        assert c.threshold == 3.0

    def test_positive_for_any_nondegenerate_split(self):
        rng = np.random.default_rng(3)
        for seed in range(10):
            g = sample_graph(GenConfig(n=12, sigma_alpha=1.5, seed=seed))
            vals = g.weights[np.triu_indices(12, k=1)]
            tau = float(rng.choice(vals[vals > 0]))
            if np.all(vals >= tau):
                continue
            assert conversion_factor(g, tau).factor > 0

    def test_degenerate_high_side(self):
        g = graph_from([(0, 1, 1.0)], 3)
        with pytest.raises(DegenerateSplitError):
            conversion_factor(g, 2.0)

    def test_degenerate_low_side(self):
        # complete graph, all weights equal: no low side below the min
        w = np.full((3, 3), 2.0)
        np.fill_diagonal(w, 0.0)
        with pytest.raises(DegenerateSplitError):
            conversion_factor(ValuedGraph(weights=w), 1.0)

    def test_newcomb_half(self):
        g = load_rank_matrix(DATA / "newcomb_week01.tsv")
        for tau in (2 / 16, 5 / 16, 9 / 16, 16 / 16):
            assert conversion_factor(g, tau).factor == pytest.approx(0.5, abs=1e-12)

    def test_unit_conversion_validation(self):
        with pytest.raises(ValueError):
            UnitConversion(factor=0.0, threshold=1.0, unit_label="x")
        with pytest.raises(ValueError):
            UnitConversion(factor=-2.0, threshold=1.0, unit_label="x")


class TestToValuedUnits:
    def test_directions(self):
        c = UnitConversion(factor=2.0, threshold=1.0, unit_label="messages")
        assert to_valued_units(3.0, "closeness-like", c) == pytest.approx(6.0)
        assert to_valued_units(3.0, "distance-like", c) == pytest.approx(1.5)
        assert to_valued_units(3.0, "closeness", c) == pytest.approx(6.0)

    def test_unknown_kind(self):
        c = UnitConversion(factor=2.0, threshold=1.0, unit_label="messages")
        with pytest.raises(ValueError):
            to_valued_units(3.0, "sideways", c)


class TestGiantComponentThreshold:
    def test_bridged_cliques(self):
        g = two_cliques_bridged(0.5)
        # 60% of 6 nodes needs the bridge; 50% is satisfied by one clique
        assert giant_component_threshold(g, fraction=0.6) == 0.5
        assert giant_component_threshold(g, fraction=0.5) == 1.0

    def test_unreachable_fraction(self):
        w = np.zeros((6, 6))
        for a, b in ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)):
            w[a, b] = w[b, a] = 1.0
        with pytest.raises(NoGiantComponentError):
            giant_component_threshold(ValuedGraph(weights=w), fraction=0.9)

    def test_empty_graph(self):
        with pytest.raises(EmptyGraphError):
            giant_component_threshold(ValuedGraph(weights=np.zeros((4, 4))))

    def test_matches_brute_force(self):
        for seed in range(8):
            g = sample_graph(GenConfig(n=14, sigma_alpha=1.2, family="poisson",
                                       seed=seed, directed=seed % 2 == 1))
            vals = g.weights[g.weights > 0]
            if vals.size == 0:
                continue
            for fraction in (0.3, 0.5, 0.8):
                best = None
                for tau in np.unique(vals):
                    adj = (g.weights >= tau).astype(int)
                    _, labels = connected_components(csr_matrix(adj), directed=False)
                    largest = np.bincount(labels).max()
                    if largest >= fraction * g.n and (best is None or tau > best):
                        best = tau
                if best is None:
                    with pytest.raises(NoGiantComponentError):
                        giant_component_threshold(g, fraction=fraction)
                else:
                    got = giant_component_threshold(g, fraction=fraction)
                    assert got == pytest.approx(float(best))
