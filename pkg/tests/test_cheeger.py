import random
from fractions import Fraction

import pytest

from krspec.cheeger import (
    FunctionPath,
    GraphError,
    WeightedGraph,
    bridged_triangles,
    cheeger_brute,
    cheeger_function_bound,
    cheeger_ratio,
    complete_graph,
    cycle_graph,
    dump_function,
    dump_graph,
    energy,
    indicator_minimum,
    l1_deviation,
    l1_norm,
    median_interval,
    parse_function,
    parse_graph,
    path_energy,
    path_median_extract,
    tan_loop,
    tv,
)

C4 = cycle_graph(4)
K3 = complete_graph(3)
HALF = Fraction(1, 2)


def random_graph(rng: random.Random, n: int) -> WeightedGraph:
    edges = {(i, rng.randrange(i)): rng.randint(1, 4) for i in range(1, n)}  # spanning tree
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        edges.setdefault((max(a, b), min(a, b)), Fraction(rng.randint(1, 6), rng.randint(1, 3)))
    raw = [rng.randint(1, 5) for _ in range(n)]
    return WeightedGraph.build([Fraction(x, sum(raw)) for x in raw], edges)


def test_tv_examples():
    assert tv(C4, [3, 3, 3, 3]) == 0
    assert tv(C4, [2, -2, 0, 0]) == 8
    assert tv(K3, [1, 0, 0]) == 2


@pytest.mark.parametrize(
    "measure, u, expected",
    [(["1/2", "1/4", "1/4"], [-1, 2, 3], (-1, 2)), (["1/2", "1/2"], [0, 1], (0, 1)), (["1/3"] * 3, [4, 4, 4], (4, 4))],
)
def test_median_interval_examples(measure, u, expected):
    g = WeightedGraph.build(measure, {(i, i + 1): 1 for i in range(len(measure) - 1)})
    assert median_interval(g, u) == expected


@pytest.mark.parametrize(
    "graph, value, subset",
    [(C4, 4, (0, 1)), (K3, 6, (0,)), (bridged_triangles(), 2, (0, 1, 2))],
)
def test_brute_examples(graph, value, subset):
    r = cheeger_brute(graph)
    assert r.value == value and r.subset == subset
    assert cheeger_ratio(graph, r.subset) == value


@pytest.mark.parametrize("seed", range(15))
def test_brute_against_direct_enumeration(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 8))
    direct = min(
        cheeger_ratio(g, [i for i in range(g.n) if mask >> i & 1]) for mask in range(1, (1 << g.n) - 1)
    )
    assert cheeger_brute(g).value == direct == indicator_minimum(g).value


def test_brute_size_limit():
    with pytest.raises(GraphError, match="limited"):
        cheeger_brute(cycle_graph(25))


def test_graph_validation():
    with pytest.raises(GraphError, match="sum"):
        WeightedGraph.build(["1/2", "1/3"], {(0, 1): 1})
    with pytest.raises(GraphError, match="connected"):
        WeightedGraph.uniform(3, {(0, 1): 1})
    with pytest.raises(GraphError, match="self-loop"):
        WeightedGraph.uniform(2, {(0, 0): 1, (0, 1): 1})
    approx = WeightedGraph.build([0.1, 0.2, 0.7], {(0, 1): 1, (1, 2): 1})
    assert approx.approximate and sum(approx.measure) == 1


def test_function_bound_examples():
    pair = cheeger_function_bound(C4, [2, 2, 0, 0])
    assert pair.energy == 4 and pair.rounded_subset == (0, 1) and pair.rounded_ratio == 4
    split = cheeger_function_bound(C4, [2, -2, 0, 0])
    assert split.energy == 8 and split.rounded_ratio <= 8
    g = bridged_triangles()
    best = cheeger_brute(g)
    u = [1 if i in best.subset else -1 for i in range(g.n)]
    assert cheeger_function_bound(g, u).energy == best.value
    with pytest.raises(GraphError, match="non-constant"):
        cheeger_function_bound(C4, [1, 1, 1, 1])


@pytest.mark.parametrize("seed", range(20))
def test_median_minimises_deviation(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 7))
    u = [Fraction(rng.randint(-6, 6), 2) for _ in range(g.n)]
    lo, hi = median_interval(g, u)
    best = l1_deviation(g, u, lo)
    assert l1_deviation(g, u, hi) == best
    assert l1_deviation(g, u, (lo + hi) / 2) == best
    assert l1_deviation(g, u, lo - Fraction(1, 7)) > best
    assert l1_deviation(g, u, hi + Fraction(1, 7)) > best


def test_tan_loop_examples():
    u = [Fraction(2), Fraction(-2), 0, 0]
    path = tan_loop(C4, u, 6)
    assert max(path_energy(C4, path)) <= 8
    assert path[0] == (-1,) * 4 and path[-1] == (1,) * 4
    cut = [Fraction(1), Fraction(1), Fraction(-1), Fraction(-1)]
    assert l1_norm(C4, cut) == 1
    assert max(path_energy(C4, tan_loop(C4, cut, 4))) <= 4
    with pytest.raises(GraphError, match="median"):
        tan_loop(C4, [Fraction(3), Fraction(1, 2), Fraction(1, 2), 0], 4)
    with pytest.raises(GraphError, match="needs"):
        tan_loop(C4, [1, 1, 1, 1], 4)


def test_path_median_extract_examples():
    u = [Fraction(2), Fraction(-2), 0, 0]
    path = tan_loop(C4, u, 6)
    index, verdict = path_median_extract(C4, path)
    assert verdict and path.offsets[index] == 0
    zero = FunctionPath(((0, 0, 0, 0),) * 3)
    assert tuple(path_median_extract(C4, zero)) == (2, True)
    jump = FunctionPath(((-1, -1, -1, -1), (1, 1, 1, 1)))
    assert tuple(path_median_extract(C4, jump)) == (0, False)
    flipped = path_median_extract(C4, jump.negated())
    assert flipped.negated and tuple(flipped) == (0, False)
    with pytest.raises(GraphError, match="empty"):
        FunctionPath(())


def test_energy_of_zero_function_rejected():
    with pytest.raises(GraphError):
        energy(C4, [0, 0, 0, 0])


def test_file_formats_round_trip():
    g = bridged_triangles()
    assert parse_graph(dump_graph(g)) == g
    u = (Fraction(1, 3), Fraction(-2), 0, 0, 1, 2)
    assert parse_function(dump_function(u), g) == u
    with pytest.raises(GraphError, match="missing 'n'"):
        parse_graph("m 0 1\n")
    with pytest.raises(GraphError, match="exactly vertices"):
        parse_graph("n 2\nm 0 1\ne 0 1 1\n")
    with pytest.raises(GraphError):
        parse_function("u 0 1\n", g)
