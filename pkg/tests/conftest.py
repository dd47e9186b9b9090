"""
共用的測試實例池
"""

import pytest

from posimod.instances import (
    RANDOM_MONOTONE,
    InstanceDescriptor,
    WeightedGraph,
    make_capped_cardinality,
    make_cardinality,
    make_cut_function,
    make_example1,
    make_hardness_max,
    make_hardness_max_smalld,
    make_hardness_min,
    make_hardness_min_bounded,
    random_connected_graph,
)


@pytest.fixture
def path_graph() -> WeightedGraph:
    """單位權重路徑 a–b–c"""
    return WeightedGraph(3, ((0, 1, 1), (1, 2, 1)))


@pytest.fixture
def triangle_graph() -> WeightedGraph:
    """單位權重三角形"""
    return WeightedGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1)))


@pytest.fixture(scope="session")
def cut_pool():
    """隨機連通圖的割函數（n = 3..10，整數權重 ≤ 3）"""
    return [
        make_cut_function(random_connected_graph(n, seed)).kind
        for n in range(3, 11)
        for seed in range(15)
    ]


@pytest.fixture(scope="session")
def monotone_pool():
    """50 個隨機單調函數（n = 4..10，d = 1..4）"""
    return [
        InstanceDescriptor(RANDOM_MONOTONE, {"n": 4 + seed % 7, "d": 1 + seed % 4, "seed": seed})
        for seed in range(50)
    ]


@pytest.fixture(scope="session")
def family_pool():
    """困難實例、範例函數與基數函數"""
    oracles = [
        make_cardinality(5),
        make_capped_cardinality(6, 2),
        make_capped_cardinality(7, 3),
        make_hardness_min(8, 2, [0, 1, 2, 3]),
        make_hardness_min(8, 2, [1, 3, 5, 7]),
        make_hardness_min(6, 1, [2, 5]),
        make_hardness_min_bounded(8, 8, [0, 1, 2, 3]),
        make_hardness_min_bounded(8, 8, [0, 1, 2, 3], [0, 1, 2, 3]),
        make_hardness_min_bounded(8, 8, [4, 5, 6, 7], [5, 6]),
        make_example1(8, [0, 1, 2, 3]),
        make_example1(8, [0, 2, 4, 6, 7]),
        make_hardness_max(6),
        make_hardness_max(6, [0, 1, 2, 3]),
        make_hardness_max(7, [1, 2, 4, 6]),
        make_hardness_max_smalld(10, 4),
        make_hardness_max_smalld(10, 4, [0, 1, 2, 3, 4, 5, 6, 7]),
        make_hardness_max_smalld(8, 3, [0, 1, 2, 3, 4, 5]),
    ]
    return [oracle.kind for oracle in oracles]


@pytest.fixture(scope="session")
def tiny_pool():
    """小型樹的割函數與截斷基數函數（d ≤ 3）"""
    trees = [
        make_cut_function(random_connected_graph(n, seed, max_weight=1, extra_edge_prob=0.0)).kind
        for n in range(2, 5)
        for seed in range(4)
    ]
    capped = [make_capped_cardinality(n, cap).kind for n in (3, 6, 9) for cap in (0, 1, 2, 3)]
    return trees + capped


@pytest.fixture(scope="session")
def small_range_pool(tiny_pool, monotone_pool):
    """值域上界 d ≤ 3 的實例（d3 演算法使用）"""
    return tiny_pool + [desc for desc in monotone_pool if desc.params["d"] <= 3]


@pytest.fixture(scope="session")
def full_pool(cut_pool, monotone_pool, family_pool, tiny_pool):
    """正確性檢查用的完整實例池"""
    return cut_pool + monotone_pool + family_pool + tiny_pool
