"""
Oracle 測試
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
import pytest


class TestEvaluate:
    """查詢與計數測試"""

    def test_values(self, path_graph):
        """測試基本查詢"""
        from posimod.instances import make_cardinality, make_cut_function, make_hardness_min
        from posimod.oracle import evaluate

        assert evaluate(make_cardinality(4), 0b1010) == 2
        assert evaluate(make_cut_function(path_graph), 0b010) == 2
        assert evaluate(make_hardness_min(8, 2, [0, 1, 2, 3]), 0b0111) == 1

    def test_call_count_counts_distinct_queries(self):
        """測試快取命中不計數"""
        from posimod.instances import make_cardinality

        oracle = make_cardinality(5)
        for x in (1, 2, 1, 3, 2, 1):
            oracle.evaluate(x)

        assert oracle.call_count == 3
        assert set(oracle.cache) == {1, 2, 3}

    def test_count_raw(self):
        """測試每次呼叫都計數的模式"""
        from posimod.instances import make_cardinality

        oracle = make_cardinality(5, count_raw=True)
        for x in (1, 2, 1, 3, 2, 1):
            oracle(x)

        assert oracle.call_count == 6

    def test_transcript_and_reset(self):
        """測試查詢紀錄與重設"""
        from posimod.instances import make_cardinality

        oracle = make_cardinality(4, record=True)
        for x in (3, 5, 3):
            oracle.evaluate(x)

        assert oracle.transcript.masks == [3, 5, 3]
        assert len(oracle.transcript) == 3

        oracle.reset()
        assert oracle.call_count == 0
        assert oracle.cache == {}
        assert len(oracle.transcript) == 0
        assert make_cardinality(4).transcript is None

    def test_invalid_subset(self):
        """測試超出基礎集合的查詢"""
        from posimod.errors import InvalidSubsetError
        from posimod.instances import make_cardinality

        with pytest.raises(InvalidSubsetError):
            make_cardinality(3).evaluate(0b1000)

    def test_concurrent_evaluation(self):
        """測試多執行緒查詢時計數仍等於相異查詢數"""
        from posimod.instances import make_cardinality

        oracle = make_cardinality(8)
        masks = list(range(256)) * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            values = list(pool.map(oracle.evaluate, masks))

        assert values == [bin(x).count("1") for x in masks]
        assert oracle.call_count == 256

    def test_table(self):
        """測試值表"""
        from posimod.instances import make_cardinality, make_explicit_table

        table = make_cardinality(3).table()
        assert table.dtype == np.int64
        assert table.tolist() == [0, 1, 1, 2, 1, 2, 2, 3]

        rational = make_explicit_table(1, {0: 0, 1: Fraction(1, 2)}).table()
        assert rational.dtype == object
        assert rational[1] == Fraction(1, 2)

    def test_referential_transparency(self):
        """測試相同描述建立的 oracle 值相同"""
        from posimod.instances import build_oracle, make_random_monotone

        first = make_random_monotone(6, 3, seed=11)
        second = build_oracle(first.kind)
        assert first.table().tolist() == second.table().tolist()

    def test_float_values_rejected(self):
        """測試函數值必須精確"""
        from posimod.errors import RangeBoundError
        from posimod.oracle import SetFunctionOracle
        from posimod.subsets import GroundSet

        oracle = SetFunctionOracle(GroundSet(2), lambda x: 0.5, kind="float")
        with pytest.raises(RangeBoundError):
            oracle.evaluate(1)


class TestNormalize:
    """正規化測試"""

    def test_constant_function(self):
        """測試常數函數平移為 0"""
        from posimod.instances import make_explicit_table
        from posimod.oracle import normalize

        g = normalize(make_explicit_table(3, {}, default=5))
        assert all(g.evaluate(x) == 0 for x in range(8))

    def test_shift(self):
        """測試 g(X) = f(X) - f(∅)"""
        from posimod.instances import make_explicit_table
        from posimod.oracle import normalize

        f = make_explicit_table(1, {0: 1, 1: 3})
        g = normalize(f)
        assert g.evaluate(0) == 0
        assert g.evaluate(1) == 2
        # 查詢流向原始 oracle
        assert g.call_count == f.call_count == 2

    def test_already_normalized(self):
        """測試已正規化的函數不變"""
        from posimod.instances import make_cardinality
        from posimod.oracle import normalize

        g = normalize(make_cardinality(4))
        assert [g.evaluate(x) for x in range(16)] == [bin(x).count("1") for x in range(16)]


class TestContraction:
    """收縮與展開測試"""

    def test_contract_pair(self):
        """測試收縮 {1,2} 後 f′({s}) = f({1,2})"""
        from posimod.instances import make_cardinality
        from posimod.oracle import contract

        g = make_cardinality(4)
        contracted, mapping = contract(g, 0b0110)

        assert contracted.n == 3
        assert mapping.blocks == (0b0001, 0b1000, 0b0110)
        assert contracted.ground.labels == ("0", "3", "1+2")
        assert contracted.evaluate(0b100) == 2
        # 不含 s 的集合值不變
        assert contracted.evaluate(0b001) == g.evaluate(0b0001)
        assert contracted.evaluate(0b011) == g.evaluate(0b1001)

    def test_double_contraction(self):
        """測試連續收縮合成為單一分割"""
        from posimod.instances import make_cardinality
        from posimod.oracle import contract

        g = make_cardinality(4)
        first, _ = contract(g, 0b0110)
        second, mapping = contract(first, 0b101)

        assert mapping.blocks == (0b1000, 0b0111)
        assert mapping.original_n == 4
        assert mapping.expand(0b10) == 0b0111
        assert second.evaluate(0b10) == 3
        assert second.evaluate(0b11) == 4
        # 計數流向根 oracle
        assert second.call_count == g.call_count

    def test_expand(self):
        """測試展開"""
        from posimod.oracle import ContractionMap, expand

        mapping = ContractionMap((0b001, 0b110), 3)
        assert expand(mapping, 0b11) == 0b111
        assert expand(mapping, 0) == 0
        assert expand(None, 0b101) == 0b101
        assert ContractionMap.identity(3).expand(0b101) == 0b101

    def test_invalid_contraction(self):
        """測試空區塊與不合法的分割"""
        from posimod.errors import StructureError
        from posimod.instances import make_cardinality
        from posimod.oracle import ContractionMap, contract

        with pytest.raises(StructureError):
            contract(make_cardinality(3), 0)
        with pytest.raises(StructureError):
            ContractionMap((0b011, 0b010), 2)
        with pytest.raises(StructureError):
            ContractionMap((0b001,), 2)

    def test_contract_normalized(self):
        """測試收縮正規化後的 oracle 仍保留平移"""
        from posimod.instances import make_explicit_table
        from posimod.oracle import contract, normalize

        f = make_explicit_table(2, {0: 1, 1: 2, 2: 2, 3: 4})
        contracted, _ = contract(normalize(f), 0b11)
        assert contracted.evaluate(0b1) == 3
        assert contracted.evaluate(0) == 0
