"""
最小化模組

暴力最小化、d ≤ 3 的收縮演算法、可達性與最小不可達集合族、
MinPosimodular、全部最小化集合的列舉，以及極端集合（extreme sets）的計算
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .errors import CapExceededError, InvalidSubsetError, NotNormalizedError, RangeBoundError
from .horn import build_phi, complement_cnf, enumerate_closures
from .oracle import SetFunctionOracle, Value, contract
from .settings import resolve_cap
from .subsets import SubsetMask, masks_of_size, members, popcount, set_order_key, submasks


@dataclass(frozen=True)
class OptimizationResult:
    """最佳化結果（witness 一律是原始基礎集合中的子集合）"""
    witness: SubsetMask
    value: Value
    oracle_calls: int
    algorithm: str

    def to_dict(self) -> dict:
        return {
            "witness": members(self.witness),
            "value": str(self.value),
            "oracle_calls": self.oracle_calls,
            "algorithm": self.algorithm,
        }


@dataclass
class ReachabilityTable:
    """|X| ≤ d 的子集合是否可由 ∅ 經嚴格遞增的鏈到達"""
    reachable: Dict[SubsetMask, bool]
    d: int
    values: Dict[SubsetMask, Value] = field(default_factory=dict)

    def is_reachable(self, x: SubsetMask) -> bool:
        # 大小超過 d 的集合必然不可達
        return self.reachable.get(x, False)


@dataclass
class UnreachableFamily:
    """最小不可達集合族 𝒰"""
    members: List[SubsetMask]
    table: ReachabilityTable

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.members)


def _best_key(value: Value, x: SubsetMask):
    """最小化的比較鍵：值、大小、遮罩"""
    return (value, popcount(x), x)


def require_range_bound(oracle: SetFunctionOracle, limit: Optional[int] = None) -> int:
    """取得宣告的值域上界 d；未宣告或超過 limit 時丟出 RangeBoundError"""
    d = oracle.range_bound
    if d is None:
        raise RangeBoundError("此演算法需要宣告值域上界 d（range_bound）")
    if limit is not None and d > limit:
        raise RangeBoundError(f"此演算法需要 d ≤ {limit}，收到 d={d}")
    return d


def require_normalized(oracle: SetFunctionOracle) -> None:
    """f(∅) 必須為 0"""
    empty = oracle.evaluate(0)
    if empty != 0:
        raise NotNormalizedError(f"需要正規化的函數（f(∅)=0），收到 f(∅)={empty}")


def check_brute_cap(oracle: SetFunctionOracle, cap: Optional[int]) -> None:
    limit = resolve_cap(cap, "brute")
    if oracle.n > limit:
        raise CapExceededError(f"n={oracle.n} 超過暴力搜尋上限 {limit}（可用 POSIMOD_N_CAP 調整）")


def brute_force_min(oracle: SetFunctionOracle, cap: Optional[int] = None) -> OptimizationResult:
    """
    窮舉所有非空子集合求最小值

    參數:
        oracle: 集合函數
        cap: n 的上限（預設 20）

    回傳:
        OptimizationResult：最小值與「最小基數、再最小遮罩」的最小化集合
    """
    check_brute_cap(oracle, cap)
    start = oracle.call_count
    best = None
    for size in range(1, oracle.n + 1):
        for x in masks_of_size(oracle.n, size):
            value = oracle.evaluate(x)
            if best is None or value < best[0]:
                best = (value, x)
    return OptimizationResult(best[1], best[0], oracle.call_count - start, "brute_force_min")


def is_semi_extreme(oracle: SetFunctionOracle, x: SubsetMask) -> bool:
    """所有非空子集合 Y ⊆ X 皆滿足 f(Y) ≥ f(X)"""
    if x == 0:
        raise InvalidSubsetError("半極端集合的判斷需要非空集合")
    value = oracle.evaluate(x)
    return all(oracle.evaluate(y) >= value for y in submasks(x, proper=True, nonempty=True))


def min_d_le_3(oracle: SetFunctionOracle) -> OptimizationResult:
    """
    值域 {0,…,d}、d ≤ 3 的最小化

    每一輪檢查大小 {1, 2, n′-1, n′} 的集合：若某個 2 元素集合是半極端，
    就把它收縮成一個新元素再重複；否則最小值必落在大小 {1, n′-1, n′}。
    所有看過的集合都會展開回原始基礎集合參與比較，並依展開後的遮罩記住值，
    因此收縮之後只有含新元素的 2 元素集合與新的 {1, n′-1, n′} 集合需要查詢。

    參數:
        oracle: 正規化、值域上界 d ≤ 3 的 oracle

    回傳:
        OptimizationResult（witness 已展開）
    """
    require_range_bound(oracle, limit=3)
    require_normalized(oracle)
    start = oracle.call_count

    best: Optional[Tuple] = None
    seen: Dict[SubsetMask, Value] = {}
    current = oracle

    def consider(x: SubsetMask) -> Value:
        nonlocal best
        original = current.contraction.expand(x) if current.contraction else x
        if original in seen:
            return seen[original]
        value = current.evaluate(x)
        seen[original] = value
        key = _best_key(value, original)
        if best is None or key < best:
            best = key
        return value

    while True:
        n = current.n
        full = current.ground.full
        singles = {1 << v: consider(1 << v) for v in range(n)}
        if n == 1:
            break
        for v in range(n):
            consider(full ^ (1 << v))
        consider(full)

        pair = None
        for x in masks_of_size(n, 2):
            value = consider(x)
            if pair is None and all(singles[bit] >= value for bit in _bits(x)):
                pair = x
        if pair is None:
            break
        current, _ = contract(current, pair)

    value, _, witness = best
    return OptimizationResult(witness, value, oracle.call_count - start, "min_d_le_3")


def _bits(x: SubsetMask) -> List[SubsetMask]:
    return [1 << v for v in members(x)]


def reachability(oracle: SetFunctionOracle, d: Optional[int] = None) -> ReachabilityTable:
    """
    依基數遞增的動態規劃計算可達性

    X 可達 ⇔ 存在 u ∈ X 使 X∖{u} 可達且 f(X) > f(X∖{u})。
    只查詢 |X| ≤ d 的集合；沒有任何可達前驅的 X 不需查詢。

    參數:
        oracle: 正規化的 oracle
        d: 值域上界（預設使用 oracle.range_bound）

    回傳:
        ReachabilityTable
    """
    if d is None:
        d = require_range_bound(oracle)
    require_normalized(oracle)

    reachable: Dict[SubsetMask, bool] = {0: True}
    values: Dict[SubsetMask, Value] = {0: 0}
    for size in range(1, min(d, oracle.n) + 1):
        for x in masks_of_size(oracle.n, size):
            predecessors = [x ^ bit for bit in _bits(x) if reachable.get(x ^ bit)]
            if not predecessors:
                reachable[x] = False
                continue
            value = oracle.evaluate(x)
            values[x] = value
            reachable[x] = any(value > values[y] for y in predecessors)
    return ReachabilityTable(reachable, d, values)


def minimal_unreachable(table: ReachabilityTable, n: int) -> UnreachableFamily:
    """
    所有真子集都可達的不可達集合（大小 1 到 d+1）

    可達性不具向下封閉性，因此檢查每一個真子集，而不只是 X∖{u}。

    參數:
        table: reachability 的結果
        n: 基礎集合大小

    回傳:
        UnreachableFamily，成員依（大小, 遮罩）排序
    """
    found: List[SubsetMask] = []
    for size in range(1, min(table.d + 1, n) + 1):
        for x in masks_of_size(n, size):
            if size <= table.d and table.is_reachable(x):
                continue
            if not all(table.is_reachable(x ^ bit) for bit in _bits(x)):
                continue
            if all(table.is_reachable(y) for y in submasks(x, proper=True)):
                found.append(x)
    return UnreachableFamily(found, table)


@dataclass
class CandidatePool:
    """MinPosimodular 檢查的集合：所有單元素集合與封閉集合的補集"""
    singletons: Dict[SubsetMask, Value]
    candidates: Dict[SubsetMask, Value]   # |X| ≥ 2
    family: UnreachableFamily
    closures: List[SubsetMask]

    @property
    def minimum(self) -> Value:
        return min(list(self.singletons.values()) + list(self.candidates.values()))

    def members(self) -> Dict[SubsetMask, Value]:
        merged = dict(self.singletons)
        merged.update(self.candidates)
        return merged


def candidate_pool(oracle: SetFunctionOracle) -> CandidatePool:
    """
    計算單元素集合的值、最小不可達集合族 𝒰、封閉集合與候選集合

    參數:
        oracle: 正規化、已宣告 d 的 posimodular oracle

    回傳:
        CandidatePool
    """
    d = require_range_bound(oracle)
    require_normalized(oracle)
    n = oracle.n
    full = oracle.ground.full

    singletons = {1 << v: oracle.evaluate(1 << v) for v in range(n)}
    family = minimal_unreachable(reachability(oracle, d), n)
    cnf = complement_cnf(build_phi(family.members, n))
    closures = enumerate_closures(cnf, n, d)

    candidates: Dict[SubsetMask, Value] = {}
    for closure in closures:
        x = full & ~closure
        if popcount(x) >= 2 and x not in candidates:
            candidates[x] = oracle.evaluate(x)
    return CandidatePool(singletons, candidates, family, closures)


def min_posimodular(oracle: SetFunctionOracle) -> OptimizationResult:
    """
    值域 {0,…,d} 的 posimodular 函數最小化（O(n^d) 次查詢）

    步驟 1 取最小的單元素集合 {v*}；步驟 2 在 φ_f 的滿足集合中
    （由 𝒰 建立 Horn CNF，對所有 |T| ≤ d 的 seed 做 FCP 後取補集）
    取 |X| ≥ 2 的最小者 S_x*；步驟 3 回傳兩者中較好的（同值取單元素集合）。

    參數:
        oracle: 正規化、已宣告 d 的 posimodular oracle

    回傳:
        OptimizationResult
    """
    start = oracle.call_count
    pool = candidate_pool(oracle)

    singleton = min(pool.singletons, key=lambda x: _best_key(pool.singletons[x], x))
    witness, value = singleton, pool.singletons[singleton]
    if pool.candidates:
        best = min(pool.candidates, key=lambda x: _best_key(pool.candidates[x], x))
        if pool.candidates[best] < value:
            witness, value = best, pool.candidates[best]
    return OptimizationResult(witness, value, oracle.call_count - start, "min_posimodular")


def is_locally_minimal(oracle: SetFunctionOracle, x: SubsetMask) -> bool:
    """
    f(X) < f(X∖{v}) 對所有 v ∈ X

    單元素集合與 f(∅) = 0 比較，因此在正規化後只有 f({v}) < 0 時為真。
    """
    if x == 0:
        raise InvalidSubsetError("局部最小的判斷需要非空集合")
    value = oracle.evaluate(x)
    return all(value < oracle.evaluate(x ^ bit) for bit in _bits(x))


def locally_minimal_minimizers(oracle: SetFunctionOracle, pool: Optional[CandidatePool] = None) -> List[SubsetMask]:
    """
    候選集合中局部最小的最小化集合，加上所有最小化的單元素集合

    單元素集合一律保留，作為向上列舉的起點。

    回傳:
        依（大小, 遮罩）排序的遮罩清單
    """
    pool = pool or candidate_pool(oracle)
    minimum = pool.minimum
    result = [x for x, v in pool.singletons.items() if v == minimum]
    result += [x for x, v in pool.candidates.items() if v == minimum and is_locally_minimal(oracle, x)]
    return sorted(result, key=set_order_key)


class MinimizerStream:
    """
    全部最小化集合的串流

    先輸出局部最小的最小化集合，再以 BFS 往上擴充：
    對每個已輸出的 T 與 v ∉ T，若 f(T∪{v}) 等於最小值就加入佇列。
    每次輸出後才處理該集合，因此相鄰兩次輸出之間最多查詢 n 次。
    emission_calls 記錄每次輸出時的 oracle 呼叫次數。
    """

    def __init__(self, oracle: SetFunctionOracle):
        self.oracle = oracle
        self.emission_calls: List[int] = []
        self.minimum: Optional[Value] = None

    def __iter__(self) -> Iterator[SubsetMask]:
        oracle = self.oracle
        pool = candidate_pool(oracle)
        self.minimum = minimum = pool.minimum

        found = locally_minimal_minimizers(oracle, pool)
        seen = set(found)
        full = oracle.ground.full
        index = 0
        while index < len(found):
            current = found[index]
            self.emission_calls.append(oracle.call_count)
            yield current
            for bit in _bits(full & ~current):
                x = current | bit
                if x not in seen and oracle.evaluate(x) == minimum:
                    seen.add(x)
                    found.append(x)
            index += 1


def enumerate_all_minimizers(oracle: SetFunctionOracle) -> MinimizerStream:
    """回傳可迭代的最小化集合串流（沒有重複）"""
    return MinimizerStream(oracle)


def compute_extreme_sets(oracle: SetFunctionOracle) -> List[SubsetMask]:
    """
    計算所有極端集合

    𝒬 = 單元素集合 ∪ {V ∖ FCP(T) : |T| ≤ d}；X ∈ 𝒬 是極端集合 ⇔
    𝒬 中所有非空真子集 Y ⊊ X 都滿足 f(Y) > f(X)。每個 𝒬 成員只查詢一次。

    參數:
        oracle: 正規化、已宣告 d 的 posimodular oracle

    回傳:
        依（大小, 遮罩）排序的極端集合（層狀族）
    """
    values = candidate_pool(oracle).members()
    family = sorted(values, key=set_order_key)
    extreme = []
    for i, x in enumerate(family):
        value = values[x]
        if all(values[y] > value for y in family[:i] if y != x and y & ~x == 0):
            extreme.append(x)
    return extreme


# ---------------------------------------------------------------------------
# 依定義的暴力計算（測試與 stats 使用）
# ---------------------------------------------------------------------------

def _subset_minima(oracle: SetFunctionOracle, cap: Optional[int]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """回傳 (f, 非空子集合最小值, 非空真子集最小值)，皆以遮罩為索引"""
    limit = resolve_cap(cap, "exhaustive")
    if oracle.n > limit:
        raise CapExceededError(f"n={oracle.n} 超過窮舉上限 {limit}（可用 POSIMOD_N_CAP 調整）")
    table = oracle.table()
    if table.dtype == object:
        sentinel = float("inf")
    else:
        sentinel = np.iinfo(np.int64).max

    masks = np.arange(table.size, dtype=np.int64)
    sub_min = table.copy()
    sub_min[0] = sentinel
    for v in range(oracle.n):
        upper = masks[(masks & (1 << v)) != 0]
        sub_min[upper] = np.minimum(sub_min[upper], sub_min[upper ^ (1 << v)])

    proper_min = np.full_like(table, sentinel)
    for v in range(oracle.n):
        upper = masks[(masks & (1 << v)) != 0]
        proper_min[upper] = np.minimum(proper_min[upper], sub_min[upper ^ (1 << v)])
    return table, sub_min, proper_min


def semi_extreme_sets(oracle: SetFunctionOracle, cap: Optional[int] = None) -> List[SubsetMask]:
    """所有半極端集合（所有非空子集合 Y 滿足 f(Y) ≥ f(X)）"""
    table, sub_min, _ = _subset_minima(oracle, cap)
    hits = np.flatnonzero(np.asarray(sub_min >= table, dtype=bool))
    return sorted((int(x) for x in hits if x), key=set_order_key)


def extreme_sets_by_definition(oracle: SetFunctionOracle, cap: Optional[int] = None) -> List[SubsetMask]:
    """所有極端集合（所有非空真子集 Y 滿足 f(Y) > f(X)），直接檢查 2^n 個子集合"""
    table, _, proper_min = _subset_minima(oracle, cap)
    hits = np.flatnonzero(np.asarray(proper_min > table, dtype=bool))
    return sorted((int(x) for x in hits if x), key=set_order_key)
