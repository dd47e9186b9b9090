"""
最大化模組

暴力最大化與值域 {0,…,d} 的 MaxPosimodular（O(n^{d-1}) 次查詢）
"""

from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Tuple

from .minimize import OptimizationResult, check_brute_cap, require_normalized, require_range_bound
from .oracle import SetFunctionOracle, Value
from .subsets import SubsetMask, masks_of_size, members, popcount


def step_bound(n: int, d: int) -> int:
    """
    Σ_{k=2}^{d-1} C(2d, k) · C(n-2d, d-1-k)

    d ≤ 2 或 n < 2d 時為 0。
    """
    if d <= 2 or n < 2 * d:
        return 0
    return sum(comb(2 * d, k) * comb(n - 2 * d, d - 1 - k) for k in range(2, d))


@dataclass(frozen=True)
class MaxBudget:
    """步驟 3 要檢查的 𝒳₁ 成員數"""
    n: int
    d: int
    step3_budget: int

    @classmethod
    def for_instance(cls, n: int, d: int, x1_size: int) -> "MaxBudget":
        """
        參數:
            n: 基礎集合大小
            d: 值域上界
            x1_size: |𝒳₁|（大小 d-1 且值為 d-1 的集合數）
        """
        return cls(n, d, min(step_bound(n, d) + 1, x1_size))


def _max_key(value: Value, x: SubsetMask):
    """最大化的比較鍵：值、大小越大越好，再取遮罩較小者"""
    return (value, popcount(x), -x)


def _best_over(oracle: SetFunctionOracle, masks: Iterable[SubsetMask]) -> Optional[Tuple[Value, SubsetMask]]:
    best = None
    for x in masks:
        value = oracle.evaluate(x)
        if best is None or _max_key(value, x) > _max_key(*best):
            best = (value, x)
    return best


def _sizes(n: int, low: int) -> Iterable[SubsetMask]:
    for size in range(max(low, 1), n + 1):
        yield from masks_of_size(n, size)


def brute_force_max(oracle: SetFunctionOracle, cap: Optional[int] = None) -> OptimizationResult:
    """
    窮舉所有非空子集合求最大值

    參數:
        oracle: 集合函數
        cap: n 的上限（預設 20）

    回傳:
        OptimizationResult：最大值與「最大基數、再最小遮罩」的最大化集合
    """
    check_brute_cap(oracle, cap)
    start = oracle.call_count
    value, witness = _best_over(oracle, _sizes(oracle.n, 1))
    return OptimizationResult(witness, value, oracle.call_count - start, "brute_force_max")


def max_posimodular(oracle: SetFunctionOracle) -> OptimizationResult:
    """
    值域 {0,…,d} 的 posimodular 函數最大化

    步驟 1：X₁ = 所有 |X| ≥ n-d+1 中的最大者，f(X₁) = d 即輸出。
    步驟 2：掃描所有 |X| = d-1；最大值為 d 則輸出，≤ d-2 則輸出 X₁。
    步驟 3：依遮罩順序取 𝒳₁ = {|X| = d-1, f(X) = d-1} 的前 step3_budget 個，
    測試每個 X∪{v}，第一個值為 d 者即輸出。
    步驟 4：輸出 X₁。
    n < 2d 時直接窮舉所有 |X| ≥ n-d。

    參數:
        oracle: 正規化、已宣告 d 的 posimodular oracle

    回傳:
        OptimizationResult，algorithm 標示停止的步驟
    """
    d = require_range_bound(oracle)
    require_normalized(oracle)
    start = oracle.call_count
    n = oracle.n

    def result(value: Value, witness: SubsetMask, step: str) -> OptimizationResult:
        return OptimizationResult(witness, value, oracle.call_count - start, f"max_posimodular/{step}")

    if d == 0:
        full = oracle.ground.full
        return result(oracle.evaluate(full), full, "degenerate")

    if n < 2 * d:
        value, witness = _best_over(oracle, _sizes(n, n - d))
        return result(value, witness, "fallback")

    # 步驟 1
    x1_value, x1 = _best_over(oracle, _sizes(n, n - d + 1))
    if x1_value == d:
        return result(x1_value, x1, "step1")

    # 步驟 2：d = 1 時掃描的是 ∅（值為 0，只作為步驟 3 的起點）
    level: List[SubsetMask] = []
    x2 = None
    for x in masks_of_size(n, d - 1):
        value = oracle.evaluate(x)
        if value == d and x2 is None:
            x2 = x
        if value == d - 1:
            level.append(x)
    if x2 is not None:
        return result(d, x2, "step2")
    if not level:
        return result(x1_value, x1, "step2")

    # 步驟 3
    budget = MaxBudget.for_instance(n, d, len(level))
    full = oracle.ground.full
    for x in level[:budget.step3_budget]:
        for v in members(full & ~x):
            y = x | (1 << v)
            if oracle.evaluate(y) == d:
                return result(d, y, "step3")

    return result(x1_value, x1, "step4")
