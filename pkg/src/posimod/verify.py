"""
結構驗證模組

以窮舉方式檢查 posimodular / submodular / monotone / symmetric，
找到第一個違反的 (X, Y) 即回傳反例
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from .errors import CapExceededError
from .oracle import SetFunctionOracle, Value
from .settings import resolve_cap
from .subsets import SubsetMask, members

LAWS = ("posimodular", "submodular", "monotone", "symmetric")


@dataclass(frozen=True)
class ViolationWitness:
    """反例：lhs < rhs"""
    x: SubsetMask
    y: SubsetMask
    lhs: Value
    rhs: Value
    law: str

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "x": members(self.x),
            "y": members(self.y),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def _value_table(oracle: SetFunctionOracle, cap: Optional[int]) -> np.ndarray:
    limit = resolve_cap(cap, "exhaustive")
    if oracle.n > limit:
        raise CapExceededError(f"n={oracle.n} 超過窮舉驗證上限 {limit}（可用 POSIMOD_N_CAP 調整）")
    return oracle.table()


def _first(hits: np.ndarray) -> Optional[int]:
    index = np.flatnonzero(np.asarray(hits, dtype=bool))
    return int(index[0]) if index.size else None


def _item(table: np.ndarray, mask) -> Value:
    value = table[int(mask)]
    return int(value) if isinstance(value, np.integer) else value


def verify_posimodular(oracle: SetFunctionOracle, cap: Optional[int] = None) -> Optional[ViolationWitness]:
    """
    檢查 f(X)+f(Y) ≥ f(X∖Y)+f(Y∖X) 對所有 4^n 組 (X, Y)

    參數:
        oracle: 要檢查的 oracle
        cap: n 的上限（預設讀取設定，12）

    回傳:
        None 表示成立；否則為依 (X, Y) 遮罩順序的第一個反例
    """
    table = _value_table(oracle, cap)
    ys = np.arange(table.size, dtype=np.int64)
    for x in range(table.size):
        lhs = table[x] + table
        rhs = table[x & ~ys] + table[ys & ~x]
        y = _first(lhs < rhs)
        if y is not None:
            return ViolationWitness(
                x, y,
                lhs=_item(table, x) + _item(table, y),
                rhs=_item(table, x & ~y) + _item(table, y & ~x),
                law="posimodular",
            )
    return None


def verify_submodular(oracle: SetFunctionOracle, cap: Optional[int] = None) -> Optional[ViolationWitness]:
    """檢查 f(X)+f(Y) ≥ f(X∩Y)+f(X∪Y)，回傳第一個反例或 None"""
    table = _value_table(oracle, cap)
    ys = np.arange(table.size, dtype=np.int64)
    for x in range(table.size):
        lhs = table[x] + table
        rhs = table[x & ys] + table[x | ys]
        y = _first(lhs < rhs)
        if y is not None:
            return ViolationWitness(
                x, y,
                lhs=_item(table, x) + _item(table, y),
                rhs=_item(table, x & y) + _item(table, x | y),
                law="submodular",
            )
    return None


def verify_monotone(oracle: SetFunctionOracle, cap: Optional[int] = None) -> Optional[ViolationWitness]:
    """
    檢查所有覆蓋對 (Y, Y∪{v}) 是否滿足 f(Y∪{v}) ≥ f(Y)

    回傳:
        None 或反例（x = Y∪{v}, y = Y, lhs = f(x) < rhs = f(y)）；
        反例依 (x, y) 的遮罩字典序取第一個
    """
    table = _value_table(oracle, cap)
    ys = np.arange(table.size, dtype=np.int64)
    best = None
    for v in range(oracle.n):
        bit = 1 << v
        lower = ys[(ys & bit) == 0]
        # lower 遞增時 lower | bit 也遞增，第一個反例即此 v 下最小的 x
        index = _first(table[lower | bit] < table[lower])
        if index is not None:
            y = int(lower[index])
            candidate = (y | bit, y)
            if best is None or candidate < best:
                best = candidate
    if best is None:
        return None
    x, y = best
    return ViolationWitness(x, y, lhs=_item(table, x), rhs=_item(table, y), law="monotone")


def verify_symmetric(oracle: SetFunctionOracle, cap: Optional[int] = None) -> Optional[ViolationWitness]:
    """
    檢查 f(X) = f(V∖X)

    回傳:
        None 或第一個 f(X) ≠ f(V∖X) 的 X；反例把較小的值放在 lhs
    """
    table = _value_table(oracle, cap)
    xs = np.arange(table.size, dtype=np.int64)
    complements = oracle.ground.full ^ xs
    x = _first(table != table[complements])
    if x is None:
        return None
    y = oracle.ground.full ^ x
    fx, fy = _item(table, x), _item(table, y)
    if fx > fy:
        x, y, fx, fy = y, x, fy, fx
    return ViolationWitness(x, y, lhs=fx, rhs=fy, law="symmetric")


VERIFIERS: Dict[str, Callable[..., Optional[ViolationWitness]]] = {
    "posimodular": verify_posimodular,
    "submodular": verify_submodular,
    "monotone": verify_monotone,
    "symmetric": verify_symmetric,
}
