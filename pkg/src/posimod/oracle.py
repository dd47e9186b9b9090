"""
集合函數 oracle 模組

以計數與快取包裝集合函數，並提供正規化、收縮與展開
"""

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from .errors import InvalidSubsetError, RangeBoundError, StructureError
from .subsets import GroundSet, SubsetMask, members

# 函數值一律精確：整數，或明確值表中的有理數
Value = Union[int, Fraction]


def exact(value: Any) -> Value:
    """將函數值轉成精確型別（分母為 1 的有理數化為整數）"""
    if isinstance(value, bool):
        raise RangeBoundError(f"函數值必須是數字，收到 {value!r}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise RangeBoundError(f"函數值必須是精確的整數或有理數，收到 {value!r}")


@dataclass
class QueryTranscript:
    """某次演算法執行中依序查詢過的子集合"""
    n: int
    masks: List[SubsetMask] = field(default_factory=list)

    def __post_init__(self):
        for mask in self.masks:
            if mask < 0 or mask >> self.n:
                raise InvalidSubsetError(f"查詢紀錄中的子集合 {mask} 超出 n={self.n}")

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.masks)


@dataclass(frozen=True)
class ContractionMap:
    """收縮後元素 → 原始基礎集合中的區塊"""
    blocks: Tuple[SubsetMask, ...]
    original_n: int

    def __post_init__(self):
        seen = 0
        for block in self.blocks:
            if block == 0:
                raise StructureError("收縮區塊不可為空")
            if block & seen:
                raise StructureError("收縮區塊必須兩兩互斥")
            seen |= block
        if seen != (1 << self.original_n) - 1:
            raise StructureError("收縮區塊的聯集必須是原始基礎集合")

    @classmethod
    def identity(cls, n: int) -> "ContractionMap":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def n(self) -> int:
        """收縮後的元素個數"""
        return len(self.blocks)

    def expand(self, mask: SubsetMask) -> SubsetMask:
        """收縮後子集合 → 原始子集合（各成員區塊的聯集）"""
        result = 0
        for element in members(mask):
            if element >= len(self.blocks):
                raise InvalidSubsetError(f"元素 {element} 不在收縮後的基礎集合中")
            result |= self.blocks[element]
        return result


class SetFunctionOracle:
    """
    可計數、可快取的集合函數 oracle

    call_count 即 T_f 的計量：預設只計算快取未命中的次數（相異查詢數），
    count_raw=True 時每次呼叫都計數。由其他 oracle 衍生（正規化、收縮）的
    oracle 不自行計數，查詢會流向根 oracle。
    """

    def __init__(
        self,
        ground: GroundSet,
        func: Callable[[SubsetMask], Value],
        kind: Any,
        range_bound: Optional[int] = None,
        count_raw: bool = False,
        record: bool = False,
        base: Optional["SetFunctionOracle"] = None,
    ):
        if range_bound is not None and (isinstance(range_bound, bool) or range_bound < 0):
            raise RangeBoundError(f"值域上界 d 必須是非負整數，收到 {range_bound!r}")
        self.ground = ground
        self.kind = kind
        self.range_bound = range_bound
        self.count_raw = count_raw
        self.cache: Dict[SubsetMask, Value] = {}
        self.contraction: Optional[ContractionMap] = None
        self._contraction_root: Optional["SetFunctionOracle"] = None
        self._func = func
        self._base = base
        self._calls = 0
        self._lock = threading.Lock()
        self._transcript: Optional[List[SubsetMask]] = [] if record else None

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def root(self) -> "SetFunctionOracle":
        """實際負責計數的 oracle"""
        oracle = self
        while oracle._base is not None:
            oracle = oracle._base
        return oracle

    @property
    def call_count(self) -> int:
        if self._base is not None:
            return self._base.call_count
        return self._calls

    @property
    def transcript(self) -> Optional[QueryTranscript]:
        if self._transcript is None:
            return None
        return QueryTranscript(self.n, list(self._transcript))

    def reset(self) -> None:
        """清除快取、計數與查詢紀錄"""
        with self._lock:
            self.cache.clear()
            self._calls = 0
            if self._transcript is not None:
                self._transcript.clear()

    def evaluate(self, x: SubsetMask) -> Value:
        """
        回答 f(X)

        參數:
            x: 子集合遮罩

        回傳:
            精確的函數值
        """
        self.ground.check(x)
        if self._transcript is not None:
            with self._lock:
                self._transcript.append(x)

        if self._base is not None:
            return self._func(x)

        with self._lock:
            if x in self.cache:
                if self.count_raw:
                    self._calls += 1
                return self.cache[x]

        value = exact(self._func(x))

        with self._lock:
            if x in self.cache:
                # 另一個執行緒先算完了
                if self.count_raw:
                    self._calls += 1
                return self.cache[x]
            self.cache[x] = value
            self._calls += 1
            return value

    __call__ = evaluate

    def table(self) -> np.ndarray:
        """
        所有 2^n 個子集合的函數值表（索引即遮罩）

        回傳:
            全為整數時為 int64 陣列，否則為 object 陣列（Fraction）
        """
        values = [self.evaluate(x) for x in range(1 << self.n)]
        if all(isinstance(v, int) for v in values):
            return np.array(values, dtype=np.int64)
        return np.array(values, dtype=object)

    def __repr__(self) -> str:
        return f"SetFunctionOracle(n={self.n}, kind={self.kind!r}, d={self.range_bound})"


def evaluate(oracle: SetFunctionOracle, x: SubsetMask) -> Value:
    """f(X)；快取未命中時 call_count 加一"""
    return oracle.evaluate(x)


def normalize(oracle: SetFunctionOracle) -> SetFunctionOracle:
    """
    平移函數使 g(∅)=0

    參數:
        oracle: 原始 oracle

    回傳:
        g(X) = f(X) - f(∅) 的衍生 oracle（查詢會流向原 oracle）
    """
    offset = oracle.evaluate(0)

    def shifted(x: SubsetMask) -> Value:
        return exact(oracle.evaluate(x) - offset)

    normalized = SetFunctionOracle(
        oracle.ground,
        shifted,
        kind=oracle.kind,
        range_bound=oracle.range_bound,
        base=oracle,
    )
    return normalized


def _block_label(root: SetFunctionOracle, block: SubsetMask) -> str:
    return "+".join(root.ground.label(v) for v in members(block))


def contract(oracle: SetFunctionOracle, s_block: SubsetMask) -> Tuple[SetFunctionOracle, ContractionMap]:
    """
    把子集合 S 收縮成單一新元素 s

    新基礎集合為 (V ∖ S) ∪ {s}：保留的元素依原順序排列，s 放在最後。
    若 oracle 本身已是收縮結果，區塊會與先前的對應合成。

    參數:
        oracle: 目前的 oracle
        s_block: 要收縮的子集合 S（非空）

    回傳:
        (收縮後的 oracle, 合成後的 ContractionMap)
    """
    if s_block == 0:
        raise StructureError("不能收縮空集合")
    oracle.ground.check(s_block)

    root = oracle._contraction_root or oracle
    base_map = oracle.contraction or ContractionMap.identity(oracle.n)

    kept = [i for i in range(oracle.n) if not (s_block >> i) & 1]
    blocks = tuple(base_map.blocks[i] for i in kept) + (base_map.expand(s_block),)
    new_map = ContractionMap(blocks, base_map.original_n)
    labels = [_block_label(root, block) for block in blocks]

    def contracted(x: SubsetMask) -> Value:
        return root.evaluate(new_map.expand(x))

    result = SetFunctionOracle(
        GroundSet(len(blocks), labels),
        contracted,
        kind=oracle.kind,
        range_bound=oracle.range_bound,
        base=root,
    )
    result.contraction = new_map
    result._contraction_root = root
    return result, new_map


def expand(contraction_map: Optional[ContractionMap], x: SubsetMask) -> SubsetMask:
    """收縮後子集合 → 原始基礎集合中的子集合；None 視為恆等對應"""
    if contraction_map is None:
        return x
    return contraction_map.expand(x)
