"""
子集合模組

基礎集合 V 與以整數位元遮罩表示的子集合運算
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence

from .errors import InvalidSubsetError
from .settings import GROUND_CAP

# 子集合以 int 位元遮罩表示：第 i 位為 1 代表元素 i 屬於該集合
SubsetMask = int


@dataclass(frozen=True)
class GroundSet:
    """基礎集合 V = {0, …, n-1}"""
    n: int                                  # 元素個數
    labels: Optional[Sequence[str]] = None  # 元素名稱（可選）

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSubsetError(f"基礎集合至少要有 1 個元素，收到 n={self.n}")
        if self.n > GROUND_CAP:
            raise InvalidSubsetError(f"基礎集合最多 {GROUND_CAP} 個元素，收到 n={self.n}")
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != self.n:
                raise InvalidSubsetError(f"標籤數量 {len(labels)} 與 n={self.n} 不符")
            if len(set(labels)) != self.n:
                raise InvalidSubsetError("元素標籤必須兩兩相異")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> SubsetMask:
        """整個 V 的遮罩"""
        return (1 << self.n) - 1

    def check(self, mask: SubsetMask) -> SubsetMask:
        """確認遮罩落在 V 之內，否則丟出 InvalidSubsetError"""
        if mask < 0 or mask >> self.n:
            raise InvalidSubsetError(f"子集合 {members(mask) if mask >= 0 else mask} 超出 n={self.n}")
        return mask

    def mask(self, elements: Iterable[int]) -> SubsetMask:
        """由元素索引建立遮罩（並檢查範圍）"""
        result = 0
        for element in elements:
            if not 0 <= element < self.n:
                raise InvalidSubsetError(f"元素索引 {element} 超出 n={self.n}")
            result |= 1 << element
        return result

    def complement(self, mask: SubsetMask) -> SubsetMask:
        """V ∖ X"""
        return self.full & ~mask

    def label(self, element: int) -> str:
        if self.labels is None:
            return str(element)
        return self.labels[element]

    def format(self, mask: SubsetMask) -> str:
        """以 {a,b,c} 形式顯示子集合"""
        return format_mask(mask, self.labels)


def popcount(mask: SubsetMask) -> int:
    """|X|"""
    return mask.bit_count()


def mask_of(elements: Iterable[int]) -> SubsetMask:
    """由元素索引建立遮罩（不檢查上限）"""
    result = 0
    for element in elements:
        if element < 0:
            raise InvalidSubsetError(f"元素索引不可為負數: {element}")
        result |= 1 << element
    return result


def members(mask: SubsetMask) -> List[int]:
    """遮罩中的元素，由小到大"""
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return result


def format_mask(mask: SubsetMask, labels: Optional[Sequence[str]] = None) -> str:
    """以 {a,b,c} 形式顯示子集合；沒有標籤時使用元素索引"""
    names = (str(v) if labels is None else labels[v] for v in members(mask))
    return "{" + ",".join(names) + "}"


def complement(mask: SubsetMask, n: int) -> SubsetMask:
    return ((1 << n) - 1) & ~mask


def is_subset(x: SubsetMask, y: SubsetMask) -> bool:
    """X ⊆ Y"""
    return x & ~y == 0


def masks_of_size(n: int, k: int) -> Iterator[SubsetMask]:
    """
    依整數遞增順序列舉所有 |X|=k 的子集合（Gosper's hack）

    參數:
        n: 基礎集合大小
        k: 子集合大小

    回傳:
        遮罩產生器
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def masks_up_to(n: int, k: int) -> Iterator[SubsetMask]:
    """依（大小, 遮罩）遞增順序列舉所有 |X| ≤ k 的子集合"""
    for size in range(0, min(k, n) + 1):
        yield from masks_of_size(n, size)


def submasks(mask: SubsetMask, proper: bool = False, nonempty: bool = False) -> Iterator[SubsetMask]:
    """列舉 X 的所有子集合（遮罩遞減順序）"""
    sub = mask
    while True:
        if not (proper and sub == mask) and not (nonempty and sub == 0):
            yield sub
        if sub == 0:
            break
        sub = (sub - 1) & mask


def set_order_key(mask: SubsetMask):
    """決定性的排序鍵：先比大小，再比遮罩"""
    return (popcount(mask), mask)


def is_laminar(family: Iterable[SubsetMask]) -> bool:
    """任兩個成員不是互斥就是包含"""
    sets = list(family)
    for i, x in enumerate(sets):
        for y in sets[i + 1:]:
            if x & y and not is_subset(x, y) and not is_subset(y, x):
                return False
    return True
