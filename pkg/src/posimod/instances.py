"""
實例產生模組

建立各種 posimodular 函數族（困難實例、範例函數、割函數、基數函數、
隨機單調函數），以及下界公式與查詢對手（adversary）
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import InstanceFormatError, InstanceParameterError, RangeBoundError
from .oracle import QueryTranscript, SetFunctionOracle, Value, exact
from .settings import GROUND_CAP
from .subsets import GroundSet, SubsetMask, is_subset, mask_of, masks_of_size, members, popcount

# 實例族名稱
EXPLICIT_TABLE = "explicit_table"
CUT_GRAPH = "cut_graph"
CARDINALITY = "cardinality"
CAPPED_CARDINALITY = "capped_cardinality"
HARDNESS_MIN = "hardness_min"
HARDNESS_MIN_BOUNDED = "hardness_min_bounded"
HARDNESS_MAX_EVEN = "hardness_max_even"
HARDNESS_MAX_ODD = "hardness_max_odd"
HARDNESS_MAX_SMALLD = "hardness_max_smalld"
EXAMPLE1 = "example1"
RANDOM_MONOTONE = "random_monotone"

FAMILIES = (
    EXPLICIT_TABLE, CUT_GRAPH, CARDINALITY, CAPPED_CARDINALITY, HARDNESS_MIN,
    HARDNESS_MIN_BOUNDED, HARDNESS_MAX_EVEN, HARDNESS_MAX_ODD, HARDNESS_MAX_SMALLD,
    EXAMPLE1, RANDOM_MONOTONE,
)

# 參數中以元素清單表示的子集合欄位
_SET_PARAMS = ("S", "T")


@dataclass(frozen=True)
class InstanceDescriptor:
    """實例描述：族名稱 + 參數，完整決定函數（隨機族以 seed 固定）"""
    family: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InstanceParameterError(f"未知的實例族: {self.family}")

    def to_dict(self) -> dict:
        """轉成可寫入實例檔的結構（子集合寫成元素清單）"""
        params: Dict[str, Any] = {}
        for key, value in self.params.items():
            if key in _SET_PARAMS and value is not None:
                params[key] = members(value)
            elif key == "edges":
                params[key] = [list(edge) for edge in value]
            elif key == "values":
                params[key] = [[members(mask), str(v)] for mask, v in sorted(value.items())]
            elif key == "default" and value is not None:
                params[key] = str(value)
            else:
                params[key] = value
        return {"family": self.family, "params": params}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "InstanceDescriptor":
        return descriptor_from_dict(data)


@dataclass(frozen=True)
class WeightedGraph:
    """無向帶權圖（整數權重 ≥ 0，不允許自環）"""
    n: int
    edges: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v), int(w)) for u, v, w in self.edges)
        for u, v, w in edges:
            if u == v:
                raise InstanceParameterError(f"不允許自環: ({u}, {v})")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceParameterError(f"邊 ({u}, {v}) 超出 n={self.n}")
            if w < 0:
                raise InstanceParameterError(f"邊 ({u}, {v}) 的權重必須 ≥ 0，收到 {w}")
        object.__setattr__(self, "edges", edges)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def to_networkx(self) -> nx.Graph:
        """轉成 networkx 圖（平行邊的權重相加）"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u, v, w in self.edges:
            if graph.has_edge(u, v):
                graph[u][v]["weight"] += w
            else:
                graph.add_edge(u, v, weight=w)
        return graph


def _oracle(
    descriptor: InstanceDescriptor,
    n: int,
    func,
    range_bound: Optional[int],
    labels: Optional[Sequence[str]] = None,
    **options,
) -> SetFunctionOracle:
    return SetFunctionOracle(GroundSet(n, labels), func, kind=descriptor, range_bound=range_bound, **options)


def _check_positive(n: int) -> None:
    if n < 1:
        raise InstanceParameterError(f"n 必須 ≥ 1，收到 {n}")


def _check_n(n: int) -> None:
    _check_positive(n)
    if n > GROUND_CAP:
        raise InstanceParameterError(f"n 最多為 {GROUND_CAP}，收到 {n}")


def _as_mask(n: int, subset, name: str) -> SubsetMask:
    """接受遮罩或元素清單，並確認落在 V 之內"""
    mask = subset if isinstance(subset, int) else mask_of(subset)
    if mask < 0 or mask >> n:
        raise InstanceParameterError(f"{name} 超出基礎集合 n={n}")
    return mask


def make_cardinality(n: int, **options) -> SetFunctionOracle:
    """
    基數函數 g(X) = |X|

    參數:
        n: 基礎集合大小

    回傳:
        值域上界 d = n 的 oracle
    """
    _check_n(n)
    descriptor = InstanceDescriptor(CARDINALITY, {"n": n})
    return _oracle(descriptor, n, popcount, n, **options)


def make_capped_cardinality(n: int, cap: int, **options) -> SetFunctionOracle:
    """f(X) = min(|X|, cap)；單調且 f(∅)=0，因此是 posimodular"""
    _check_n(n)
    if cap < 0:
        raise InstanceParameterError(f"cap 必須 ≥ 0，收到 {cap}")
    descriptor = InstanceDescriptor(CAPPED_CARDINALITY, {"n": n, "cap": cap})
    return _oracle(descriptor, n, lambda x: min(popcount(x), cap), cap, **options)


def make_hardness_min(n: int, k: int, S, **options) -> SetFunctionOracle:
    """
    最小化困難實例 g_S

    g_S(X) = 2k - |X|（X ⊆ S 且 |X| ≥ k+1），其餘為 |X|

    參數:
        n: 基礎集合大小
        k: 1 ≤ k ≤ n/2
        S: 隱藏集合，|S| = 2k

    回傳:
        值域上界 d = n 的 oracle
    """
    _check_n(n)
    if not 1 <= k <= n // 2:
        raise InstanceParameterError(f"需要 1 ≤ k ≤ n/2，收到 k={k}, n={n}")
    hidden = _as_mask(n, S, "S")
    if popcount(hidden) != 2 * k:
        raise InstanceParameterError(f"|S| 必須等於 2k={2 * k}，收到 {popcount(hidden)}")

    def value(x: SubsetMask) -> int:
        size = popcount(x)
        if size >= k + 1 and is_subset(x, hidden):
            return 2 * k - size
        return size

    descriptor = InstanceDescriptor(HARDNESS_MIN, {"n": n, "k": k, "S": hidden})
    return _oracle(descriptor, n, value, n, **options)


def make_hardness_min_bounded(n: int, d: int, T, S=None, **options) -> SetFunctionOracle:
    """
    值域有界的最小化困難實例

    g(X) = 0（X=∅）、|X|（∅≠X⊆T）、|T|+|T∩X|（其他）；
    若給定 S ⊆ T（|S|=2k），再疊加 g_S(X) = 2k-|X|（X ⊆ S 且 |X| ≥ k+1）

    參數:
        n: 基礎集合大小
        d: 值域上界
        T: |T| = ⌊d/2⌋ 的子集合
        S: 可選的隱藏集合

    回傳:
        值域上界為 d 的 oracle
    """
    _check_n(n)
    if d < 0:
        raise InstanceParameterError(f"d 必須 ≥ 0，收到 {d}")
    base = _as_mask(n, T, "T")
    t = popcount(base)
    if t != d // 2:
        raise InstanceParameterError(f"|T| 必須等於 ⌊d/2⌋={d // 2}，收到 {t}")

    hidden = None
    k = 0
    if S is not None:
        hidden = _as_mask(n, S, "S")
        size = popcount(hidden)
        if not is_subset(hidden, base):
            raise InstanceParameterError("S 必須是 T 的子集合")
        if size < 2 or size % 2:
            raise InstanceParameterError(f"|S| 必須是正偶數 2k，收到 {size}")
        k = size // 2

    def value(x: SubsetMask) -> int:
        size = popcount(x)
        if hidden is not None and size >= k + 1 and is_subset(x, hidden):
            return 2 * k - size
        if x == 0:
            return 0
        if is_subset(x, base):
            return size
        return t + popcount(x & base)

    descriptor = InstanceDescriptor(HARDNESS_MIN_BOUNDED, {"n": n, "d": d, "T": base, "S": hidden})
    return _oracle(descriptor, n, value, d, **options)


def max_size_threshold(n: int) -> int:
    """最大化困難實例中隱藏集合 S 的最小大小（偶數 n 為 k，奇數 n 為 k+1）"""
    return n // 2 if n % 2 == 0 else n // 2 + 1


def make_hardness_max(n: int, S=None, **options) -> SetFunctionOracle:
    """
    最大化困難實例

    n = 2k：g(X) = |X|（|X| ≤ k-1）否則 k；g_S(S) = k+1，|S| ≥ k
    n = 2k+1：g(X) = |X|（|X| ≤ k）否則 k+1；g_S(S) = k+2，|S| ≥ k+1

    回傳:
        值域上界為 k+1（偶數）或 k+2（奇數）的 oracle
    """
    _check_n(n)
    k = n // 2
    even = n % 2 == 0
    plateau = k if even else k + 1
    threshold = max_size_threshold(n)

    hidden = None
    if S is not None:
        hidden = _as_mask(n, S, "S")
        if popcount(hidden) < threshold:
            raise InstanceParameterError(f"|S| 必須 ≥ {threshold}，收到 {popcount(hidden)}")

    def value(x: SubsetMask) -> int:
        if x == hidden:
            return plateau + 1
        return min(popcount(x), plateau)

    family = HARDNESS_MAX_EVEN if even else HARDNESS_MAX_ODD
    descriptor = InstanceDescriptor(family, {"n": n, "S": hidden})
    return _oracle(descriptor, n, value, plateau + 1, **options)


def make_hardness_max_smalld(n: int, d: int, S=None, **options) -> SetFunctionOracle:
    """
    值域 {0,…,d} 的最大化困難實例

    g(X) = |X|（|X| ≤ d-2）否則 d-1；g_S(S) = d，|S| ≥ n-d+1
    """
    _check_n(n)
    if d < 1:
        raise InstanceParameterError(f"d 必須 ≥ 1，收到 {d}")
    if n < 2 * d - 2:
        raise InstanceParameterError(f"需要 n ≥ 2d-2={2 * d - 2}，收到 n={n}")
    hidden = None
    if S is not None:
        hidden = _as_mask(n, S, "S")
        if popcount(hidden) < n - d + 1:
            raise InstanceParameterError(f"|S| 必須 ≥ n-d+1={n - d + 1}，收到 {popcount(hidden)}")

    def value(x: SubsetMask) -> int:
        if x == hidden:
            return d
        return min(popcount(x), d - 1)

    descriptor = InstanceDescriptor(HARDNESS_MAX_SMALLD, {"n": n, "d": d, "S": hidden})
    return _oracle(descriptor, n, value, d, **options)


def make_example1(n: int, S, **options) -> SetFunctionOracle:
    """
    沒有小型半極端集合的範例函數（值域 {0,…,7}，|S| ≥ 4）

    非平凡的半極端集合只有 S 與 S∖{v}，大小和 d 無關
    """
    _check_n(n)
    hidden = _as_mask(n, S, "S")
    s = popcount(hidden)
    if s < 4:
        raise InstanceParameterError(f"|S| 必須 ≥ 4，收到 {s}")

    def value(x: SubsetMask) -> int:
        if x == 0 or x == hidden:
            return 0
        inside = popcount(x & hidden)
        if is_subset(x, hidden):
            return 1 if inside in (1, s - 1) else 2
        if inside == 0:
            return 2 if popcount(x) == 1 else 3
        if inside == 1:
            return 4
        if inside <= s - 2:
            return 5
        if inside == s - 1:
            return 6
        return 7

    descriptor = InstanceDescriptor(EXAMPLE1, {"n": n, "S": hidden})
    return _oracle(descriptor, n, value, 7, **options)


def make_cut_function(graph: WeightedGraph, labels: Optional[Sequence[str]] = None, **options) -> SetFunctionOracle:
    """
    無向割函數：恰有一端點在 X 內的邊權重總和

    參數:
        graph: 帶權圖

    回傳:
        值域上界為總權重的 oracle
    """
    _check_n(graph.n)
    nx_graph = graph.to_networkx()

    def value(x: SubsetMask) -> int:
        return int(nx.cut_size(nx_graph, members(x), weight="weight"))

    descriptor = InstanceDescriptor(CUT_GRAPH, {"n": graph.n, "edges": graph.edges})
    return _oracle(descriptor, graph.n, value, graph.total_weight, labels, **options)


def make_random_monotone(n: int, d: int, seed: int, **options) -> SetFunctionOracle:
    """
    隨機單調函數（因此為 posimodular）

    每個 f(X) 先在 {0,…,d} 內抽樣，再抬升為所有 f(X∖{v}) 的最大值；
    f(∅) = 0。相同 seed 產生相同函數。

    參數:
        n: 基礎集合大小
        d: 值域上界
        seed: 亂數種子

    回傳:
        值域上界為 d 的 oracle
    """
    _check_n(n)
    if d < 0:
        raise InstanceParameterError(f"d 必須 ≥ 0，收到 {d}")
    rng = np.random.default_rng(seed)
    table = rng.integers(0, d + 1, size=1 << n, dtype=np.int64)
    table[0] = 0

    # 逐一元素做 max 累積，結果等同依基數遞增順序的單次抬升
    masks = np.arange(1 << n, dtype=np.int64)
    for v in range(n):
        bit = 1 << v
        upper = masks[(masks & bit) != 0]
        table[upper] = np.maximum(table[upper], table[upper ^ bit])

    values = table.tolist()
    descriptor = InstanceDescriptor(RANDOM_MONOTONE, {"n": n, "d": d, "seed": seed})
    return _oracle(descriptor, n, values.__getitem__, d, **options)


def make_explicit_table(
    n: int,
    values: Mapping[SubsetMask, Value],
    default: Optional[Value] = None,
    range_bound: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
    **options,
) -> SetFunctionOracle:
    """
    明確值表

    參數:
        n: 基礎集合大小
        values: 遮罩 → 精確值（整數或 Fraction）
        default: 未列出子集合的值；None 時值表必須涵蓋全部 2^n 個子集合
        range_bound: 宣告的值域上界 d（若給定，所有值必須是 {0,…,d} 內的整數）

    回傳:
        值表 oracle
    """
    _check_n(n)
    table: Dict[SubsetMask, Value] = {}
    for mask, raw in values.items():
        if mask < 0 or mask >> n:
            raise InstanceParameterError(f"值表中的子集合 {mask} 超出 n={n}")
        table[mask] = exact(raw)
    fallback = None if default is None else exact(default)
    if fallback is None and len(table) != 1 << n:
        raise InstanceParameterError(f"值表只涵蓋 {len(table)} / {1 << n} 個子集合，且未宣告 default")

    if range_bound is not None:
        observed = list(table.values()) + ([fallback] if fallback is not None and len(table) < 1 << n else [])
        for v in observed:
            if not isinstance(v, int) or not 0 <= v <= range_bound:
                raise RangeBoundError(f"值 {v} 不在宣告的值域 {{0,…,{range_bound}}} 內")

    def value(x: SubsetMask) -> Value:
        return table.get(x, fallback)

    descriptor = InstanceDescriptor(EXPLICIT_TABLE, {"n": n, "values": table, "default": fallback})
    return _oracle(descriptor, n, value, range_bound, labels, **options)


def random_connected_graph(
    n: int,
    seed: int,
    max_weight: int = 3,
    extra_edge_prob: float = 0.3,
) -> WeightedGraph:
    """
    以 seed 產生隨機連通帶權圖

    先用隨機排列接出生成樹，再以機率 extra_edge_prob 加入其餘的邊；
    權重為 1..max_weight 的整數。
    """
    _check_n(n)
    rng = np.random.default_rng(seed)
    order = rng.permutation(n).tolist()
    edges: List[Tuple[int, int, int]] = []
    present = set()
    for i in range(1, n):
        u, v = order[i], order[int(rng.integers(0, i))]
        edges.append((u, v, int(rng.integers(1, max_weight + 1))))
        present.add(frozenset((u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if frozenset((u, v)) not in present and rng.random() < extra_edge_prob:
                edges.append((u, v, int(rng.integers(1, max_weight + 1))))
    return WeightedGraph(n, tuple(edges))


def build_oracle(descriptor: InstanceDescriptor, range_bound: Optional[int] = None, labels=None, **options) -> SetFunctionOracle:
    """
    依描述建立 oracle

    參數:
        descriptor: 實例描述
        range_bound: 覆寫族本身的值域上界（明確值表會據此驗證；產生的族只能放寬）
        labels: 元素名稱
        options: 傳給 SetFunctionOracle 的選項（count_raw、record）

    回傳:
        SetFunctionOracle
    """
    p = descriptor.params
    family = descriptor.family
    if family == EXPLICIT_TABLE:
        return make_explicit_table(p["n"], p["values"], p.get("default"), range_bound, labels, **options)

    if family == CUT_GRAPH:
        oracle = make_cut_function(WeightedGraph(p["n"], tuple(map(tuple, p["edges"]))), labels, **options)
    elif family == CARDINALITY:
        oracle = make_cardinality(p["n"], **options)
    elif family == CAPPED_CARDINALITY:
        oracle = make_capped_cardinality(p["n"], p["cap"], **options)
    elif family == HARDNESS_MIN:
        oracle = make_hardness_min(p["n"], p["k"], p["S"], **options)
    elif family == HARDNESS_MIN_BOUNDED:
        oracle = make_hardness_min_bounded(p["n"], p["d"], p["T"], p.get("S"), **options)
    elif family in (HARDNESS_MAX_EVEN, HARDNESS_MAX_ODD):
        if (p["n"] % 2 == 0) != (family == HARDNESS_MAX_EVEN):
            raise InstanceParameterError(f"{family} 與 n={p['n']} 的奇偶性不符")
        oracle = make_hardness_max(p["n"], p.get("S"), **options)
    elif family == HARDNESS_MAX_SMALLD:
        oracle = make_hardness_max_smalld(p["n"], p["d"], p.get("S"), **options)
    elif family == EXAMPLE1:
        oracle = make_example1(p["n"], p["S"], **options)
    else:
        oracle = make_random_monotone(p["n"], p["d"], p["seed"], **options)

    if labels is not None:
        oracle.ground = GroundSet(oracle.n, labels)
    if range_bound is not None:
        if oracle.range_bound is not None and range_bound < oracle.range_bound:
            raise RangeBoundError(
                f"{family} 的值域上界為 {oracle.range_bound}，不能覆寫成較小的 {range_bound}"
            )
        oracle.range_bound = range_bound
    return oracle


def parse_subset(raw: Any) -> SubsetMask:
    """子集合：元素索引清單、"0,2,3" 字串（"" 為空集合）或遮罩整數"""
    if isinstance(raw, bool):
        raise InstanceFormatError(f"無法解析子集合: {raw!r}")
    if isinstance(raw, int):
        if raw < 0:
            raise InstanceFormatError(f"子集合遮罩不可為負數: {raw}")
        return raw
    try:
        if isinstance(raw, str):
            tokens = [token.strip() for token in raw.split(",") if token.strip()]
            return mask_of(int(token) for token in tokens)
        if isinstance(raw, (list, tuple)):
            return mask_of(int(element) for element in raw)
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"無法解析子集合 {raw!r}: {exc}") from None
    raise InstanceFormatError(f"無法解析子集合: {raw!r}")


def parse_value(raw: Any) -> Value:
    """精確值：整數或 "3/2" 之類的有理數字串（不接受浮點數）"""
    if isinstance(raw, (bool, float)):
        raise InstanceFormatError(f"函數值必須是整數或有理數字串，收到 {raw!r}")
    try:
        return exact(Fraction(str(raw).strip()))
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"無法解析函數值: {raw!r}") from None


def descriptor_from_dict(data: Mapping[str, Any]) -> InstanceDescriptor:
    """
    由實例檔結構還原描述（InstanceDescriptor.to_dict 的反向）

    子集合可寫成元素清單、"0,2,3" 字串或遮罩整數；值寫成精確十進位字串。
    """
    if not isinstance(data, Mapping) or "family" not in data:
        raise InstanceFormatError("實例描述必須是含有 family 的物件")
    family = data["family"]
    raw = dict(data.get("params") or {})
    params: Dict[str, Any] = {}
    for key, value in raw.items():
        if key in _SET_PARAMS:
            params[key] = None if value is None else parse_subset(value)
        elif key == "edges":
            params[key] = tuple(tuple(int(x) for x in edge) for edge in value)
        elif key == "values":
            params[key] = {parse_subset(subset): parse_value(v) for subset, v in value}
        elif key == "default":
            params[key] = None if value is None else parse_value(value)
        else:
            params[key] = value
    return InstanceDescriptor(family, params)


# ---------------------------------------------------------------------------
# 下界與查詢對手
# ---------------------------------------------------------------------------

def q_k_lower_bound(n: int, k: int) -> Fraction:
    """
    覆蓋問題最佳值 q_k 的下界 C(n, k+1) / C(2k, k+1)

    參數:
        n: 基礎集合大小
        k: 1 ≤ k ≤ n/2

    回傳:
        精確的有理數
    """
    if not 1 <= k <= n // 2:
        raise InstanceParameterError(f"需要 1 ≤ k ≤ n/2，收到 k={k}, n={n}")
    return Fraction(comb(n, k + 1), comb(2 * k, k + 1))


def q_k_lower_bound_bounded(d: int, k: int) -> Fraction:
    """值域有界版本：隱藏集合只能落在 |T| = ⌊d/2⌋ 的 T 內"""
    return q_k_lower_bound(d // 2, k)


def _queried(transcript: Iterable[SubsetMask]) -> List[SubsetMask]:
    return list(transcript.masks if isinstance(transcript, QueryTranscript) else transcript)


def adversary_witness(
    transcript: Iterable[SubsetMask],
    n: int,
    k: int,
    universe: Optional[SubsetMask] = None,
) -> Optional[SubsetMask]:
    """
    找出與查詢紀錄無法區分 g 與 g_S 的隱藏集合 S

    依遮罩遞增順序掃描所有 |S| = 2k 的 S，回傳第一個「沒有任何查詢 X
    滿足 X ⊆ S 且 |X| ≥ k+1」的 S；全部被覆蓋時回傳 None。

    參數:
        transcript: 查詢過的子集合
        n: 基礎集合大小
        k: 2k ≤ n
        universe: 限制 S 必須落在此集合內（值域有界版本的 T）

    回傳:
        S 的遮罩，或 None
    """
    if 2 * k > n or k < 1:
        raise InstanceParameterError(f"需要 1 ≤ k 且 2k ≤ n，收到 k={k}, n={n}")
    relevant = {x for x in _queried(transcript) if k + 1 <= popcount(x) <= 2 * k}
    for candidate in masks_of_size(n, 2 * k):
        if universe is not None and not is_subset(candidate, universe):
            continue
        if not any(is_subset(x, candidate) for x in relevant):
            return candidate
    return None


def max_query_lower_bound(n: int) -> int:
    """最大化所需的查詢次數下界 Σ_{i ≥ t} C(n, i)（≥ 2^{n-1}）"""
    _check_positive(n)
    return sum(comb(n, i) for i in range(max_size_threshold(n), n + 1))


def max_smalld_lower_bound(n: int, d: int) -> int:
    """值域 {0,…,d} 時最大化所需的查詢次數下界 Σ_{i ≥ n-d+1} C(n, i)"""
    _check_positive(n)
    return sum(comb(n, i) for i in range(max(n - d + 1, 0), n + 1))


def max_adversary_witness(
    transcript: Iterable[SubsetMask],
    n: int,
    min_size: Optional[int] = None,
) -> Optional[SubsetMask]:
    """
    找出未被查詢、且 |S| ≥ min_size 的 S（依大小、遮罩遞增順序）

    g 與 g_S 只在 S 上不同，因此若 S 未被查詢，兩者在紀錄上完全一致，
    但最大值相差 1。

    參數:
        transcript: 查詢過的子集合
        n: 基礎集合大小
        min_size: S 的最小大小（預設為 max_size_threshold(n)）

    回傳:
        S 的遮罩，或 None（全部被查詢過）
    """
    threshold = max_size_threshold(n) if min_size is None else min_size
    queried = set(_queried(transcript))
    for size in range(max(threshold, 0), n + 1):
        for candidate in masks_of_size(n, size):
            if candidate not in queried:
                return candidate
    return None
