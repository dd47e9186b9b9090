"""
主處理流程模組

整合各模組，完成每個子命令從載入實例到產生結果紀錄的流程
"""

import time
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, Iterator, List, Optional

from rich.console import Console

from .errors import InstanceFormatError, PosimodError
from .horn import build_phi, complement_cnf, enumerate_closures
from .instance_file import InstanceFile
from .instances import (
    adversary_witness,
    max_adversary_witness,
    max_query_lower_bound,
    max_size_threshold,
    max_smalld_lower_bound,
    q_k_lower_bound,
)
from .maximize import brute_force_max, max_posimodular, step_bound
from .minimize import (
    OptimizationResult,
    brute_force_min,
    compute_extreme_sets,
    enumerate_all_minimizers,
    min_d_le_3,
    min_posimodular,
    minimal_unreachable,
    reachability,
    require_range_bound,
)
from .oracle import QueryTranscript, SetFunctionOracle, Value, normalize
from .subsets import is_laminar, members, popcount
from .verify import VERIFIERS

# 進度訊息寫到 stderr，stdout 只留給結果紀錄
console = Console(stderr=True)

MIN_ALGORITHMS = ("auto", "brute", "d3", "general")


@dataclass
class RunReport:
    """單一命令的結果紀錄"""
    command: str
    instance: Dict[str, Any]
    witness: Optional[List[int]] = None
    value: Optional[str] = None
    oracle_calls: int = 0
    wall_time_ms: float = 0.0
    algorithm: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)
    ok: bool = True

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "instance": self.instance,
            "witness": self.witness,
            "value": self.value,
            "oracle_calls": self.oracle_calls,
            "wall_time_ms": round(self.wall_time_ms, 3),
            "algorithm": self.algorithm,
        }
        data.update(self.details)
        return data


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def summarize_instance(instance_file: InstanceFile, oracle: SetFunctionOracle) -> Dict[str, Any]:
    """實例摘要：族名稱、n、宣告的 d"""
    return {
        "family": instance_file.instance.family,
        "n": oracle.n,
        "range_bound": oracle.range_bound,
    }


def prepare_oracle(instance_file: InstanceFile, count_raw: bool = False) -> SetFunctionOracle:
    """
    建立 oracle 並平移成 f(∅)=0

    參數:
        instance_file: 實例檔
        count_raw: 是否每次呼叫都計數（不去除重複查詢）

    回傳:
        正規化後的 oracle（計數流向原始 oracle）
    """
    oracle = instance_file.build_oracle(count_raw=count_raw)
    offset = oracle.evaluate(0)
    if offset != 0:
        console.print(f"[yellow]警告: f(∅)={offset}，已平移為 f(X)-f(∅)[/yellow]")
    return normalize(oracle)


def revalidate(instance_file: InstanceFile, witness: int, value: Value) -> Value:
    """
    用全新的 oracle 重新計算 witness 的值

    參數:
        instance_file: 實例檔
        witness: 原始基礎集合中的子集合
        value: 正規化後的值

    回傳:
        原始函數下的值 f(witness)
    """
    fresh = instance_file.build_oracle()
    original = fresh.evaluate(witness)
    if original - fresh.evaluate(0) != value:
        raise PosimodError(f"witness {members(witness)} 重新計算的值 {original} 與結果 {value} 不符")
    return original


def _optimization_report(
    command: str,
    instance_file: InstanceFile,
    oracle: SetFunctionOracle,
    result: OptimizationResult,
    start: float,
) -> RunReport:
    original = revalidate(instance_file, result.witness, result.value)
    return RunReport(
        command=command,
        instance=summarize_instance(instance_file, oracle),
        witness=members(result.witness),
        value=str(original),
        oracle_calls=oracle.call_count,
        wall_time_ms=_elapsed_ms(start),
        algorithm=result.algorithm,
    )


def run_verify(instance_file: InstanceFile, law: str = "posimodular", count_raw: bool = False) -> RunReport:
    """
    窮舉檢查結構性質

    參數:
        instance_file: 實例檔
        law: posimodular / submodular / monotone / symmetric

    回傳:
        RunReport，違反時 ok=False 並附上反例
    """
    start = time.perf_counter()
    console.print("[bold]Step 1/2: 載入實例[/bold]")
    oracle = instance_file.build_oracle(count_raw=count_raw)

    console.print(f"[bold]Step 2/2: 檢查 {law}（n={oracle.n}）[/bold]")
    witness = VERIFIERS[law](oracle)
    report = RunReport(
        command="verify",
        instance=summarize_instance(instance_file, oracle),
        oracle_calls=oracle.call_count,
        algorithm=f"verify_{law}",
        details={"law": law, "holds": witness is None, "violation": witness.to_dict() if witness else None},
        ok=witness is None,
    )
    if witness is not None:
        report.witness = sorted(set(members(witness.x)) | set(members(witness.y)))
        console.print(f"[yellow]找到反例: X={members(witness.x)}, Y={members(witness.y)}[/yellow]")
    report.wall_time_ms = _elapsed_ms(start)
    return report


def choose_min_algorithm(algorithm: str, oracle: SetFunctionOracle) -> str:
    """auto：d ≤ 3 用 d3，否則 general；沒有宣告 d 時退回暴力搜尋"""
    if algorithm != "auto":
        return algorithm
    if oracle.range_bound is None:
        console.print("[yellow]警告: 沒有宣告值域上界 d，改用暴力搜尋[/yellow]")
        return "brute"
    return "d3" if oracle.range_bound <= 3 else "general"


def run_min(instance_file: InstanceFile, algorithm: str = "auto", count_raw: bool = False) -> RunReport:
    """
    最小化

    參數:
        instance_file: 實例檔
        algorithm: auto / brute / d3 / general

    回傳:
        RunReport
    """
    start = time.perf_counter()
    console.print("[bold]Step 1/3: 載入實例[/bold]")
    oracle = prepare_oracle(instance_file, count_raw)

    chosen = choose_min_algorithm(algorithm, oracle)
    console.print(f"[bold]Step 2/3: 最小化（{chosen}）[/bold]")
    if chosen == "brute":
        result = brute_force_min(oracle)
    elif chosen == "d3":
        result = min_d_le_3(oracle)
    else:
        result = min_posimodular(oracle)

    console.print("[bold]Step 3/3: 重新驗證結果[/bold]")
    return _optimization_report("min", instance_file, oracle, result, start)


def run_max(instance_file: InstanceFile, algorithm: str = "auto", count_raw: bool = False) -> RunReport:
    """最大化（auto：有宣告 d 時用 MaxPosimodular，否則暴力搜尋）"""
    start = time.perf_counter()
    console.print("[bold]Step 1/3: 載入實例[/bold]")
    oracle = prepare_oracle(instance_file, count_raw)

    use_brute = algorithm == "brute" or (algorithm == "auto" and oracle.range_bound is None)
    console.print(f"[bold]Step 2/3: 最大化（{'brute' if use_brute else 'general'}）[/bold]")
    result = brute_force_max(oracle) if use_brute else max_posimodular(oracle)

    console.print("[bold]Step 3/3: 重新驗證結果[/bold]")
    return _optimization_report("max", instance_file, oracle, result, start)


def run_extreme(instance_file: InstanceFile, count_raw: bool = False) -> RunReport:
    """計算所有極端集合"""
    start = time.perf_counter()
    console.print("[bold]Step 1/2: 載入實例[/bold]")
    oracle = prepare_oracle(instance_file, count_raw)

    console.print("[bold]Step 2/2: 計算極端集合[/bold]")
    family = compute_extreme_sets(oracle)
    return RunReport(
        command="extreme",
        instance=summarize_instance(instance_file, oracle),
        oracle_calls=oracle.call_count,
        wall_time_ms=_elapsed_ms(start),
        algorithm="compute_extreme_sets",
        details={"sets": [members(x) for x in family], "count": len(family), "laminar": is_laminar(family)},
    )


def iter_minimizers(instance_file: InstanceFile, limit: Optional[int] = None, count_raw: bool = False) -> Iterator[RunReport]:
    """
    逐一產生最小化集合（每個一筆紀錄）

    參數:
        instance_file: 實例檔
        limit: 最多輸出幾個（None 為全部）

    回傳:
        RunReport 的產生器
    """
    start = time.perf_counter()
    oracle = prepare_oracle(instance_file, count_raw)
    summary = summarize_instance(instance_file, oracle)
    fresh = instance_file.build_oracle()
    offset = fresh.evaluate(0)

    stream = enumerate_all_minimizers(oracle)
    for index, x in enumerate(stream):
        if limit is not None and index >= limit:
            break
        yield RunReport(
            command="enum-min",
            instance=summary,
            witness=members(x),
            value=str(stream.minimum + offset),
            oracle_calls=oracle.call_count,
            wall_time_ms=_elapsed_ms(start),
            algorithm="enumerate_all_minimizers",
            details={"index": index},
        )


def run_lowerbound(
    n: int,
    k: Optional[int] = None,
    transcript: Optional[QueryTranscript] = None,
    maximize: bool = False,
    d: Optional[int] = None,
) -> RunReport:
    """
    查詢次數下界與對手

    參數:
        n: 基礎集合大小
        k: 最小化版本的 k（2k ≤ n）
        transcript: 查詢紀錄；給定時尋找無法被區分的隱藏集合 S
        maximize: 改用最大化的下界
        d: 最大化版本的值域上界（小 d 族）

    回傳:
        RunReport，value 為下界；有查詢紀錄但全部被覆蓋時 ok=False
    """
    start = time.perf_counter()
    if transcript is not None and transcript.n != n:
        raise InstanceFormatError(f"查詢紀錄的 n={transcript.n} 與指定的 n={n} 不符")

    if maximize:
        if d is None:
            bound = max_query_lower_bound(n)
            min_size = max_size_threshold(n)
            algorithm = "max_query_lower_bound"
        else:
            bound = max_smalld_lower_bound(n, d)
            min_size = n - d + 1
            algorithm = "max_smalld_lower_bound"
        instance: Dict[str, Any] = {"n": n, "d": d, "min_size": min_size}
        find = (lambda t: max_adversary_witness(t, n, min_size))
    else:
        if k is None:
            raise InstanceFormatError("最小化下界需要 k")
        bound = q_k_lower_bound(n, k)
        instance = {"n": n, "k": k}
        algorithm = "q_k_lower_bound"
        find = (lambda t: adversary_witness(t, n, k))

    report = RunReport(command="lowerbound", instance=instance, value=str(bound), algorithm=algorithm)
    if transcript is not None:
        console.print(f"[bold]檢查 {len(transcript)} 筆查詢紀錄[/bold]")
        hidden = find(transcript)
        report.details = {"queries": len(transcript), "covered": hidden is None}
        if hidden is None:
            report.ok = False
            console.print("[yellow]查詢紀錄已覆蓋所有隱藏集合[/yellow]")
        else:
            report.witness = members(hidden)
    report.wall_time_ms = _elapsed_ms(start)
    return report


def run_stats(instance_file: InstanceFile, count_raw: bool = False) -> RunReport:
    """
    實例統計：𝒰 的大小分布、封閉集合數與其上界、step_bound

    回傳:
        RunReport
    """
    start = time.perf_counter()
    console.print("[bold]Step 1/3: 載入實例[/bold]")
    raw = instance_file.build_oracle()
    f_empty = raw.evaluate(0)
    oracle = prepare_oracle(instance_file, count_raw)
    d = require_range_bound(oracle)
    n = oracle.n

    console.print("[bold]Step 2/3: 計算可達性與最小不可達集合族[/bold]")
    family = minimal_unreachable(reachability(oracle, d), n)
    histogram = Counter(popcount(u) for u in family)

    console.print("[bold]Step 3/3: 列舉封閉集合[/bold]")
    closures = enumerate_closures(complement_cnf(build_phi(family.members, n)), n, d)

    summary = summarize_instance(instance_file, oracle)
    summary["f_empty"] = str(f_empty)
    return RunReport(
        command="stats",
        instance=summary,
        oracle_calls=oracle.call_count,
        wall_time_ms=_elapsed_ms(start),
        algorithm="stats",
        details={
            "unreachable": len(family),
            "unreachable_sizes": {str(size): count for size, count in sorted(histogram.items())},
            "closures": len(closures),
            "closure_bound": sum(comb(n, i) for i in range(min(d, n) + 1)),
            "step_bound": step_bound(n, d),
        },
    )
