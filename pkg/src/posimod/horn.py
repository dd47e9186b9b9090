"""
Horn CNF 模組

子句與 CNF 的表示、求值、前向鏈結（FCP）以及封閉集合列舉
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import StructureError
from .subsets import SubsetMask, is_subset, mask_of, masks_up_to, members, popcount

DUAL_HORN = "dual_horn"
DEFINITE_HORN = "definite_horn"
GENERAL = "general"
FORMS = (DUAL_HORN, DEFINITE_HORN, GENERAL)


@dataclass(frozen=True)
class Clause:
    """子句 ⋁_{v∈P} x_v ∨ ⋁_{v∈N} x̄_v"""
    positives: SubsetMask   # P(c)
    negatives: SubsetMask   # N(c)

    def __post_init__(self):
        if self.positives < 0 or self.negatives < 0:
            raise StructureError("子句的字面集合不可為負遮罩")
        if self.positives & self.negatives:
            raise StructureError("同一個變數不能同時以正、負字面出現在子句中")
        if not self.positives | self.negatives:
            raise StructureError("子句不可為空")

    @classmethod
    def of(cls, positive: Iterable[int] = (), negative: Iterable[int] = ()) -> "Clause":
        """由元素清單建立子句，例如 Clause.of([0, 1], [2]) = (x₀ ∨ x₁ ∨ x̄₂)"""
        return cls(mask_of(positive), mask_of(negative))

    def satisfied_by(self, assignment: SubsetMask) -> bool:
        """某個正字面為真，或某個負字面的變數不在 assignment 中"""
        return bool(self.positives & assignment) or not is_subset(self.negatives, assignment)

    def swapped(self) -> "Clause":
        return Clause(self.negatives, self.positives)

    def __str__(self) -> str:
        literals = [f"x{v}" for v in members(self.positives)]
        literals += [f"~x{v}" for v in members(self.negatives)]
        return "(" + " | ".join(literals) + ")"


@dataclass(frozen=True)
class HornCnf:
    """子句的合取，並宣告形式（dual_horn / definite_horn / general）"""
    clauses: Tuple[Clause, ...] = ()
    form: str = GENERAL

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.form not in FORMS:
            raise StructureError(f"未知的 CNF 形式: {self.form}")
        for clause in self.clauses:
            if self.form == DUAL_HORN and popcount(clause.negatives) > 1:
                raise StructureError(f"dual Horn 子句最多只能有一個負字面: {clause}")
            if self.form == DEFINITE_HORN and popcount(clause.positives) != 1:
                raise StructureError(f"definite Horn 子句必須恰有一個正字面: {clause}")

    def __len__(self) -> int:
        return len(self.clauses)

    @cached_property
    def _watch(self) -> Dict[int, List[int]]:
        """負字面變數 → 含有它的子句索引"""
        watch: Dict[int, List[int]] = {}
        for index, clause in enumerate(self.clauses):
            for v in members(clause.negatives):
                watch.setdefault(v, []).append(index)
        return watch

    def to_dimacs(self, n: int) -> str:
        """
        輸出 DIMACS 文字（除錯用）

        參數:
            n: 變數個數（元素 v 對應變數 v+1）

        回傳:
            "p cnf n m" 標頭加上每行一個子句、以 0 結尾
        """
        lines = [f"c form {self.form}", f"p cnf {n} {len(self.clauses)}"]
        for clause in self.clauses:
            literals = [str(v + 1) for v in members(clause.positives)]
            literals += [str(-(v + 1)) for v in members(clause.negatives)]
            lines.append(" ".join(literals) + " 0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str, form: Optional[str] = None) -> "HornCnf":
        """
        讀取 DIMACS 文字

        參數:
            text: DIMACS 內容
            form: 宣告的形式；None 時依子句形狀推斷（definite 優先於 dual）

        回傳:
            HornCnf
        """
        declared = None
        clauses: List[Clause] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("c"):
                parts = line.split()
                if len(parts) == 3 and parts[1] == "form":
                    declared = parts[2]
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) < 2 or parts[1] != "cnf":
                    raise StructureError(f"只支援 p cnf 標頭: {line}")
                continue
            try:
                literals = [int(token) for token in line.split()]
            except ValueError:
                raise StructureError(f"無法解析子句: {line}") from None
            literals = [lit for lit in literals if lit != 0]
            if not literals:
                continue
            clauses.append(Clause.of(
                [lit - 1 for lit in literals if lit > 0],
                [-lit - 1 for lit in literals if lit < 0],
            ))

        chosen = form or declared
        if chosen is None:
            if all(popcount(c.positives) == 1 for c in clauses):
                chosen = DEFINITE_HORN
            elif all(popcount(c.negatives) <= 1 for c in clauses):
                chosen = DUAL_HORN
            else:
                chosen = GENERAL
        return cls(tuple(clauses), chosen)


def eval_cnf(cnf: HornCnf, assignment: SubsetMask) -> bool:
    """所有子句都被滿足時為 True（空 CNF 恆為 True）"""
    return all(clause.satisfied_by(assignment) for clause in cnf.clauses)


def complement_cnf(cnf: HornCnf) -> HornCnf:
    """
    以 V∖X 取代 X：交換每個子句的 P 與 N

    參數:
        cnf: 每個子句恰有一個負字面的 dual Horn CNF（或 definite Horn，轉回 dual）

    回傳:
        HornCnf，滿足 eval_cnf(out, X) = eval_cnf(cnf, V∖X)
    """
    if cnf.form == DUAL_HORN:
        for clause in cnf.clauses:
            if popcount(clause.negatives) != 1:
                raise StructureError(f"子句 {clause} 沒有恰好一個負字面，無法轉成 definite Horn")
        form = DEFINITE_HORN
    elif cnf.form == DEFINITE_HORN:
        form = DUAL_HORN
    else:
        form = GENERAL
    return HornCnf(tuple(clause.swapped() for clause in cnf.clauses), form)


def _require_definite(cnf: HornCnf) -> None:
    if cnf.form != DEFINITE_HORN:
        raise StructureError(f"需要 definite Horn CNF，收到 {cnf.form}")


def fcp(cnf: HornCnf, seed: SubsetMask) -> SubsetMask:
    """
    前向鏈結：由 seed 出發反覆觸發 N(c) ⊆ Q 且 P(c) ∩ Q = ∅ 的子句

    每個子句維護「尚未進入 Q 的負字面數」，歸零時觸發；
    總工作量與子句總長度成正比。

    參數:
        cnf: definite Horn CNF
        seed: 起始集合 T

    回傳:
        包含 T 的最小不動點
    """
    _require_definite(cnf)
    if seed < 0:
        raise StructureError("seed 不可為負遮罩")
    watch = cnf._watch
    clauses = cnf.clauses

    missing = [popcount(clause.negatives & ~seed) for clause in clauses]
    closure = seed
    pending: List[int] = []
    ready = [i for i, count in enumerate(missing) if count == 0]

    while True:
        while ready:
            head = clauses[ready.pop()].positives
            if not head & closure:
                closure |= head
                pending.append(head.bit_length() - 1)
        if not pending:
            return closure
        for index in watch.get(pending.pop(), ()):
            missing[index] -= 1
            if missing[index] == 0:
                ready.append(index)


def build_phi(unreachable: Sequence[SubsetMask], n: int) -> HornCnf:
    """
    由最小不可達集合族建立 dual Horn CNF

    φ = ⋀_{U} ⋀_{s∈U} (⋁_{u∈U∖{s}} x_u ∨ x̄_s)

    參數:
        unreachable: 𝒰 的成員（皆非空）
        n: 基礎集合大小

    回傳:
        恰有 Σ|U| 個子句的 dual Horn CNF
    """
    clauses: List[Clause] = []
    for u_set in unreachable:
        if u_set == 0:
            raise StructureError("𝒰 的成員不可為空集合")
        if u_set < 0 or u_set >> n:
            raise StructureError(f"𝒰 的成員 {u_set} 超出 n={n}")
        for s in members(u_set):
            bit = 1 << s
            clauses.append(Clause(u_set & ~bit, bit))
    return HornCnf(tuple(clauses), DUAL_HORN)


def enumerate_closures(cnf: HornCnf, n: int, d: int) -> List[SubsetMask]:
    """
    對所有 |T| ≤ d 的 seed 計算 fcp(cnf, T)

    參數:
        cnf: definite Horn CNF
        n: 基礎集合大小
        d: seed 大小上限

    回傳:
        去重後的封閉集合，依第一次出現時的 seed 順序（大小、遮罩遞增）
    """
    _require_definite(cnf)
    if d < 0:
        raise StructureError(f"d 必須 ≥ 0，收到 {d}")
    seen = set()
    closures: List[SubsetMask] = []
    for seed in masks_up_to(n, d):
        closure = fcp(cnf, seed)
        if closure not in seen:
            seen.add(closure)
            closures.append(closure)
    return closures
