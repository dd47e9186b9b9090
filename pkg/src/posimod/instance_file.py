"""
實例檔模組

讀寫 JSON 實例檔與查詢紀錄檔

實例檔格式:
    {
      "schema_version": 1,
      "instance": {"family": "hardness_min", "params": {"n": 8, "k": 2, "S": [0, 1, 2, 3]}},
      "range_bound": 8,          # 可選，覆寫族本身的值域上界
      "labels": ["a", "b", ...]  # 可選
    }

明確值表的 params 為 {"n": 3, "values": [["0,2", "1"], [5, "3/2"]], "default": "0"}；
子集合可寫成 "0,2" 字串、元素清單或遮罩整數，值寫成精確的整數或有理數字串。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

from .errors import InstanceFormatError, InstanceParameterError, PosimodError
from .instances import InstanceDescriptor, build_oracle, parse_subset
from .oracle import QueryTranscript, SetFunctionOracle
from .subsets import members

SCHEMA_VERSION = 1

PathLike = Union[str, Path]


@dataclass
class InstanceFile:
    """實例檔內容"""
    instance: InstanceDescriptor
    range_bound: Optional[int] = None
    labels: Optional[List[str]] = None
    schema_version: int = SCHEMA_VERSION
    source: Optional[str] = field(default=None, compare=False)

    def build_oracle(self, **options) -> SetFunctionOracle:
        """依檔案內容建立新的 oracle（每次呼叫都是全新的計數與快取）"""
        return build_oracle(self.instance, range_bound=self.range_bound, labels=self.labels, **options)

    def to_dict(self) -> dict:
        data: dict = {"schema_version": self.schema_version, "instance": self.instance.to_dict()}
        if self.range_bound is not None:
            data["range_bound"] = self.range_bound
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data


def parse_instance(data: Any, source: Optional[str] = None) -> InstanceFile:
    """
    由已解碼的 JSON 結構建立 InstanceFile

    參數:
        data: json.loads 的結果
        source: 來源檔名（錯誤訊息用）

    回傳:
        InstanceFile
    """
    where = f"{source}: " if source else ""
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{where}實例檔的最外層必須是物件")

    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InstanceFormatError(f"{where}不支援的 schema_version: {version!r}（需要 {SCHEMA_VERSION}）")

    range_bound = data.get("range_bound")
    if range_bound is not None and (isinstance(range_bound, bool) or not isinstance(range_bound, int) or range_bound < 0):
        raise InstanceFormatError(f"{where}range_bound 必須是非負整數，收到 {range_bound!r}")

    labels = data.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise InstanceFormatError(f"{where}labels 必須是字串清單")

    try:
        descriptor = InstanceDescriptor.from_dict(data.get("instance"))
    except InstanceFormatError as exc:
        raise InstanceFormatError(f"{where}{exc}") from None
    except InstanceParameterError as exc:
        raise InstanceFormatError(f"{where}{exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"{where}實例描述格式錯誤: {exc}") from None

    instance_file = InstanceFile(descriptor, range_bound, labels, version, source)

    # 立刻建立一次 oracle，讓參數錯誤在載入時就浮現
    try:
        instance_file.build_oracle()
    except PosimodError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"{where}實例參數錯誤: {exc}") from None
    return instance_file


def load_instance(path: PathLike) -> InstanceFile:
    """
    讀取實例檔

    參數:
        path: JSON 檔案路徑

    回傳:
        InstanceFile
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"無法讀取實例檔 {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: JSON 格式錯誤: {exc}") from None
    return parse_instance(data, source=str(path))


def save_instance(
    path: PathLike,
    descriptor: InstanceDescriptor,
    range_bound: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
) -> Path:
    """把實例描述寫成實例檔"""
    path = Path(path)
    instance_file = InstanceFile(descriptor, range_bound, list(labels) if labels is not None else None)
    path.write_text(json.dumps(instance_file.to_dict(), ensure_ascii=False, indent=2), encoding="utf-8")
    return path


def load_transcript(path: PathLike) -> QueryTranscript:
    """
    讀取查詢紀錄檔 {"n": 8, "queries": [[0, 1, 2], "3,4,5", 7]}

    回傳:
        QueryTranscript
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InstanceFormatError(f"無法讀取查詢紀錄 {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: JSON 格式錯誤: {exc}") from None

    if not isinstance(data, dict) or "queries" not in data or "n" not in data:
        raise InstanceFormatError(f"{path}: 查詢紀錄必須含有 n 與 queries")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InstanceFormatError(f"{path}: n 必須是正整數，收到 {n!r}")
    if not isinstance(data["queries"], list):
        raise InstanceFormatError(f"{path}: queries 必須是清單")

    masks = [parse_subset(query) for query in data["queries"]]
    try:
        return QueryTranscript(n, masks)
    except PosimodError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from None


def save_transcript(path: PathLike, transcript: QueryTranscript) -> Path:
    path = Path(path)
    data = {"n": transcript.n, "queries": [members(mask) for mask in transcript]}
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
