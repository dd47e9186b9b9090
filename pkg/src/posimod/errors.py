"""
例外模組

posimod 所有錯誤的共同基底與分類
"""


class PosimodError(Exception):
    """posimod 錯誤基底類別"""


class InvalidSubsetError(PosimodError, ValueError):
    """子集合超出基礎集合（元素索引 ≥ n 或為負數）"""


class CapExceededError(PosimodError, ValueError):
    """基礎集合大小超過窮舉上限"""


class RangeBoundError(PosimodError, ValueError):
    """缺少值域上界 d，或函數值超出宣告的 {0,…,d}"""


class NotNormalizedError(PosimodError, ValueError):
    """演算法要求 f(∅)=0，但實例不滿足"""


class StructureError(PosimodError, ValueError):
    """子句 / CNF / 收縮區塊的結構不合法"""


class InstanceParameterError(PosimodError, ValueError):
    """實例產生器的參數不滿足前提條件"""


class InstanceFormatError(PosimodError, ValueError):
    """實例檔或查詢紀錄檔無法解析"""


class ConfigError(PosimodError, ValueError):
    """環境設定錯誤（例如 POSIMOD_N_CAP 不是正整數）"""
