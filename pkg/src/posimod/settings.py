"""
設定模組

窮舉上限等全域設定，可由環境變數 POSIMOD_N_CAP 覆寫
"""

import os
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ConfigError

# 覆寫窮舉上限的環境變數
CAP_ENV_VAR = "POSIMOD_N_CAP"

# 全函式庫的基礎集合上限（遮罩放得進一個機器字組）
GROUND_CAP = 24


@dataclass(frozen=True)
class Settings:
    """執行設定"""
    exhaustive_cap: int = 12    # 驗證器（4^n 組配對）允許的最大 n
    brute_cap: int = 20         # 暴力最佳化允許的最大 n
    ground_cap: int = GROUND_CAP  # 基礎集合大小上限


def load_settings(environ: Optional[dict] = None) -> Settings:
    """
    讀取目前的設定

    參數:
        environ: 環境變數字典（預設為 os.environ）

    回傳:
        Settings: 套用 POSIMOD_N_CAP 之後的設定
    """
    env = os.environ if environ is None else environ
    settings = Settings()

    raw = env.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return settings

    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"{CAP_ENV_VAR} 必須是正整數，收到 {raw!r}") from None
    if cap < 1:
        raise ConfigError(f"{CAP_ENV_VAR} 必須是正整數，收到 {raw!r}")

    cap = min(cap, settings.ground_cap)
    return replace(settings, exhaustive_cap=cap, brute_cap=cap)


def resolve_cap(cap: Optional[int], kind: str = "exhaustive") -> int:
    """取得實際使用的上限：明確指定者優先，否則讀取設定"""
    if cap is not None:
        return cap
    settings = load_settings()
    if kind == "brute":
        return settings.brute_cap
    return settings.exhaustive_cap
