"""
允許使用 python -m posimod 執行
"""

from .cli import main

if __name__ == "__main__":
    main()
