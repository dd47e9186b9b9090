"""
posimod - Posimodular 集合函數最佳化工具

在 oracle 模型下最小化與最大化 posimodular 集合函數
"""

__version__ = "0.1.0"
