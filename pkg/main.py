"""
posimod - Posimodular 集合函數最佳化工具

主程式入口點
"""

from posimod.cli import main

if __name__ == "__main__":
    main()
