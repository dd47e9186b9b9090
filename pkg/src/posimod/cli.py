"""
CLI 介面模組

提供命令列介面：載入實例檔，執行驗證、最佳化、列舉與下界計算，
結果以每行一筆 JSON 紀錄輸出到 stdout
"""

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .errors import PosimodError
from .instance_file import load_instance, load_transcript
from .pipeline import (
    MIN_ALGORITHMS,
    RunReport,
    console,
    iter_minimizers,
    run_extreme,
    run_lowerbound,
    run_max,
    run_min,
    run_stats,
    run_verify,
)
from .verify import LAWS

# 錯誤訊息不受 --quiet 影響
error_console = Console(stderr=True)
stdout_console = Console()

EXIT_NEGATIVE = 1
EXIT_ERROR = 2


@dataclass
class CliOptions:
    """全域選項"""
    pretty: bool = False
    quiet: bool = False
    count_raw: bool = False


def render_pretty(report: RunReport) -> None:
    """以 rich 面板顯示結果紀錄"""
    table = Table(show_header=False, box=None)
    table.add_column(style="cyan")
    table.add_column()
    for key, value in report.to_dict().items():
        if key == "command":
            continue
        table.add_row(key, json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value)
    style = "green" if report.ok else "yellow"
    stdout_console.print(Panel(table, title=report.command, border_style=style))


def emit(options: CliOptions, report: RunReport) -> None:
    if options.pretty:
        render_pretty(report)
    else:
        click.echo(json.dumps(report.to_dict(), ensure_ascii=False))


def execute(ctx: click.Context, produce: Callable[[], Union[RunReport, Iterable[RunReport]]]) -> None:
    """
    執行命令並處理輸出與結束碼

    參數:
        ctx: click context（obj 為 CliOptions）
        produce: 產生一筆或多筆 RunReport 的函數

    結束碼: 0 成功、1 語意上的否定結果（找到反例、查詢紀錄已全覆蓋）、2 錯誤
    """
    options: CliOptions = ctx.obj
    ok = True
    try:
        result = produce()
        reports = [result] if isinstance(result, RunReport) else result
        for report in reports:
            emit(options, report)
            ok = ok and report.ok
    except PosimodError as e:
        error_console.print(f"[red]錯誤: {e}[/red]")
        ctx.exit(EXIT_ERROR)
    if not ok:
        ctx.exit(EXIT_NEGATIVE)


@click.group()
@click.option("--pretty", is_flag=True, help="以 rich 面板顯示結果（預設為每行一筆 JSON）")
@click.option("-q", "--quiet", is_flag=True, help="不顯示 stderr 上的進度訊息")
@click.option(
    "--count-raw",
    is_flag=True,
    help="每次 oracle 呼叫都計數（不去除重複查詢，用於對手實驗）"
)
@click.version_option(version=__version__)
@click.pass_context
def main(ctx: click.Context, pretty: bool, quiet: bool, count_raw: bool):
    """
    Posimodular 集合函數最佳化工具

    在 oracle 模型下驗證、最小化與最大化 posimodular 函數，
    並計算極端集合、列舉最小化集合與查詢次數下界

    \b
    使用範例:
        posimod verify instance.json                  # 檢查 posimodular
        posimod min instance.json --algorithm general # 最小化
        posimod max instance.json                     # 最大化
        posimod enum-min instance.json --limit 10     # 列舉最小化集合
        posimod lowerbound 8 2                        # q_k 下界
    """
    ctx.obj = CliOptions(pretty=pretty, quiet=quiet, count_raw=count_raw)
    console.quiet = quiet
    console.print(Panel.fit(
        f"[bold blue]posimod[/bold blue] v{__version__}\n"
        "Posimodular 集合函數最佳化工具",
        border_style="blue"
    ))


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--law",
    type=click.Choice(LAWS),
    default="posimodular",
    show_default=True,
    help="要檢查的性質"
)
@click.pass_context
def verify(ctx: click.Context, instance_file: str, law: str):
    """窮舉檢查結構性質（違反時結束碼為 1）"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: run_verify(load_instance(instance_file), law, options.count_raw))


@main.command(name="min")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--algorithm",
    type=click.Choice(MIN_ALGORITHMS),
    default="auto",
    show_default=True,
    help="auto: d ≤ 3 用 d3，否則 general"
)
@click.pass_context
def minimize(ctx: click.Context, instance_file: str, algorithm: str):
    """最小化（回傳最小值與最小化集合）"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: run_min(load_instance(instance_file), algorithm, options.count_raw))


@main.command(name="max")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--algorithm",
    type=click.Choice(("auto", "brute", "general")),
    default="auto",
    show_default=True,
    help="auto: 有宣告 d 時用 general"
)
@click.pass_context
def maximize(ctx: click.Context, instance_file: str, algorithm: str):
    """最大化（回傳最大值與最大化集合）"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: run_max(load_instance(instance_file), algorithm, options.count_raw))


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def extreme(ctx: click.Context, instance_file: str):
    """計算所有極端集合"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: run_extreme(load_instance(instance_file), options.count_raw))


@main.command(name="enum-min")
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--limit", type=click.IntRange(min=0), default=None, help="最多輸出幾個最小化集合")
@click.pass_context
def enum_min(ctx: click.Context, instance_file: str, limit: Optional[int]):
    """列舉所有最小化集合（每行一個）"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: iter_minimizers(load_instance(instance_file), limit, options.count_raw))


@main.command()
@click.argument("n", type=click.IntRange(min=1))
@click.argument("k", type=int, required=False)
@click.option(
    "--transcript",
    type=click.Path(exists=True, dir_okay=False),
    help="查詢紀錄檔；給定時尋找無法被區分的隱藏集合"
)
@click.option("--max", "maximize_bound", is_flag=True, help="改用最大化的查詢下界")
@click.option("--d", "d", type=click.IntRange(min=1), default=None, help="最大化下界的值域上界（搭配 --max）")
@click.pass_context
def lowerbound(
    ctx: click.Context,
    n: int,
    k: Optional[int],
    transcript: Optional[str],
    maximize_bound: bool,
    d: Optional[int],
):
    """
    查詢次數下界（最小化: C(n,k+1)/C(2k,k+1)；最大化: --max）

    有查詢紀錄但所有隱藏集合都被覆蓋時，結束碼為 1
    """
    def produce() -> RunReport:
        loaded = load_transcript(transcript) if transcript else None
        return run_lowerbound(n, k, loaded, maximize=maximize_bound, d=d)

    execute(ctx, produce)


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def stats(ctx: click.Context, instance_file: str):
    """實例統計：最小不可達集合族、封閉集合數與步驟 3 的預算"""
    options: CliOptions = ctx.obj
    execute(ctx, lambda: run_stats(load_instance(instance_file), options.count_raw))


if __name__ == "__main__":
    main()
