"""GUI exploration test generator for menu-driven business applications.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from gexplore._core import (
    ExplorerConfig,
    GexploreError,
    Strategy,
    World,
    app_presets,
    generate_report,
    parse_output_entry,
    run_experiment,
    run_strategy,
    summarize,
    verify_plan,
    wilcoxon_paired_one_tail,
)

__all__ = [
    "ExplorerConfig",
    "GexploreError",
    "Strategy",
    "World",
    "app_presets",
    "generate_report",
    "parse_output_entry",
    "run_experiment",
    "run_strategy",
    "summarize",
    "verify_plan",
    "wilcoxon_paired_one_tail",
]
