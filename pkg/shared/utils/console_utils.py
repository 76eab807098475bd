"""Console utilities for consistent CLI formatting.

This module provides reusable Rich console formatting functions
to ensure consistent output across all CLI commands.
"""

from typing import Iterable, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

# Global console instance
console = Console(soft_wrap=True)


def print_header(title: str, style: str = "cyan") -> None:
    """Print a formatted header panel.

    Args:
        title: Header text to display
        style: Border style color (default: cyan)
    """
    console.print()
    console.print(Panel.fit(
        f"[bold {style}]{title}[/bold {style}]",
        border_style=style
    ))


def print_section(title: str, style: str = "bold cyan") -> None:
    """Print a section header.

    Args:
        title: Section title
        style: Text style (default: bold cyan)
    """
    console.print()
    console.print(f"[{style}]{title}[/{style}]")


def print_success(message: str, prefix: str = "✓") -> None:
    console.print(f"  [green]{prefix} {escape(message)}[/green]")


def print_error(message: str, prefix: str = "✗") -> None:
    console.print(f"  [red]{prefix} {escape(message)}[/red]")


def print_warning(message: str, prefix: str = "⚠") -> None:
    console.print(f"  [yellow]{prefix} {escape(message)}[/yellow]")


def print_info(message: str) -> None:
    console.print(f"  [cyan]{escape(message)}[/cyan]")


def print_dim(message: str) -> None:
    console.print(f"  [dim]{escape(message)}[/dim]")


def print_key_values(values: dict, title: Optional[str] = None) -> None:
    """Print aligned `key: value` lines, floats in short scientific form.

    Args:
        values: Mapping to display in insertion order
        title: Optional section title printed first
    """
    if title:
        print_section(title)
    width = max((len(str(k)) for k in values), default=0)
    for key, value in values.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        console.print(f"  {escape(str(key).ljust(width))}  {escape(str(value))}")


def print_table(
    title: str,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    status_column: Optional[int] = None,
) -> None:
    """Print a rich table.

    Args:
        title: Table title
        columns: Column headers
        rows: Row values (converted with str, floats with 3 significant digits)
        status_column: Index of a boolean column rendered as PASS/FAIL
    """
    table = Table(title=title, show_lines=False)
    for name in columns:
        table.add_column(name)
    for row in rows:
        cells = []
        for i, value in enumerate(row):
            if i == status_column:
                cells.append("[green]PASS[/green]" if value else "[red]FAIL[/red]")
            elif isinstance(value, float):
                cells.append(f"{value:.3e}")
            else:
                cells.append(escape(str(value)))
        table.add_row(*cells)
    console.print(table)


def print_file_saved(filepath: str, file_type: str = "File") -> None:
    """Print a file saved message.

    Args:
        filepath: Path to saved file
        file_type: Type of file (e.g., "Solution", "Bounds")
    """
    print_success(f"{file_type} saved: {filepath}")
