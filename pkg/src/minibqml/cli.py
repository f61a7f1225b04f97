"""Command-line entry point: script runner and interactive REPL.

    minibqml run <script.sql> [--seed N] [--format table|csv|json] [--model-dir PATH]
    minibqml repl [--seed N] [--format table|csv|json] [--model-dir PATH]

The MINIBQML_MODEL_DIR environment variable overrides --model-dir. Scripts
are ``;``-separated statements with ``--`` comments; on the first failing
statement the runner prints the statement index, its position, and the
message, then stops with a nonzero exit code.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

from .artifact import save_model
from .engine import CURVE_COLUMNS, Engine, SessionConfig, StatementResult
from .errors import IoError, MiniBqmlError
from .metrics import score_sweep
from .sql.parser import iter_statements
from .table import Table


# --- rendering ------------------------------------------------------------------


def _cell_text(value) -> str:
    if value is None:
        return "NULL"
    if isinstance(value, float):
        if math.isnan(value):
            return "NaN"
        return repr(value)
    return str(value)


def render_table(table: Table, out) -> None:
    headers = table.column_names
    rows = [[_cell_text(v) for v in row] for row in table.iter_rows()]
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = " | ".join(h.ljust(w) for h, w in zip(headers, widths))
    out.write(line.rstrip() + "\n")
    out.write("-+-".join("-" * w for w in widths) + "\n")
    for row in rows:
        out.write(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    out.write(f"({table.row_count} row{'s' if table.row_count != 1 else ''})\n")


def render_csv(table: Table, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.column_names)
    for row in table.iter_rows():
        writer.writerow(["" if v is None else _cell_text(v) for v in row])


def _json_safe(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def render_json(result: StatementResult, out) -> None:
    if result.report is not None:
        doc = result.report.to_dict()
        doc = {k: _json_safe(v) if not isinstance(v, dict) else v for k, v in doc.items()}
        out.write(json.dumps(doc) + "\n")
        return
    table = result.table
    rows = [
        {name: _json_safe(v) for name, v in zip(table.column_names, row)}
        for row in table.iter_rows()
    ]
    out.write(json.dumps(rows) + "\n")


def render_result(result: StatementResult, output_format: str, out) -> None:
    for warning in result.warnings:
        out.write(f"warning: {warning}\n")
    if result.table is not None:
        if output_format == "csv":
            render_csv(result.table, out)
        elif output_format == "json":
            render_json(result, out)
        else:
            render_table(result.table, out)
    if result.message is not None:
        out.write(result.message + "\n")


# --- script runner -----------------------------------------------------------------


def run_script(path: str | Path, config: SessionConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        err.write(f"error: cannot read script {path}: {exc}\n")
        return 2

    engine = Engine(config)
    for warning in engine.startup_warnings:
        err.write(f"warning: {warning}\n")

    # statements parse and execute one at a time, so everything before a
    # faulty statement has already taken effect when the runner stops
    stream = iter_statements(text)
    index = 0
    while True:
        index += 1
        try:
            script_stmt = next(stream)
        except StopIteration:
            return 0
        except MiniBqmlError as exc:
            # positioned errors already carry their line/column in the message
            err.write(f"error in statement {index}: {exc}\n")
            return 1
        try:
            result = engine.execute(script_stmt.statement)
        except MiniBqmlError as exc:
            err.write(
                f"error in statement {index} "
                f"(line {script_stmt.line}, column {script_stmt.column}): {exc}\n"
            )
            return 1
        render_result(result, config.output_format, out)


# --- REPL ---------------------------------------------------------------------------


def _meta_command(engine: Engine, line: str, out) -> bool:
    """Handle one backslash command; returns False on \\quit."""
    parts = line.split()
    command = parts[0].lower()
    if command == "\\quit" or command == "\\q":
        return False
    if command == "\\load":
        # \load <path> AS <name>
        if len(parts) != 4 or parts[2].upper() != "AS":
            out.write("usage: \\load <path> AS <name>\n")
            return True
        table = engine.ingest_csv(parts[1], parts[3], replace=True)
        out.write(f"loaded {table.row_count} rows into {parts[3]}\n")
        return True
    if command == "\\tables":
        for name in engine.catalog.table_names():
            out.write(name + "\n")
        return True
    if command == "\\models":
        for name in engine.catalog.model_names():
            out.write(name + "\n")
        return True
    if command == "\\save":
        if len(parts) != 3:
            out.write("usage: \\save <model> <path>\n")
            return True
        save_model(engine.catalog.model(parts[1]), parts[2])
        out.write(f"saved {parts[1]} to {parts[2]}\n")
        return True
    if command == "\\export":
        if len(parts) != 4 or parts[2].lower() != "curves":
            out.write("usage: \\export <model> curves <path>\n")
            return True
        export_curves(engine, parts[1], parts[3])
        out.write(f"exported curve sweep for {parts[1]} to {parts[3]}\n")
        return True
    out.write(f"unknown command {parts[0]!r} (try \\load, \\tables, \\models, \\save, \\export, \\quit)\n")
    return True


def export_curves(engine: Engine, model_name: str, path: str | Path) -> None:
    """Write the full threshold sweep as CSV for plotting the three panels
    (precision/recall by threshold, PR curve, ROC curve)."""
    artifact = engine.catalog.model(model_name)
    rows, _, _ = engine._evaluation_rows(artifact, None)
    labels, scores = engine._labeled_scores(artifact, rows)
    points = score_sweep(labels, scores)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CURVE_COLUMNS)
            for p in points:
                writer.writerow([repr(p.threshold), repr(p.recall),
                                 repr(p.false_positive_rate), repr(p.precision)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def repl(config: SessionConfig, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    engine = Engine(config)
    for warning in engine.startup_warnings:
        out.write(f"warning: {warning}\n")
    out.write("minibqml: end statements with ';', meta-commands start with '\\', \\quit to exit\n")

    buffer = ""
    while True:
        out.write("minibqml> " if not buffer else "      ...> ")
        out.flush()
        line = stdin.readline()
        if line == "":
            break
        stripped = line.strip()
        if not buffer and stripped.startswith("\\"):
            try:
                if not _meta_command(engine, stripped, out):
                    break
            except MiniBqmlError as exc:
                out.write(f"error: {exc}\n")
            continue
        buffer += line
        if ";" not in line:
            continue
        statement_text, buffer = buffer, ""
        try:
            result = engine.execute_sql(statement_text)
            render_result(result, config.output_format, out)
        except MiniBqmlError as exc:
            out.write(f"error: {exc}\n")
    return 0


# --- argument parsing ------------------------------------------------------------------


def _add_session_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=42,
                        help="default seed for models without a seed option")
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table",
                        dest="output_format", help="result rendering format")
    parser.add_argument("--model-dir", default="models",
                        help="directory for persisted models (MINIBQML_MODEL_DIR overrides)")


def _config_from_args(args: argparse.Namespace) -> SessionConfig:
    model_dir = os.environ.get("MINIBQML_MODEL_DIR") or args.model_dir
    return SessionConfig(
        seed=args.seed,
        output_format=args.output_format,
        model_dir=Path(model_dir),
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="minibqml",
                                     description="embedded SQL analytics engine with in-database ML")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="execute a SQL script")
    run_parser.add_argument("script", help="path to a ;-separated SQL script")
    _add_session_args(run_parser)

    repl_parser = sub.add_parser("repl", help="interactive session")
    _add_session_args(repl_parser)

    args = parser.parse_args(argv)
    config = _config_from_args(args)
    if args.command == "run":
        return run_script(args.script, config)
    return repl(config)


if __name__ == "__main__":
    sys.exit(main())
