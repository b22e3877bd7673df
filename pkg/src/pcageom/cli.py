"""Command-line front end: analyze a data set or verify the identities."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corrstats import correlation_matrix, load_correlation_json
from .eigensolve import eigen_symmetric
from .errors import PcageomError
from .fixtures import fixture_path
from .ingest import load_csv, parse_column_spec, standardize
from .report import render_csv, render_markdown, run_analysis, to_json_text
from .svgplot import render_svg_scree, render_svg_similarity
from .tensorops import build_virtual, verify_relations

__all__ = ["main"]

_CRITERION_FLAGS = {
    "percentage": "percentage",
    "scree": "scree",
    "eigenvalue": "eigenvalue_ge_1",
    "per-variable": "per_variable",
}


def _resolve_input(raw: str) -> Path:
    """Use the path as given, falling back to the bundled fixtures.

    A nonexistent path like ``fixtures/iris.csv`` (or a bare fixture
    name) resolves to the packaged copy, so documented commands work
    from any directory.
    """
    path = Path(raw)
    if path.exists():
        return path
    try:
        return fixture_path(path.name)
    except FileNotFoundError:
        raise PcageomError(f"cli: cannot read input {raw!r}: no such file") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcageom",
        description="Correlation-geometry PCA: tables, selection criteria, "
        "variable clustering, and plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the full pipeline and write report files")
    pa.add_argument("input", help="CSV data file or correlation-matrix JSON")
    pa.add_argument("--columns", help="numeric columns: names, 1-based indices, or ranges (1-4)")
    pa.add_argument("--label-column", help="column holding nominal row labels")
    pa.add_argument("--header", action="store_true", help="first row holds column names")
    pa.add_argument("--divisor", choices=["population", "sample"], default="population")
    pa.add_argument(
        "--criterion",
        choices=sorted(_CRITERION_FLAGS),
        default="per-variable",
        help="component-count criterion used when --k auto",
    )
    pa.add_argument("--threshold", type=float, help="threshold for percentage/per-variable")
    pa.add_argument("--clusters", choices=["naive", "kmeans"], default="naive")
    pa.add_argument("--metric", choices=["l1", "l2", "linf", "cosine"], default="l2")
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--naive-threshold", type=float, default=0.5)
    pa.add_argument("--k", default="auto", help="components to keep: an integer or 'auto'")
    pa.add_argument("--format", choices=["md", "csv", "json"], default="md")
    pa.add_argument("--out", default=".", help="directory for report and plot files")

    pv = sub.add_parser("verify", help="check the representation identities")
    pv.add_argument("input", help="CSV data file or correlation-matrix JSON")
    pv.add_argument("--columns")
    pv.add_argument("--label-column")
    pv.add_argument("--header", action="store_true")
    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    input_path = _resolve_input(args.input)
    k: int | str = args.k
    if isinstance(k, str) and k != "auto":
        try:
            k = int(k)
        except ValueError:
            raise PcageomError(f"cli: --k must be an integer or 'auto', got {args.k!r}") from None

    result = run_analysis(
        input_path,
        columns=args.columns,
        label_column=args.label_column,
        header=args.header,
        divisor=args.divisor,
        criterion=_CRITERION_FLAGS[args.criterion],
        threshold=args.threshold,
        cluster_method=args.clusters,
        metric=args.metric,
        seed=args.seed,
        naive_threshold=args.naive_threshold,
        k=k,
    )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(to_json_text(result.report), encoding="utf-8")
    (out_dir / "report.md").write_text(render_markdown(result.report) + "\n", encoding="utf-8")
    (out_dir / "scree.svg").write_text(render_svg_scree(result.scree_series), encoding="utf-8")
    if result.k == 2:
        (out_dir / "similarity.svg").write_text(
            render_svg_similarity(result.profiles, result.assignment), encoding="utf-8"
        )
    else:
        print(
            f"pcageom: similarity.svg skipped: the map is defined for k = 2, have k = {result.k}",
            file=sys.stderr,
        )

    if args.format == "json":
        sys.stdout.write(to_json_text(result.report))
    elif args.format == "csv":
        print(render_csv(result.report))
    else:
        print(render_markdown(result.report))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    input_path = _resolve_input(args.input)
    if input_path.suffix.lower() == ".json":
        corr = load_correlation_json(input_path)
    else:
        selectors = parse_column_spec(args.columns) if args.columns else None
        label_sel = None
        if args.label_column:
            label_sel = parse_column_spec(args.label_column)[0]
        data = load_csv(input_path, columns=selectors, label_column=label_sel, header=args.header)
        corr = correlation_matrix(standardize(data))
    eig = eigen_symmetric(corr)
    checks = verify_relations(build_virtual(eig), eig, corr)
    width = max(len(c.relation) for c in checks)
    for c in checks:
        status = "ok  " if c.passed else "FAIL"
        print(f"{status}  {c.relation:<{width}}  max dev {c.max_abs_dev:.3e}")
    n_pass = sum(c.passed for c in checks)
    print(f"{n_pass}/{len(checks)} relations hold")
    return 0 if n_pass == len(checks) else 1


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_verify(args)
    except (PcageomError, ValueError, OSError) as exc:
        print(f"pcageom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
