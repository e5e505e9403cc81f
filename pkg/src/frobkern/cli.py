"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails, 2 on
input errors (unreadable or malformed group file, bad option, closure cap).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .certificate import to_json, to_structured, to_text
from .context import FrobeniusContext, SigmaPolicy, build_context, is_frobenius
from .errors import ClosureCapExceeded, FrobkernError
from .groupfile import GroupFile, GroupFileError, parse_group_file
from .kernel import kernel_pipeline
from .perm import DEFAULT_ELEMENT_CAP, PermutationGroup
from .ssystem import check_orthogonal, verify_right_s_system
from .ternary import all_tables, binary_table, check_idempotent_quasigroup

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
CORPUS_DIR = Path(__file__).parent / "corpus"
FORMATS = ("text", "structured", "json")


class InputError(FrobkernError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    path: str
    label: int | None = None
    zero: int | None = None
    one: int | None = None
    a0_policy: str = "first"
    sigma_policy: str = "lex"
    cap: int = DEFAULT_ELEMENT_CAP
    format: str = "text"
    verbosity: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise InputError("--cap must be at least 1")
        if self.zero is not None and self.zero == self.one:
            raise InputError("--zero and --one must differ")
        if self.a0_policy not in ("first", "all"):
            raise InputError(f"--a0 must be 'first' or 'all', not {self.a0_policy!r}")
        if self.format not in FORMATS:
            raise InputError(f"--format must be one of {', '.join(FORMATS)}")
        try:
            SigmaPolicy.parse(self.sigma_policy)
        except ValueError as exc:
            raise InputError(str(exc)) from exc


def _load(config: RunConfig, text: str | None = None) -> tuple[GroupFile, PermutationGroup, int, int]:
    if text is None:
        try:
            text = Path(config.path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {config.path}: {exc.strerror}") from exc
    gf = parse_group_file(text)
    G = gf.group(config.cap)
    zero = config.zero if config.zero is not None else (gf.zero if gf.zero is not None else 0)
    one = config.one if config.one is not None else (gf.one if gf.one is not None else 1)
    if zero == one:
        raise InputError(f"zero and one both equal {zero}")
    for label, p in (("zero", zero), ("one", one)):
        if not 0 <= p < G.degree:
            raise InputError(f"{label} = {p} out of range for degree {G.degree}")
    return gf, G, zero, one


def _context(config: RunConfig, G: PermutationGroup, zero: int, one: int) -> FrobeniusContext | str:
    verdict = is_frobenius(G)
    if not verdict:
        return f"not Frobenius: {verdict.witness}"
    return build_context(G, zero, one, config.sigma_policy)


def _check_frobenius(config: RunConfig, G: PermutationGroup, zero: int, one: int) -> tuple[int, str]:
    verdict = is_frobenius(G)
    if not verdict:
        return EXIT_FAIL, f"not Frobenius: {verdict.witness}\n"
    ctx = build_context(G, zero, one, config.sigma_policy)
    return EXIT_OK, (
        f"Frobenius: degree {G.degree}, |G| = {G.order}, |H_{zero}| = {ctx.H0.order}, "
        f"E* = {{{', '.join(map(str, ctx.e_star))}}}\n"
    )


def _latin(config: RunConfig, G: PermutationGroup, zero: int, one: int) -> tuple[int, str]:
    ctx = _context(config, G, zero, one)
    if isinstance(ctx, str):
        return EXIT_FAIL, ctx + "\n"
    a = config.label
    if a not in ctx.e_star_set:
        raise InputError(f"label {a} is not in E* = {list(ctx.e_star)}")
    t = binary_table(ctx, a)
    out = t.dump()
    if t.projection is not None:
        return EXIT_OK, out
    v = check_idempotent_quasigroup(t)
    if not v:
        return EXIT_FAIL, out + f"# not an idempotent quasigroup: {v.witness}\n"
    return EXIT_OK, out


def _ssystem(config: RunConfig, G: PermutationGroup, zero: int, one: int) -> tuple[int, str]:
    ctx = _context(config, G, zero, one)
    if isinstance(ctx, str):
        return EXIT_FAIL, ctx + "\n"
    tables = all_tables(ctx)
    report = verify_right_s_system(ctx, tables)
    lines = [f"E* = {{{', '.join(map(str, ctx.e_star))}}}, star group {report.group_type} "
             f"(order {report.group_order})"]
    for name, v in report.items.items():
        lines.append(f"{name}: {'PASS' if v else 'FAIL'}" + ("" if v else f"  -- {v.witness}"))
    orth_ok = True
    for i, a in enumerate(ctx.e_star):
        for b in ctx.e_star[i + 1:]:
            v = check_orthogonal(ctx, a, b, tables)
            orth_ok &= bool(v)
            if config.verbosity or not v:
                lines.append(f"orthogonal[{a},{b}]: {'PASS' if v else 'FAIL'}"
                             + ("" if v else f"  -- {v.witness}"))
    lines.append(f"orthogonality of all pairs: {'PASS' if orth_ok else 'FAIL'}")
    ok = report.ok and orth_ok
    if not ok:
        lines.append(f"first failing check: {report.first_failure() or 'orthogonality'}")
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines) + "\n"


def _render(cert, fmt: str) -> str:
    return {"text": to_text, "structured": to_structured, "json": to_json}[fmt](cert)


def _kernel(config: RunConfig, G: PermutationGroup, zero: int, one: int) -> tuple[int, str]:
    cert = kernel_pipeline(G, zero, one, config.a0_policy, config.sigma_policy)
    return (EXIT_OK if cert.ok else EXIT_FAIL), _render(cert, config.format)


_HANDLERS = {
    "check-frobenius": _check_frobenius,
    "latin": _latin,
    "ssystem": _ssystem,
    "kernel": _kernel,
}


def _corpus_entry(config: RunConfig, path: str) -> tuple[str, int, str]:
    """One corpus row: ``(name, status, summary)``; status 0 pass, 1 fail, 2 input error."""
    p = Path(path)
    try:
        _, G, zero, one = _load(replace(config, path=path))
        cert = kernel_pipeline(G, zero, one, config.a0_policy, config.sigma_policy)
    except (FrobkernError, ValueError) as exc:
        return p.stem, EXIT_INPUT, f"input error: {exc}"
    expect = p.with_suffix(".expect")
    summary = f"n={G.degree} |G|={G.order}"
    if expect.exists():
        same = to_structured(cert) == expect.read_text()
        verdict = "matches golden certificate" if same else "DIFFERS from golden certificate"
        return p.stem, EXIT_OK if same else EXIT_FAIL, f"{summary} {verdict}"
    if cert.ok:
        return p.stem, EXIT_OK, f"{summary} |H0|={cert.h0_order} kernel certified"
    reason = cert.rejection or f"first failure {cert.first_failure}"
    return p.stem, EXIT_FAIL, f"{summary} {reason}"


def _corpus(config: RunConfig) -> tuple[int, str]:
    root = Path(config.path)
    if not root.is_dir():
        raise InputError(f"{root} is not a directory")
    paths = sorted(str(p) for p in root.glob("*.grp"))
    if not paths:
        raise InputError(f"no *.grp files in {root}")
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            rows = list(pool.map(_corpus_entry, [config] * len(paths), paths))
    else:
        rows = [_corpus_entry(config, p) for p in paths]
    width = max(len(name) for name, _, _ in rows)
    tag = {EXIT_OK: "PASS", EXIT_FAIL: "FAIL", EXIT_INPUT: "ERROR"}
    lines = [f"{name:<{width}}  {tag[status]:<5}  {summary}" for name, status, summary in rows]
    passed = sum(status == EXIT_OK for _, status, _ in rows)
    lines.append(f"{passed}/{len(rows)} passed")
    worst = max(status for _, status, _ in rows)
    return worst, "\n".join(lines) + "\n"


def run(config: RunConfig) -> tuple[int, str]:
    """Execute ``config``; returns ``(exit_status, report)``. Never raises on bad input."""
    try:
        if config.subcommand == "corpus":
            return _corpus(config)
        _, G, zero, one = _load(config)
        return _HANDLERS[config.subcommand](config, G, zero, one)
    except (GroupFileError, InputError, ClosureCapExceeded) as exc:
        return EXIT_INPUT, f"error: {exc}\n"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zero", type=int, help="base point playing the role of 0")
    p.add_argument("--one", type=int, help="second base point playing the role of 1")
    p.add_argument("--a0", dest="a0_policy", default="first", choices=("first", "all"),
                   help="which quasigroup label builds T; 'all' checks every one")
    p.add_argument("--sigma", dest="sigma_policy", default="lex",
                   help="coset representative choice: 'lex' or 'seed:<k>'")
    p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP,
                   help="maximum group order to enumerate")
    p.add_argument("--format", default="text", choices=FORMATS)
    p.add_argument("-v", "--verbose", dest="verbosity", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobkern",
        description="Build and certify the Frobenius kernel of a permutation group "
                    "through its ternary quasigroup construction.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("check-frobenius", help="only test whether the group is Frobenius")
    p.add_argument("path")
    _add_common(p)
    p = sub.add_parser("latin", help="dump the operation table A_a")
    p.add_argument("label", type=int)
    p.add_argument("path")
    _add_common(p)
    p = sub.add_parser("ssystem", help="right S-system and orthogonality report")
    p.add_argument("path")
    _add_common(p)
    p = sub.add_parser("kernel", help="full pipeline; emits a certificate")
    p.add_argument("path")
    _add_common(p)
    p = sub.add_parser("corpus", help="run the kernel pipeline over every *.grp in a directory")
    p.add_argument("path", nargs="?", default=str(CORPUS_DIR),
                   help="directory of group files (default: the bundled corpus)")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(**vars(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status, report = run(config)
    (sys.stderr if status == EXIT_INPUT else sys.stdout).write(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
