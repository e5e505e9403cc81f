"""Serialization of kernel certificates.

The structured form is a line-oriented ``key: value`` document. List-valued
keys (``generators``, ``T``, ``K``) have an empty value and are followed by
their items, one per line, indented by two spaces. Every value is derived
from canonically ordered data, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json
from typing import Any

from .kernel import FLAG_NAMES, KernelCertificate

FORMAT_TAG = "frobkern-certificate/1"
LIST_KEYS = ("generators", "T", "K")


def _b(v: bool | None) -> str:
    return "none" if v is None else ("true" if v else "false")


def _v(v: Any) -> str:
    return "none" if v is None else str(v)


def certificate_fields(cert: KernelCertificate) -> list[tuple[str, Any]]:
    """Ordered ``(key, value)`` pairs; list values are lists of strings."""
    out: list[tuple[str, Any]] = [
        ("format", FORMAT_TAG),
        ("accepted", _b(cert.accepted)),
        ("degree", str(cert.degree)),
        ("order", str(cert.order)),
        ("generators", [str(g) for g in cert.generators]),
        ("zero", _v(cert.zero)),
        ("one", _v(cert.one)),
        ("rejection", _v(cert.rejection)),
    ]
    if cert.accepted:
        out += [
            ("h0_order", _v(cert.h0_order)),
            ("e_star", " ".join(map(str, cert.e_star))),
            ("star_group", _v(cert.star_group)),
            ("a0", _v(cert.a0)),
            ("a0_policy", cert.a0_policy),
            ("sigma_policy", cert.sigma_policy),
            ("T", [str(t) for t in cert.T]),
            ("K", [str(k) for k in cert.oracle_K]),
        ]
        out += [(f"flag.{f}", _b(cert.flags.get(f, False))) for f in FLAG_NAMES]
        out += [(f"witness.{f}", cert.witnesses[f]) for f in FLAG_NAMES if f in cert.witnesses]
        out += [
            ("normal_path", _v(cert.normal_path)),
            ("e_star_union_decomposition", _b(cert.e_star_union_decomposition)),
        ]
    out += [
        ("first_failure", _v(cert.first_failure)),
        ("result", "pass" if cert.ok else "fail"),
    ]
    return out


def to_structured(cert: KernelCertificate) -> str:
    lines = []
    for key, value in certificate_fields(cert):
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines += [f"  {item}" for item in value]
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def parse_structured(text: str) -> dict[str, Any]:
    """Inverse of :func:`to_structured` at the string level."""
    doc: dict[str, Any] = {}
    current: list[str] | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("  "):
            if current is None:
                raise ValueError(f"line {lineno}: list item without a list key")
            current.append(line[2:])
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        value = value.strip()
        if key in LIST_KEYS and not value:
            current = doc[key] = []
        else:
            current = None
            doc[key] = value
    return doc


def to_json(cert: KernelCertificate) -> str:
    return json.dumps(dict(certificate_fields(cert)), indent=2) + "\n"


def to_text(cert: KernelCertificate) -> str:
    """Human-oriented summary."""
    if not cert.accepted:
        return (f"degree {cert.degree}, |G| = {cert.order}\n{cert.rejection}\n"
                f"first failing check: {cert.first_failure}\n")
    lines = [
        f"degree {cert.degree}, |G| = {cert.order}, |H0| = {cert.h0_order}",
        f"E* = {{{', '.join(map(str, cert.e_star))}}}  (zero={cert.zero}, one={cert.one})",
        f"star group: {cert.star_group}",
        f"a0 = {cert.a0} (policy {cert.a0_policy}), sigma policy {cert.sigma_policy}",
        f"T ({len(cert.T)} elements):",
    ]
    lines += [f"  {t}" for t in cert.T]
    width = max(len(f) for f in FLAG_NAMES)
    for f in FLAG_NAMES:
        ok = cert.flags.get(f, False)
        line = f"  {f:<{width}}  {'PASS' if ok else 'FAIL'}"
        if f in cert.witnesses:
            line += f"  -- {cert.witnesses[f]}"
        lines.append(line)
    lines.append(f"normality checked via {cert.normal_path}")
    if cert.ok:
        lines.append("T is the Frobenius kernel: normal, regular, equal to the brute-force scan")
    else:
        lines.append(f"first failing check: {cert.first_failure}")
    return "\n".join(lines) + "\n"
