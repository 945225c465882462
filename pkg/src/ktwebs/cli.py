"""Command-line interface.

Tensors enter as JSON records with exact coefficients::

    {"metric": "euclidean", "A": 0, "B": 0, "C": 1,
     "alpha": 0, "beta": 0, "gamma": 1, "id": "example"}

Coefficients may be JSON numbers or "p/q" strings; decimal numbers are
converted exactly from their decimal form (0.1 becomes 1/10, never a
binary float).  Missing coefficients default to zero.  Reports are JSON
with every rational serialized as a "p/q" string, so they round-trip
losslessly.

Exit codes: 0 success, 1 verification failure, 2 bad input,
3 web requested for a non-characteristic tensor.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .classify import (
    EUCLIDEAN_LABELS,
    MINKOWSKI_LABELS,
    ORBIT_CLASSES,
    ClassificationReport,
    classify,
    representative,
)
from .core import KTParams, MetricSignature, ktparams
from .invariants import EuclideanInvariants
from .testkit import run_verification
from .webs import NonCharacteristicError, WebRenderConfig, render_svg, trace_web

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NOT_CHARACTERISTIC = 3

COEFF_KEYS = ("A", "B", "C", "alpha", "beta", "gamma")
ALLOWED_KEYS = set(COEFF_KEYS) | {"metric", "id"}


class InputError(ValueError):
    pass


def loads_exact(text: str):
    """Parse JSON with numbers converted exactly from their decimal form."""
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def parse_record(obj, default_metric: str | None = None) -> tuple[str | None, KTParams]:
    if not isinstance(obj, dict):
        raise InputError("tensor record must be a JSON object")
    unknown = set(obj) - ALLOWED_KEYS
    if unknown:
        raise InputError(f"unknown keys in tensor record: {sorted(unknown)}")
    metric = obj.get("metric", default_metric)
    if metric is None:
        raise InputError("tensor record needs a 'metric' field")
    try:
        sig = MetricSignature(str(metric).lower())
    except ValueError:
        raise InputError(f"unknown metric {metric!r}") from None
    coeffs = {}
    for key in COEFF_KEYS:
        value = obj.get(key, 0)
        try:
            coeffs[key] = value
        except TypeError:
            raise InputError(f"coefficient {key} is not rational") from None
    rid = obj.get("id")
    if rid is not None:
        rid = str(rid)
    try:
        k = ktparams(sig, **coeffs)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad coefficient: {exc}") from None
    return rid, k


def build_report(rid: str | None, k: KTParams, report: ClassificationReport | None = None) -> dict:
    rep = report or classify(k)
    inv = rep.invariants
    if isinstance(inv, EuclideanInvariants):
        inv_json = {"gamma": str(inv.gamma), "delta": str(inv.delta)}
    else:
        inv_json = {
            "gamma": str(inv.gamma),
            "z_plus": str(inv.z_plus),
            "z_minus": str(inv.z_minus),
            "p_cart": str(inv.p_cart),
        }
    return {
        "id": rid,
        "metric": k.signature.value,
        "params": {key: str(c) for key, c in zip(COEFF_KEYS, k.coefficients())},
        "class": rep.orbit.label,
        "web_name": rep.orbit.web_name,
        "sc_labels": list(rep.orbit.sc_labels),
        "invariants": inv_json,
        "rank": rep.rank,
        "characteristic": rep.orbit.characteristic,
        "is_zero": rep.is_zero,
        "singular_set": rep.singular_set.to_json(),
    }


def report_to_ktparams(record: dict) -> KTParams:
    """Rebuild the exact tensor from a report record (round-trip support)."""
    sig = MetricSignature(record["metric"])
    return ktparams(sig, **{k: record["params"][k] for k in COEFF_KEYS})


def _read_tensor_argument(value: str) -> str:
    value = value.strip()
    if value.startswith("{"):
        return value
    if value == "-":
        return sys.stdin.read()
    with open(value, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_single_record(args) -> tuple[str | None, KTParams]:
    text = _read_tensor_argument(args.tensor)
    return parse_record(loads_exact(text), default_metric=args.metric)


def _iter_batch_lines(args):
    if args.tensor is None or args.tensor.strip() == "-":
        yield from sys.stdin
    else:
        with open(args.tensor, "r", encoding="utf-8") as fh:
            yield from fh


def _parse_box(text: str) -> tuple[float, float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise InputError("--box expects 'u0,u1,v0,v1'")
    try:
        u0, u1, v0, v1 = (float(p) for p in parts)
    except ValueError:
        raise InputError("--box expects four numbers") from None
    if not (u0 < u1 and v0 < v1):
        raise InputError("--box must describe a nonempty rectangle")
    return (u0, u1, v0, v1)


def _web_config(args) -> WebRenderConfig:
    box = _parse_box(args.box) if args.box else (-3.0, 3.0, -3.0, 3.0)
    spacing = (box[1] - box[0]) / args.seeds
    return WebRenderConfig(box=box, seed_spacing=spacing, step=args.step)


# -- subcommands -------------------------------------------------------------


def _cmd_classify(args) -> int:
    rid, k = _load_single_record(args)
    print(json.dumps(build_report(rid, k)))
    return EXIT_OK


def _cmd_batch(args) -> int:
    failed = False
    for line in _iter_batch_lines(args):
        line = line.strip()
        if not line:
            continue
        try:
            rid, k = parse_record(loads_exact(line), default_metric=args.metric)
            print(json.dumps(build_report(rid, k)))
        except InputError as exc:
            failed = True
            print(json.dumps({"error": str(exc), "input": line}))
    return EXIT_BAD_INPUT if failed else EXIT_OK


def _cmd_rank(args) -> int:
    rid, k = _load_single_record(args)
    rep = classify(k)
    print(
        json.dumps(
            {
                "id": rid,
                "metric": k.signature.value,
                "class": rep.orbit.label,
                "rank": rep.rank,
                "expected_rank": rep.orbit.expected_rank,
                "is_zero": rep.is_zero,
            }
        )
    )
    return EXIT_OK


def _cmd_invariants(args) -> int:
    rid, k = _load_single_record(args)
    report = build_report(rid, k)
    print(
        json.dumps(
            {
                "id": rid,
                "metric": report["metric"],
                "invariants": report["invariants"],
            }
        )
    )
    return EXIT_OK


def _cmd_web(args) -> int:
    rid, k = _load_single_record(args)
    cfg = _web_config(args)
    try:
        doc = trace_web(k, cfg)
    except NonCharacteristicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CHARACTERISTIC
    payload = render_svg(doc, cfg)
    out_dir = os.path.dirname(os.path.abspath(args.out))
    os.makedirs(out_dir, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, suffix=".svg.tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp_path, args.out)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return EXIT_OK


def _cmd_verify(args) -> int:
    ok, items = run_verification(
        trials=args.trials, seed=args.seed,
        inject_bad_generator=args.inject_bad_generator,
    )
    for item in items:
        status = "ok" if item["ok"] else "FAIL"
        print(f"[{status}] {item['name']}: {item['detail']}")
    print(json.dumps({"ok": ok, "items": items}))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_atlas(_args) -> int:
    entries = []
    for label in EUCLIDEAN_LABELS + MINKOWSKI_LABELS:
        cls = ORBIT_CLASSES[label]
        for k in representative(label):
            entries.append(
                {
                    "label": label,
                    "web_name": cls.web_name,
                    "sc_labels": list(cls.sc_labels),
                    "expected_rank": cls.expected_rank,
                    "characteristic": cls.characteristic,
                    "metric": k.signature.value,
                    "params": {
                        key: str(c) for key, c in zip(COEFF_KEYS, k.coefficients())
                    },
                }
            )
    print(json.dumps(entries))
    return EXIT_OK


def _cmd_report(args) -> int:
    from .report import write_report_files

    records = []
    failed = False
    for line in _iter_batch_lines(args):
        line = line.strip()
        if not line:
            continue
        try:
            records.append(parse_record(loads_exact(line), default_metric=args.metric))
        except InputError as exc:
            failed = True
            records.append((f"<error: {exc}>", None))
    cfg = _web_config(args)
    paths = write_report_files(records, args.outdir, cfg)
    for path in paths:
        print(path)
    return EXIT_BAD_INPUT if failed else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktwebs",
        description=(
            "Classify valence-two Killing tensors of the flat plane into "
            "web-preserving group orbits, verify the group structure, and "
            "render separable webs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tensor_options(p, batch=False):
        help_text = (
            "newline-delimited JSON records file, or '-' for stdin"
            if batch
            else "tensor record: inline JSON, a file path, or '-' for stdin"
        )
        p.add_argument("--tensor", default="-" if batch else None,
                       required=not batch, help=help_text)
        p.add_argument(
            "--metric",
            choices=[s.value for s in MetricSignature],
            help="default metric for records that omit the field",
        )

    p = sub.add_parser("classify", help="classify one tensor, JSON report on stdout")
    add_tensor_options(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("batch", help="classify newline-delimited JSON records")
    add_tensor_options(p, batch=True)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("rank", help="generator matrix rank of one tensor")
    add_tensor_options(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("invariants", help="fundamental invariants of one tensor")
    add_tensor_options(p)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("web", help="render the separable web of one tensor to SVG")
    add_tensor_options(p)
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--box", help="viewing box 'u0,u1,v0,v1' (default -3,3,-3,3)")
    p.add_argument("--seeds", type=int, default=8, help="seed grid density per axis")
    p.add_argument("--step", type=float, default=0.05, help="integration step")
    p.set_defaults(func=_cmd_web)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--trials", type=int, default=200,
                   help="orbit-invariance fuzz trials (0 skips the fuzz)")
    p.add_argument("--seed", type=int, default=0, help="fuzz RNG seed")
    p.add_argument("--inject-bad-generator", action="store_true",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("atlas", help="dump the representative tensors as JSON")
    p.set_defaults(func=_cmd_atlas)

    p = sub.add_parser(
        "report",
        help="classify a batch and write a CSV table plus web figures (PNG)",
    )
    add_tensor_options(p, batch=True)
    p.add_argument("--outdir", required=True, help="output directory")
    p.add_argument("--box", help="viewing box 'u0,u1,v0,v1' (default -3,3,-3,3)")
    p.add_argument("--seeds", type=int, default=8, help="seed grid density per axis")
    p.add_argument("--step", type=float, default=0.05, help="integration step")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
