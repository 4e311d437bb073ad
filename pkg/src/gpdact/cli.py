"""Command-line front end: parse description files, run checks, emit reports."""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .catalog import named_group, parse_element
from .errors import GpdActError, ParseError
from .groupoids import groupoid_from_dict, load_groupoid
from .profunctors import SetProfunctor, boundary_left, boundary_right, free_system, hom_profunctor
from .quantize import (
    check_mub,
    check_q_naturality,
    check_q_vertical,
    dense_coding_simulation,
    q_span,
    teleportation_simulation,
)
from .report import Report
from .spans import is_unitary, make_span, random_natural_span
from .structures import build_delta, check_dense_coding, check_topological_axioms, verify_lambda_steps
from .suite import run_suite
from .thermal import (
    ciphertext_distribution,
    communication_for,
    decoherence_rates,
    decoherence_sample,
    decrypt,
    encrypt,
    landauer_report,
)
from .util import freeze, render_id, seeded_rng


def _groupoid_arg(text):
    """A group shorthand, or a path to a groupoid description file."""
    if os.path.exists(text):
        return load_groupoid(text)
    return named_group(text)


def _load_profunctor(desc):
    kind = desc.get("kind")
    if kind == "hom":
        return hom_profunctor(groupoid_from_dict(desc["groupoid"])
                              if isinstance(desc["groupoid"], dict)
                              else named_group(desc["groupoid"]))
    if kind in ("boundary-left", "boundary-right"):
        g = groupoid_from_dict(desc["groupoid"]) if isinstance(desc["groupoid"], dict) \
            else named_group(desc["groupoid"])
        return boundary_left(g) if kind == "boundary-left" else boundary_right(g)
    if kind == "free":
        return free_system(int(desc["size"]))
    if kind == "set":
        source = groupoid_from_dict(desc["source"]) if isinstance(desc["source"], dict) \
            else named_group(desc["source"])
        target = groupoid_from_dict(desc["target"]) if isinstance(desc["target"], dict) \
            else named_group(desc["target"])
        stages = {
            (freeze(t), freeze(s)): tuple(freeze(e) for e in elems)
            for t, s, elems in desc["stages"]
        }
        left = {(freeze(h), freeze(e)): freeze(out) for h, e, out in desc["left"]}
        right = {(freeze(e), freeze(g)): freeze(out) for e, g, out in desc["right"]}
        return SetProfunctor(source, target, stages, left, right)
    raise ParseError("unknown profunctor kind %r" % kind)


def load_span(path):
    """Span literal: src/tgt profunctor descriptions plus entry records."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - {"src", "tgt", "entries"}
    if unknown:
        raise ParseError("unknown keys in span literal: %s" % sorted(unknown))
    src = _load_profunctor(data["src"])
    tgt = _load_profunctor(data["tgt"])
    entries = {}
    for stage, s, t, mult in data["entries"]:
        tobj, sobj = stage
        entries[((freeze(tobj), freeze(sobj)), freeze(s), freeze(t))] = int(mult)
    return make_span(src, tgt, entries)


def cmd_validate(args, report):
    try:
        g = load_groupoid(args.file)
    except GpdActError as exc:
        report.add("groupoid valid", False, exc)
        return
    report.add("groupoid valid", True)
    report.add("objects: %d, morphisms: %d" % (len(g.objects), g.mor_count()), True)
    report.add("skeletal: %s" % g.is_skeletal, True)


def cmd_check_axioms(args, report):
    g = _groupoid_arg(args.file)
    report.inputs["groupoid"] = g.name or args.file
    report.extend(check_topological_axioms(g))


def cmd_check_complementary(args, report):
    g = named_group(args.group)
    comp = build_delta(g)
    ok, w = is_unitary(comp.delta)
    report.add("bijection span unitary", ok, w)
    ok, w = is_unitary(comp.pt_left)
    report.add("partial transpose unitary", ok, w)
    report.add("bijection size %d" % len(comp.bijection), True)


def cmd_build_lambda(args, report):
    g = named_group(args.group)
    comm = communication_for(g)
    report.add("communication cell built over %s" % (g.name or args.group), True)
    report.add("message groupoid morphisms: %d" % comm.message_groupoid.mor_count(), True)
    report.extend(verify_lambda_steps(comm))


def cmd_check_communication(args, report):
    g = named_group(args.group)
    comm = communication_for(g)
    report.extend(verify_lambda_steps(comm))


def cmd_encrypt(args, report):
    g = named_group(args.group)
    p = parse_element(g, args.plaintext)
    k = parse_element(g, args.key)
    t = encrypt(g, p, k)
    for label, state in t.stage_trace:
        report.add("stage %s: %s" % (label, state), True)
    report.add("ciphertext delta(%s)" % render_id(t.ciphertext), True)
    report.add("heat %s" % render_id(t.heat), True)
    lr = landauer_report(t)
    report.add("heat alphabet size %d" % lr.heat_alphabet_size, True)
    report.add("heat equals key", lr.heat_equals_key)
    report.add("round trip decrypts", decrypt(g, t.ciphertext, k) == p)


def cmd_distribution(args, report):
    g = named_group(args.group)
    p = parse_element(g, args.plaintext)
    counts = ciphertext_distribution(g, p)
    labels = sorted(counts, key=render_id)
    for c in labels:
        report.add("count delta(%s) = %d" % (render_id(c), counts[c]), True)
    flat = set(counts.values()) == {1} and len(counts) == g.mor_count()
    report.add("uniform over %d ciphertexts" % g.mor_count(), flat)
    report.figures.append((
        "distribution", "bars",
        {"labels": [render_id(c) for c in labels],
         "values": [counts[c] for c in labels],
         "title": "ciphertext counts for plaintext %s" % render_id(p),
         "ylabel": "count"},
    ))


def cmd_decohere(args, report):
    g = named_group(args.group)
    empty_rate, uniform_rate = decoherence_rates(g)
    report.add("empty environment retrieval rate %s" % empty_rate, empty_rate == 1)
    from fractions import Fraction

    want = Fraction(1, g.mor_count())
    report.add(
        "uniform environment retrieval rate %s == %s" % (uniform_rate, want),
        uniform_rate == want,
    )
    mc = decoherence_sample(g, args.trials, seed=args.seed)
    report.add("sampled %d/%d retrievals with seed %s"
               % (mc.successes, mc.trials, report.seed), True)


def cmd_quantize(args, report):
    span = load_span(args.span_file)
    m = q_span(span)
    records = m.to_records()
    report.add("matrix %dx%d" % (len(m.rows), len(m.cols)), True)
    for label, row in zip(records["rows"], records["data"]):
        report.add("row %s: %s" % (label, row), True)
    ok, w = check_q_naturality(span)
    report.add("linearization equivariant", ok, w)


def cmd_check_q(args, report):
    g = named_group(args.group)
    h = hom_profunctor(g)
    rng = seeded_rng(args.seed)
    bad = 0
    for _ in range(args.pairs):
        a = random_natural_span(h, h, rng)
        b = random_natural_span(h, h, rng)
        if not check_q_vertical(a, b)[0]:
            bad += 1
    report.add("vertical preservation on %d seeded pairs" % args.pairs, bad == 0)
    comp = build_delta(g) if g.is_group else None
    if comp is not None:
        ok, w = check_q_naturality(comp.delta)
        report.add("bijection span equivariant", ok, w)


def cmd_check_mub(args, report):
    from .catalog import cyclic

    g = cyclic(args.n)
    dev, ct = check_mub(g)
    report.add("overlap deviation %.2e <= 1e-12" % dev, dev <= 1e-12)
    n = ct.order
    overlaps = [
        [abs(abs(z / n ** 0.5) ** 2) for z in row] for row in ct.table
    ]
    report.figures.append((
        "overlaps", "heatmap",
        {"matrix": overlaps, "title": "squared basis overlaps (all 1/%d)" % n,
         "xlabel": "group element", "ylabel": "character"},
    ))


def cmd_teleport(args, report):
    from .catalog import cyclic

    g = cyclic(args.n)
    state = None
    if args.state:
        parts = [complex(x) for x in args.state.split(",")]
        v = np.array(parts, dtype=complex)
        state = v / np.linalg.norm(v)
    n_random = 0 if state is not None else args.random
    r = teleportation_simulation(g, state=state, seed=args.seed, n_random=n_random)
    report.add("states checked: %d" % r.states_checked, True)
    report.add("branches: %d" % r.branches, r.branches == args.n ** 2)
    report.add("max infidelity %.2e <= 1e-12" % r.max_infidelity,
               r.max_infidelity <= 1e-12)
    report.add("branch probability deviation %.2e <= 1e-12" % r.max_prob_deviation,
               r.max_prob_deviation <= 1e-12)
    report.figures.append((
        "fidelity", "bars",
        {"labels": ["infidelity", "probability deviation"],
         "values": [r.max_infidelity, r.max_prob_deviation],
         "title": "teleportation deviations (order %d)" % args.n},
    ))


def cmd_dense_code(args, report):
    from .catalog import cyclic

    g = cyclic(args.n)
    message = None
    if args.message:
        a_text, k_text = args.message.split(",")
        message = (parse_element(g, a_text), int(k_text))
    r = dense_coding_simulation(g, message=message)
    report.add("messages: %d" % r.messages, r.messages == args.n ** 2)
    report.add("decode errors: %d" % r.decode_errors, r.decode_errors == 0)
    report.add("max off-diagonal overlap %.2e <= 1e-12" % r.max_offdiagonal,
               r.max_offdiagonal <= 1e-12)
    if message is not None:
        report.add("message %s decoded as %s" % (message, r.decoded_message),
                   r.decoded_message == message)


def cmd_dense_code_span(args, report):
    g = named_group(args.group)
    comm = communication_for(g)
    report.extend(check_dense_coding(comm))


def cmd_suite(args, report):
    groups = None
    if args.catalog:
        groups = [named_group(x) for x in args.catalog.split(",")]
    merged, lines = run_suite(seed=args.seed, groups=groups)
    for name, ok, secs in lines:
        print("criterion %-28s %s  (%.1fs)" % (name, "PASS" if ok else "FAIL", secs),
              file=sys.stderr)
    report.checks.extend(merged.checks)
    report.figures.extend(merged.figures)


def _global_flags(parser):
    parser.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    parser.add_argument("--seed", default=argparse.SUPPRESS,
                        help="seed for randomized paths (or env GPDACT_SEED)")
    parser.add_argument("--report-dir", default=argparse.SUPPRESS,
                        help="also write a delimited check table and figures here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gpdact",
        description="Exact checks for groupoid-boundary computation, "
                    "secure-communication cells, and their quantization.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    _global_flags(parser)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    p = sub.add_parser("validate", help="validate a groupoid description file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("check-axioms", help="the six boundary-deformation equalities")
    p.add_argument("file", help="group shorthand or description file")
    p.set_defaults(fn=cmd_check_axioms)

    p = sub.add_parser("check-complementary")
    p.add_argument("group")
    p.set_defaults(fn=cmd_check_complementary)

    p = sub.add_parser("build-lambda")
    p.add_argument("group")
    p.set_defaults(fn=cmd_build_lambda)

    p = sub.add_parser("check-communication")
    p.add_argument("group")
    p.set_defaults(fn=cmd_check_communication)

    p = sub.add_parser("encrypt")
    p.add_argument("group")
    p.add_argument("--plaintext", required=True)
    p.add_argument("--key", required=True)
    p.set_defaults(fn=cmd_encrypt)

    p = sub.add_parser("distribution")
    p.add_argument("group")
    p.add_argument("--plaintext", required=True)
    p.set_defaults(fn=cmd_distribution)

    p = sub.add_parser("decohere")
    p.add_argument("group")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(fn=cmd_decohere)

    p = sub.add_parser("quantize", help="linearize a span literal file")
    p.add_argument("span_file")
    p.set_defaults(fn=cmd_quantize)

    p = sub.add_parser("check-q")
    p.add_argument("group")
    p.add_argument("--pairs", type=int, default=100)
    p.set_defaults(fn=cmd_check_q)

    p = sub.add_parser("check-mub")
    p.add_argument("n", type=int)
    p.set_defaults(fn=cmd_check_mub)

    p = sub.add_parser("teleport")
    p.add_argument("n", type=int)
    p.add_argument("--state", default=None, help="comma-separated amplitudes")
    p.add_argument("--random", type=int, default=100)
    p.set_defaults(fn=cmd_teleport)

    p = sub.add_parser("dense-code")
    p.add_argument("n", type=int)
    p.add_argument("--message", default=None, help="element,character-index")
    p.set_defaults(fn=cmd_dense_code)

    p = sub.add_parser("dense-code-span")
    p.add_argument("group")
    p.set_defaults(fn=cmd_dense_code_span)

    p = sub.add_parser("suite", help="run the full acceptance battery")
    p.add_argument("--catalog", default=None,
                   help="comma-separated group shorthands replacing the full catalog")
    p.set_defaults(fn=cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on usage errors
    fmt = getattr(args, "format", "text")
    seed = getattr(args, "seed", None)
    report_dir = getattr(args, "report_dir", None)
    if seed is None:
        seed = os.environ.get("GPDACT_SEED")
    args.seed = seed
    inputs = {
        k: v for k, v in vars(args).items()
        if k not in ("fn", "format", "seed", "report_dir", "command") and v is not None
    }
    report = Report(command=args.command, inputs=inputs, seed=seed)
    try:
        args.fn(args, report)
    except GpdActError as exc:
        report.add("error: %s" % exc.__class__.__name__, False, exc)
    if fmt == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    if report_dir:
        for path in report.write_outputs(report_dir):
            print("wrote %s" % path, file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
