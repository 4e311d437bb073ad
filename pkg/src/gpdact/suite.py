"""The acceptance battery: one function per criterion, shared by CLI and tests."""

import time
from fractions import Fraction

import numpy as np

from .catalog import catalog_groupoids, catalog_groups, cyclic, symmetric_3
from .errors import NaturalityViolation
from .groupoids import TRIVIAL_OBJECT
from .profunctors import free_system, hom_profunctor, path
from .quantize import (
    action_source_profunctor,
    action_target_profunctor,
    check_mub,
    check_q_naturality,
    check_q_vertical,
    dense_coding_simulation,
    sigma_pi_check,
    teleportation_simulation,
)
from .report import Report
from .spans import (
    Span2,
    dagger,
    equals,
    identity_span,
    is_unitary,
    make_span,
    random_natural_span,
    vertical_compose,
)
from .structures import (
    build_delta,
    canonical_cells,
    check_dense_coding,
    check_topological_axioms,
    classify_controlled,
    curry_controlled,
    dense_coding_sides,
    preserves_logical_state,
    uncurry_controlled,
    verify_lambda_steps,
)
from .thermal import (
    ciphertext_distribution,
    communication_for,
    decoherence_rates,
    decrypt,
    encrypt,
)
from .util import seeded_rng

ST1 = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)

SMALL_RELATION_LIMIT = 4096


def _groups(groups):
    return list(groups) if groups else catalog_groups()


def _groupoids(groups):
    if not groups:
        return catalog_groupoids()
    from .groupoids import disjoint_union

    out = []
    for g in groups:
        out.append(g)
        out.append(disjoint_union(g, g))
    return out


def criterion_1_topological(report: Report, groups=None):
    t0 = time.monotonic()
    for g in _groupoids(groups):
        for name, ok, witness in check_topological_axioms(g):
            report.add("axioms[%s] %s" % (g.name, name), ok, witness)
    elapsed = time.monotonic() - t0
    report.add("axioms runtime %.2fs < 10s" % elapsed, elapsed < 10.0,
               timing_ms=elapsed * 1000)


def criterion_2_microstate_counts(report: Report, groups=None):
    from .structures import wedge

    for g in _groupoids(groups):
        n = len(wedge(g).elements(ST1))
        report.add(
            "microstates[%s] wedge count %d == %d" % (g.name, n, g.mor_count()),
            n == g.mor_count(),
        )
    from .groupoids import disjoint_union

    bits = disjoint_union(cyclic(2), cyclic(2))
    n = len(wedge(bits).elements(ST1))
    report.add("microstates[two bits] count %d == 4" % n, n == 4)


def criterion_3_controlled(report: Report, seed=None, per_group=100, groups=None):
    rng = seeded_rng(seed)
    for g in _groups(groups):
        cells = canonical_cells(g)
        bad = 0
        total = 0
        for size in (1, 2):
            csys = path(cells.right, free_system(size))
            for _ in range(per_group // 2):
                op = random_natural_span(csys, csys, rng)
                total += 1
                if not equals(uncurry_controlled(curry_controlled(op)), op)[0]:
                    bad += 1
        report.add(
            "controlled[%s] curry round-trip on %d seeded ops" % (g.name, total),
            bad == 0, None if bad == 0 else "%d failures" % bad,
        )
    for g in catalog_groups():
        if g.mor_count() > 6:
            continue
        for k in (1, 2):
            violations = 0
            total = 0
            for op in classify_controlled(g, k, mode="functions"):
                ok, _ = preserves_logical_state(g, op.span)
                total += 1
                if not ok:
                    violations += 1
            report.add(
                "controlled[%s] %d function ops at |S|=%d preserve the logical state"
                % (g.name, total, k),
                violations == 0,
                None if violations == 0 else "%d violations" % violations,
            )
        for k in (1, 2):
            count = 2 ** (g.mor_count() * k * k)
            if count > SMALL_RELATION_LIMIT:
                continue
            violations = sum(
                0 if preserves_logical_state(g, op.span)[0] else 1
                for op in classify_controlled(g, k, mode="relations")
            )
            report.add(
                "controlled[%s] relational ops at |S|=%d preserve the logical state"
                % (g.name, k),
                violations == 0,
            )


def criterion_4_complementary(report: Report, groups=None):
    for g in _groups(groups):
        comp = build_delta(g)
        ok, w = is_unitary(comp.delta)
        report.add("complementary[%s] bijection unitary" % g.name, ok, w)
        ok, w = is_unitary(comp.pt_left)
        report.add("complementary[%s] partial transpose unitary" % g.name, ok, w)
        chase = vertical_compose(comp.pt_left, dagger(comp.pt_left))
        ok, w = equals(chase, identity_span(comp.pt_left.src))
        report.add("complementary[%s] element chase is the identity" % g.name, ok, w)
        mixed = comp.pt_left.src
        fixed = all(
            [(e, 1)] == [
                (t, v) for (st2, s2, t), v in chase.entries.items()
                if st2 == st and s2 == e
            ]
            for st in mixed.stage_keys()
            for e in mixed.elements(st)
        )
        report.add("complementary[%s] chase fixes every pair" % g.name, fixed)


def criterion_5_communication(report: Report, groups=None):
    for g in _groups(groups):
        comm = communication_for(g)
        for name, ok, w in verify_lambda_steps(comm):
            report.add("communication[%s] %s" % (g.name, name), ok, w)


def criterion_6_encryption(report: Report, groups=None):
    for g in _groups(groups):
        comm = communication_for(g)
        bad = []
        for p in g.morphisms:
            for k in g.morphisms:
                t = encrypt(g, p, k, comm=comm)
                if decrypt(g, t.ciphertext, k) != p or t.heat != k:
                    bad.append((p, k))
        report.add(
            "encryption[%s] closed form, inversion and heat on all %d pairs"
            % (g.name, g.mor_count() ** 2),
            not bad, bad or None,
        )
        rows = [ciphertext_distribution(g, p, comm=comm) for p in g.morphisms]
        flat = all(set(r.values()) == {1} and len(r) == g.mor_count() for r in rows)
        same = all(r == rows[0] for r in rows)
        report.add("encryption[%s] ciphertext counts exactly uniform" % g.name,
                   flat and same)


def criterion_7_dense_coding(report: Report, groups=None):
    for g in _groups(groups):
        comm = communication_for(g)
        for name, ok, w in check_dense_coding(comm):
            report.add("dense[%s] %s" % (g.name, name), ok, w)
    for n in (2, 3, 4):
        r = dense_coding_simulation(cyclic(n))
        report.add(
            "dense[Z%d] all %d vector messages decode exactly" % (n, r.messages),
            r.ok, None if r.ok else r,
        )


def criterion_8_quantization(report: Report, seed=None, pairs=100):
    rng = seeded_rng(seed)
    for g in (cyclic(2), cyclic(3), cyclic(4)):
        h = hom_profunctor(g)
        bad = 0
        for _ in range(pairs):
            a = random_natural_span(h, h, rng)
            b = random_natural_span(h, h, rng)
            if not check_q_vertical(a, b)[0]:
                bad += 1
        report.add(
            "quantize[%s] vertical preservation on %d seeded pairs" % (g.name, pairs),
            bad == 0,
        )
    z3 = cyclic(3)
    cells = canonical_cells(z3)
    ok, w = check_q_vertical(cells.mu_dagger, cells.mu)
    report.add("quantize[Z3] split-then-glue matches the matrix product", ok, w)
    for g in (cyclic(2), cyclic(3)):
        comp = build_delta(g)
        ok, w = check_q_naturality(comp.delta)
        report.add("quantize[%s] bijection span equivariant" % g.name, ok, w)
    # stabilizer-weighted inverse pair, orders 2 and 3 inside one group
    s3 = symmetric_3()
    pts = ["p0", "p1", "p2"]
    perm = {"e": (0, 1, 2), "(12)": (1, 0, 2), "(13)": (2, 1, 0),
            "(23)": (0, 2, 1), "(123)": (1, 2, 0), "(132)": (2, 0, 1)}

    def act_pt(p, m):
        return "p%d" % perm[m][int(p[1])]

    odd = {"(12)", "(13)", "(23)"}

    def act_sign(m, p):
        return ("-" if p == "+" else "+") if m in odd else p

    t_pts = action_target_profunctor(s3, pts, act_pt)
    s_sign = action_source_profunctor(s3, ["+", "-"], act_sign)
    for name, ok, w in sigma_pi_check(s_sign, t_pts):
        report.add("quantize[S3 points] %s" % name, ok, w)
    t_sign = action_target_profunctor(s3, ["+", "-"], lambda p, m: act_sign(m, p))
    s_pts = action_source_profunctor(
        s3, pts, lambda m, p: act_pt(p, s3.inverse(m))
    )
    for name, ok, w in sigma_pi_check(s_pts, t_sign):
        report.add("quantize[S3 signs] %s" % name, ok, w)


def criterion_9_mub_teleport(report: Report, seed=None):
    from .catalog import klein_four

    for n in range(2, 9):
        dev, _ = check_mub(cyclic(n))
        report.add("mub[Z%d] deviation %.2e <= 1e-12" % (n, dev), dev <= 1e-12)
    dev, _ = check_mub(klein_four())
    report.add("mub[Z2xZ2] deviation %.2e <= 1e-12" % dev, dev <= 1e-12)
    for n in (2, 3, 4):
        r = teleportation_simulation(cyclic(n), seed=seed, n_random=100)
        report.add(
            "teleport[Z%d] 100 seeded states, %d branches, infidelity %.2e"
            % (n, r.branches, r.max_infidelity),
            r.max_infidelity <= 1e-12,
        )
        report.add(
            "teleport[Z%d] branch probabilities within 1e-12 of 1/%d" % (n, n * n),
            r.max_prob_deviation <= 1e-12,
        )
    report.add("teleport[Z2] measurement basis is the textbook pair basis",
               _bell_basis_matches())


def _bell_basis_matches():
    from .quantize import character_table

    z2 = cyclic(2)
    ct = character_table(z2)
    bell = {
        (0, 0): np.array([1, 0, 0, 1]) / np.sqrt(2),
        (0, 1): np.array([1, 0, 0, -1]) / np.sqrt(2),
        (1, 0): np.array([0, 1, 1, 0]) / np.sqrt(2),
        (1, 1): np.array([0, -1, 1, 0]) / np.sqrt(2),
    }
    for a in ct.elements:
        for k in range(2):
            v = np.zeros(4, dtype=complex)
            for g in ct.elements:
                v[z2.compose(g, a) * 2 + g] = ct.table[k][g] / np.sqrt(2)
            if abs(abs(np.vdot(bell[(a, k)], v)) - 1.0) > 1e-12:
                return False
    return True


def criterion_10_decoherence(report: Report, groups=None):
    for g in _groups(groups):
        if g.mor_count() > 8:
            continue
        empty_rate, uniform_rate = decoherence_rates(g)
        report.add("decoherence[%s] empty environment rate is 1" % g.name,
                   empty_rate == 1)
        report.add(
            "decoherence[%s] uniform environment rate is exactly 1/%d"
            % (g.name, g.mor_count()),
            uniform_rate == Fraction(1, g.mor_count()),
        )


def _detect_span_corruption(span: Span2, equation):
    """Drop one support entry; report how the corruption is caught.

    Either validation rejects the table as unnatural, or the equation the
    span participates in fails with a concrete witness.
    """
    entries = dict(span.entries)
    del entries[min(entries, key=repr)]
    try:
        bad = make_span(span.src, span.tgt, entries, validate=True)
    except NaturalityViolation as exc:
        return True, "rejected as unnatural: %s" % exc
    ok, witness = equation(bad)
    if ok:
        return False, "silent pass"
    return True, "equation failed with witness %r" % (witness,)


def criterion_11_mutation(report: Report):
    z3 = cyclic(3)
    cells = canonical_cells(z3)

    def glue_equation(bad_mu):
        from .spans import horizontal_compose, unit_intro, vert

        zig = vert(
            unit_intro(cells.right, 1),
            horizontal_compose(identity_span(cells.right), cells.epsilon_dagger),
            horizontal_compose(bad_mu, identity_span(cells.right)),
            dagger(unit_intro(cells.right, 0)),
        )
        return equals(zig, identity_span(cells.right))

    ok, how = _detect_span_corruption(cells.mu, glue_equation)
    report.add("mutation[axioms] corrupted gluing detected", ok, how)

    comp = build_delta(z3)
    ok, how = _detect_span_corruption(comp.delta, lambda bad: is_unitary(bad))
    report.add("mutation[complementary] corrupted bijection detected", ok, how)

    comm = communication_for(z3)
    ok, how = _detect_span_corruption(comm.span, lambda bad: is_unitary(bad))
    report.add("mutation[communication] corrupted cell detected", ok, how)

    lhs, rhs = dense_coding_sides(comm)
    ok, how = _detect_span_corruption(lhs, lambda bad: equals(bad, rhs))
    report.add("mutation[dense coding] corrupted side detected", ok, how)


CRITERIA = (
    ("1 topological axioms", criterion_1_topological),
    ("2 microstate counts", criterion_2_microstate_counts),
    ("3 controlled operations", criterion_3_controlled),
    ("4 complementary structure", criterion_4_complementary),
    ("5 communication structure", criterion_5_communication),
    ("6 encryption", criterion_6_encryption),
    ("7 dense coding", criterion_7_dense_coding),
    ("8 quantization", criterion_8_quantization),
    ("9 mub and teleportation", criterion_9_mub_teleport),
    ("10 decoherence", criterion_10_decoherence),
    ("11 mutation sensitivity", criterion_11_mutation),
)


def run_criterion(index, seed=None, groups=None):
    """Run one criterion (1-based) into a fresh report."""
    name, fn = CRITERIA[index - 1]
    report = Report(command="criterion-%d" % index, inputs={"criterion": name},
                    seed=seed)
    kwargs = {}
    if fn in (criterion_3_controlled, criterion_8_quantization,
              criterion_9_mub_teleport):
        kwargs["seed"] = seed
    if fn not in (criterion_8_quantization, criterion_9_mub_teleport,
                  criterion_11_mutation):
        kwargs["groups"] = groups
    fn(report, **kwargs)
    return name, report


def run_suite(seed=None, groups=None):
    """The full battery; returns the merged report plus per-criterion lines."""
    merged = Report(command="suite", inputs={}, seed=seed)
    lines = []
    for i, (name, _) in enumerate(CRITERIA, start=1):
        t0 = time.monotonic()
        _, rep = run_criterion(i, seed=seed, groups=groups)
        ok = rep.status
        lines.append((name, ok, time.monotonic() - t0))
        for c in rep.checks:
            merged.checks.append(c)
        merged.add("criterion %s" % name, ok)
    merged.figures.append(
        (
            "criteria",
            "bars",
            {
                "labels": [name for name, _, _ in lines],
                "values": [1 if ok else 0 for _, ok, _ in lines],
                "title": "acceptance criteria (1 = pass)",
                "ylabel": "pass",
            },
        )
    )
    return merged, lines
