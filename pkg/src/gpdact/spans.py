"""Natural-number-valued spans between parallel profunctors.

A span relates elements of two profunctors stage by stage with natural
multiplicities.  Vertical composition multiplies matrices over the middle
profunctor; horizontal composition sums over sliding morphisms of the middle
groupoid and is computed on canonical representatives, with an explicit
independence check so an ill-defined entry fails loudly instead of silently.
"""

from .errors import (
    NaturalityViolation,
    StageMismatch,
    TypeMismatch,
    WellDefinednessFailure,
)
from .profunctors import PathProfunctor, Profunctor, as_chain, path
from .util import sort_key


class Span2:
    """A span src => tgt: finitely supported entries (stage, s, t) -> nat."""

    __slots__ = ("src", "tgt", "entries")

    def __init__(self, src: Profunctor, tgt: Profunctor, entries):
        self.src = src
        self.tgt = tgt
        self.entries = {k: v for k, v in entries.items() if v}

    def entry(self, stage, s, t):
        return self.entries.get((stage, s, t), 0)

    def support(self):
        return self.entries.items()

    def __repr__(self):
        return "Span2(%d entries)" % len(self.entries)


def make_span(src, tgt, entries, validate=True):
    """Validated span; raises on stage errors or a naturality violation."""
    if src.source != tgt.source or src.target != tgt.target:
        raise TypeMismatch("profunctors are not parallel")
    norm = {}
    for key, v in entries.items():
        if not v:
            continue
        stage, s, t = key
        if s not in src.elements(stage):
            raise StageMismatch("no source element %r at stage %r" % (s, stage))
        if t not in tgt.elements(stage):
            raise StageMismatch("no target element %r at stage %r" % (t, stage))
        if int(v) < 0:
            raise StageMismatch("entries must be natural numbers")
        norm[(stage, s, t)] = int(v)
    out = Span2(src, tgt, norm)
    if validate:
        check_naturality(out)
    return out


def check_naturality(span: Span2):
    """Entries must be constant on orbits of the simultaneous two-sided action."""
    src, tgt = span.src, span.tgt
    tg, sg = src.target, src.source
    for (stage, s, t), v in span.entries.items():
        tobj, sobj = stage
        for h in tg.morphisms:
            if tg.tgt[h] != tobj:
                continue
            for g in sg.morphisms:
                if sg.src[g] != sobj:
                    continue
                s2 = src.right_act(src.left_act(h, s), g)
                t2 = tgt.right_act(tgt.left_act(h, t), g)
                st2 = (tg.src[h], sg.tgt[g])
                if span.entry(st2, s2, t2) != v:
                    raise NaturalityViolation(
                        "acting by (%r, %r) sends (%r, %r) off support" % (h, g, s, t)
                    )
    return True


def identity_span(p: Profunctor):
    entries = {}
    for st in p.stage_keys():
        for e in p.elements(st):
            entries[(st, e, e)] = 1
    return Span2(p, p, entries)


def zero_span(p: Profunctor, q: Profunctor):
    return Span2(p, q, {})


def dagger(span: Span2):
    """The converse span, interpreted as time reversal."""
    return Span2(
        span.tgt, span.src,
        {(st, t, s): v for (st, s, t), v in span.entries.items()},
    )


def vertical_compose(a: Span2, b: Span2):
    """Span composition over the shared middle profunctor: sum of products."""
    if a.tgt != b.src:
        raise TypeMismatch("vertical composition needs matching middle profunctor")
    by_mid = {}
    for (st, t, u), v in b.entries.items():
        by_mid.setdefault((st, t), []).append((u, v))
    out = {}
    for (st, s, t), v in a.entries.items():
        for u, w in by_mid.get((st, t), ()):
            key = (st, s, u)
            out[key] = out.get(key, 0) + v * w
    return Span2(a.src, b.tgt, out)


def vert(*spans):
    acc = spans[0]
    for s in spans[1:]:
        acc = vertical_compose(acc, s)
    return acc


def _split_composite(p: Profunctor, k, elem):
    """View an element of a flat composite as (left class, right class, junction)."""
    if isinstance(p, PathProfunctor):
        chain = elem
    else:
        chain = (elem,)
    left_chain, right_chain = chain[:k], chain[k:]
    junction = p.legs[k].stage_of(chain[k])[1]
    return left_chain, right_chain, junction


def _class_of(p: Profunctor, chain):
    if isinstance(p, PathProfunctor):
        return p.canonical(chain)
    assert len(chain) == 1
    return chain[0]


def _split_slides(p: Profunctor, chain, k, mid):
    """Raw variants of a chain sliding a middle morphism across the split at k.

    Slides at junctions inside either half land in the same half-classes, so
    they cannot change a well-definedness computation; only slides across the
    split produce genuinely different factor pairs.
    """
    legs = p.legs
    junction = legs[k].stage_of(chain[k])[1]
    out = []
    for h in mid.morphisms:
        if mid.tgt[h] != junction:
            continue
        left = legs[k - 1].left_act(h, chain[k - 1])
        right = legs[k].right_act(chain[k], mid.inverse(h))
        out.append(chain[:k - 1] + (left, right) + chain[k + 1:])
    return out


def horizontal_compose(a: Span2, b: Span2, check_reps=True):
    """Side-by-side composition over the shared middle groupoid.

    The entry at a pair of composite classes is a sum over middle morphisms
    sliding between the two split points.  Support is discovered from the
    factor supports, then each discovered entry is evaluated on canonical
    representatives; with check_reps the value is re-derived from every
    alternate representative of either side.
    """
    sa, ta, sb, tb = a.src, a.tgt, b.src, b.tgt
    if sa.target != sb.source or ta.target != tb.source:
        raise TypeMismatch("horizontal composition needs a shared middle groupoid")
    mid = sa.target
    src = path(sa, sb)
    tgt = path(ta, tb)
    ks, kt = len(sa.legs), len(ta.legs)

    # discover candidate entry keys from the factor supports: every nonzero
    # sum has a term pairing an a-entry at middle M with a b-entry at middle N
    # through some f: M -> N
    b_by_mid = {}
    for key_b in b.entries:
        b_by_mid.setdefault(key_b[0][1], []).append(key_b)
    candidates = set()
    for ((m_a, gobj), s1, t1) in a.entries:
        for f in mid.morphisms:
            if mid.src[f] != m_a:
                continue
            n = mid.tgt[f]
            fi = mid.inverse(f)
            s = sa.left_act(fi, s1)
            for ((jobj, _), u1, v1) in b_by_mid.get(n, ()):
                v = tb.right_act(v1, fi)
                c1 = _class_of(src, as_chain(sa, s) + as_chain(sb, u1))
                c2 = _class_of(tgt, as_chain(ta, t1) + as_chain(tb, v))
                candidates.add(((jobj, gobj), c1, c2))

    def value_at(c1_chain, c2_chain):
        (s_chain, u_chain, h1) = _split_composite(src, ks, c1_chain)
        (t_chain, v_chain, h2) = _split_composite(tgt, kt, c2_chain)
        s = _class_of(sa, s_chain)
        u = _class_of(sb, u_chain)
        t = _class_of(ta, t_chain)
        v = _class_of(tb, v_chain)
        gobj = sa.stage_of(s)[1]
        jobj = tb.stage_of(v)[0]
        total = 0
        for f in mid.hom(h2, h1):
            av = a.entry((h2, gobj), sa.left_act(f, s), t)
            if not av:
                continue
            bv = b.entry((jobj, h1), u, tb.right_act(v, f))
            total += av * bv
        return total

    entries = {}
    for (stage, c1, c2) in candidates:
        ch1, ch2 = as_chain(src, c1), as_chain(tgt, c2)
        val = value_at(ch1, ch2)
        if check_reps:
            for alt in _split_slides(src, ch1, ks, mid):
                if value_at(alt, ch2) != val:
                    raise WellDefinednessFailure(
                        "entry at (%r, %r) depends on the source representative" % (c1, c2)
                    )
            for alt in _split_slides(tgt, ch2, kt, mid):
                if value_at(ch1, alt) != val:
                    raise WellDefinednessFailure(
                        "entry at (%r, %r) depends on the target representative" % (c1, c2)
                    )
        if val:
            entries[(stage, c1, c2)] = val
    return Span2(src, tgt, entries)


def horizontal(*spans, check_reps=True):
    acc = spans[0]
    for s in spans[1:]:
        acc = horizontal_compose(acc, s, check_reps=check_reps)
    return acc


def equals(a: Span2, b: Span2):
    """Entrywise equality on canonical representatives, with a first difference.

    Returns (bool, witness); the witness is (stage, s, t, value_a, value_b).
    """
    if a.src != b.src or a.tgt != b.tgt:
        raise TypeMismatch("spans are not parallel")
    keys = sorted(set(a.entries) | set(b.entries), key=sort_key)
    for key in keys:
        va, vb = a.entries.get(key, 0), b.entries.get(key, 0)
        if va != vb:
            stage, s, t = key
            return False, (stage, s, t, va, vb)
    return True, None


def is_unitary(span: Span2):
    """Both round trips must be identities; returns (bool, witness)."""
    ok, witness = equals(vertical_compose(span, dagger(span)), identity_span(span.src))
    if not ok:
        return False, ("src-roundtrip",) + witness
    ok, witness = equals(vertical_compose(dagger(span), span), identity_span(span.tgt))
    if not ok:
        return False, ("tgt-roundtrip",) + witness
    return True, None


def apply_span(span: Span2, stage, elem):
    """Image of one element: sorted list of (target element, multiplicity)."""
    out = [
        (t, v) for (st, s, t), v in span.entries.items()
        if st == stage and s == elem
    ]
    out.sort(key=lambda p: sort_key(p[0]))
    return out


def unit_intro(p: Profunctor, pos: int):
    """The unitor inserting an identity leg at position pos (0..len(legs))."""
    legs = p.legs
    if not 0 <= pos <= len(legs):
        raise TypeMismatch("bad unit position %d" % pos)
    from .profunctors import hom_profunctor

    if pos == 0:
        unit = hom_profunctor(legs[0].source)
    else:
        unit = hom_profunctor(legs[pos - 1].target)
    target = path(*(legs[:pos] + (unit,) + legs[pos:]))
    entries = {}
    for st in p.stage_keys():
        tobj, sobj = st
        for e in p.elements(st):
            chain = as_chain(p, e)
            if pos == 0:
                at = sobj
            else:
                at = legs[pos - 1].stage_of(chain[pos - 1])[0]
            ident = unit.groupoid.identity[at]
            new = chain[:pos] + (ident,) + chain[pos:]
            entries[(st, e, target.canonical(new))] = 1
    span = Span2(p, target, entries)
    ok, _ = is_unitary(span)
    assert ok, "unitor failed to be a bijection"
    return span


def unit_elim(p: Profunctor, pos: int):
    """Inverse of unit_intro for the path that has the identity leg at pos."""
    legs = p.legs
    shorter = path(*(legs[:pos] + legs[pos + 1:]))
    return dagger(unit_intro(shorter, pos))


def whisker(span: Span2, left: Profunctor = None, right: Profunctor = None,
            check_reps=True):
    """Extend a span by identity spans on either side."""
    out = span
    if left is not None:
        out = horizontal_compose(identity_span(left), out, check_reps=check_reps)
    if right is not None:
        out = horizontal_compose(out, identity_span(right), check_reps=check_reps)
    return out


def pair_orbits(p: Profunctor, q: Profunctor):
    """Orbits of element pairs under the simultaneous two-sided action.

    Used to build random natural spans: constant values on these orbits are
    exactly the natural ones.
    """
    if p.source != q.source or p.target != q.target:
        raise TypeMismatch("profunctors are not parallel")
    tg, sg = p.target, p.source
    orbits = []
    seen = set()
    for st in p.stage_keys():
        tobj, sobj = st
        for s in p.elements(st):
            for t in q.elements(st):
                start = (st, s, t)
                if start in seen:
                    continue
                orbit = {start}
                frontier = [start]
                while frontier:
                    (st1, s1, t1) = frontier.pop()
                    for h in tg.morphisms:
                        if tg.tgt[h] != st1[0]:
                            continue
                        for g in sg.morphisms:
                            if sg.src[g] != st1[1]:
                                continue
                            nxt = (
                                (tg.src[h], sg.tgt[g]),
                                p.right_act(p.left_act(h, s1), g),
                                q.right_act(q.left_act(h, t1), g),
                            )
                            if nxt not in orbit:
                                orbit.add(nxt)
                                frontier.append(nxt)
                seen |= orbit
                orbits.append(tuple(sorted(orbit, key=sort_key)))
    return orbits


def random_natural_span(p: Profunctor, q: Profunctor, rng, max_mult=3, density=0.6):
    """Seeded random span p => q, natural by construction."""
    entries = {}
    for orbit in pair_orbits(p, q):
        if rng.random() < density:
            v = rng.randint(1, max_mult)
            for key in orbit:
                entries[key] = v
    return Span2(p, q, entries)
