"""Boundary cells and the protocol structures built from them.

The four basic cells glue, split, create and destroy boundary pairs with
Kronecker entries.  On top of them sit: the topological (snake) equalities,
the curry/uncurry bijection for controlled operations, the bijection span
between a group and its discrete shadow, partial transposes by wire bending,
the three-node communication cell, and the dense-coding equation.
"""

from dataclasses import dataclass, field

from .errors import (
    CapExceeded,
    NotAGroup,
    NotSkeletal,
    TypeMismatch,
    VerificationFailure,
)
from .groupoids import TRIVIAL, TRIVIAL_OBJECT, Groupoid, discrete_groupoid, product
from .profunctors import (
    PathProfunctor,
    Profunctor,
    boundary_left,
    boundary_right,
    free_system,
    hom_profunctor,
    path,
)
from .spans import (
    Span2,
    dagger,
    equals,
    horizontal,
    horizontal_compose,
    identity_span,
    is_unitary,
    unit_elim,
    unit_intro,
    vert,
    vertical_compose,
    whisker,
)

# -- canonical cells ---------------------------------------------------------

@dataclass(frozen=True)
class CanonicalCells:
    groupoid: Groupoid
    left: Profunctor          # 1 -> G
    right: Profunctor         # G -> 1
    pair_out: PathProfunctor  # right then left, an endo-1-cell of G
    pair_in: PathProfunctor   # left then right, an endo-1-cell of 1
    mu: Span2                 # gluing:   pair_out => Hom(G)
    mu_dagger: Span2          # splitting
    epsilon: Span2            # destruction: pair_in => Hom(1)
    epsilon_dagger: Span2     # creation


def canonical_cells(g: Groupoid) -> CanonicalCells:
    """The gluing/splitting/destruction/creation cells of a skeletal groupoid."""
    if not g.is_skeletal:
        raise NotSkeletal("canonical cells need a skeletal groupoid")
    left = boundary_left(g)
    right = boundary_right(g)
    pair_out = path(right, left)
    pair_in = path(left, right)
    hom = hom_profunctor(g)
    unit = hom_profunctor(TRIVIAL)

    glue = {}
    for st in pair_out.stage_keys():
        for chain in pair_out.elements(st):
            x, y = chain
            if g.src[x] != g.src[y]:
                continue  # logical states differ: the gluing fails
            glue[(st, chain, g.compose(y, x))] = 1
    mu = Span2(pair_out, hom, glue)

    destroy = {}
    st1 = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)
    for chain in pair_in.elements(st1):
        l, r = chain
        m = g.compose(r, l)
        if m == g.identity[g.src[m]]:
            destroy[(st1, chain, TRIVIAL_OBJECT)] = 1
    epsilon = Span2(pair_in, unit, destroy)

    return CanonicalCells(
        groupoid=g, left=left, right=right, pair_out=pair_out, pair_in=pair_in,
        mu=mu, mu_dagger=dagger(mu), epsilon=epsilon, epsilon_dagger=dagger(epsilon),
    )


def wedge(g: Groupoid) -> PathProfunctor:
    """The closed pair left-then-right: classes correspond to morphisms of g."""
    return path(boundary_left(g), boundary_right(g))


def wedge_class(g: Groupoid, wedge_prof: PathProfunctor, m):
    """The wedge element carrying morphism m."""
    return wedge_prof.canonical((g.identity[g.src[m]], m))


def wedge_morphism(g: Groupoid, chain):
    """The morphism carried by a wedge element."""
    l, r = chain
    return g.compose(r, l)


# -- diagram terms ------------------------------------------------------------

def leaf(name):
    return ("leaf", name)


def vnode(*terms):
    acc = terms[0]
    for t in terms[1:]:
        acc = ("v", acc, t)
    return acc


def hnode(*terms):
    acc = terms[0]
    for t in terms[1:]:
        acc = ("h", acc, t)
    return acc


def dag(term):
    return ("dag", term)


def evaluate_term(term, bindings, _path="") -> Span2:
    """Fold a diagram term into a span; type errors carry the tree path."""
    kind = term[0]
    if kind == "leaf":
        name = term[1]
        if name not in bindings:
            raise TypeMismatch("unbound leaf %r at %s" % (name, _path or "root"))
        return bindings[name]
    if kind == "dag":
        return dagger(evaluate_term(term[1], bindings, _path + "0."))
    if kind in ("v", "h"):
        a = evaluate_term(term[1], bindings, _path + "0.")
        b = evaluate_term(term[2], bindings, _path + "1.")
        try:
            if kind == "v":
                return vertical_compose(a, b)
            return horizontal_compose(a, b)
        except TypeMismatch as exc:
            raise TypeMismatch("at node %s: %s" % (_path or "root", exc)) from exc
    raise TypeMismatch("unknown node kind %r at %s" % (kind, _path or "root"))


def parse_term(text):
    """Parse the textual term format: (v a b), (h a b), (dag a), names."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()

    def rd(pos):
        if pos >= len(tokens):
            raise TypeMismatch("unexpected end of term")
        tok = tokens[pos]
        if tok == "(":
            kind = tokens[pos + 1]
            if kind not in ("v", "h", "dag"):
                raise TypeMismatch("unknown node kind %r" % kind)
            args = []
            pos += 2
            while pos < len(tokens) and tokens[pos] != ")":
                node, pos = rd(pos)
                args.append(node)
            if pos >= len(tokens):
                raise TypeMismatch("unbalanced parenthesis")
            if kind == "dag":
                if len(args) != 1:
                    raise TypeMismatch("dag takes one argument")
                return dag(args[0]), pos + 1
            if len(args) < 2:
                raise TypeMismatch("%s takes at least two arguments" % kind)
            return (vnode(*args) if kind == "v" else hnode(*args)), pos + 1
        if tok == ")":
            raise TypeMismatch("unbalanced parenthesis")
        return leaf(tok), pos + 1

    node, pos = rd(0)
    if pos != len(tokens):
        raise TypeMismatch("trailing tokens in term")
    return node


# -- topological axioms -------------------------------------------------------

def snake_spans(g: Groupoid):
    """The four zigzag composites on the two boundaries, plus their identities.

    Returns a dict name -> (computed span, identity span) for the right and
    left boundary, each bent one way and the other.
    """
    cells = canonical_cells(g)
    br_, bl_ = cells.right, cells.left
    bindings = {
        "glue": cells.mu,
        "split": cells.mu_dagger,
        "destroy": cells.epsilon,
        "create": cells.epsilon_dagger,
        "id_r": identity_span(br_),
        "id_l": identity_span(bl_),
        "intro_r0": unit_intro(br_, 0),
        "intro_r1": unit_intro(br_, 1),
        "intro_l0": unit_intro(bl_, 0),
        "intro_l1": unit_intro(bl_, 1),
    }
    terms = {
        "right-split-destroy": vnode(
            leaf("intro_r0"), hnode(leaf("split"), leaf("id_r")),
            hnode(leaf("id_r"), leaf("destroy")), dag(leaf("intro_r1")),
        ),
        "right-create-glue": vnode(
            leaf("intro_r1"), hnode(leaf("id_r"), leaf("create")),
            hnode(leaf("glue"), leaf("id_r")), dag(leaf("intro_r0")),
        ),
        "left-split-destroy": vnode(
            leaf("intro_l1"), hnode(leaf("id_l"), leaf("split")),
            hnode(leaf("destroy"), leaf("id_l")), dag(leaf("intro_l0")),
        ),
        "left-create-glue": vnode(
            leaf("intro_l0"), hnode(leaf("create"), leaf("id_l")),
            hnode(leaf("id_l"), leaf("glue")), dag(leaf("intro_l1")),
        ),
    }
    out = {}
    for name, term in terms.items():
        ident = bindings["id_r"] if name.startswith("right") else bindings["id_l"]
        out[name] = (evaluate_term(term, bindings), ident)
    return out


def check_topological_axioms(g: Groupoid):
    """All six zigzag equalities; returns a list of (name, ok, witness)."""
    spans = snake_spans(g)
    results = []
    for name, (got, ident) in spans.items():
        ok, witness = equals(got, ident)
        results.append(("%s == identity" % name, ok, witness))
    for side in ("right", "left"):
        a = spans["%s-split-destroy" % side][0]
        b = spans["%s-create-glue" % side][0]
        ok, witness = equals(a, b)
        results.append(("%s zigzags agree" % side, ok, witness))
    return results


# -- controlled operations ----------------------------------------------------

def curry_controlled(span: Span2) -> Span2:
    """Bend a boundary+free-system endo-span into its classifying form."""
    src = span.src
    legs = src.legs
    if span.tgt != src or len(legs) != 2:
        raise TypeMismatch("expected an endo-span on (right boundary ; system)")
    br_ = legs[0]
    sys = legs[1]
    g = br_.groupoid
    cells = canonical_cells(g)
    return vert(
        unit_intro(sys, 0),
        horizontal_compose(cells.epsilon_dagger, identity_span(sys)),
        horizontal_compose(identity_span(cells.left), span),
    )


def uncurry_controlled(span: Span2) -> Span2:
    """Inverse of curry_controlled."""
    tgt = span.tgt
    legs = tgt.legs
    if len(legs) != 3:
        raise TypeMismatch("expected a span into (left ; right ; system)")
    bl_, br_, sys = legs
    g = br_.groupoid
    cells = canonical_cells(g)
    csys = path(br_, sys)
    return vert(
        horizontal_compose(identity_span(br_), span),
        horizontal_compose(cells.mu, identity_span(csys)),
        unit_elim(path(hom_profunctor(g), br_, sys), 0),
    )


@dataclass(frozen=True)
class ControlledOp:
    rules: dict           # object -> frozenset of (state, (morphism, state'))
    span: Span2
    tags: frozenset       # the behaviours this operation witnesses


def controlled_op_tags(g: Groupoid, rules):
    """Classify what a controlled operation demonstrates.

    Microstates can be multiplied and the free system rewritten, the rule may
    differ per logical state, but nothing here can read or change microstate
    or logical state beyond that; the classifying form makes those
    behaviours impossible to express.
    """
    tags = set()
    moves_micro = False
    moves_sys = False
    for a, pairs in rules.items():
        ident = g.identity[a]
        for (s, (m, s2)) in pairs:
            if m != ident:
                moves_micro = True
            if s2 != s:
                moves_sys = True
    if moves_micro:
        tags.add("multiplies-microstate")
    if moves_sys:
        tags.add("updates-free-system")
    if not moves_micro and not moves_sys and all(
        all(s == s2 and m == g.identity[a] for (s, (m, s2)) in pairs)
        for a, pairs in rules.items()
    ):
        tags.add("identity")
    values = {a: frozenset((s, (repr(m), s2)) for (s, (m, s2)) in pairs)
              for a, pairs in rules.items()}
    if len({v for v in values.values()}) > 1:
        tags.add("logical-state-controlled")
    tags.add("microstate-blind")
    return frozenset(tags)


def controlled_op_from_rules(g: Groupoid, sys: Profunctor, rules) -> Span2:
    """Build the endo-span on (right boundary ; system) from per-object rules.

    rules maps each object to a set of (state, (morphism, state')) pairs: on
    logical state A, free-system state s, the boundary microstate is
    multiplied by the rule morphism while the system moves to s'.
    """
    cells = canonical_cells(g)
    bl_, br_ = cells.left, cells.right
    classifier_tgt = path(bl_, br_, sys)
    st_sys = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)
    entries = {}
    for a, pairs in rules.items():
        for (s, (m, s2)) in pairs:
            chain = (g.identity[a], m, s2)
            entries[(st_sys, s, classifier_tgt.canonical(chain))] = 1
    classifier = Span2(sys, classifier_tgt, entries)
    return uncurry_controlled(classifier)


def classify_controlled(g: Groupoid, sys_size: int, mode="functions", cap=10 ** 6):
    """Enumerate controlled operations on (right boundary ; size-k system).

    mode "functions" yields one operation per function S -> End(A) x S per
    object; mode "relations" yields one per relation, with a hard candidate
    cap.  Operations stream as (rules, span) pairs.
    """
    if not g.is_skeletal:
        raise NotSkeletal("controlled operations need a skeletal groupoid")
    sys = free_system(sys_size)
    states = sys.elements((TRIVIAL_OBJECT, TRIVIAL_OBJECT))
    per_object = []
    for a in g.objects:
        targets = [(m, s2) for m in g.endos(a) for s2 in states]
        if mode == "functions":
            choices = _function_tables(states, targets)
        elif mode == "relations":
            choices = _relation_tables(states, targets)
            count = 2 ** (len(states) * len(targets))
            if count > cap:
                raise CapExceeded(
                    "%d relational candidates exceed the cap %d" % (count, cap)
                )
        else:
            raise TypeMismatch("unknown enumeration mode %r" % mode)
        per_object.append((a, list(choices)))
    total = 1
    for _, choices in per_object:
        total *= len(choices)
    if total > cap:
        raise CapExceeded("%d candidates exceed the cap %d" % (total, cap))

    def walk(i, acc):
        if i == len(per_object):
            rules = dict(acc)
            yield ControlledOp(
                rules=rules,
                span=controlled_op_from_rules(g, sys, rules),
                tags=controlled_op_tags(g, rules),
            )
            return
        a, choices = per_object[i]
        for choice in choices:
            yield from walk(i + 1, acc + [(a, choice)])

    yield from walk(0, [])


def _function_tables(states, targets):
    if not states:
        yield frozenset()
        return
    import itertools

    for assignment in itertools.product(targets, repeat=len(states)):
        yield frozenset(zip(states, assignment))


def _relation_tables(states, targets):
    import itertools

    cells = [(s, t) for s in states for t in targets]
    for mask in itertools.product((0, 1), repeat=len(cells)):
        yield frozenset(c for c, keep in zip(cells, mask) if keep)


def preserves_logical_state(g: Groupoid, span: Span2):
    """Every output of a controlled operation stays on the input's object."""
    src = span.src
    br_ = src.legs[0]
    for ((stage, s, t), v) in span.support():
        if not v:
            continue
        in_obj = br_.stage_of(s[0])[1]
        out_obj = br_.stage_of(t[0])[1]
        if in_obj != out_obj or stage[1] != in_obj:
            return False, (stage, s, t)
    return True, None


# -- complementary structure ---------------------------------------------------

@dataclass(frozen=True)
class ComplementaryStructure:
    group_side: Groupoid
    discrete_side: Groupoid
    wedge_group: PathProfunctor
    wedge_discrete: PathProfunctor
    delta: Span2
    bijection: dict
    pt_left: Span2 = field(repr=False, default=None)


def build_delta(g: Groupoid) -> ComplementaryStructure:
    """Bijection span between a group's wedge and its discrete shadow's wedge."""
    if not g.is_group:
        raise NotAGroup("complementary structures start from a one-object group")
    shadow = discrete_groupoid(g.morphisms, name="|%s|" % (g.name or "G"))
    wg = wedge(g)
    wd = wedge(shadow)
    bijection = {m: m for m in g.morphisms}
    st = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)
    entries = {}
    for m in g.morphisms:
        entries[(st, wedge_class(g, wg, m), wedge_class(shadow, wd, bijection[m]))] = 1
    delta = Span2(wg, wd, entries)
    ok, witness = is_unitary(delta)
    if not ok:
        raise VerificationFailure("bijection span not unitary: %r" % (witness,))
    pt = partial_transpose(delta, side="left")
    ok, witness = is_unitary(pt)
    if not ok:
        raise VerificationFailure("partial transpose not unitary: %r" % (witness,))
    return ComplementaryStructure(
        group_side=g, discrete_side=shadow, wedge_group=wg, wedge_discrete=wd,
        delta=delta, bijection=bijection, pt_left=pt,
    )


def _is_wedge(p: Profunctor):
    legs = p.legs
    return (
        len(legs) == 2
        and type(legs[0]).__name__ == "LeftBoundary"
        and type(legs[1]).__name__ == "RightBoundary"
        and legs[0].groupoid == legs[1].groupoid
    )


def _is_mixed(p: Profunctor):
    legs = p.legs
    return (
        len(legs) == 2
        and type(legs[0]).__name__ == "RightBoundary"
        and type(legs[1]).__name__ == "LeftBoundary"
    )


def partial_transpose(span: Span2, side="left") -> Span2:
    """Bend one pair of legs with the canonical cells.

    Wedge-to-wedge spans bend down to an endo-span on (right boundary ;
    left boundary); those bend back up.  Applying the operation twice on the
    same side returns the original span.
    """
    if side == "right":
        if _is_wedge(span.src) and _is_wedge(span.tgt):
            return dagger(partial_transpose(span, side="left"))
        return partial_transpose(dagger(span), side="left")
    if side != "left":
        raise TypeMismatch("side must be 'left' or 'right'")
    if _is_wedge(span.src) and _is_wedge(span.tgt):
        return _bend_down(span)
    if _is_mixed(span.src) and span.src == span.tgt:
        return _bend_up(span)
    raise TypeMismatch("no bendable boundary pair on this span")


def _bend_down(span: Span2) -> Span2:
    g = span.src.legs[0].groupoid
    h = span.tgt.legs[0].groupoid
    cg = canonical_cells(g)
    ch = canonical_cells(h)
    mixed = path(cg.right, boundary_left(h))
    return vert(
        unit_intro(mixed, 0),
        horizontal_compose(cg.mu_dagger, identity_span(mixed)),
        horizontal(identity_span(cg.right), span, identity_span(ch.left)),
        horizontal_compose(identity_span(mixed), ch.mu),
        unit_elim(path(cg.right, ch.left, hom_profunctor(h)), 2),
    )


def _bend_up(span: Span2) -> Span2:
    g = span.src.legs[0].groupoid
    h = span.src.legs[1].groupoid
    cg = canonical_cells(g)
    ch = canonical_cells(h)
    wg = wedge(g)
    wh = wedge(h)
    return vert(
        unit_intro(wg, 2),
        horizontal_compose(identity_span(wg), ch.epsilon_dagger),
        horizontal(identity_span(cg.left), span, identity_span(ch.right)),
        horizontal_compose(cg.epsilon, identity_span(wh)),
        unit_elim(path(hom_profunctor(TRIVIAL), ch.left, ch.right), 0),
    )


# -- communication structure ----------------------------------------------------

@dataclass(frozen=True)
class CommunicationStructure:
    complementary: ComplementaryStructure
    message_groupoid: Groupoid        # product of discrete shadow and group
    source: PathProfunctor            # group wedge then shadow wedge
    middle: PathProfunctor            # shadow wedge then group wedge
    target: PathProfunctor            # wedge of the message groupoid
    pre: Span2                        # bent bijection acting on the inner legs
    swap: Span2                       # bijection pair exchanging the wedges
    pack: Span2                       # layering onto the message groupoid
    span: Span2                       # the communication cell itself
    prime: Span2                      # its partial transpose, message wire on the left


def wedge_pack(g1: Groupoid, g2: Groupoid) -> Span2:
    """Layer two side-by-side wedges into the wedge of the product groupoid."""
    w1, w2 = wedge(g1), wedge(g2)
    src = path(w1, w2)
    prod = product(g1, g2)
    tgt = wedge(prod)
    st = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)
    entries = {}
    for chain in src.elements(st):
        l1, r1, l2, r2 = chain
        m1 = wedge_morphism(g1, (l1, r1))
        m2 = wedge_morphism(g2, (l2, r2))
        entries[(st, chain, wedge_class(prod, tgt, (m1, m2)))] = 1
    span = Span2(src, tgt, entries)
    ok, witness = is_unitary(span)
    assert ok, witness
    return span


def build_lambda(comp: ComplementaryStructure) -> CommunicationStructure:
    """Assemble the communication cell from three copies of the bijection span.

    The three nodes are: the right-bent transpose acting between the wedges,
    the bijection forward on the group wedge, and its converse on the shadow
    wedge; the layering cell then packages the output as the wedge of the
    product groupoid.  Both the cell and its partial transpose are verified
    unitary, and the unfolding of the round trip is checked step by step.
    """
    g = comp.group_side
    d = comp.discrete_side
    delta = comp.delta
    wg, wd = comp.wedge_group, comp.wedge_discrete
    cg, cd = canonical_cells(g), canonical_cells(d)
    source = path(wg, wd)
    middle = path(wd, wg)

    pt_right = partial_transpose(delta, side="right")
    pre = horizontal(identity_span(cg.left), pt_right, identity_span(cd.right))
    swap = horizontal_compose(delta, dagger(delta))
    pack = wedge_pack(d, g)
    bindings = {"pre": pre, "swap": swap, "pack": pack}
    lam = evaluate_term(vnode(leaf("pre"), leaf("swap"), leaf("pack")), bindings)

    prod = product(d, g)
    cp = canonical_cells(prod)
    wp = wedge(prod)
    msg_in = path(cp.right, wd)
    lam_prime = vert(
        unit_intro(msg_in, 0),
        horizontal_compose(cp.mu_dagger, identity_span(msg_in)),
        horizontal(identity_span(cp.right), dagger(lam), identity_span(wd)),
        _cap_at(path(cp.right, wg, wd, wd), 4, cd),
        _destroy_at(path(cp.right, wg, wd), 3, cd),
    )

    comm = CommunicationStructure(
        complementary=comp, message_groupoid=prod, source=source, middle=middle,
        target=wp, pre=pre, swap=swap, pack=pack, span=lam, prime=lam_prime,
    )
    _verify_lambda(comm)
    return comm


def _cap_at(p: PathProfunctor, k, cells: CanonicalCells):
    """Glue legs (k, k+1) of p, which must be (right boundary ; left boundary)."""
    legs = p.legs
    left_part = path(*legs[:k]) if k else None
    right_part = path(*legs[k + 2:]) if legs[k + 2:] else None
    capped = whisker(cells.mu, left=left_part, right=right_part)
    shorter = path(*(legs[:k] + (hom_profunctor(cells.groupoid),) + legs[k + 2:]))
    return vert(capped, unit_elim(shorter, k))


def _destroy_at(p: PathProfunctor, k, cells: CanonicalCells):
    """Destroy legs (k, k+1) of p, which must be (left boundary ; right boundary)."""
    legs = p.legs
    left_part = path(*legs[:k]) if k else None
    right_part = path(*legs[k + 2:]) if legs[k + 2:] else None
    destroyed = whisker(cells.epsilon, left=left_part, right=right_part)
    shorter = path(*(legs[:k] + (hom_profunctor(TRIVIAL),) + legs[k + 2:]))
    return vert(destroyed, unit_elim(shorter, k))


def _verify_lambda(comm: CommunicationStructure):
    checks = verify_lambda_steps(comm)
    for name, ok, witness in checks:
        if not ok:
            raise VerificationFailure("%s failed: %r" % (name, witness))


def verify_lambda_steps(comm: CommunicationStructure):
    """The stepwise unfolding of the round trip, then the unitarity checks."""
    lam = comm.span
    pre, swap = comm.pre, comm.swap
    delta = comm.complementary.delta
    src = comm.source
    results = []

    round_trip = vertical_compose(lam, dagger(lam))
    unfolded = vert(pre, swap, dagger(swap), dagger(pre))
    ok, w = equals(round_trip, unfolded)
    results.append(("unfold: packaging cancels", ok, w))

    interchanged = horizontal_compose(
        vertical_compose(delta, dagger(delta)),
        vertical_compose(dagger(delta), delta),
    )
    ok, w = equals(vertical_compose(swap, dagger(swap)), interchanged)
    results.append(("interchange on the two bijections", ok, w))

    ok, w = equals(interchanged, identity_span(src))
    results.append(("bijection round trips are identities", ok, w))

    ok, w = equals(vert(pre, dagger(pre)), identity_span(src))
    results.append(("bent bijection cancels its converse", ok, w))

    ok, w = is_unitary(lam)
    results.append(("communication cell unitary", ok, w))
    ok, w = is_unitary(comm.prime)
    results.append(("partial transpose unitary", ok, w))
    return results


# -- dense coding ---------------------------------------------------------------

def dense_coding_sides(comm: CommunicationStructure):
    """Both sides of the splitting equation as spans on the message wire."""
    d = comm.complementary.discrete_side
    prod = comm.message_groupoid
    cd = canonical_cells(d)
    cp = canonical_cells(prod)
    msg = cp.right
    resource = vert(
        unit_intro(msg, 1),
        horizontal_compose(identity_span(msg), cd.epsilon_dagger),
        vert(
            unit_intro(path(msg, cd.left, cd.right), 2),
            horizontal(
                identity_span(path(msg, cd.left)),
                cd.mu_dagger,
                identity_span(cd.right),
            ),
        ),
    )
    half = path(cd.left, cd.right)
    lhs = vert(
        resource,
        horizontal_compose(comm.prime, identity_span(half)),
        horizontal_compose(identity_span(msg), comm.span),
    )
    rhs = vert(
        unit_intro(msg, 0),
        horizontal_compose(cp.mu_dagger, identity_span(msg)),
    )
    return lhs, rhs


def check_dense_coding(comm: CommunicationStructure):
    """Splitting equation plus an exact message-channel census."""
    lhs, rhs = dense_coding_sides(comm)
    ok, witness = equals(lhs, rhs)
    results = [("splitting equation", ok, witness)]
    n = comm.complementary.group_side.mor_count()
    channel_size = len(
        wedge(comm.complementary.group_side).elements((TRIVIAL_OBJECT, TRIVIAL_OBJECT))
    )
    messages = comm.message_groupoid.mor_count()
    results.append(
        (
            "channel carries %d states for %d messages" % (channel_size, messages),
            channel_size == n and messages == n * n,
            None,
        )
    )
    return results
