"""Finite groupoids with total composition tables, validated exhaustively.

Composition is diagrammatic throughout: ``compose(f, g)`` means "f then g",
defined exactly when ``tgt(f) == src(g)``.  Tables are stored explicitly;
every axiom is checked on construction by enumeration.
"""

import json

from .errors import (
    AssociativityViolation,
    EmptySet,
    MissingComposite,
    MissingInverse,
    NonUniqueIdentity,
    NotAGroup,
    ParseError,
)
from .util import freeze, sort_key

TRIVIAL_OBJECT = "*"


class Groupoid:
    """A finite groupoid: objects, morphisms with src/tgt, total composition.

    Instances are immutable after construction and safe to share.  Equality
    and hashing are by content, so independently built copies compare equal.
    """

    def __init__(self, objects, morphisms, src, tgt, table, name="", _validated=False):
        self.objects = tuple(sorted(objects, key=sort_key))
        self.morphisms = tuple(sorted(morphisms, key=sort_key))
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.table = dict(table)
        self.name = name
        self.identity = {}
        self.inv = {}
        self._validate()
        self._key = (
            self.objects,
            self.morphisms,
            tuple(self.src[m] for m in self.morphisms),
            tuple(self.tgt[m] for m in self.morphisms),
            tuple(sorted(self.table.items(), key=sort_key)),
        )
        self._hash = hash(self._key)

    # -- validation ---------------------------------------------------------

    def _validate(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise ParseError("duplicate object identifiers")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise ParseError("duplicate morphism identifiers")
        for m in self.morphisms:
            if self.src[m] not in objs or self.tgt[m] not in objs:
                raise ParseError("morphism %r has undeclared endpoint" % (m,))
        mors = set(self.morphisms)
        for (f, g), h in self.table.items():
            if f not in mors or g not in mors or h not in mors:
                raise ParseError("composition entry references undeclared morphism")
            if self.tgt[f] != self.src[g]:
                raise MissingComposite(
                    "compose(%r, %r) declared but the pair is not composable" % (f, g)
                )
            if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                raise MissingComposite(
                    "compose(%r, %r) = %r has wrong endpoints" % (f, g, h)
                )
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] == self.src[g] and (f, g) not in self.table:
                    raise MissingComposite("no entry for composable pair (%r, %r)" % (f, g))
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] != self.src[g]:
                    continue
                fg = self.table[(f, g)]
                for h in self.morphisms:
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.table[(fg, h)] != self.table[(f, self.table[(g, h)])]:
                        raise AssociativityViolation(
                            "associativity fails on (%r, %r, %r)" % (f, g, h)
                        )
        for o in self.objects:
            endos = [m for m in self.morphisms if self.src[m] == o and self.tgt[m] == o]
            units = [
                e
                for e in endos
                if all(self.table[(e, g)] == g for g in self.morphisms if self.src[g] == o)
                and all(self.table[(f, e)] == f for f in self.morphisms if self.tgt[f] == o)
            ]
            if len(units) != 1:
                raise NonUniqueIdentity(
                    "object %r has %d identity candidates" % (o, len(units))
                )
            self.identity[o] = units[0]
        for f in self.morphisms:
            a, b = self.src[f], self.tgt[f]
            backs = [
                g
                for g in self.morphisms
                if self.src[g] == b
                and self.tgt[g] == a
                and self.table[(f, g)] == self.identity[a]
                and self.table[(g, f)] == self.identity[b]
            ]
            if not backs:
                raise MissingInverse("morphism %r has no inverse" % (f,))
            self.inv[f] = backs[0]
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((self.src[m], self.tgt[m]), []).append(m)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}

    # -- basic queries ------------------------------------------------------

    def compose(self, f, g):
        return self.table[(f, g)]

    def inverse(self, f):
        return self.inv[f]

    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def endos(self, o):
        return self._hom.get((o, o), ())

    @property
    def is_skeletal(self):
        return all(self.src[m] == self.tgt[m] for m in self.morphisms)

    @property
    def is_group(self):
        return len(self.objects) == 1

    @property
    def is_abelian(self):
        return self.is_group and all(
            self.table[(a, b)] == self.table[(b, a)]
            for a in self.morphisms
            for b in self.morphisms
        )

    def mor_count(self):
        return len(self.morphisms)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Groupoid)
            and self._hash == other._hash
            and self._key == other._key
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Groupoid(%s: %d objects, %d morphisms)" % (
            self.name or "?",
            len(self.objects),
            len(self.morphisms),
        )


TRIVIAL = Groupoid(
    [TRIVIAL_OBJECT], [TRIVIAL_OBJECT], {TRIVIAL_OBJECT: TRIVIAL_OBJECT},
    {TRIVIAL_OBJECT: TRIVIAL_OBJECT}, {(TRIVIAL_OBJECT, TRIVIAL_OBJECT): TRIVIAL_OBJECT},
    name="1",
)


def group_as_groupoid(table, names=None, name=""):
    """One-object groupoid from a Cayley table: table[i][j] = compose(e_i, e_j).

    The table must be a Latin square over 0..n-1 with a two-sided identity;
    anything else raises NotAGroup.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for row in table:
        if len(row) != n:
            raise NotAGroup("table is not square")
        if sorted(row) != list(range(n)):
            raise NotAGroup("table is not a Latin square")
    for j in range(n):
        if sorted(table[i][j] for i in range(n)) != list(range(n)):
            raise NotAGroup("table is not a Latin square")
    if names is None:
        names = list(range(n))
    if len(set(names)) != n:
        raise NotAGroup("element names are not distinct")
    obj = TRIVIAL_OBJECT
    src = {names[i]: obj for i in range(n)}
    tgt = dict(src)
    comp = {(names[i], names[j]): names[table[i][j]] for i in range(n) for j in range(n)}
    try:
        return Groupoid([obj], list(names), src, tgt, comp, name=name)
    except (NonUniqueIdentity, MissingInverse, AssociativityViolation) as exc:
        raise NotAGroup(str(exc)) from exc


def discrete_groupoid(elements, name=""):
    """Groupoid with one object per element and only identity morphisms."""
    elements = list(elements)
    if not elements:
        raise EmptySet("discrete groupoid needs at least one element")
    src = {e: e for e in elements}
    return Groupoid(
        elements, elements, src, dict(src), {(e, e): e for e in elements},
        name=name or "discrete",
    )


def product(g1, g2, name=""):
    """Cartesian product groupoid; objects and morphisms are pairs."""
    objects = [(a, b) for a in g1.objects for b in g2.objects]
    morphisms = [(f, g) for f in g1.morphisms for g in g2.morphisms]
    src = {(f, g): (g1.src[f], g2.src[g]) for (f, g) in morphisms}
    tgt = {(f, g): (g1.tgt[f], g2.tgt[g]) for (f, g) in morphisms}
    comp = {}
    for (f1, f2) in morphisms:
        for (h1, h2) in morphisms:
            if g1.tgt[f1] == g1.src[h1] and g2.tgt[f2] == g2.src[h2]:
                comp[((f1, f2), (h1, h2))] = (g1.compose(f1, h1), g2.compose(f2, h2))
    return Groupoid(objects, morphisms, src, tgt, comp,
                    name=name or "%sx%s" % (g1.name, g2.name))


def disjoint_union(g1, g2, name=""):
    """Side-by-side copy with tagged identifiers; no cross morphisms."""
    def tag(t, x):
        return (t, x)

    objects = [tag("L", o) for o in g1.objects] + [tag("R", o) for o in g2.objects]
    morphisms = [tag("L", m) for m in g1.morphisms] + [tag("R", m) for m in g2.morphisms]
    src = {}
    tgt = {}
    comp = {}
    for g, t in ((g1, "L"), (g2, "R")):
        for m in g.morphisms:
            src[(t, m)] = (t, g.src[m])
            tgt[(t, m)] = (t, g.tgt[m])
        for (f, h), fh in g.table.items():
            comp[((t, f), (t, h))] = (t, fh)
    return Groupoid(objects, morphisms, src, tgt, comp,
                    name=name or "%s+%s" % (g1.name, g2.name))


def skeletalize(g):
    """Collapse each connected component onto its least object.

    Returns (skeleton, witness, connectors): witness maps every original
    object to its representative, connectors give the chosen morphism
    representative -> object (lexicographically least, so the collapse is
    deterministic).  The skeleton is the full subgroupoid on representatives,
    which keeps every endomorphism group on the nose.
    """
    comp_of = {}
    for o in g.objects:
        comp_of[o] = o
    changed = True
    while changed:
        changed = False
        for m in g.morphisms:
            a, b = comp_of[g.src[m]], comp_of[g.tgt[m]]
            if a != b:
                lo = min(a, b, key=sort_key)
                hi = b if lo == a else a
                for o in g.objects:
                    if comp_of[o] == hi:
                        comp_of[o] = lo
                changed = True
    reps = sorted(set(comp_of.values()), key=sort_key)
    witness = dict(comp_of)
    connectors = {}
    for o in g.objects:
        r = witness[o]
        links = sorted(g.hom(r, o), key=sort_key)
        connectors[o] = links[0]
    keep = set(reps)
    morphisms = [m for m in g.morphisms if g.src[m] in keep and g.tgt[m] in keep]
    kept = set(morphisms)
    comp = {k: v for k, v in g.table.items() if k[0] in kept and k[1] in kept}
    skel = Groupoid(
        reps, morphisms,
        {m: g.src[m] for m in morphisms},
        {m: g.tgt[m] for m in morphisms},
        comp, name=(g.name + ".skel") if g.name else "skel",
    )
    return skel, witness, connectors


# -- description files ------------------------------------------------------

_ALLOWED_KEYS = {"objects", "morphisms", "compose", "group", "cayley", "names", "name"}


def groupoid_from_dict(data):
    """Build a groupoid from the documented description format.

    Accepted shapes: {"group": shorthand}, {"cayley": table[, "names"]},
    or explicit {"objects", "morphisms", "compose"}.  Unknown keys are
    rejected.
    """
    from .catalog import named_group

    if not isinstance(data, dict):
        raise ParseError("groupoid description must be an object")
    unknown = set(data) - _ALLOWED_KEYS
    if unknown:
        raise ParseError("unknown keys in groupoid description: %s" % sorted(unknown))
    name = data.get("name", "")
    if "group" in data:
        return named_group(data["group"])
    if "cayley" in data:
        names = data.get("names")
        if names is not None:
            names = [freeze(x) for x in names]
        return group_as_groupoid(data["cayley"], names=names, name=name or "cayley")
    for key in ("objects", "morphisms", "compose"):
        if key not in data:
            raise ParseError("missing key %r" % key)
    objects = [freeze(o) for o in data["objects"]]
    morphisms = []
    src = {}
    tgt = {}
    for entry in data["morphisms"]:
        if len(entry) != 3:
            raise ParseError("morphism entries are [id, src, tgt]")
        m, a, b = (freeze(x) for x in entry)
        morphisms.append(m)
        src[m] = a
        tgt[m] = b
    comp = {}
    for entry in data["compose"]:
        if len(entry) != 3:
            raise ParseError("compose entries are [f, g, f-then-g]")
        f, g, h = (freeze(x) for x in entry)
        comp[(f, g)] = h
    return Groupoid(objects, morphisms, src, tgt, comp, name=name)


def validate_groupoid(spec):
    """Parse-and-validate entry point; spec is a description dictionary."""
    return groupoid_from_dict(spec)


def load_groupoid(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("not valid JSON: %s" % exc) from exc
    return groupoid_from_dict(data)
