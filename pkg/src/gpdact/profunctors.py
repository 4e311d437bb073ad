"""Set-valued profunctors between finite groupoids, with coend composition.

A profunctor S from G to H assigns a finite stage set to every pair
(H-object, G-object), a contravariant H-action ("left") and a covariant
G-action ("right") that commute.  Composites are kept flat: a chain of
leaves with elements given by equivalence classes of element tuples under
sliding middle morphisms across junctions.  Flatness makes re-association
strict, so only unit handling needs explicit structural cells.
"""

import itertools

from .errors import EmptySet, NotSkeletal, StageMismatch, TypeMismatch
from .groupoids import TRIVIAL, TRIVIAL_OBJECT, Groupoid, skeletalize
from .util import sort_key


def _lt(a, b):
    """Plain comparison with a total-order fallback for mixed identifier types."""
    try:
        return a < b
    except TypeError:
        return sort_key(a) < sort_key(b)


class Profunctor:
    """Base interface; concrete classes fill in stages and the two actions."""

    source: Groupoid
    target: Groupoid

    @property
    def legs(self):
        return (self,)

    def stage_keys(self):
        return tuple(
            (t, s) for t in self.target.objects for s in self.source.objects
        )

    def elements(self, stage):
        raise NotImplementedError

    def stage_of(self, elem):
        raise NotImplementedError

    def left_act(self, h, elem):
        """Act by a target morphism h: A -> B, sending stage (B, s) to (A, s)."""
        raise NotImplementedError

    def right_act(self, elem, g):
        """Act by a source morphism g: B -> C, sending stage (t, B) to (t, C)."""
        raise NotImplementedError

    def total_size(self):
        return sum(len(self.elements(st)) for st in self.stage_keys())

    def verify(self):
        """Exhaustively check functoriality and that the two actions commute."""
        for (t, s) in self.stage_keys():
            for e in self.elements((t, s)):
                assert self.left_act(self.target.identity[t], e) == e
                assert self.right_act(e, self.source.identity[s]) == e
                for h in self.target.morphisms:
                    if self.target.tgt[h] != t:
                        continue
                    for h2 in self.target.morphisms:
                        if self.target.tgt[h2] != self.target.src[h]:
                            continue
                        both = self.left_act(self.target.compose(h2, h), e)
                        nested = self.left_act(h2, self.left_act(h, e))
                        assert both == nested, "left action not functorial"
                for g in self.source.morphisms:
                    if self.source.src[g] != s:
                        continue
                    for g2 in self.source.morphisms:
                        if self.source.src[g2] != self.source.tgt[g]:
                            continue
                        both = self.right_act(e, self.source.compose(g, g2))
                        nested = self.right_act(self.right_act(e, g), g2)
                        assert both == nested, "right action not functorial"
                for h in self.target.morphisms:
                    if self.target.tgt[h] != t:
                        continue
                    for g in self.source.morphisms:
                        if self.source.src[g] != s:
                            continue
                        a = self.right_act(self.left_act(h, e), g)
                        b = self.left_act(h, self.right_act(e, g))
                        assert a == b, "actions do not commute"
        return True

    # identity-based equality is wrong for independently built copies
    def _eq_key(self):
        raise NotImplementedError

    def _cached_key(self):
        key = getattr(self, "_key_cache", None)
        if key is None:
            key = self._eq_key()
            self._key_cache = key
        return key

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Profunctor) and self._cached_key() == other._cached_key()

    def __hash__(self):
        return hash(self._cached_key())


class HomProfunctor(Profunctor):
    """The identity profunctor of G: stage (A, B) is Hom(A -> B)."""

    def __init__(self, g: Groupoid):
        self.source = g
        self.target = g
        self.groupoid = g

    def elements(self, stage):
        a, b = stage
        return self.groupoid.hom(a, b)

    def stage_of(self, m):
        return (self.groupoid.src[m], self.groupoid.tgt[m])

    def left_act(self, h, m):
        return self.groupoid.compose(h, m)

    def right_act(self, m, g):
        return self.groupoid.compose(m, g)

    def _eq_key(self):
        return ("hom", self.groupoid)

    def __repr__(self):
        return "Hom(%s)" % (self.groupoid.name or "?")


class LeftBoundary(Profunctor):
    """The boundary 1 -> G: one stage per object, carrying its endomorphisms."""

    def __init__(self, g: Groupoid):
        if not g.is_skeletal:
            raise NotSkeletal("boundaries need a skeletal groupoid")
        self.source = TRIVIAL
        self.target = g
        self.groupoid = g

    def elements(self, stage):
        a, _ = stage
        return self.groupoid.endos(a)

    def stage_of(self, m):
        return (self.groupoid.src[m], TRIVIAL_OBJECT)

    def left_act(self, h, m):
        return self.groupoid.compose(h, m)

    def right_act(self, m, g):
        return m

    def _eq_key(self):
        return ("bl", self.groupoid)

    def __repr__(self):
        return "LeftBoundary(%s)" % (self.groupoid.name or "?")


class RightBoundary(Profunctor):
    """The boundary G -> 1, the mirror of LeftBoundary."""

    def __init__(self, g: Groupoid):
        if not g.is_skeletal:
            raise NotSkeletal("boundaries need a skeletal groupoid")
        self.source = g
        self.target = TRIVIAL
        self.groupoid = g

    def elements(self, stage):
        _, a = stage
        return self.groupoid.endos(a)

    def stage_of(self, m):
        return (TRIVIAL_OBJECT, self.groupoid.src[m])

    def left_act(self, h, m):
        return m

    def right_act(self, m, g):
        return self.groupoid.compose(m, g)

    def _eq_key(self):
        return ("br", self.groupoid)

    def __repr__(self):
        return "RightBoundary(%s)" % (self.groupoid.name or "?")


class SetProfunctor(Profunctor):
    """Explicit finite profunctor given by stage sets and action tables.

    Elements must be distinct across stages.  Used for fixtures, free
    systems, and materialized tensors.
    """

    def __init__(self, source, target, stages, left, right, name="", validate=True):
        self.source = source
        self.target = target
        self._stages = {
            st: tuple(sorted(stages.get(st, ()), key=sort_key))
            for st in self.stage_keys()
        }
        self._stage_of = {}
        for st, elems in self._stages.items():
            for e in elems:
                if e in self._stage_of:
                    raise StageMismatch("element %r appears in two stages" % (e,))
                self._stage_of[e] = st
        self._left = dict(left)
        self._right = dict(right)
        self.name = name
        if validate:
            self._check_totality()
            self.verify()

    def _check_totality(self):
        for e, (t, s) in self._stage_of.items():
            for h in self.target.morphisms:
                if self.target.tgt[h] == t:
                    out = self._left.get((h, e))
                    if out is None or self._stage_of.get(out) != (self.target.src[h], s):
                        raise StageMismatch("left action not total at (%r, %r)" % (h, e))
            for g in self.source.morphisms:
                if self.source.src[g] == s:
                    out = self._right.get((e, g))
                    if out is None or self._stage_of.get(out) != (t, self.source.tgt[g]):
                        raise StageMismatch("right action not total at (%r, %r)" % (e, g))

    def elements(self, stage):
        return self._stages.get(stage, ())

    def stage_of(self, elem):
        return self._stage_of[elem]

    def left_act(self, h, elem):
        return self._left[(h, elem)]

    def right_act(self, elem, g):
        return self._right[(elem, g)]

    def _eq_key(self):
        return (
            "set", self.source, self.target,
            tuple(sorted(self._stages.items(), key=sort_key)),
            tuple(sorted(self._left.items(), key=sort_key)),
            tuple(sorted(self._right.items(), key=sort_key)),
        )

    def __repr__(self):
        return "SetProfunctor(%s)" % (self.name or "?")


def free_system(size, name=""):
    """A plain finite set as a profunctor from the trivial groupoid to itself."""
    if size < 0:
        raise EmptySet("free system size must be >= 0")
    st = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)
    elems = tuple(("s%d" % i) for i in range(size))
    left = {(TRIVIAL_OBJECT, e): e for e in elems}
    right = {(e, TRIVIAL_OBJECT): e for e in elems}
    return SetProfunctor(TRIVIAL, TRIVIAL, {st: elems}, left, right,
                         name=name or "S%d" % size)


class PathProfunctor(Profunctor):
    """A flat composite of leaf profunctors, quotiented by junction sliding.

    Elements are canonical chains: tuples (e_1, ..., e_n), one per leg, with
    matching junction objects.  Two chains are identified when one is carried
    to the other by sliding a middle morphism across a junction; the least
    chain in each class is the representative.

    When every sliding junction has a freely acting left leg (true for
    boundary and hom legs) the representative is found by a deterministic
    left-to-right sweep: at each junction the slide minimizing the left
    element is unique, which realizes the lexicographic minimum without an
    orbit search.  Otherwise a breadth-first orbit closure is used.
    """

    def __init__(self, legs):
        legs = tuple(legs)
        if len(legs) < 2:
            raise TypeMismatch("a path needs at least two legs")
        for a, b in zip(legs, legs[1:]):
            if a.target != b.source:
                raise TypeMismatch("legs do not compose: %r then %r" % (a, b))
        for leg in legs:
            if isinstance(leg, PathProfunctor):
                raise TypeMismatch("paths hold leaves only")
        self.legs_ = legs
        self.source = legs[0].source
        self.target = legs[-1].target
        self._stage_cache = {}
        self._rep = {}
        self._members = {}
        self._canon_memo = {}
        self._slide_at = tuple(
            leg.target.mor_count() > len(leg.target.objects) for leg in legs[:-1]
        )
        self._greedy = all(
            not sliding
            or (isinstance(leg, (LeftBoundary, HomProfunctor)) and leg.target.is_skeletal)
            for leg, sliding in zip(legs[:-1], self._slide_at)
        )

    @property
    def legs(self):
        return self.legs_

    def _raw_chains(self, stage):
        tobj, sobj = stage
        n = len(self.legs_)
        chains = [()]
        for i, leg in enumerate(self.legs_):
            uppers = (tobj,) if i == n - 1 else leg.target.objects
            new = []
            for chain in chains:
                prev = sobj if i == 0 else self._junction(chain, i - 1)
                for up in uppers:
                    for e in leg.elements((up, prev)):
                        new.append(chain + (e,))
            chains = new
        return chains

    def _junction(self, chain, i):
        # object between leg i and leg i+1 of a raw chain prefix
        return self.legs_[i].stage_of(chain[i])[0]

    def _canon_greedy(self, chain):
        memo = self._canon_memo
        hit = memo.get(chain)
        if hit is not None:
            return hit
        legs = self.legs_
        c = list(chain)
        for i, sliding in enumerate(self._slide_at):
            if not sliding:
                continue
            left = legs[i]
            mid = left.target
            inv = mid.inv
            lact = left.left_act
            junction = left.stage_of(c[i])[0]
            best = None
            best_h = None
            for h in mid.endos(junction):
                cand = lact(inv[h], c[i])
                if best is None or _lt(cand, best):
                    best, best_h = cand, h
            c[i] = best
            c[i + 1] = legs[i + 1].right_act(c[i + 1], best_h)
        out = tuple(c)
        memo[chain] = out
        memo[out] = out
        return out

    def _orbit(self, start):
        legs = self.legs_
        n = len(legs)
        orbit = {start}
        frontier = [start]
        while frontier:
            c = frontier.pop()
            for i in range(n - 1):
                mid = legs[i].target
                if mid.mor_count() == len(mid.objects):
                    continue
                junction = legs[i].stage_of(c[i])[0]
                for h in mid.morphisms:
                    if mid.src[h] != junction:
                        continue
                    p2 = legs[i].left_act(mid.inverse(h), c[i])
                    r2 = legs[i + 1].right_act(c[i + 1], h)
                    c2 = c[:i] + (p2, r2) + c[i + 2:]
                    if c2 not in orbit:
                        orbit.add(c2)
                        frontier.append(c2)
        return orbit

    def _build_stage(self, stage):
        if self._greedy:
            reps = {self._canon_greedy(c) for c in self._raw_chains(stage)}
            self._stage_cache[stage] = tuple(sorted(reps, key=sort_key))
            return
        canon = {}
        reps = []
        for start in self._raw_chains(stage):
            if start in canon:
                continue
            orbit = self._orbit(start)
            best = min(orbit, key=sort_key)
            for c in orbit:
                canon[c] = best
            self._members[best] = tuple(sorted(orbit, key=sort_key))
            reps.append(best)
        reps.sort(key=sort_key)
        self._rep.update(canon)
        self._stage_cache[stage] = tuple(reps)

    def elements(self, stage):
        if stage not in self._stage_cache:
            self._build_stage(stage)
        return self._stage_cache[stage]

    def canonical(self, chain):
        """Canonical representative of a raw chain."""
        if self._greedy:
            return self._canon_greedy(chain)
        if chain not in self._rep:
            self._build_stage(self.stage_of_chain(chain))
        return self._rep[chain]

    def class_members(self, elem):
        """All raw chains in the class of a canonical element (cached)."""
        got = self._members.get(elem)
        if got is None:
            if self._greedy:
                got = tuple(sorted(self._orbit(elem), key=sort_key))
                self._members[elem] = got
            else:
                self._build_stage(self.stage_of_chain(elem))
                got = self._members[elem]
        return got

    def stage_of_chain(self, chain):
        tobj = self.legs_[-1].stage_of(chain[-1])[0]
        sobj = self.legs_[0].stage_of(chain[0])[1]
        return (tobj, sobj)

    def stage_of(self, chain):
        return self.stage_of_chain(chain)

    def left_act(self, h, chain):
        moved = self.legs_[-1].left_act(h, chain[-1])
        return self.canonical(chain[:-1] + (moved,))

    def right_act(self, chain, g):
        moved = self.legs_[0].right_act(chain[0], g)
        return self.canonical((moved,) + chain[1:])

    def split(self, chain, k):
        """Split a chain at leg index k into ((prefix, suffix), junction object)."""
        return (chain[:k], chain[k:]), self.legs_[k].stage_of(chain[k])[1]

    def _eq_key(self):
        return ("path",) + tuple(leg._eq_key() for leg in self.legs_)

    def __repr__(self):
        return "Path[%s]" % ", ".join(repr(x) for x in self.legs_)


def legs_of(p: Profunctor):
    return p.legs


def as_chain(p: Profunctor, elem):
    return elem if isinstance(p, PathProfunctor) else (elem,)


def from_chain(p: Profunctor, chain):
    if isinstance(p, PathProfunctor):
        return p.canonical(chain)
    assert len(chain) == 1
    return chain[0]


_PATH_CACHE = {}


def path(*profunctors):
    """Flat composite of the given profunctors (a leaf if only one).

    Instances are interned by content so canonical-representative caches are
    shared between all uses of the same composite.
    """
    legs = tuple(itertools.chain.from_iterable(legs_of(p) for p in profunctors))
    if len(legs) == 1:
        return legs[0]
    key = tuple(leg._cached_key() for leg in legs)
    hit = _PATH_CACHE.get(key)
    if hit is None:
        hit = PathProfunctor(legs)
        _PATH_CACHE[key] = hit
    return hit


def compose_profunctors(s: Profunctor, t: Profunctor):
    """Coend composite "s then t" plus the raw-pair representative map."""
    if s.target != t.source:
        raise TypeMismatch("middle groupoid mismatch")
    out = path(s, t)

    def rep_map(s_elem, t_elem):
        return out.canonical(as_chain(s, s_elem) + as_chain(t, t_elem))

    return out, rep_map


def hom_profunctor(g: Groupoid):
    return HomProfunctor(g)


def boundary_left(g: Groupoid, auto_skeletalize=False):
    if not g.is_skeletal:
        if not auto_skeletalize:
            raise NotSkeletal("boundary_left needs a skeletal groupoid")
        g = skeletalize(g)[0]
    return LeftBoundary(g)


def boundary_right(g: Groupoid, auto_skeletalize=False):
    if not g.is_skeletal:
        if not auto_skeletalize:
            raise NotSkeletal("boundary_right needs a skeletal groupoid")
        g = skeletalize(g)[0]
    return RightBoundary(g)


def tensor_profunctors(s: Profunctor, t: Profunctor, name=""):
    """Stagewise cartesian product, materialized over the product groupoids."""
    from .groupoids import product

    source = product(s.source, t.source)
    target = product(s.target, t.target)
    stages = {}
    for (t1, t2) in target.objects:
        for (s1, s2) in source.objects:
            stages[((t1, t2), (s1, s2))] = tuple(
                (a, b)
                for a in s.elements((t1, s1))
                for b in t.elements((t2, s2))
            )
    left = {}
    right = {}
    for st, elems in stages.items():
        for (a, b) in elems:
            for (h1, h2) in target.morphisms:
                if target.tgt[(h1, h2)] == st[0]:
                    left[((h1, h2), (a, b))] = (s.left_act(h1, a), t.left_act(h2, b))
            for (g1, g2) in source.morphisms:
                if source.src[(g1, g2)] == st[1]:
                    right[((a, b), (g1, g2))] = (s.right_act(a, g1), t.right_act(b, g2))
    return SetProfunctor(source, target, stages, left, right,
                         name=name or "tensor", validate=False)
