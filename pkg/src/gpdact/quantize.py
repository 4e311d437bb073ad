"""Linearization of the span calculus and its quantum checks.

Spans become integer matrices over element bases; composite-preservation is
checked through exact rational intertwiner pairs weighted by stabilizer
orders; abelian groups get explicit character tables, which drive the
mutually-unbiased-basis, teleportation, and dense-coding verifications with
complex state vectors.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidElement, NonAbelian, NotAGroup, TypeMismatch, Unnormalized
from .groupoids import TRIVIAL_OBJECT, Groupoid
from .profunctors import Profunctor, SetProfunctor, path
from .spans import Span2, vertical_compose
from .util import seeded_rng, sort_key

TOL = 1e-12


# -- integer matrices ---------------------------------------------------------

@dataclass(frozen=True)
class NatMatrix:
    rows: tuple     # (stage, element) labels of the source profunctor
    cols: tuple     # (stage, element) labels of the target profunctor
    data: tuple     # tuple of row tuples, natural numbers

    def entry(self, i, j):
        return self.data[i][j]

    def to_records(self):
        return {
            "rows": [repr(r) for r in self.rows],
            "cols": [repr(c) for c in self.cols],
            "data": [list(row) for row in self.data],
        }


def _basis(p: Profunctor):
    out = []
    for st in sorted(p.stage_keys(), key=sort_key):
        for e in p.elements(st):
            out.append((st, e))
    return tuple(out)


def q_span(span: Span2) -> NatMatrix:
    """The linearization: row s, column t, entry the span multiplicity."""
    rows = _basis(span.src)
    cols = _basis(span.tgt)
    col_index = {c: j for j, c in enumerate(cols)}
    data = [[0] * len(cols) for _ in rows]
    for i, (st, s) in enumerate(rows):
        for (st2, s2, t), v in span.entries.items():
            if st2 == st and s2 == s:
                data[i][col_index[(st, t)]] = v
    return NatMatrix(rows, cols, tuple(tuple(r) for r in data))


def matmul_nat(a: NatMatrix, b: NatMatrix) -> NatMatrix:
    """Plain integer triple-loop product; the independent oracle."""
    if a.cols != b.rows:
        raise TypeMismatch("matrix shapes do not chain")
    data = []
    for i in range(len(a.rows)):
        row = []
        for k in range(len(b.cols)):
            row.append(sum(a.data[i][j] * b.data[j][k] for j in range(len(a.cols))))
        data.append(tuple(row))
    return NatMatrix(a.rows, b.cols, tuple(data))


def check_q_vertical(a: Span2, b: Span2):
    """Linearizing a vertical composite equals the integer matrix product."""
    left = q_span(vertical_compose(a, b))
    right = matmul_nat(q_span(a), q_span(b))
    ok = left.data == right.data and left.rows == right.rows and left.cols == right.cols
    witness = None
    if not ok:
        for i, (ra, rb) in enumerate(zip(left.data, right.data)):
            for j, (x, y) in enumerate(zip(ra, rb)):
                if x != y:
                    witness = (left.rows[i], left.cols[j], x, y)
                    break
            if witness:
                break
    return ok, witness


def check_q_naturality(span: Span2):
    """Acting then linearizing equals linearizing then acting, exactly."""
    src, tgt = span.src, span.tgt
    tg, sg = src.target, src.source
    for st in src.stage_keys():
        tobj, sobj = st
        for s in src.elements(st):
            for h in tg.morphisms:
                if tg.tgt[h] != tobj:
                    continue
                for g in sg.morphisms:
                    if sg.src[g] != sobj:
                        continue
                    st2 = (tg.src[h], sg.tgt[g])
                    s2 = src.right_act(src.left_act(h, s), g)
                    acted_then_q = {
                        t: span.entry(st2, s2, t) for t in tgt.elements(st2)
                    }
                    q_then_acted = {}
                    for t in tgt.elements(st):
                        v = span.entry(st, s, t)
                        if v:
                            t2 = tgt.right_act(tgt.left_act(h, t), g)
                            q_then_acted[t2] = q_then_acted.get(t2, 0) + v
                    acted_then_q = {k: v for k, v in acted_then_q.items() if v}
                    if acted_then_q != q_then_acted:
                        return False, ((h, g), st, s, acted_then_q, q_then_acted)
    return True, None


# -- stabilizer-weighted intertwiners ------------------------------------------

@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple
    cols: tuple
    data: tuple     # tuple of row tuples of Fraction

    def to_records(self):
        return {
            "rows": [repr(r) for r in self.rows],
            "cols": [repr(c) for c in self.cols],
            "data": [["%d/%d" % (f.numerator, f.denominator) for f in row]
                     for row in self.data],
        }


def action_source_profunctor(h: Groupoid, points, act, name=""):
    """A left action of a one-object group on a point set, source side."""
    from .groupoids import TRIVIAL

    if not h.is_group:
        raise NotAGroup("action fixtures use one-object groups")
    points = tuple(points)
    stages = {(h.objects[0], TRIVIAL_OBJECT): points}
    left = {(m, p): act(m, p) for m in h.morphisms for p in points}
    right = {(p, TRIVIAL_OBJECT): p for p in points}
    return SetProfunctor(TRIVIAL, h, stages, left, right, name=name or "points")


def action_target_profunctor(h: Groupoid, points, act, name=""):
    """A right action of a one-object group on a point set, target side."""
    from .groupoids import TRIVIAL

    if not h.is_group:
        raise NotAGroup("action fixtures use one-object groups")
    points = tuple(points)
    stages = {(TRIVIAL_OBJECT, h.objects[0]): points}
    left = {(TRIVIAL_OBJECT, p): p for p in points}
    right = {(p, m): act(p, m) for m in h.morphisms for p in points}
    return SetProfunctor(h, TRIVIAL, stages, left, right, name=name or "points")


def _orbit_right(t_prof, elem, mors):
    seen = {elem: None}
    frontier = [elem]
    while frontier:
        e = frontier.pop()
        for h in mors:
            e2 = t_prof.right_act(e, h)
            if e2 not in seen:
                seen[e2] = (e, h)
                frontier.append(e2)
    return seen


def _word_to(t_prof, base, elem, h_gpd, parents):
    """A single morphism carrying base to elem along the recorded search tree."""
    if elem == base:
        return h_gpd.identity[h_gpd.objects[0]]
    prev, h = parents[elem]
    return h_gpd.compose(_word_to(t_prof, base, prev, h_gpd, parents), h)


def sigma_pi_check(s_prof: Profunctor, t_prof: Profunctor):
    """Exact inverse pair between pair classes and intertwiners, per orbit pair.

    For each orbit of the middle group on each side, intertwiners are
    averaged over the stabilizer with exact rational weights; both round
    trips must be the identity, and the intertwiner construction must not
    depend on the chosen class representative.
    """
    if s_prof.target != t_prof.source:
        raise TypeMismatch("profunctors do not share a middle groupoid")
    h_gpd = s_prof.target
    if not h_gpd.is_group:
        raise TypeMismatch("the middle must be a one-object group here")
    mors = h_gpd.morphisms
    comp = path(s_prof, t_prof)
    st_s = (h_gpd.objects[0], TRIVIAL_OBJECT)
    st_t = (TRIVIAL_OBJECT, h_gpd.objects[0])

    results = []
    seen_t = set()
    for t0 in t_prof.elements(st_t):
        if t0 in seen_t:
            continue
        t_orbit = _orbit_right(t_prof, t0, mors)
        seen_t |= set(t_orbit)
        stab = [h for h in mors if t_prof.right_act(t0, h) == t0]
        weight = Fraction(1, len(stab))
        seen_s = set()
        for s0 in s_prof.elements(st_s):
            if s0 in seen_s:
                continue
            s_orbit = set()
            frontier = [s0]
            while frontier:
                e = frontier.pop()
                if e in s_orbit:
                    continue
                s_orbit.add(e)
                for h in mors:
                    frontier.append(s_prof.left_act(h, e))
            seen_s |= s_orbit

            classes = sorted(
                {comp.canonical((x, tau)) for x in s_orbit for tau in t_orbit},
                key=sort_key,
            )

            def sigma_map(cls):
                # normalize the pair so the t-side sits at the orbit base,
                # then average the carried s-element over the stabilizer
                x, tau = cls
                h = _word_to(t_prof, t0, tau, h_gpd, t_orbit)
                vec = {}
                for h0 in stab:
                    y = s_prof.left_act(h_gpd.compose(h0, h), x)
                    vec[y] = vec.get(y, Fraction(0)) + weight
                return vec

            def pi_map(vec):
                out = {}
                for y, c in vec.items():
                    cls = comp.canonical((y, t0))
                    out[cls] = out.get(cls, Fraction(0)) + c
                return {k: v for k, v in out.items() if v}

            # the two maps as explicit rational matrices over the orbit bases
            s_basis = tuple(sorted(s_orbit, key=sort_key))
            sigma_matrix = RationalMatrix(
                rows=tuple(classes), cols=s_basis,
                data=tuple(
                    tuple(sigma_map(cls).get(y, Fraction(0)) for y in s_basis)
                    for cls in classes
                ),
            )
            denominators_ok = all(
                len(stab) % f.denominator == 0
                for row in sigma_matrix.data
                for f in row
            )

            ok = True
            witness = None
            # representative independence of the intertwiner construction
            for cls in classes:
                base = sigma_map(cls)
                for member in comp.class_members(cls):
                    alt = sigma_map(member)
                    if alt != base:
                        ok, witness = False, ("representative", cls, member)
                        break
                if not ok:
                    break
            # round trip one: classes -> intertwiners -> classes
            if ok:
                for cls in classes:
                    back = pi_map(sigma_map(cls))
                    if back != {cls: Fraction(1)}:
                        ok, witness = False, ("pi-after-sigma", cls, back)
                        break
            # round trip two: stabilizer-invariant vectors come back unchanged
            if ok:
                invariant_basis = []
                done = set()
                for y in sorted(s_orbit, key=sort_key):
                    if y in done:
                        continue
                    cell = set()
                    frontier = [y]
                    while frontier:
                        z = frontier.pop()
                        if z in cell:
                            continue
                        cell.add(z)
                        for h0 in stab:
                            frontier.append(s_prof.left_act(h0, z))
                    done |= cell
                    invariant_basis.append(
                        {z: Fraction(1) for z in cell}
                    )
                for vec in invariant_basis:
                    image = pi_map(vec)
                    back = {}
                    for cls, c in image.items():
                        for y, w in sigma_map(cls).items():
                            back[y] = back.get(y, Fraction(0)) + c * w
                    back = {k: v for k, v in back.items() if v}
                    if back != vec:
                        ok, witness = False, ("sigma-after-pi", vec, back)
                        break
            if ok and not denominators_ok:
                ok, witness = False, ("denominator", sigma_matrix)
            results.append(
                (
                    "orbit pair (stabilizer %d, %d classes)" % (len(stab), len(classes)),
                    ok,
                    witness,
                )
            )
    return results


# -- characters ----------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable:
    group: Groupoid
    elements: tuple
    table: tuple        # rows chi_k, columns following `elements`
    tolerance: float = TOL

    @property
    def order(self):
        return len(self.elements)

    def row_orthonormality_deviation(self):
        n = self.order
        worst = 0.0
        for i, ri in enumerate(self.table):
            for j, rj in enumerate(self.table):
                ip = sum(a * b.conjugate() for a, b in zip(ri, rj)) / n
                target = 1.0 if i == j else 0.0
                worst = max(worst, abs(ip - target))
        return worst

    def to_records(self):
        return {
            "elements": [repr(e) for e in self.elements],
            "rows": [[(z.real, z.imag) for z in row] for row in self.table],
        }


def _generators(group: Groupoid):
    ident = group.identity[group.objects[0]]
    order = {}
    for m in group.morphisms:
        k, x = 1, m
        while x != ident:
            x = group.compose(x, m)
            k += 1
        order[m] = k
    closure = {ident}
    gens = []
    for m in sorted(group.morphisms, key=lambda x: (-order[x], sort_key(x))):
        if m in closure:
            continue
        gens.append(m)
        new = set(closure)
        frontier = list(closure)
        while frontier:
            e = frontier.pop()
            e2 = group.compose(e, m)
            if e2 not in new:
                new.add(e2)
                frontier.append(e2)
        closure = new
        extra = True
        while extra:
            extra = False
            for a in list(closure):
                for g in gens:
                    c = group.compose(a, g)
                    if c not in closure:
                        closure.add(c)
                        extra = True
        if len(closure) == group.mor_count():
            break
    return gens, order


def character_table(group: Groupoid) -> CharacterTable:
    """All complex characters of an abelian group, identity row first."""
    if not group.is_group:
        raise NotAGroup("character tables need a one-object group")
    if not group.is_abelian:
        raise NonAbelian("character tables are built for abelian groups only")
    ident = group.identity[group.objects[0]]
    gens, order = _generators(group)
    elements = tuple(sorted(group.morphisms, key=sort_key))
    # express each element as a word in the generators
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        e = frontier.pop()
        for g in gens:
            e2 = group.compose(e, g)
            if e2 not in words:
                words[e2] = words[e] + (g,)
                frontier.append(e2)
    n = group.mor_count()
    assert len(words) == n

    import itertools

    rows = []
    for ks in itertools.product(*[range(order[g]) for g in gens]):
        val = {g: cmath.exp(2j * cmath.pi * k / order[g]) for g, k in zip(gens, ks)}
        chi = {}
        for e in elements:
            z = 1 + 0j
            for g in words[e]:
                z *= val[g]
            chi[e] = z
        good = all(
            abs(chi[group.compose(a, b)] - chi[a] * chi[b]) < 1e-9
            for a in elements
            for b in elements
        )
        if good:
            rows.append(tuple(chi[e] for e in elements))
    # dedupe and order deterministically, identity character first
    uniq = {}
    for row in rows:
        key = tuple((round(z.real, 9), round(z.imag, 9)) for z in row)
        uniq[key] = row
    rows = sorted(uniq.values(), key=lambda r: [(round(z.real, 9), round(z.imag, 9)) for z in r], reverse=True)
    assert len(rows) == n, "abelian character count must equal the order"
    assert all(abs(z - 1) < 1e-9 for z in rows[0]), "identity character first"
    return CharacterTable(group=group, elements=elements, table=tuple(rows))


def check_mub(group: Groupoid):
    """Squared overlaps of the point basis against normalized character rows."""
    ct = character_table(group)
    n = ct.order
    worst = 0.0
    for row in ct.table:
        for z in row:
            worst = max(worst, abs(abs(z / n ** 0.5) ** 2 - 1.0 / n))
    return worst, ct


# -- state-vector protocols ------------------------------------------------------

def _translation(group, elements, a):
    n = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    m = np.zeros((n, n), dtype=complex)
    for e in elements:
        m[index[group.compose(e, a)], index[e]] = 1.0
    return m


def _phase(table_row):
    return np.diag(np.array(table_row, dtype=complex))


def pauli_pair(group: Groupoid, ct: CharacterTable, a, k):
    """The correction unitary: translate by a, then multiply by character k."""
    x = _translation(group, ct.elements, a)
    z = _phase(ct.table[k])
    return z @ x


@dataclass(frozen=True)
class TeleportationReport:
    group_order: int
    branches: int
    max_infidelity: float
    max_prob_deviation: float
    states_checked: int

    @property
    def ok(self):
        return self.max_infidelity <= TOL and self.max_prob_deviation <= TOL


def teleportation_simulation(group: Groupoid, state=None, seed=None, n_random=0):
    """Teleport states through the correlated pair, checking all branches.

    Measurement is in the translated/phased correlated basis; each of the
    n^2 outcomes has probability exactly 1/n^2 and the indexed correction
    restores the input up to global phase.
    """
    ct = character_table(group)
    n = ct.order
    elements = ct.elements
    index = {e: i for i, e in enumerate(elements)}
    states = []
    if state is not None:
        psi = np.asarray(state, dtype=complex)
        if psi.shape != (n,):
            raise InvalidElement("state must have length %d" % n)
        if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
            raise Unnormalized("input state must be normalized")
        states.append(psi)
    rng = seeded_rng(seed)
    for _ in range(n_random):
        v = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)])
        states.append(v / np.linalg.norm(v))
    if not states:
        raise InvalidElement("need a state or n_random > 0")

    max_infid = 0.0
    max_prob_dev = 0.0
    for psi in states:
        for a in elements:
            for k in range(n):
                # Bob's unnormalized branch: <Phi_{a,k}| (psi x Phi)
                branch = np.zeros(n, dtype=complex)
                for g in elements:
                    branch[index[g]] = (
                        ct.table[k][index[g]].conjugate()
                        * psi[index[group.compose(g, a)]]
                    ) / n
                prob = float(np.vdot(branch, branch).real)
                max_prob_dev = max(max_prob_dev, abs(prob - 1.0 / n ** 2))
                corrected = pauli_pair(group, ct, a, k) @ branch
                corrected = corrected / np.linalg.norm(corrected)
                fid = abs(np.vdot(psi, corrected))
                max_infid = max(max_infid, 1.0 - fid)
    return TeleportationReport(
        group_order=n, branches=n * n, max_infidelity=max_infid,
        max_prob_deviation=max_prob_dev, states_checked=len(states),
    )


@dataclass(frozen=True)
class DenseCodingReport:
    group_order: int
    messages: int
    decode_errors: int
    max_offdiagonal: float
    decoded_message: object = None

    @property
    def ok(self):
        return self.decode_errors == 0 and self.max_offdiagonal <= TOL


def dense_coding_simulation(group: Groupoid, message=None):
    """Send every (element, character) message through half the correlated pair."""
    ct = character_table(group)
    n = ct.order
    elements = ct.elements
    index = {e: i for i, e in enumerate(elements)}
    phi = np.zeros((n, n), dtype=complex)
    for g in elements:
        phi[index[g], index[g]] = 1.0 / n ** 0.5

    def encoded(a, k):
        u = pauli_pair(group, ct, a, k)
        return (u @ phi).reshape(n * n)

    basis = {}
    for a in elements:
        for k in range(n):
            basis[(a, k)] = encoded(a, k)
    errors = 0
    max_off = 0.0
    ident = group.identity[group.objects[0]]
    for msg, vec in basis.items():
        best = None
        for other, w in basis.items():
            ov = abs(np.vdot(w, vec))
            if other == msg:
                if abs(ov - 1.0) > TOL:
                    errors += 1
            else:
                max_off = max(max_off, ov)
        # the identity message leaves the correlated pair untouched
        if msg == (ident, 0):
            if abs(abs(np.vdot(vec, phi.reshape(n * n))) - 1.0) > TOL:
                errors += 1
    decoded = None
    if message is not None:
        if message not in basis:
            raise InvalidElement("message must be (group element, character index)")
        sent = basis[message]
        decoded = max(basis, key=lambda other: abs(np.vdot(basis[other], sent)))
        if decoded != message:
            errors += 1
    return DenseCodingReport(
        group_order=n, messages=n * n, decode_errors=errors, max_offdiagonal=max_off,
        decoded_message=decoded,
    )
