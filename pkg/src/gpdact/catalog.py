"""Named finite groups and the groupoid catalog used by the check suites."""

from .errors import ParseError
from .groupoids import Groupoid, disjoint_union, group_as_groupoid

_MAX_CYCLIC = 16


def cyclic(n):
    if not 1 <= n <= _MAX_CYCLIC:
        raise ParseError("cyclic order out of range: %r" % n)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_as_groupoid(table, name="Z%d" % n)


def klein_four():
    # pairs under componentwise XOR, named by their bits
    names = ["00", "01", "10", "11"]
    idx = {nm: i for i, nm in enumerate(names)}
    table = [
        [idx["%d%d" % (int(a[0]) ^ int(b[0]), int(a[1]) ^ int(b[1]))] for b in names]
        for a in names
    ]
    return group_as_groupoid(table, names=names, name="Z2xZ2")


def _perm_group(perms, names, group_name):
    # compose(f, g) is "f then g": (f;g)(x) = g(f(x))
    idx = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            row.append(idx[tuple(q[p[i]] for i in range(len(p)))])
        table.append(row)
    return group_as_groupoid(table, names=names, name=group_name)


def symmetric_3():
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return _perm_group(perms, names, "S3")


def dihedral_4():
    # symmetries of a square on corners 0..3: rotations r0..r3, reflections s0..s3
    rot = (1, 2, 3, 0)
    flip = (0, 3, 2, 1)
    perms = []
    names = []
    p = (0, 1, 2, 3)
    for k in range(4):
        perms.append(p)
        names.append("r%d" % k)
        p = tuple(rot[i] for i in p)
    p = (0, 1, 2, 3)
    for k in range(4):
        perms.append(tuple(flip[i] for i in p))
        names.append("s%d" % k)
        p = tuple(rot[i] for i in p)
    return _perm_group(perms, names, "D4")


def quaternion_8():
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def unit(sign, axis):
        return names[{"1": 0, "i": 2, "j": 4, "k": 6}[axis] + (0 if sign > 0 else 1)]

    def split(x):
        sign = -1 if x.startswith("-") else 1
        return sign, x.lstrip("-")

    base = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    idx = {nm: t for t, nm in enumerate(names)}
    table = []
    for a in names:
        sa, xa = split(a)
        row = []
        for b in names:
            sb, xb = split(b)
            sc, xc = base[(xa, xb)]
            row.append(idx[unit(sa * sb * sc, xc)])
        table.append(row)
    return group_as_groupoid(table, names=names, name="Q8")


_BUILDERS = {
    "Z2xZ2": klein_four,
    "Z/2xZ/2": klein_four,
    "Z/2×Z/2": klein_four,
    "V4": klein_four,
    "S3": symmetric_3,
    "D4": dihedral_4,
    "Q8": quaternion_8,
}


def named_group(shorthand):
    """Resolve a group shorthand like Z4, Z/4, Z2xZ2, S3, D4, Q8."""
    if not isinstance(shorthand, str):
        raise ParseError("group shorthand must be a string")
    key = shorthand.strip()
    if key in _BUILDERS:
        return _BUILDERS[key]()
    norm = key.upper().replace("/", "")
    if norm in _BUILDERS:
        return _BUILDERS[norm]()
    if norm.startswith("Z"):
        try:
            n = int(norm[1:])
        except ValueError as exc:
            raise ParseError("unknown group shorthand %r" % shorthand) from exc
        return cyclic(n)
    raise ParseError("unknown group shorthand %r" % shorthand)


def catalog_groups():
    """The groups every acceptance battery runs over."""
    groups = [cyclic(n) for n in range(2, 9)]
    groups += [klein_four(), symmetric_3(), dihedral_4(), quaternion_8()]
    return groups


def catalog_groupoids():
    """Catalog groups, each alone and in a two-object disjoint union."""
    out = []
    for g in catalog_groups():
        out.append(g)
        out.append(disjoint_union(g, g))
    return out


def parse_element(groupoid: Groupoid, text):
    """Resolve a CLI element string against a groupoid's morphism names."""
    for m in groupoid.morphisms:
        if str(m) == text:
            return m
    try:
        value = int(text)
    except ValueError:
        value = None
    if value is not None and value in groupoid.morphisms:
        return value
    from .errors import InvalidElement

    raise InvalidElement("no element %r in %s" % (text, groupoid.name or "groupoid"))
