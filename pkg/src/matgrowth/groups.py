"""Two ambient matrix groups over a finite field, in coordinate form.

T2 is the group of invertible upper-triangular 2x2 matrices, stored as the
triple (a, b, c) for [[a, b], [0, c]] with a, c nonzero.  H is the
Heisenberg group of unitriangular 3x3 matrices, stored as the free triple
(g1, g2, g3) for the two superdiagonal entries and the corner.  No matrix
type is involved; multiplication uses the closed-form products directly.

Wire-level kernels (``gmul``, ``ginv``, ...) act on integer wire triples
and are what the counting code uses.  ``T2Element``/``HeisElement`` wrap
triples for the operator API.  ``GroupSet`` is a deduplicated, canonically
ordered set of wire triples with its ambient group tag.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, MismatchError, ParameterError
from .ffield import FieldElement, FieldSpec

T2 = "T2"
H = "H"
GROUPS = (T2, H)

Wire = tuple[int, int, int]


# -- wire kernels ----------------------------------------------------------

def t2_mul(spec: FieldSpec, g: Wire, h: Wire) -> Wire:
    # [[a,b],[0,c]] [[a',b'],[0,c']] = [[aa', ab'+bc'], [0, cc']]
    return (
        spec.mul(g[0], h[0]),
        spec.add(spec.mul(g[0], h[1]), spec.mul(g[1], h[2])),
        spec.mul(g[2], h[2]),
    )


def t2_inv(spec: FieldSpec, g: Wire) -> Wire:
    ai = spec.inv(g[0])
    ci = spec.inv(g[2])
    return (ai, spec.neg(spec.mul(g[1], spec.mul(ai, ci))), ci)


def heis_mul(spec: FieldSpec, g: Wire, h: Wire) -> Wire:
    return (
        spec.add(g[0], h[0]),
        spec.add(g[1], h[1]),
        spec.add(spec.add(g[2], h[2]), spec.mul(g[0], h[1])),
    )


def heis_inv(spec: FieldSpec, g: Wire) -> Wire:
    return (
        spec.neg(g[0]),
        spec.neg(g[1]),
        spec.add(spec.neg(g[2]), spec.mul(g[0], g[1])),
    )


def gmul(spec: FieldSpec, group: str, g: Wire, h: Wire) -> Wire:
    return t2_mul(spec, g, h) if group == T2 else heis_mul(spec, g, h)


def ginv(spec: FieldSpec, group: str, g: Wire) -> Wire:
    return t2_inv(spec, g) if group == T2 else heis_inv(spec, g)


def gid(group: str) -> Wire:
    return (1, 0, 1) if group == T2 else (0, 0, 0)


def check_group_wire(spec: FieldSpec, group: str, w: Sequence[int]) -> Wire:
    if group not in GROUPS:
        raise ParameterError(f"unknown group tag {group!r}")
    if len(w) != 3:
        raise ParameterError(f"group element wire must be a triple, got {w!r}")
    t = (spec.check_wire(w[0]), spec.check_wire(w[1]), spec.check_wire(w[2]))
    if group == T2 and (t[0] == 0 or t[2] == 0):
        raise ParameterError(f"not invertible in T2: diagonal contains zero in {list(t)}")
    return t


# -- element wrappers -------------------------------------------------------

class T2Element:
    """Upper-triangular [[a, b], [0, c]] with a, c nonzero."""

    __slots__ = ("spec", "wires")
    group = T2

    def __init__(self, spec: FieldSpec, wires: Sequence[int]):
        self.spec = spec
        self.wires = check_group_wire(spec, T2, wires)

    @classmethod
    def identity(cls, spec: FieldSpec) -> "T2Element":
        return cls(spec, (1, 0, 1))

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.spec, self.wires[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.spec, self.wires[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.spec, self.wires[2])

    def __mul__(self, other: "T2Element") -> "T2Element":
        if not isinstance(other, T2Element):
            return NotImplemented
        if other.spec != self.spec:
            raise MismatchError("elements over different fields")
        return T2Element(self.spec, t2_mul(self.spec, self.wires, other.wires))

    def inv(self) -> "T2Element":
        return T2Element(self.spec, t2_inv(self.spec, self.wires))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, T2Element)
            and self.spec == other.spec
            and self.wires == other.wires
        )

    def __hash__(self) -> int:
        return hash((T2, self.spec._hash, self.wires))

    def __repr__(self) -> str:
        return f"T2{self.wires}"


class HeisElement:
    """Unitriangular 3x3 element (g1, g2, g3); all coordinates are free."""

    __slots__ = ("spec", "wires")
    group = H

    def __init__(self, spec: FieldSpec, wires: Sequence[int]):
        self.spec = spec
        self.wires = check_group_wire(spec, H, wires)

    @classmethod
    def identity(cls, spec: FieldSpec) -> "HeisElement":
        return cls(spec, (0, 0, 0))

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        if not isinstance(other, HeisElement):
            return NotImplemented
        if other.spec != self.spec:
            raise MismatchError("elements over different fields")
        return HeisElement(self.spec, heis_mul(self.spec, self.wires, other.wires))

    def inv(self) -> "HeisElement":
        return HeisElement(self.spec, heis_inv(self.spec, self.wires))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeisElement)
            and self.spec == other.spec
            and self.wires == other.wires
        )

    def __hash__(self) -> int:
        return hash((H, self.spec._hash, self.wires))

    def __repr__(self) -> str:
        return f"H{self.wires}"


GroupElement = T2Element | HeisElement


def element(spec: FieldSpec, group: str, wires: Sequence[int]) -> GroupElement:
    return T2Element(spec, wires) if group == T2 else HeisElement(spec, wires)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """g^-1 h^-1 g h; lands in the unipotent part of either group."""
    if type(g) is not type(h):
        raise MismatchError("commutator of elements from different groups")
    return g.inv() * h.inv() * g * h


# -- T2 structure maps -------------------------------------------------------

def diag_ratio(g: T2Element) -> FieldElement:
    """a / c.  Multiplicative onto F_q*; its fibers partition T2."""
    return FieldElement(g.spec, g.spec.div(g.wires[0], g.wires[2]))


def diag_part(g: T2Element) -> T2Element:
    """Forget the corner: (a, 0, c).  A homomorphism onto the diagonal."""
    return T2Element(g.spec, (g.wires[0], 0, g.wires[2]))


def affine_part(g: T2Element) -> T2Element:
    """Scale to unit determinant on the (2,2) slot: (a/c, b/c, 1).

    This is the projection to the affine group {(a, b, 1)}; its kernel is
    the scalar subgroup.
    """
    spec = g.spec
    ci = spec.inv(g.wires[2])
    return T2Element(spec, (spec.mul(g.wires[0], ci), spec.mul(g.wires[1], ci), 1))


# -- canonical element order and sets ----------------------------------------

def wire_key(spec: FieldSpec, w: Wire) -> int:
    return (w[0] * spec.q + w[1]) * spec.q + w[2]


class GroupSet:
    """A multiplicity-free set of group elements in canonical order.

    Elements are stored as wire triples sorted by their packed integer key;
    that order is also the sample space of the random generator, so a
    GroupSet serializes identically no matter how it was assembled.
    """

    __slots__ = ("group", "spec", "wires", "_index")

    def __init__(self, group: str, spec: FieldSpec, wires: Iterable[Wire], _checked: bool = False):
        if group not in GROUPS:
            raise ParameterError(f"unknown group tag {group!r}")
        self.group = group
        self.spec = spec
        if _checked:
            uniq = set(wires)
        else:
            uniq = {check_group_wire(spec, group, w) for w in wires}
        self.wires = tuple(sorted(uniq, key=lambda w: wire_key(spec, w)))
        self._index = frozenset(self.wires)

    @classmethod
    def from_members(cls, members: Iterable[GroupElement]) -> "GroupSet":
        members = list(members)
        if not members:
            raise ParameterError("cannot infer group from an empty member list")
        first = members[0]
        for m in members:
            if type(m) is not type(first) or m.spec != first.spec:
                raise MismatchError("members from different groups or fields")
        return cls(first.group, first.spec, (m.wires for m in members), _checked=True)

    def members(self) -> Iterator[GroupElement]:
        for w in self.wires:
            yield element(self.spec, self.group, w)

    def __len__(self) -> int:
        return len(self.wires)

    def __iter__(self) -> Iterator[Wire]:
        return iter(self.wires)

    def __contains__(self, item) -> bool:
        if isinstance(item, (T2Element, HeisElement)):
            return item.group == self.group and item.spec == self.spec and item.wires in self._index
        return tuple(item) in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSet)
            and self.group == other.group
            and self.spec == other.spec
            and self.wires == other.wires
        )

    def __hash__(self) -> int:
        return hash((self.group, self.spec._hash, self.wires))

    def __repr__(self) -> str:
        return f"GroupSet({self.group}, q={self.spec.q}, n={len(self.wires)})"

    def same_ambient(self, other: "GroupSet") -> None:
        if self.group != other.group or self.spec != other.spec:
            raise MismatchError("sets live in different ambient groups")

    def inverses(self) -> "GroupSet":
        spec = self.spec
        return GroupSet(
            self.group, spec, (ginv(spec, self.group, w) for w in self.wires), _checked=True
        )

    def symmetrized(self) -> "GroupSet":
        """A together with its inverses and the identity."""
        spec = self.spec
        wires = set(self.wires)
        wires.update(ginv(spec, self.group, w) for w in self.wires)
        wires.add(gid(self.group))
        return GroupSet(self.group, spec, wires, _checked=True)

    def union(self, other: "GroupSet") -> "GroupSet":
        self.same_ambient(other)
        return GroupSet(self.group, self.spec, self._index | other._index, _checked=True)

    @property
    def is_symmetric(self) -> bool:
        spec = self.spec
        return all(ginv(spec, self.group, w) in self._index for w in self.wires)

    @property
    def has_identity(self) -> bool:
        return gid(self.group) in self._index

    def subset_of(self, other: "GroupSet") -> bool:
        self.same_ambient(other)
        return self._index <= other._index


def generated_closure(seeds: GroupSet, cap: int = 10**6) -> GroupSet:
    """Subgroup generated by the seeds, by breadth-first products.

    Raises :class:`CapExceeded` (with the partial size) if the closure
    outgrows the cap before stabilizing.
    """
    spec = seeds.spec
    group = seeds.group
    gens = set(seeds.wires)
    gens.update(ginv(spec, group, w) for w in seeds.wires)
    gens.add(gid(group))
    closed = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for f in frontier:
            for g in gens:
                w = gmul(spec, group, f, g)
                if w not in closed:
                    closed.add(w)
                    new.append(w)
                    if len(closed) > cap:
                        raise CapExceeded(
                            f"closure exceeded cap {cap}", partial_size=len(closed)
                        )
        frontier = new
    return GroupSet(group, spec, closed, _checked=True)


# -- named subgroups ---------------------------------------------------------

_T2_KINDS = ("unipotent", "scalars", "diagonal", "torus", "scaled_unipotent", "scaled_torus")
_H_KINDS = ("center", "line", "line_center")

# Kinds whose subgroup is normal in its ambient group.  The diagonal and the
# tori are self-normalizing, not normal; a "line" with both direction
# coordinates nonzero is not even closed under the product (see is_subgroup).
_NORMAL_KINDS = frozenset({"unipotent", "scalars", "scaled_unipotent", "center", "line_center"})


class SubgroupTag:
    """A named coordinate subgroup (or section) used for membership counting.

    T2 kinds: unipotent (a=c=1), scalars (a=c, b=0), diagonal (b=0),
    torus(x) (b=(a-c)x), scaled_unipotent (a=c), scaled_torus(x) (alias of
    torus(x): the scalars already sit inside every torus).

    H kinds: center (g1=g2=0), line(d) (g3=0 and the base point lies on the
    line through the origin with normal d), line_center(d) (the same base
    constraint with a free corner).  Directions are stored projectively,
    first nonzero coordinate scaled to one.
    """

    __slots__ = ("kind", "x", "direction")

    def __init__(
        self,
        kind: str,
        x: int | None = None,
        direction: tuple[int, int] | None = None,
    ):
        if kind not in _T2_KINDS and kind not in _H_KINDS:
            raise ParameterError(f"unknown subgroup kind {kind!r}")
        if kind in ("torus", "scaled_torus"):
            if x is None:
                raise ParameterError(f"{kind} requires the parameter x")
        elif x is not None:
            raise ParameterError(f"{kind} takes no parameter x")
        if kind in ("line", "line_center"):
            if direction is None:
                raise ParameterError(f"{kind} requires a direction")
            if direction[0] == 0 and direction[1] == 0:
                raise ParameterError("direction must be a nonzero pair")
        elif direction is not None:
            raise ParameterError(f"{kind} takes no direction")
        self.kind = kind
        self.x = x
        self.direction = direction

    @property
    def group(self) -> str:
        return T2 if self.kind in _T2_KINDS else H

    @property
    def is_normal(self) -> bool:
        return self.kind in _NORMAL_KINDS

    def is_subgroup(self, spec: FieldSpec) -> bool:
        """Whether the member set is closed under the group product.

        Every kind is, except a line with both direction coordinates
        nonzero: there the corner of a product picks up a nonzero cross
        term and leaves the g3 = 0 slice.
        """
        if self.kind != "line":
            return True
        alpha, beta = self._normal_wires(spec)
        return alpha == 0 or beta == 0

    def _normal_wires(self, spec: FieldSpec) -> tuple[int, int]:
        # normalize the direction projectively: first nonzero becomes 1
        alpha, beta = self.direction
        alpha = spec.check_wire(alpha)
        beta = spec.check_wire(beta)
        if alpha != 0:
            s = spec.inv(alpha)
        else:
            s = spec.inv(beta)
        return spec.mul(alpha, s), spec.mul(beta, s)

    def member(self, spec: FieldSpec, w: Wire) -> bool:
        k = self.kind
        if k == "unipotent":
            return w[0] == 1 and w[2] == 1
        if k == "scalars":
            return w[0] == w[2] and w[1] == 0
        if k == "diagonal":
            return w[1] == 0
        if k == "scaled_unipotent":
            return w[0] == w[2]
        if k in ("torus", "scaled_torus"):
            x = spec.check_wire(self.x)
            return w[1] == spec.mul(spec.sub(w[0], w[2]), x)
        if k == "center":
            return w[0] == 0 and w[1] == 0
        alpha, beta = self._normal_wires(spec)
        on_line = spec.add(spec.mul(alpha, w[0]), spec.mul(beta, w[1])) == 0
        if k == "line":
            return on_line and w[2] == 0
        return on_line  # line_center

    def elements(self, spec: FieldSpec) -> GroupSet:
        k = self.kind
        q = spec.q
        nonzero = range(1, q)
        if k == "unipotent":
            wires = [(1, b, 1) for b in range(q)]
        elif k == "scalars":
            wires = [(a, 0, a) for a in nonzero]
        elif k == "diagonal":
            wires = [(a, 0, c) for a in nonzero for c in nonzero]
        elif k in ("torus", "scaled_torus"):
            x = spec.check_wire(self.x)
            wires = [
                (a, spec.mul(spec.sub(a, c), x), c) for a in nonzero for c in nonzero
            ]
        elif k == "scaled_unipotent":
            wires = [(a, b, a) for a in nonzero for b in range(q)]
        elif k == "center":
            wires = [(0, 0, t) for t in range(q)]
        else:
            alpha, beta = self._normal_wires(spec)
            # base points on the line: multiples of the spanning vector (beta, -alpha)
            bases = [(spec.mul(s, beta), spec.mul(s, spec.neg(alpha))) for s in range(q)]
            if k == "line":
                wires = [(b1, b2, 0) for b1, b2 in bases]
            else:
                wires = [(b1, b2, t) for b1, b2 in bases for t in range(q)]
        return GroupSet(self.group, spec, wires, _checked=True)

    def coset_key(self, spec: FieldSpec, w: Wire) -> tuple:
        """Invariant separating left cosets: equal keys, same coset gH.

        Each kind has a closed-form invariant (checked against explicit
        coset enumeration in the test suite), so coset bookkeeping never
        needs to multiply out a coset.  Only defined when the member set
        is an actual subgroup.
        """
        k = self.kind
        if k == "unipotent":
            return (w[0], w[2])
        if k == "scalars":
            return (spec.div(w[1], w[0]), spec.div(w[2], w[0]))
        if k == "diagonal":
            return (spec.div(w[1], w[2]),)
        if k in ("torus", "scaled_torus"):
            x = spec.check_wire(self.x)
            return (spec.div(spec.sub(w[1], spec.mul(w[0], x)), w[2]),)
        if k == "scaled_unipotent":
            return (spec.div(w[0], w[2]),)
        if k == "center":
            return (w[0], w[1])
        alpha, beta = self._normal_wires(spec)
        if k == "line_center":
            return (spec.add(spec.mul(alpha, w[0]), spec.mul(beta, w[1])),)
        if alpha != 0 and beta != 0:
            raise ParameterError("this line is not a subgroup; cosets are undefined")
        if alpha == 0:
            return (w[1], w[2])
        return (w[0], spec.sub(w[2], spec.mul(w[0], w[1])))

    def coset(self, rep: GroupElement) -> GroupSet:
        """Left coset rep * subgroup as an explicit set."""
        if rep.group != self.group:
            raise MismatchError(f"representative is in {rep.group}, tag is for {self.group}")
        spec = rep.spec
        base = self.elements(spec)
        return GroupSet(
            self.group,
            spec,
            (gmul(spec, self.group, rep.wires, w) for w in base.wires),
            _checked=True,
        )

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.x is not None:
            out["x"] = self.x
        if self.direction is not None:
            out["direction"] = list(self.direction)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SubgroupTag":
        direction = obj.get("direction")
        if direction is not None:
            direction = (int(direction[0]), int(direction[1]))
        return cls(obj["kind"], x=obj.get("x"), direction=direction)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupTag)
            and self.kind == other.kind
            and self.x == other.x
            and self.direction == other.direction
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.x, self.direction))

    def __repr__(self) -> str:
        extra = ""
        if self.x is not None:
            extra = f", x={self.x}"
        if self.direction is not None:
            extra = f", direction={self.direction}"
        return f"SubgroupTag({self.kind}{extra})"
