"""Set files: the on-disk JSON form of a group subset plus its recipe.

A set file records the ambient group, the field (with its modulus, so
the file is self-contained), an optional generator recipe, and the
element list in canonical order.  Files with a generator can be
regenerated bit-for-bit, which the verify command uses to prove that a
stored corpus matches its recipes.  Files without a generator are
explicit element lists (hand-built or sampled once and frozen).

Generator kinds:

  random            size, seed: uniform distinct elements of the group
  subgroup          tag: all elements of a named subgroup
  coset             tag, rep: the left coset rep * subgroup
  box               n: Heisenberg brick [0,n) x [0,n) x [0,n^2), prime
                    field with p > 3 n^2 so products stay combinatorial
  perturbed_coset   tag, rep, swaps, seed: a coset with ``swaps`` random
                    elements exchanged for random outsiders
  union             parts: union of sub-generators
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .ffield import FieldSpec
from .groups import (
    GROUPS,
    H,
    T2,
    GroupSet,
    SubgroupTag,
    check_group_wire,
    element,
    wire_key,
)
from .jsonio import digest, read_json, write_json
from .rng import SplitMix64

SET_SCHEMA = "matgrowth.set.v1"


@dataclass(frozen=True)
class SetFile:
    group: str
    spec: FieldSpec
    generator: dict | None
    elements: GroupSet

    def to_json(self) -> dict:
        return {
            "schema": SET_SCHEMA,
            "group": self.group,
            "field": self.spec.to_json(),
            "generator": self.generator,
            "elements": [list(w) for w in self.elements.wires],
        }

    @property
    def elements_digest(self) -> str:
        return digest([list(w) for w in self.elements.wires])


def random_set(group: str, spec: FieldSpec, size: int, seed: int) -> GroupSet:
    """Uniform sample of distinct elements, by rejection over wire triples."""
    q = spec.q
    domain = (q - 1) * q * (q - 1) if group == T2 else q * q * q
    if size < 1 or size > domain:
        raise ParameterError(f"size {size} out of range for a group of order {domain}")
    rng = SplitMix64(seed)
    total = q * q * q
    got: set = set()
    while len(got) < size:
        w = rng.below(total)
        triple = (w // (q * q), (w // q) % q, w % q)
        if group == T2 and (triple[0] == 0 or triple[2] == 0):
            continue
        got.add(triple)
    return GroupSet(group, spec, got, _checked=True)


def box_set(spec: FieldSpec, n: int) -> GroupSet:
    """The Heisenberg brick with sides n, n, n^2 anchored at the origin."""
    if spec.r != 1:
        raise ParameterError("box sets are defined over prime fields")
    if n < 1:
        raise ParameterError("box side must be >= 1")
    if spec.p <= 3 * n * n:
        raise ParameterError(
            f"box({n}) needs p > {3 * n * n} so that products do not wrap"
        )
    wires = [
        (x, y, z) for x in range(n) for y in range(n) for z in range(n * n)
    ]
    return GroupSet(H, spec, wires, _checked=True)


def perturbed_coset(
    tag: SubgroupTag, rep, swaps: int, seed: int
) -> GroupSet:
    """A left coset with ``swaps`` members traded for random outsiders."""
    spec = rep.spec
    group = tag.group
    base = list(tag.coset(rep).wires)
    rng = SplitMix64(seed)
    q = spec.q
    total = q * q * q
    current = set(base)
    order = list(base)
    for _ in range(swaps):
        victim = order[rng.below(len(order))]
        while True:
            w = rng.below(total)
            triple = (w // (q * q), (w // q) % q, w % q)
            if group == T2 and (triple[0] == 0 or triple[2] == 0):
                continue
            if triple not in current:
                break
        current.discard(victim)
        current.add(triple)
        order[order.index(victim)] = triple
    return GroupSet(group, spec, current, _checked=True)


def generate(group: str, spec: FieldSpec, gen: dict) -> GroupSet:
    kind = gen.get("kind")
    if kind == "random":
        return random_set(group, spec, int(gen["size"]), int(gen["seed"]))
    if kind == "subgroup":
        tag = SubgroupTag.from_json(gen["tag"])
        if tag.group != group:
            raise ParameterError(f"tag {tag!r} is not a {group} subgroup")
        return tag.elements(spec)
    if kind == "coset":
        tag = SubgroupTag.from_json(gen["tag"])
        if tag.group != group:
            raise ParameterError(f"tag {tag!r} is not a {group} subgroup")
        rep = element(spec, group, tuple(int(x) for x in gen["rep"]))
        return tag.coset(rep)
    if kind == "box":
        if group != H:
            raise ParameterError("box sets live in the Heisenberg group")
        return box_set(spec, int(gen["n"]))
    if kind == "perturbed_coset":
        tag = SubgroupTag.from_json(gen["tag"])
        if tag.group != group:
            raise ParameterError(f"tag {tag!r} is not a {group} subgroup")
        rep = element(spec, group, tuple(int(x) for x in gen["rep"]))
        return perturbed_coset(tag, rep, int(gen["swaps"]), int(gen["seed"]))
    if kind == "union":
        parts = gen.get("parts") or []
        if not parts:
            raise ParameterError("union generator needs at least one part")
        out = generate(group, spec, parts[0])
        for part in parts[1:]:
            out = out.union(generate(group, spec, part))
        return out
    raise ParameterError(f"unknown generator kind {kind!r}")


def build_setfile(group: str, spec: FieldSpec, gen: dict) -> SetFile:
    return SetFile(group=group, spec=spec, generator=gen, elements=generate(group, spec, gen))


def explicit_setfile(elements: GroupSet) -> SetFile:
    return SetFile(
        group=elements.group, spec=elements.spec, generator=None, elements=elements
    )


def setfile_from_json(obj: dict) -> SetFile:
    if obj.get("schema") != SET_SCHEMA:
        raise ParameterError(f"not a set file (schema {obj.get('schema')!r})")
    group = obj.get("group")
    if group not in GROUPS:
        raise ParameterError(f"unknown group {group!r}")
    spec = FieldSpec.from_json(obj["field"])
    raw = obj.get("elements")
    if not isinstance(raw, list) or not raw:
        raise ParameterError("set file has no elements")
    wires = [check_group_wire(spec, group, tuple(int(x) for x in w)) for w in raw]
    keys = [wire_key(spec, w) for w in wires]
    if any(b <= a for a, b in zip(keys, keys[1:])):
        raise ParameterError("element list is not in canonical sorted order")
    return SetFile(
        group=group,
        spec=spec,
        generator=obj.get("generator"),
        elements=GroupSet(group, spec, wires, _checked=True),
    )


def load_setfile(path) -> SetFile:
    return setfile_from_json(read_json(path))


def save_setfile(path, sf: SetFile) -> None:
    write_json(path, sf.to_json())


def regenerate(sf: SetFile) -> GroupSet | None:
    """Rerun the stored recipe; None when the file is an explicit list."""
    if sf.generator is None:
        return None
    return generate(sf.group, sf.spec, sf.generator)
