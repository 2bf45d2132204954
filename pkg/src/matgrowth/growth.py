"""Product sets, representation counts, and multiplicative energy.

All counts here are exact integers over explicit finite sets.  The only
approximate quantity anywhere downstream is a display decimal; every
inequality this module's results feed is checked in integer or rational
arithmetic.

The energy of a set A counts solutions of g1^-1 h1 = g2^-1 h2 with all
four elements in A, i.e. the second moment of the representation function
of the quotient set A^-1 A.  ``energy`` computes it by hash join in
O(|A|^2); ``energy_oracle`` recounts it by brute force over quadruples
(via a pairwise-equality matrix) and exists so tests can cross-check the
fast path on small sets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, ParameterError
from .groups import GroupSet, Wire, gid, ginv, gmul


def product_set(A: GroupSet, B: GroupSet, cap: int = 10**7) -> GroupSet:
    """AB = {ab : a in A, b in B}; the pair count is capped, not the result."""
    A.same_ambient(B)
    if len(A) * len(B) > cap:
        raise CapExceeded(
            f"product of {len(A)} x {len(B)} elements exceeds pair cap {cap}"
        )
    spec = A.spec
    group = A.group
    out = {gmul(spec, group, a, b) for a in A.wires for b in B.wires}
    return GroupSet(group, spec, out, _checked=True)


def power_set(A: GroupSet, k: int, cap: int = 10**7) -> GroupSet:
    """A^k for k >= 1 by repeated one-sided products."""
    if k < 1:
        raise ParameterError(f"power must be >= 1, got {k}")
    out = A
    for _ in range(k - 1):
        out = product_set(out, A, cap=cap)
    return out


def symmetrized_power(A: GroupSet, k: int, cap: int = 10**7) -> GroupSet:
    """(A u A^-1 u {1})^k, the k-th symmetrized power."""
    return power_set(A.symmetrized(), k, cap=cap)


def rep_function(A: GroupSet, B: GroupSet, mode: str = "inverse_left") -> Counter:
    """Multiplicity of each product over A x B.

    mode "inverse_left" counts a^-1 b (the quotient-set multiplicities);
    mode "plain" counts ab.  Keys are wire triples; values sum to |A||B|.
    """
    A.same_ambient(B)
    spec = A.spec
    group = A.group
    counts: Counter = Counter()
    if mode == "inverse_left":
        left = [ginv(spec, group, a) for a in A.wires]
    elif mode == "plain":
        left = list(A.wires)
    else:
        raise ParameterError(f"unknown rep mode {mode!r}")
    for a in left:
        for b in B.wires:
            counts[gmul(spec, group, a, b)] += 1
    return counts


def energy(A: GroupSet) -> int:
    """E(A) = #{(g1,h1,g2,h2) in A^4 : g1^-1 h1 = g2^-1 h2}."""
    return sum(v * v for v in rep_function(A, A, mode="inverse_left").values())


def product_energy(A: GroupSet) -> int:
    """E*(A), the same second moment for plain products g h."""
    return sum(v * v for v in rep_function(A, A, mode="plain").values())


def energy_oracle(A: GroupSet, cap: int = 60) -> int:
    """Quadruple count of E(A) done the slow direct way.

    Builds the |A|^2 vector of packed a^-1 b wires and counts coincidences
    with a pairwise-equality matrix, which is the literal quadruple
    definition.  Quadratic memory, so capped to small sets.
    """
    import numpy as np

    n = len(A)
    if n > cap:
        raise CapExceeded(f"oracle limited to sets of size <= {cap}, got {n}")
    spec = A.spec
    group = A.group
    q = spec.q
    packed = []
    for a in A.wires:
        ai = ginv(spec, group, a)
        for b in A.wires:
            w = gmul(spec, group, ai, b)
            packed.append((w[0] * q + w[1]) * q + w[2])
    v = np.asarray(packed, dtype=np.int64)
    return int((v[:, None] == v[None, :]).sum())


def tripling_constant(A: GroupSet, cap: int = 10**7) -> Fraction:
    """K = |A^3| / |A| as an exact fraction."""
    if len(A) == 0:
        raise ParameterError("tripling of an empty set")
    return Fraction(len(power_set(A, 3, cap=cap)), len(A))


@dataclass(frozen=True)
class LemmaPart:
    name: str
    holds: bool
    lhs: int
    rhs: int
    note: str = ""


@dataclass(frozen=True)
class LemmaReport:
    parts: tuple[LemmaPart, ...]
    sizes: dict[str, int]

    @property
    def all_hold(self) -> bool:
        return all(p.holds for p in self.parts)


def tripling_lemma_check(A: GroupSet, k: int = 3, cap: int = 10**7) -> LemmaReport:
    """Exact verification of the symmetrized-power growth inequalities.

    Checked parts, writing A(k) for the k-th symmetrized power:
      three_step:  |A(3)| * |A|^2  <=  27 * |A^3|^3
      k_step:      |A(k)| * |A(1)|^(k-3)  <=  |A(3)|^(k-2)   (for k >= 3)

    The k_step inequality is only asserted for k >= 3 (it is the iterated
    triangle inequality and needs at least one full step); for smaller k
    it is reported as vacuously true with a note.
    """
    n = len(A)
    if n == 0:
        raise ParameterError("lemma check on an empty set")
    sym1 = A.symmetrized()
    sym3 = power_set(sym1, 3, cap=cap)
    cube = power_set(A, 3, cap=cap)
    sizes = {"sym1": len(sym1), "sym3": len(sym3), "cube": len(cube)}
    parts = [
        LemmaPart(
            name="three_step",
            holds=len(sym3) * n * n <= 27 * len(cube) ** 3,
            lhs=len(sym3) * n * n,
            rhs=27 * len(cube) ** 3,
        )
    ]
    if k >= 3:
        symk = power_set(sym1, k, cap=cap) if k > 3 else sym3
        sizes[f"sym{k}"] = len(symk)
        lhs = len(symk) * len(sym1) ** (k - 3)
        rhs = len(sym3) ** (k - 2)
        parts.append(LemmaPart(name=f"k_step[{k}]", holds=lhs <= rhs, lhs=lhs, rhs=rhs))
    else:
        parts.append(
            LemmaPart(
                name=f"k_step[{k}]",
                holds=True,
                lhs=0,
                rhs=0,
                note="vacuous below k=3",
            )
        )
    return LemmaReport(parts=tuple(parts), sizes=sizes)


def quotient_set(A: GroupSet, cap: int = 10**7) -> GroupSet:
    """A^-1 A as a set."""
    return product_set(A.inverses(), A, cap=cap)


def coset_count_check(B: GroupSet, tag) -> tuple[bool, int, int]:
    """|B| <= #left-cosets of the tagged subgroup met by B, times the
    largest coset fiber.  Returns (holds, coset_count * max_fiber, |B|)."""
    spec = B.spec
    fibers: Counter = Counter()
    for w in B.wires:
        fibers[tag.coset_key(spec, w)] += 1
    if not fibers:
        return True, 0, 0
    bound = len(fibers) * max(fibers.values())
    return len(B) <= bound, bound, len(B)


def orbit_stabilizer_check(
    A: GroupSet, B: GroupSet, tag, cap: int = 10**7
) -> tuple[bool, int, int]:
    """|AB| >= |H n B| * #(distinct cosets AH), the set-level
    orbit-stabiliser inequality.  Returns (holds, |AB|, bound)."""
    A.same_ambient(B)
    spec = A.spec
    cosets = {tag.coset_key(spec, w) for w in A.wires}
    slab = sum(1 for w in B.wires if tag.member(spec, w))
    bound = slab * len(cosets)
    prod = len(product_set(A, B, cap=cap))
    return prod >= bound, prod, bound


def intersection_power_check(
    A: GroupSet, tag, k: int, cap: int = 10**7
) -> tuple[bool, int, int]:
    """With B = A^-1 A n H: |B^k| <= |A(2k) n H|.

    Returns (holds, |B^k|, |A(2k) n H|).
    """
    if k < 1:
        raise ParameterError(f"power must be >= 1, got {k}")
    spec = A.spec
    group = A.group
    B = GroupSet(
        group,
        spec,
        (w for w in quotient_set(A, cap=cap).wires if tag.member(spec, w)),
        _checked=True,
    )
    if len(B) == 0:
        return True, 0, 0
    Bk = power_set(B, k, cap=cap)
    big = symmetrized_power(A, 2 * k, cap=cap)
    cut = sum(1 for w in big.wires if tag.member(spec, w))
    return len(Bk) <= cut, len(Bk), cut


def covering_check(A: GroupSet, tag, cap: int = 10**7) -> tuple[bool, int]:
    """A is covered by per-coset translates of A^-1 A n N, for normal N.

    Picks one representative per N-coset met by A and verifies
    A <= reps * ((A^-1 A n N) u {1}) elementwise.  Returns (holds, #reps).
    """
    spec = A.spec
    group = A.group
    if not tag.is_normal:
        raise ParameterError(f"covering check needs a normal subgroup, not {tag.kind}")
    core = {w for w in quotient_set(A, cap=cap).wires if tag.member(spec, w)}
    core.add(gid(group))
    reps: dict[tuple, Wire] = {}
    for a in A.wires:
        reps.setdefault(tag.coset_key(spec, a), a)
    if len(reps) * len(core) > cap:
        raise CapExceeded(f"covering product exceeds pair cap {cap}")
    covered = set()
    for r in reps.values():
        for h in core:
            covered.add(gmul(spec, group, r, h))
    return all(w in covered for w in A.wires), len(reps)
