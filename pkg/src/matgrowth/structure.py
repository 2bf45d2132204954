"""Growth-structure scan for subsets of the upper-triangular group.

Given A with small tripling, the scan decides between two shapes:

  POTENT      the diagonal-ratio image of A is tiny next to the tripling
              constant, i.e. A concentrates on few cosets of the
              scaled-unipotent subgroup; the report measures the overlap
              of A^2 with that subgroup directly.

  UNIPOTENT   otherwise the ratio image D is rich enough to span a
              subfield F, and the unipotent slice of A's fourth power
              spans an F-subspace W whose lift u(W) should be covered by
              a bounded power of A.  Four certificates pin the claim; the
              only one that can genuinely fail is reachability of the
              lifted span inside the power budget.

The companion ``sum_product_scan`` measures the additive expansion of the
corner set X under dilation by D, and searches for the smallest l with
Span_F(X) inside the l-fold difference set of DX.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import StructureOptions
from .errors import CapExceeded, ParameterError
from .ffield import FieldElement, span_over_subfield, subfield_generated_by
from .groups import T2, GroupSet, ginv, gmul
from .growth import power_set, product_set

POTENT = "POTENT"
UNIPOTENT = "UNIPOTENT"
INCONCLUSIVE = "INCONCLUSIVE"


def unipotent_lift(spec, corner_wires) -> GroupSet:
    return GroupSet(T2, spec, ((1, x, 1) for x in corner_wires), _checked=True)


def unipotent_corners(S: GroupSet) -> tuple[int, ...]:
    """Corner entries of the elements with trivial diagonal, sorted."""
    return tuple(sorted(w[1] for w in S.wires if w[0] == 1 and w[2] == 1))


def ratio_image(S: GroupSet) -> tuple[int, ...]:
    spec = S.spec
    return tuple(sorted({spec.div(w[0], w[2]) for w in S.wires}))


@dataclass(frozen=True)
class Certificate:
    name: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    verdict: str
    symmetrized: bool
    working_size: int
    tripling: Fraction
    ratio_class_count: int
    threshold: Fraction
    # potent branch
    overlap: int | None = None
    overlap_ratio: Fraction | None = None
    # unipotent branch
    subfield_degree: int | None = None
    subfield_size: int | None = None
    corner_count: int | None = None
    span_size: int | None = None
    reach_power: int | None = None
    certificates: tuple[Certificate, ...] = ()

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.certificates if not c.holds)


def working_set(A: GroupSet) -> tuple[GroupSet, bool]:
    """A itself when already symmetric with identity, else its closure."""
    if A.has_identity and A.is_symmetric:
        return A, False
    return A.symmetrized(), True


def structure_scan(A: GroupSet, opts: StructureOptions | None = None) -> StructureReport:
    if A.group != T2:
        raise ParameterError("structure scan is defined for T2 sets")
    if len(A) == 0:
        raise ParameterError("structure scan of an empty set")
    opts = opts or StructureOptions()
    spec = A.spec
    work, symmetrized = working_set(A)
    cube = power_set(work, 3, cap=opts.pair_cap)
    tripling = Fraction(len(cube), len(work))
    D = ratio_image(work)
    threshold = max(tripling**opts.potent_exponent, Fraction(opts.potent_floor))
    base = dict(
        symmetrized=symmetrized,
        working_size=len(work),
        tripling=tripling,
        ratio_class_count=len(D),
        threshold=threshold,
    )

    square = product_set(work, work, cap=opts.pair_cap)
    if len(D) <= threshold:
        overlap = sum(1 for w in square.wires if w[0] == w[2])
        return StructureReport(
            verdict=POTENT,
            overlap=overlap,
            overlap_ratio=Fraction(overlap, len(work)),
            **base,
        )

    fourth = product_set(square, square, cap=opts.pair_cap)
    X = unipotent_corners(fourth)
    F = subfield_generated_by(FieldElement(spec, d) for d in D)
    span = span_over_subfield(
        (FieldElement(spec, x) for x in X), F, cap=opts.span_cap
    )
    span_wires = frozenset(e.wire for e in span)
    lifted = unipotent_lift(spec, span_wires)

    certs = [
        _cert_dilated_sums_in_span(spec, X, D, span_wires),
        _cert_span_reachable(work, lifted, opts),
        _cert_conjugation_stable(spec, D, span_wires),
        _cert_commutators_in_span(work, span_wires),
    ]
    reach = next(
        (int(c.detail) for c in certs if c.name == "span_reachable" and c.holds), None
    )
    verdict = UNIPOTENT if all(c.holds for c in certs) else INCONCLUSIVE
    return StructureReport(
        verdict=verdict,
        subfield_degree=F.degree,
        subfield_size=F.size,
        corner_count=len(X),
        span_size=len(span_wires),
        reach_power=reach,
        certificates=tuple(certs),
        **base,
    )


def _cert_dilated_sums_in_span(spec, X, D, span_wires) -> Certificate:
    """x + d * x' stays in the span, for all corners x, x' and ratios d.

    True for any F-subspace containing X once D generates F; evaluated
    exhaustively anyway as a consistency check on the span computation.
    """
    if len(X) * len(X) * len(D) > 10**7:
        raise CapExceeded("dilated-sum certificate too large to enumerate")
    for x1 in X:
        for d in D:
            for x2 in X:
                if spec.add(x1, spec.mul(d, x2)) not in span_wires:
                    return Certificate(
                        "dilated_sums_in_span",
                        False,
                        f"x={x1} d={d} x'={x2}",
                    )
    return Certificate("dilated_sums_in_span", True)


def _cert_span_reachable(work: GroupSet, lifted: GroupSet, opts: StructureOptions) -> Certificate:
    """The lifted span is inside some power of the working set.

    Reports the smallest exponent within the budget; this is the only
    certificate with genuine failure modes (budget too small, or the set
    does not actually generate the span).
    """
    cur = work
    for k in range(1, opts.reach_budget + 1):
        if lifted.subset_of(cur):
            return Certificate("span_reachable", True, str(k))
        if k < opts.reach_budget:
            cur = product_set(cur, work, cap=opts.pair_cap)
    return Certificate(
        "span_reachable", False, f"not reached within budget {opts.reach_budget}"
    )


def _cert_conjugation_stable(spec, D, span_wires) -> Certificate:
    """Conjugating u(w) by any a in A scales the corner by the ratio of a,
    so stability of the span under D-dilation is what is checked."""
    for d in D:
        for w in span_wires:
            if spec.mul(d, w) not in span_wires:
                return Certificate("conjugation_stable", False, f"d={d} w={w}")
    return Certificate("conjugation_stable", True)


def _cert_commutators_in_span(work: GroupSet, span_wires) -> Certificate:
    """Commutators of working-set elements land in the lifted span."""
    spec = work.spec
    if len(work) * len(work) > 10**7:
        raise CapExceeded("commutator certificate too large to enumerate")
    inv = {w: ginv(spec, T2, w) for w in work.wires}
    for a in work.wires:
        for b in work.wires:
            c = gmul(spec, T2, gmul(spec, T2, inv[a], inv[b]), gmul(spec, T2, a, b))
            if c[0] != 1 or c[2] != 1 or c[1] not in span_wires:
                return Certificate("commutators_in_span", False, f"a={a} b={b}")
    return Certificate("commutators_in_span", True)


# -- additive expansion of the corner set -------------------------------------

@dataclass(frozen=True)
class SumProductReport:
    corner_count: int
    ratio_class_count: int
    dilate_count: int
    sum_count: int
    expansion: Fraction
    subfield_size: int
    span_size: int
    dichotomy_low_expansion: bool
    dichotomy_spanning: bool
    containment_steps: int | None

    @property
    def dichotomy_holds(self) -> bool:
        return self.dichotomy_low_expansion or self.dichotomy_spanning


def sum_product_scan(A: GroupSet, opts: StructureOptions | None = None) -> SumProductReport:
    """Expansion of X under X + DX, against the subfield alternative.

    X is the corner set of the fourth power of the working set and D the
    ratio image, as in the structure scan.  The dichotomy asserts that
    either the expansion ratio K' already detects D (K'^10 >= |D|) or X
    essentially fills its span (2 |X| K'^4 >= |Span_F(X)|).  The
    containment search looks for the least l <= 6 with the span inside
    the l-fold difference set of DX.
    """
    if A.group != T2:
        raise ParameterError("sum-product scan is defined for T2 sets")
    opts = opts or StructureOptions()
    spec = A.spec
    work, _ = working_set(A)
    fourth = power_set(work, 4, cap=opts.pair_cap)
    X = unipotent_corners(fourth)
    D = ratio_image(work)
    F = subfield_generated_by(FieldElement(spec, d) for d in D)
    span = span_over_subfield((FieldElement(spec, x) for x in X), F, cap=opts.span_cap)
    span_wires = frozenset(e.wire for e in span)

    DX = sorted({spec.mul(d, x) for d in D for x in X})
    sums = {spec.add(x, t) for x in X for t in DX}
    expansion = Fraction(len(sums), len(X))
    low = expansion**10 >= len(D)
    spanning = 2 * len(X) * expansion**4 >= len(span_wires)

    containment = None
    fold = set(DX)
    for steps in range(1, 7):
        if steps > 1:
            if len(fold) * len(DX) > opts.pair_cap:
                break
            fold = {spec.add(s, t) for s in fold for t in DX}
        if len(fold) ** 2 > opts.pair_cap:
            break
        diffs = {spec.sub(s, t) for s in fold for t in fold}
        if span_wires <= diffs:
            containment = steps
            break

    return SumProductReport(
        corner_count=len(X),
        ratio_class_count=len(D),
        dilate_count=len(DX),
        sum_count=len(sums),
        expansion=expansion,
        subfield_size=F.size,
        span_size=len(span_wires),
        dichotomy_low_expansion=low,
        dichotomy_spanning=spanning,
        containment_steps=containment,
    )
