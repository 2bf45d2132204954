"""Option dataclasses shared by the library, the report runner and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import ParameterError


@dataclass(frozen=True)
class Caps:
    """Hard ceilings that turn runaway computations into clean errors."""

    max_set_elements: int = 10**6
    max_pair_products: int = 10**7
    oracle_set_size: int = 60
    span_elements: int = 10**6


@dataclass(frozen=True)
class StructureOptions:
    potent_exponent: int = 10
    potent_floor: int = 1
    reach_budget: int = 12
    pair_cap: int = 10**7
    span_cap: int = 10**6

    def to_json(self) -> dict:
        return {
            "potent_exponent": self.potent_exponent,
            "potent_floor": self.potent_floor,
            "reach_budget": self.reach_budget,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StructureOptions":
        return cls(
            potent_exponent=int(obj.get("potent_exponent", 10)),
            potent_floor=int(obj.get("potent_floor", 1)),
            reach_budget=int(obj.get("reach_budget", 12)),
        )


@dataclass(frozen=True)
class RunOptions:
    """Knobs of a report run.  Serialized into manifests verbatim.

    ``threads`` is accepted for interface stability; the counting kernels
    are sequential and deterministic, so the value never changes any
    output byte.  Wall-clock timings are off by default for the same
    reason: a report is a pure function of the set file and the options.
    """

    lemma_k: int = 3
    intersection_k: int = 1
    bridge: str = "auto"  # "on" | "off" | "auto"
    bridge_threshold: int = 25
    structure: bool = False
    structure_opts: StructureOptions = field(default_factory=StructureOptions)
    subgroup: object | None = None  # SubgroupTag; None picks the group default
    energy_constant: Fraction | None = None
    incidence_constant: Fraction | None = None
    timings: bool = False
    threads: int = 1
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self):
        if self.bridge not in ("on", "off", "auto"):
            raise ParameterError(f"bridge must be on/off/auto, got {self.bridge!r}")
        if self.lemma_k < 1:
            raise ParameterError("lemma_k must be >= 1")
        if self.intersection_k < 1:
            raise ParameterError("intersection_k must be >= 1")
        if self.threads < 1:
            raise ParameterError("threads must be >= 1")

    def with_caps(self, caps: Caps) -> "RunOptions":
        return replace(self, caps=caps)

    def to_json(self) -> dict:
        out = {
            "lemma_k": self.lemma_k,
            "intersection_k": self.intersection_k,
            "bridge": self.bridge,
            "bridge_threshold": self.bridge_threshold,
            "structure": self.structure,
        }
        if self.structure:
            out["structure_opts"] = self.structure_opts.to_json()
        if self.subgroup is not None:
            out["subgroup"] = self.subgroup.to_json()
        if self.energy_constant is not None:
            out["energy_constant"] = {
                "num": self.energy_constant.numerator,
                "den": self.energy_constant.denominator,
            }
        if self.incidence_constant is not None:
            out["incidence_constant"] = {
                "num": self.incidence_constant.numerator,
                "den": self.incidence_constant.denominator,
            }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RunOptions":
        from .groups import SubgroupTag

        kwargs: dict = {}
        for key in ("lemma_k", "intersection_k", "bridge_threshold"):
            if key in obj:
                kwargs[key] = int(obj[key])
        if "bridge" in obj:
            kwargs["bridge"] = str(obj["bridge"])
        if "structure" in obj:
            kwargs["structure"] = bool(obj["structure"])
        if "structure_opts" in obj:
            kwargs["structure_opts"] = StructureOptions.from_json(obj["structure_opts"])
        if obj.get("subgroup") is not None:
            kwargs["subgroup"] = SubgroupTag.from_json(obj["subgroup"])
        for key in ("energy_constant", "incidence_constant"):
            if obj.get(key) is not None:
                kwargs[key] = Fraction(int(obj[key]["num"]), int(obj[key]["den"]))
        return cls(**kwargs)
