"""Symmetry-breaking and repair cascades.

An organism is a target irrep plus a list of components, each carrying
its own irrep and, optionally, a decomposition into subcomponents one
level further down.  Removing components can make the remaining tensor
product lose the target irrep; repair descends level by level (only
neighboring levels interact, so a component is only ever replaced by its
immediate subcomponents) until the product again contains the target or
the depth budget runs out.  The ionization/recombination pair is the
two-level special case: remove one tagged component, then re-add a fresh
one with the same irrep.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .rep_theory import IrrepLabel, IrrepSum, contains, decompose_product, format_j, parse_j


class EmptyRemainderError(ValueError):
    """Removal would leave no components at all."""


@dataclass(frozen=True)
class ComponentSpec:
    name: str
    irrep: IrrepLabel
    subcomponents: tuple["ComponentSpec", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "subcomponents", tuple(self.subcomponents))

    def validate(self, path: str = "") -> list[str]:
        """A component must be buildable from its own parts: its irrep must
        occur in the product of its subcomponents' irreps."""
        here = f"{path}/{self.name}" if path else self.name
        problems: list[str] = []
        if self.subcomponents:
            product = decompose_product([c.irrep for c in self.subcomponents])
            if contains(product, self.irrep) < 1:
                problems.append(
                    f"{here}: irrep {self.irrep} not contained in subcomponent product {product}"
                )
            for sub in self.subcomponents:
                problems.extend(sub.validate(here))
        return problems


@dataclass(frozen=True)
class Organism:
    target_irrep: IrrepLabel
    components: tuple[ComponentSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))

    def validate(self) -> list[str]:
        problems: list[str] = []
        if not self.components:
            problems.append("organism has no components")
        else:
            product = decompose_product([c.irrep for c in self.components])
            if contains(product, self.target_irrep) < 1:
                problems.append(
                    f"intact component product {product} does not contain target {self.target_irrep}"
                )
        for comp in self.components:
            problems.extend(comp.validate())
        return problems


@dataclass(frozen=True)
class RemovalAction:
    removed_indices: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "removed_indices", frozenset(self.removed_indices))
        if not self.removed_indices:
            raise ValueError("removal action must remove at least one component")
        if any(i < 0 for i in self.removed_indices):
            raise ValueError("component indices must be non-negative")


@dataclass(frozen=True)
class Remainder:
    """What is left after an amputation; ``complete`` records whether the
    remaining product still contains the target irrep."""

    target_irrep: IrrepLabel
    components: tuple[ComponentSpec, ...]
    complete: bool


@dataclass(frozen=True)
class CascadeStep:
    depth: int
    component_names: tuple[str, ...]
    product: IrrepSum
    target_multiplicity: int
    rebuilt: bool


@dataclass(frozen=True)
class CascadeResult:
    feasible: bool
    levels_descended: int
    steps: tuple[CascadeStep, ...]
    cost: int
    witness_irreps: tuple[IrrepLabel, ...]


def amputate(org: Organism, gamma: RemovalAction) -> Remainder:
    """Remove the indicated components and report whether the remaining
    product still contains the target irrep."""
    if any(i >= len(org.components) for i in gamma.removed_indices):
        raise ValueError("removal index out of range")
    remaining = tuple(
        c for i, c in enumerate(org.components) if i not in gamma.removed_indices
    )
    if not remaining:
        raise EmptyRemainderError("all components removed")
    product = decompose_product([c.irrep for c in remaining])
    return Remainder(
        target_irrep=org.target_irrep,
        components=remaining,
        complete=contains(product, org.target_irrep) >= 1,
    )


def repair(remainder: Remainder, max_depth: int) -> CascadeResult:
    """Run the repair cascade on a remainder.

    At each depth the product of the current component irreps is checked
    for the target; on failure every component owning subcomponents is
    replaced by them and the check repeats, up to ``max_depth`` descents.
    Cost counts subcomponents materialized across all descents.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    comps = list(remainder.components)
    steps: list[CascadeStep] = []
    cost = 0
    depth = 0
    while True:
        product = decompose_product([c.irrep for c in comps])
        mult = contains(product, remainder.target_irrep)
        steps.append(
            CascadeStep(
                depth=depth,
                component_names=tuple(c.name for c in comps),
                product=product,
                target_multiplicity=mult,
                rebuilt=mult >= 1,
            )
        )
        witness = tuple(c.irrep for c in comps)
        if mult >= 1:
            return CascadeResult(True, depth, tuple(steps), cost, witness)
        if depth == max_depth:
            return CascadeResult(False, max_depth, tuple(steps), cost, witness)
        nxt: list[ComponentSpec] = []
        descended = False
        for c in comps:
            if c.subcomponents:
                nxt.extend(c.subcomponents)
                cost += len(c.subcomponents)
                descended = True
            else:
                nxt.append(c)
        if not descended:
            # nothing below this level; the cascade is stuck early
            return CascadeResult(False, depth, tuple(steps), cost, witness)
        comps = nxt
        depth += 1


def ionize_recombine(
    atom: Organism,
    electron_index: int | None = None,
    replacement_irrep: IrrepLabel | None = None,
) -> tuple[Remainder, Remainder]:
    """Remove the electron-analogue component, then re-add a fresh one.

    The electron component is picked by index, or by name "electron" when
    no index is given.  The replacement defaults to the removed irrep;
    passing a different irrep reports honestly whether the target is
    still recovered.
    """
    if len(atom.components) < 2:
        raise ValueError("ionization needs at least two components")
    if electron_index is None:
        matches = [i for i, c in enumerate(atom.components) if c.name.lower() == "electron"]
        if len(matches) != 1:
            raise ValueError("no unique component named 'electron'; pass electron_index")
        electron_index = matches[0]
    removed = atom.components[electron_index]
    broken = amputate(atom, RemovalAction(frozenset({electron_index})))
    fresh = ComponentSpec(
        name=f"{removed.name}'",
        irrep=replacement_irrep if replacement_irrep is not None else removed.irrep,
    )
    restored_components = broken.components + (fresh,)
    product = decompose_product([c.irrep for c in restored_components])
    restored = Remainder(
        target_irrep=atom.target_irrep,
        components=restored_components,
        complete=contains(product, atom.target_irrep) >= 1,
    )
    return broken, restored


# --- JSON scenario files ------------------------------------------------------
#
# {"target": "0", "components": [{"name": ..., "irrep": "1/2",
#                                 "subcomponents": [...]}, ...]}


def _component_to_obj(comp: ComponentSpec) -> dict:
    obj: dict = {"name": comp.name, "irrep": format_j(comp.irrep.twice_j)}
    if comp.subcomponents:
        obj["subcomponents"] = [_component_to_obj(c) for c in comp.subcomponents]
    return obj


def _component_from_obj(obj: dict) -> ComponentSpec:
    return ComponentSpec(
        name=str(obj["name"]),
        irrep=IrrepLabel(parse_j(str(obj["irrep"]))),
        subcomponents=tuple(_component_from_obj(c) for c in obj.get("subcomponents", [])),
    )


def organism_to_obj(org: Organism) -> dict:
    return {
        "target": format_j(org.target_irrep.twice_j),
        "components": [_component_to_obj(c) for c in org.components],
    }


def organism_from_obj(obj: dict) -> Organism:
    return Organism(
        target_irrep=IrrepLabel(parse_j(str(obj["target"]))),
        components=tuple(_component_from_obj(c) for c in obj["components"]),
    )


def load_organism(path: str) -> Organism:
    with open(path, "r", encoding="utf-8") as fh:
        return organism_from_obj(json.load(fh))
