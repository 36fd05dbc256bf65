"""Tree-structured hierarchical wave functions.

A state assigns a wave function to the whole system and, recursively, to
each of its components one hierarchy level down.  The set of such trees
carries a vector-space structure: scalar multiplication acts on every
node, addition is componentwise and only defined between congruent trees.
There is deliberately no product or commutator between a node and its
children; those objects live in different spaces.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Union

# symmetry-group tags; any other string is treated as a custom group
SU2 = "SU2"
TRANSLATION_1D = "Translation1D"

# particle statistics
BOSON = "boson"
FERMION = "fermion"
UNSPECIFIED = "unspecified"

AMPLITUDE_TOL = 1e-12


class ShapeMismatchError(ValueError):
    """Addition of trees that are not congruent."""


@dataclass(frozen=True)
class SpinWeight:
    """SU(2) weight label (j, m), stored as doubled integers so half-integer
    spins stay exact."""

    twice_j: int
    twice_m: int

    def __post_init__(self) -> None:
        if self.twice_j < 0:
            raise ValueError(f"twice_j must be >= 0, got {self.twice_j}")
        if abs(self.twice_m) > self.twice_j:
            raise ValueError(f"|m| > j for (2j, 2m) = ({self.twice_j}, {self.twice_m})")
        if (self.twice_m - self.twice_j) % 2 != 0:
            raise ValueError(f"m and j parity mismatch: (2j, 2m) = ({self.twice_j}, {self.twice_m})")


@dataclass(frozen=True)
class Point:
    """Discrete coordinate label on a spatial-type group."""

    index: int


@dataclass(frozen=True)
class Named:
    """Free-form basis label."""

    text: str


BasisLabel = Union[SpinWeight, Point, Named]


@dataclass(frozen=True)
class HierarchyLevel:
    """One hierarchy level: a scale index, the symmetry group acting at that
    scale, and a finite ordered basis realizing the coordinates on it."""

    level_index: int
    group: str
    basis: tuple[BasisLabel, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))


@dataclass(frozen=True)
class NodeWave:
    """Wave function of a single node: one complex amplitude per basis label."""

    level: HierarchyLevel
    amplitudes: tuple[complex, ...]
    statistics: str = UNSPECIFIED
    quantum_numbers: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))
        if self.quantum_numbers is not None:
            object.__setattr__(self, "quantum_numbers", tuple(int(q) for q in self.quantum_numbers))

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes)


@dataclass(frozen=True)
class HierState:
    """Hierarchical state: this node's wave plus the states of its direct
    components (children one level deeper)."""

    wave: NodeWave
    children: tuple["HierState", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


def iter_nodes(psi: HierState, path: str = "root") -> Iterator[tuple[str, HierState]]:
    """Depth-first traversal yielding (path, node); children are addressed by
    index, e.g. "root.0.1"."""
    yield path, psi
    for i, child in enumerate(psi.children):
        yield from iter_nodes(child, f"{path}.{i}")


def dominant_index(wave: NodeWave) -> int:
    """Index of the largest-|amplitude| basis label; ties go to the lowest index."""
    if not wave.amplitudes:
        raise ValueError("node has no amplitudes")
    best = 0
    for i, a in enumerate(wave.amplitudes):
        if abs(a) > abs(wave.amplitudes[best]):
            best = i
    return best


def dominant_label(wave: NodeWave) -> BasisLabel:
    return wave.level.basis[dominant_index(wave)]


def scalar_mul(a: complex, psi: HierState) -> HierState:
    """Multiply every amplitude at every node by a; tree shape is preserved."""
    wave = NodeWave(
        level=psi.wave.level,
        amplitudes=tuple(a * amp for amp in psi.wave.amplitudes),
        statistics=psi.wave.statistics,
        quantum_numbers=psi.wave.quantum_numbers,
    )
    return HierState(wave, tuple(scalar_mul(a, c) for c in psi.children))


def congruent(phi: HierState, psi: HierState) -> bool:
    """True iff the trees have identical shape, level indices, group tags and
    bases node by node."""
    if phi.wave.level != psi.wave.level:
        return False
    if len(phi.children) != len(psi.children):
        return False
    return all(congruent(a, b) for a, b in zip(phi.children, psi.children))


def add(phi: HierState, psi: HierState) -> HierState:
    """Componentwise sum of two congruent trees."""
    if not congruent(phi, psi):
        raise ShapeMismatchError("cannot add non-congruent hierarchical states")
    return _add_unchecked(phi, psi)


def _add_unchecked(phi: HierState, psi: HierState) -> HierState:
    wave = NodeWave(
        level=phi.wave.level,
        amplitudes=tuple(a + b for a, b in zip(phi.wave.amplitudes, psi.wave.amplitudes)),
        statistics=phi.wave.statistics,
        quantum_numbers=phi.wave.quantum_numbers,
    )
    children = tuple(_add_unchecked(a, b) for a, b in zip(phi.children, psi.children))
    return HierState(wave, children)


def validate_tree(psi: HierState, require_normalized: bool = False) -> list[Violation]:
    """Check structural invariants; violations are returned as data, never raised.

    Checked per node: non-empty unique basis, amplitude/basis length match,
    children sharing one level index strictly greater than the parent's, and
    optionally unit norm.
    """
    out: list[Violation] = []
    for path, node in iter_nodes(psi):
        level = node.wave.level
        if not level.basis:
            out.append(Violation(path, "basis is empty"))
        if len(set(level.basis)) != len(level.basis):
            out.append(Violation(path, "basis labels are not unique"))
        if len(node.wave.amplitudes) != len(level.basis):
            out.append(
                Violation(
                    path,
                    f"amplitude count {len(node.wave.amplitudes)} != basis size {len(level.basis)}",
                )
            )
        child_levels = {c.wave.level.level_index for c in node.children}
        if len(child_levels) > 1:
            out.append(Violation(path, f"children mix level indices {sorted(child_levels)}"))
        for i, child in enumerate(node.children):
            if child.wave.level.level_index <= level.level_index:
                out.append(
                    Violation(
                        f"{path}.{i}",
                        f"child level index {child.wave.level.level_index} not greater "
                        f"than parent's {level.level_index}",
                    )
                )
        if require_normalized:
            n = node.wave.norm_sq()
            if abs(n - 1.0) > AMPLITUDE_TOL:
                out.append(Violation(path, f"norm^2 = {n!r} is not 1"))
    return out


# --- JSON serialization -----------------------------------------------------
#
# node = {level, group, basis: [...], amplitudes: [[re, im], ...],
#         statistics, quantum_numbers?, children: [...]}
# Floats round-trip bit-faithfully (repr-based shortest form).


def _label_to_obj(label: BasisLabel) -> dict:
    if isinstance(label, SpinWeight):
        return {"type": "spin", "twice_j": label.twice_j, "twice_m": label.twice_m}
    if isinstance(label, Point):
        return {"type": "point", "index": label.index}
    if isinstance(label, Named):
        return {"type": "named", "text": label.text}
    raise TypeError(f"unknown basis label {label!r}")


def _label_from_obj(obj: dict) -> BasisLabel:
    kind = obj.get("type")
    if kind == "spin":
        return SpinWeight(int(obj["twice_j"]), int(obj["twice_m"]))
    if kind == "point":
        return Point(int(obj["index"]))
    if kind == "named":
        return Named(str(obj["text"]))
    raise ValueError(f"unknown basis label type {kind!r}")


def state_to_obj(psi: HierState) -> dict:
    wave = psi.wave
    obj = {
        "level": wave.level.level_index,
        "group": wave.level.group,
        "basis": [_label_to_obj(b) for b in wave.level.basis],
        "amplitudes": [[a.real, a.imag] for a in wave.amplitudes],
        "statistics": wave.statistics,
        "children": [state_to_obj(c) for c in psi.children],
    }
    if wave.quantum_numbers is not None:
        obj["quantum_numbers"] = list(wave.quantum_numbers)
    return obj


def state_from_obj(obj: dict) -> HierState:
    level = HierarchyLevel(
        level_index=int(obj["level"]),
        group=str(obj["group"]),
        basis=tuple(_label_from_obj(b) for b in obj["basis"]),
    )
    qn = obj.get("quantum_numbers")
    wave = NodeWave(
        level=level,
        amplitudes=tuple(complex(re, im) for re, im in obj["amplitudes"]),
        statistics=obj.get("statistics", UNSPECIFIED),
        quantum_numbers=tuple(qn) if qn is not None else None,
    )
    return HierState(wave, tuple(state_from_obj(c) for c in obj.get("children", [])))


def state_to_json(psi: HierState, indent: int | None = 2) -> str:
    return json.dumps(state_to_obj(psi), indent=indent)


def state_from_json(text: str) -> HierState:
    return state_from_obj(json.loads(text))


def load_state(path: str) -> HierState:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_obj(json.load(fh))


def save_state(psi: HierState, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_json(psi))
        fh.write("\n")
