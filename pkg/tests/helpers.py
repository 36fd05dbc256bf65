"""Shared test oracles, independent of the implementation paths they check."""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np

from hierwave.state_tree import (
    HierarchyLevel,
    HierState,
    Named,
    NodeWave,
    SU2,
    SpinWeight,
    UNSPECIFIED,
)


def weight_multiplicities(twice_js: list[int]) -> Counter:
    """Brute-force count of product-basis weight vectors per total 2M."""
    ranges = [range(-tj, tj + 1, 2) for tj in twice_js]
    counts: Counter = Counter()
    for combo in itertools.product(*ranges):
        counts[sum(combo)] += 1
    return counts


def irrep_multiplicities_by_weights(twice_js: list[int]) -> dict[int, int]:
    """Irrep content from weight counting: mult(J) = N(M=J) - N(M=J+1)."""
    counts = weight_multiplicities(twice_js)
    top = sum(twice_js)
    out = {}
    for tJ in range(top % 2, top + 1, 2):
        mult = counts.get(tJ, 0) - counts.get(tJ + 2, 0)
        if mult > 0:
            out[tJ] = mult
    return out


def _lowering(tj: int) -> np.ndarray:
    # J- in the basis m = j, j-1, ..., -j
    dim = tj + 1
    op = np.zeros((dim, dim))
    for i in range(dim - 1):
        j = tj / 2.0
        m = (tj - 2 * i) / 2.0
        op[i + 1, i] = math.sqrt(j * (j + 1) - m * (m - 1))
    return op


def cg_oracle_table(tj1: int, tj2: int) -> dict[tuple[int, int, int, int], float]:
    """All coupling coefficients for a spin pair by the ladder construction:
    start from the stretch state, peel lower-J tops out of each weight space
    (sign fixed by a positive maximal-m1 coefficient), then apply the total
    lowering operator.  Keys are (2m1, 2m2, 2J, 2M)."""
    d1, d2 = tj1 + 1, tj2 + 1
    low = np.kron(_lowering(tj1), np.eye(d2)) + np.kron(np.eye(d1), _lowering(tj2))
    coupled: dict[tuple[int, int], np.ndarray] = {}
    for tJ in range(tj1 + tj2, abs(tj1 - tj2) - 1, -2):
        if tJ == tj1 + tj2:
            vec = np.zeros(d1 * d2)
            vec[0] = 1.0
        else:
            flat = [
                i1 * d2 + i2
                for i1 in range(d1)
                for i2 in range(d2)
                if (tj1 - 2 * i1) + (tj2 - 2 * i2) == tJ
            ]
            space = np.zeros((d1 * d2, len(flat)))
            for col, f in enumerate(flat):
                space[f, col] = 1.0
            for tJp in range(tJ + 2, tj1 + tj2 + 1, 2):
                h = coupled[(tJp, tJ)]
                space -= np.outer(h, h @ space)
            u, s, _ = np.linalg.svd(space, full_matrices=False)
            assert s[0] > 1e-8 and (len(s) == 1 or s[1] < 1e-8), "weight space not 1-dim"
            vec = u[:, 0]
            if vec[min(flat)] < 0:  # min flat index = maximal m1
                vec = -vec
        coupled[(tJ, tJ)] = vec
        for tM in range(tJ - 2, -tJ - 1, -2):
            prev = coupled[(tJ, tM + 2)]
            jj = tJ / 2.0
            mm = (tM + 2) / 2.0
            coupled[(tJ, tM)] = low @ prev / math.sqrt(jj * (jj + 1) - mm * (mm - 1))

    table: dict[tuple[int, int, int, int], float] = {}
    for (tJ, tM), vec in coupled.items():
        for i1 in range(d1):
            for i2 in range(d2):
                table[(tj1 - 2 * i1, tj2 - 2 * i2, tJ, tM)] = vec[i1 * d2 + i2]
    return table


def random_shape(rng, level_index: int = 0, depth: int = 0):
    """Random tree shape: (level, child_shapes) tuples."""
    basis = tuple(Named(f"b{level_index}.{k}") for k in range(rng.randint(1, 3)))
    level = HierarchyLevel(level_index=level_index, group=SU2, basis=basis)
    n_children = rng.randint(0, 3) if depth < 2 else 0
    children = tuple(random_shape(rng, level_index + 1, depth + 1) for _ in range(n_children))
    return level, children


def fill_shape(rng, shape) -> HierState:
    """Fresh random complex amplitudes on a fixed shape."""
    level, children = shape
    amps = tuple(
        complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in level.basis
    )
    wave = NodeWave(level=level, amplitudes=amps, statistics=UNSPECIFIED)
    return HierState(wave, tuple(fill_shape(rng, c) for c in children))


def amplitudes_close(phi: HierState, psi: HierState, tol: float = 1e-12) -> bool:
    if len(phi.children) != len(psi.children):
        return False
    ok = all(
        abs(a - b) <= tol for a, b in zip(phi.wave.amplitudes, psi.wave.amplitudes)
    )
    return ok and all(
        amplitudes_close(a, b, tol) for a, b in zip(phi.children, psi.children)
    )


def two_spin_state(parent_label: SpinWeight, child_ms: tuple[int, int]) -> HierState:
    """Two spin-1/2 components under one coupled parent node."""
    parent_level = HierarchyLevel(
        level_index=0,
        group=SU2,
        basis=(
            SpinWeight(2, 2),
            SpinWeight(2, 0),
            SpinWeight(2, -2),
            SpinWeight(0, 0),
        ),
    )
    parent_amps = tuple(1.0 if b == parent_label else 0.0 for b in parent_level.basis)
    child_level = HierarchyLevel(
        level_index=1, group=SU2, basis=(SpinWeight(1, 1), SpinWeight(1, -1))
    )
    children = tuple(
        HierState(
            NodeWave(
                level=child_level,
                amplitudes=(1.0, 0.0) if tm == 1 else (0.0, 1.0),
            )
        )
        for tm in child_ms
    )
    return HierState(NodeWave(level=parent_level, amplitudes=parent_amps), children)


def reference_constant_mass_rk4(m, k, x, v, dt, steps):
    """Plain RK4 on (x, v) for two constant-mass bodies with harmonic coupling;
    k may be None for free motion.  Returns list of (t, x1, x2, v1, v2)."""

    def deriv(y):
        x1, x2, v1, v2 = y
        if k is None:
            f = 0.0
        else:
            f = -k * (x1 - x2)
        return (v1, v2, f / m, -f / m)

    y = (x[0], x[1], v[0], v[1])
    out = [(0.0, *y)]
    for n in range(steps):
        k1 = deriv(y)
        k2 = deriv(tuple(y[i] + 0.5 * dt * k1[i] for i in range(4)))
        k3 = deriv(tuple(y[i] + 0.5 * dt * k2[i] for i in range(4)))
        k4 = deriv(tuple(y[i] + dt * k3[i] for i in range(4)))
        y = tuple(y[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(4))
        out.append(((n + 1) * dt, *y))
    return out
