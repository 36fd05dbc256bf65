"""Toy two-level dynamics: two blocks with spin-dependent effective masses.

Each block i carries two internal spin projections (s1, s2); its mass is
m0 + lambda(v^2) * s1 * s2 with lambda(v^2) = lambda0 + lambda1 * v^2, so the
inter-level feedback is: internal spins shift the block mass, the block
velocity shifts the spin-spin coupling.  Blocks interact through an
optional harmonic potential in |x1 - x2| and a constant spin-spin energy
kappa * S1 * S2 (S_i is the sum of the block's projections).

The kinetic expression is read as the Lagrangian content; the equations
of motion are d/dt (dL/dv_i) = -dU/dx_i, integrated by classical RK4 on
(x, p).  Because mass depends on velocity, the canonical momentum
p = m0*v + s1*s2*(lambda0*v + 2*lambda1*v^3) is the honest dynamical
variable; velocities are recovered each stage by safeguarded Newton
inversion.  The energy column reports sum m_i(v_i) v_i^2 / 2 + U + Lambda,
which is conserved when lambda1 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


class NonpositiveMassError(ValueError):
    """Effective mass dropped to zero or below."""


class MomentumInversionError(RuntimeError):
    """Newton iteration for v(p) failed to converge."""


@dataclass(frozen=True)
class HarmonicPotential:
    k: float


@dataclass(frozen=True)
class LinearSpinCoupling:
    kappa: float


@dataclass(frozen=True)
class SimConfig:
    m0: float
    spins: tuple[float, float, float, float]  # (s1^1, s2^1, s1^2, s2^2)
    lambda0: float = 0.0
    lambda1: float = 0.0
    potential_u: HarmonicPotential | None = None
    potential_spin: LinearSpinCoupling | None = None
    x_init: tuple[float, float] = (0.0, 0.0)
    v_init: tuple[float, float] = (0.0, 0.0)
    dt: float = 1e-3
    steps: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "spins", tuple(float(s) for s in self.spins))
        object.__setattr__(self, "x_init", tuple(float(x) for x in self.x_init))
        object.__setattr__(self, "v_init", tuple(float(v) for v in self.v_init))
        if self.m0 <= 0:
            raise ValueError("m0 must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.dt * self.steps >= 1e9:
            raise ValueError("dt * steps must stay below 1e9")
        if len(self.spins) != 4 or any(s not in (0.5, -0.5) for s in self.spins):
            raise ValueError("spins must be four projections, each +0.5 or -0.5")

    def spin_product(self, block: int) -> float:
        s = self.spins
        return s[0] * s[1] if block == 0 else s[2] * s[3]

    def block_spin(self, block: int) -> float:
        s = self.spins
        return s[0] + s[1] if block == 0 else s[2] + s[3]


@dataclass(frozen=True)
class SimState:
    t: float
    x: tuple[float, float]
    v: tuple[float, float]


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x1: float
    x2: float
    v1: float
    v2: float
    m1_eff: float
    m2_eff: float
    e_total: float


@dataclass
class Trajectory:
    samples: list[TrajectorySample]
    error: str | None = None


def coupling(cfg: SimConfig, v: float) -> float:
    return cfg.lambda0 + cfg.lambda1 * v * v


def effective_mass(cfg: SimConfig, block: int, v: float) -> float:
    m = cfg.m0 + coupling(cfg, v) * cfg.spin_product(block)
    if m <= 0:
        raise NonpositiveMassError(f"effective mass {m!r} for block {block + 1} at v={v!r}")
    return m


def momentum(cfg: SimConfig, block: int, v: float) -> float:
    sig = cfg.spin_product(block)
    return cfg.m0 * v + sig * (cfg.lambda0 * v + 2.0 * cfg.lambda1 * v**3)


def invert_momentum(cfg: SimConfig, block: int, p: float, tol: float = 1e-13, max_iter: int = 50) -> float:
    """Solve p = m0*v + s1*s2*(lambda0*v + 2*lambda1*v^3) for v by Newton
    iteration with a bisection safeguard."""
    sig = cfg.spin_product(block)

    def f(v: float) -> float:
        return momentum(cfg, block, v) - p

    def fp(v: float) -> float:
        return cfg.m0 + sig * (cfg.lambda0 + 6.0 * cfg.lambda1 * v * v)

    v = p / cfg.m0
    # expand a bracket around the initial guess; f is increasing for
    # admissible parameters, so a sign change always appears
    lo, hi = v - 1.0, v + 1.0
    grow = 1.0
    for _ in range(200):
        if f(lo) <= 0.0 <= f(hi):
            break
        grow *= 2.0
        lo -= grow
        hi += grow
    else:
        raise MomentumInversionError(f"could not bracket v for p={p!r}")

    scale = max(1.0, abs(p))
    for _ in range(max_iter):
        fv = f(v)
        if abs(fv) <= tol * scale:
            return v
        if fv > 0.0:
            hi = v
        else:
            lo = v
        d = fp(v)
        step_ok = d > 0.0
        if step_ok:
            v_new = v - fv / d
            step_ok = lo <= v_new <= hi
        if not step_ok:
            v_new = 0.5 * (lo + hi)
        if abs(v_new - v) <= tol * max(1.0, abs(v)):
            return v_new
        v = v_new
    raise MomentumInversionError(f"no convergence inverting p={p!r} for block {block + 1}")


def potential_energy(cfg: SimConfig, x: tuple[float, float]) -> float:
    u = 0.0
    if cfg.potential_u is not None:
        r = x[0] - x[1]
        u += 0.5 * cfg.potential_u.k * r * r
    if cfg.potential_spin is not None:
        u += cfg.potential_spin.kappa * cfg.block_spin(0) * cfg.block_spin(1)
    return u


def energy(cfg: SimConfig, x: tuple[float, float], v: tuple[float, float]) -> float:
    """Total energy sum m_i(v_i) v_i^2 / 2 + U(|x1-x2|) + kappa*S1*S2."""
    kin = sum(0.5 * effective_mass(cfg, i, v[i]) * v[i] * v[i] for i in (0, 1))
    return kin + potential_energy(cfg, x)


def _force(cfg: SimConfig, x1: float, x2: float) -> tuple[float, float]:
    if cfg.potential_u is None:
        return 0.0, 0.0
    f = -cfg.potential_u.k * (x1 - x2)
    return f, -f


def _deriv(cfg: SimConfig, y: tuple[float, float, float, float]):
    x1, x2, p1, p2 = y
    v1 = invert_momentum(cfg, 0, p1)
    v2 = invert_momentum(cfg, 1, p2)
    effective_mass(cfg, 0, v1)
    effective_mass(cfg, 1, v2)
    f1, f2 = _force(cfg, x1, x2)
    return (v1, v2, f1, f2)


def step(cfg: SimConfig, state: SimState) -> SimState:
    """Advance one dt by classical 4-stage Runge-Kutta on (x, p)."""
    dt = cfg.dt
    y = (
        state.x[0],
        state.x[1],
        momentum(cfg, 0, state.v[0]),
        momentum(cfg, 1, state.v[1]),
    )
    k1 = _deriv(cfg, y)
    k2 = _deriv(cfg, tuple(y[i] + 0.5 * dt * k1[i] for i in range(4)))
    k3 = _deriv(cfg, tuple(y[i] + 0.5 * dt * k2[i] for i in range(4)))
    k4 = _deriv(cfg, tuple(y[i] + dt * k3[i] for i in range(4)))
    y_new = tuple(
        y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in range(4)
    )
    v1 = invert_momentum(cfg, 0, y_new[2])
    v2 = invert_momentum(cfg, 1, y_new[3])
    effective_mass(cfg, 0, v1)
    effective_mass(cfg, 1, v2)
    return SimState(t=state.t + dt, x=(y_new[0], y_new[1]), v=(v1, v2))


def _sample(cfg: SimConfig, state: SimState) -> TrajectorySample:
    return TrajectorySample(
        t=state.t,
        x1=state.x[0],
        x2=state.x[1],
        v1=state.v[0],
        v2=state.v[1],
        m1_eff=effective_mass(cfg, 0, state.v[0]),
        m2_eff=effective_mass(cfg, 1, state.v[1]),
        e_total=energy(cfg, state.x, state.v),
    )


def run(cfg: SimConfig) -> Trajectory:
    """Integrate for cfg.steps steps, sampling every step.

    If mass positivity fails mid-run the partial trajectory is returned
    with the error recorded instead of raised.
    """
    state = SimState(t=0.0, x=cfg.x_init, v=cfg.v_init)
    traj = Trajectory(samples=[])
    try:
        traj.samples.append(_sample(cfg, state))
        for _ in range(cfg.steps):
            state = step(cfg, state)
            traj.samples.append(_sample(cfg, state))
    except NonpositiveMassError as exc:
        traj.error = f"NonpositiveMassError: {exc}"
    return traj


CSV_COLUMNS = ("t", "x1", "x2", "v1", "v2", "m1_eff", "m2_eff", "E_total")


def write_trajectory_csv(traj: Trajectory, fh) -> None:
    """Write the trajectory with full double precision (17 significant digits)."""
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for s in traj.samples:
        row = (s.t, s.x1, s.x2, s.v1, s.v2, s.m1_eff, s.m2_eff, s.e_total)
        fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def max_energy_drift(traj: Trajectory) -> float:
    """Max |E(t) - E(0)| / max(|E(0)|, 1e-30) over the trajectory."""
    if not traj.samples:
        return 0.0
    e0 = traj.samples[0].e_total
    return max(abs(s.e_total - e0) for s in traj.samples) / max(abs(e0), 1e-30)


# --- JSON config files --------------------------------------------------------


def _potential_u_from_obj(obj) -> HarmonicPotential | None:
    if obj is None or obj.get("type", "none") == "none":
        return None
    if obj["type"] == "harmonic":
        return HarmonicPotential(k=float(obj["k"]))
    raise ValueError(f"unknown position potential type {obj['type']!r}")


def _potential_spin_from_obj(obj) -> LinearSpinCoupling | None:
    if obj is None or obj.get("type", "none") == "none":
        return None
    if obj["type"] == "linear":
        return LinearSpinCoupling(kappa=float(obj["kappa"]))
    raise ValueError(f"unknown spin coupling type {obj['type']!r}")


def sim_config_from_obj(obj: dict) -> SimConfig:
    return SimConfig(
        m0=float(obj["m0"]),
        spins=tuple(float(s) for s in obj["spins"]),
        lambda0=float(obj.get("lambda0", 0.0)),
        lambda1=float(obj.get("lambda1", 0.0)),
        potential_u=_potential_u_from_obj(obj.get("potential_U")),
        potential_spin=_potential_spin_from_obj(obj.get("potential_Lambda")),
        x_init=tuple(float(x) for x in obj["x_init"]),
        v_init=tuple(float(v) for v in obj["v_init"]),
        dt=float(obj["dt"]),
        steps=int(obj["steps"]),
    )


def load_sim_config(path: str) -> SimConfig:
    import json

    with open(path, "r", encoding="utf-8") as fh:
        return sim_config_from_obj(json.load(fh))


def with_override(cfg: SimConfig, field_name: str, value: float) -> SimConfig:
    if field_name not in ("lambda0", "lambda1", "m0", "dt"):
        raise ValueError(f"cannot sweep over field {field_name!r}")
    return replace(cfg, **{field_name: value})
