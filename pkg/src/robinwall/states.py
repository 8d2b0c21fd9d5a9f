"""Normalized eigenstates as callable position and momentum profiles.

A solved level from :mod:`.spectrum` determines the state only up to
normalization.  This module attaches the closed-form normalization for
each wall type and exposes the wavefunction, its derivative, both
densities, and the momentum transform behind one object.

Numerically delicate points handled here:

* For an attractive Robin wall at weak field the wall-side Airy argument
  is large and positive, so the profile is a ratio of two underflowing
  Airy values.  The ratio is evaluated through exponentially scaled Airy
  functions with the combined exponent formed first, which keeps the
  state exact down to fields where the plain route would return 0/0.
* The transform is discretized once per state on Gauss-Legendre panels
  (:class:`.quadrature.HalfLineFourierTable`) and built lazily, because
  only the momentum-side quantities need it.
* Beyond a switch momentum the density follows the boundary-value tail
  model, so momentum integrals are split at ``k_numeric_max``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .quadrature import (
    DEFAULT_TOLERANCES,
    MIN_TAIL_K,
    HalfLineFourierTable,
    MomentumTail,
    ToleranceConfig,
    integrate,
)
from .special import X_MAX, root_table
from .spectrum import BoundarySpec, BoundState, ConsistencyError, DomainError, energy

__all__ = [
    "ExtremumInfo",
    "StateFunctions",
    "boundary_residual",
    "build_state",
    "energy_identity_residual",
    "extrema",
    "momentum_density_peak",
    "momentum_norm",
    "position_norm",
]

# Beyond this argument the plain Airy value has lost enough range that the
# exponentially scaled variant takes over.
_DEEP_ARG = 8.0

# exp() arguments are clipped here; the clip can only fire for evaluation
# points outside the physical half-line.
_EXP_CLIP = 700.0

_MARCH_LIMIT = 20000


def _zeta(t):
    """Exponent (2/3) t^(3/2) of the Airy decay, zero left of the origin."""
    tt = np.maximum(np.asarray(t, dtype=float), 0.0)
    return (2.0 / 3.0) * tt ** 1.5


def _scaled_airy_pair(t):
    """Ai and Ai' times exp(zeta(t)), elementwise on an array."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    ai = np.empty_like(t)
    aip = np.empty_like(t)
    deep = t > _DEEP_ARG
    if deep.any():
        vals = sp.airye(t[deep])
        ai[deep] = vals[0]
        aip[deep] = vals[1]
    rest = ~deep
    if rest.any():
        vals = sp.airy(t[rest])
        boost = np.exp(_zeta(t[rest]))
        ai[rest] = vals[0] * boost
        aip[rest] = vals[1] * boost
    return ai, aip


class StateFunctions:
    """Callable profile bundle for one solved level.

    Exposes ``psi``, ``psi_prime``, ``rho`` on the position side and
    ``phi``, ``gamma``, ``gamma_prime`` on the momentum side, plus the
    boundary data and integration bookkeeping (``x_cut``,
    ``k_numeric_max``, ``tail``) that the observable layers use.
    """

    def __init__(self, state: BoundState, cfg: ToleranceConfig = DEFAULT_TOLERANCES):
        self.state = state
        self.cfg = cfg
        bc = state.bc
        field = state.field
        e_val = state.energy
        f13 = field ** (1.0 / 3.0)
        self.field_cbrt = f13
        self.arg0 = -e_val / (f13 * f13)
        self._robin_ratio = bc.is_robin

        if bc.is_robin:
            if e_val + 1.0 <= 0.0:
                raise ConsistencyError(
                    f"Robin level with E+1 = {e_val + 1.0:.3e} <= 0 cannot be normalized"
                )
            s0, sp0 = _scaled_airy_pair(self.arg0)
            s0 = float(s0[0])
            sp0 = float(sp0[0])
            if abs(s0) < 1e-10 * max(abs(sp0), 0.05):
                raise ConsistencyError(
                    "wall value of the profile is consistent with a hard wall; "
                    "the level appears mislabeled"
                )
            self._amp = math.sqrt(field / (e_val + 1.0))
            self._s0 = s0
            self._zeta0 = float(_zeta(self.arg0))
            self.psi0 = self._amp
            self.dpsi0 = bc.wall_slope * self.psi0
        elif bc is BoundarySpec.DIRICHLET:
            aip0 = float(sp.airy(self.arg0)[1])
            self._amp = f13 ** 0.5 / aip0
            self.psi0 = 0.0
            self.dpsi0 = -math.sqrt(field)
        else:
            ai0 = float(sp.airy(self.arg0)[0])
            self._amp = f13 ** 0.5 / (math.sqrt(-self.arg0) * ai0)
            self.psi0 = f13 ** 0.5 / math.sqrt(-self.arg0)
            self.dpsi0 = 0.0

        self.x_cut = self._march_cut()
        base = cfg.k_tail_switch * max(1.0, f13)
        if bc is BoundarySpec.DIRICHLET:
            # With a vanishing boundary value the density tail starts one
            # power of k^2 later, so the switch can sit much lower.
            base *= 0.25
        self.k_numeric_max = max(MIN_TAIL_K, base)
        self.tail = MomentumTail.from_boundary(self.psi0, self.dpsi0, e_val, field)
        self._fourier = None
        self._lock = threading.Lock()

    # -- position side -------------------------------------------------

    def _airy_profile(self, x, derivative: bool):
        x_arr = np.asarray(x, dtype=float)
        scalar = x_arr.ndim == 0
        xi = self.arg0 - self.field_cbrt * np.atleast_1d(x_arr)
        if self._robin_ratio:
            s_ai, s_aip = _scaled_airy_pair(xi)
            expo = np.minimum(self._zeta0 - _zeta(xi), _EXP_CLIP)
            base = (s_aip if derivative else s_ai) / self._s0 * np.exp(expo)
        else:
            base = np.zeros_like(xi)
            live = xi < X_MAX
            if live.any():
                vals = sp.airy(xi[live])
                base[live] = vals[1] if derivative else vals[0]
        out = self._amp * base
        if derivative:
            out = -self.field_cbrt * out
        return float(out[0]) if scalar else out

    def psi(self, x):
        """Wavefunction value; accepts scalars or arrays."""
        return self._airy_profile(x, derivative=False)

    def psi_prime(self, x):
        """Spatial derivative of the wavefunction."""
        return self._airy_profile(x, derivative=True)

    def rho(self, x):
        p = self.psi(x)
        return p * p

    def _march_cut(self) -> float:
        """Walk outward past the turning point until the density is dead.

        Relative to the running density maximum, so node-free decay past
        the turning point is the only region the criterion ever sees.
        """
        field = self.state.field
        step = 0.5 / self.field_cbrt
        x = min(-self.state.energy / field, 0.0)
        rho_max = self.rho(x)
        threshold = self.cfg.x_cut_threshold
        for _ in range(_MARCH_LIMIT):
            x -= step
            r = self.rho(x)
            if r > rho_max:
                rho_max = r
            elif rho_max > 0.0 and r < threshold * rho_max:
                return x - 2.0 * step
        raise ConsistencyError(
            f"density never fell below {threshold} of its peak within "
            f"{_MARCH_LIMIT} steps; the state looks unnormalizable"
        )

    # -- momentum side ---------------------------------------------------

    def _table(self) -> HalfLineFourierTable:
        with self._lock:
            if self._fourier is None:
                e_val = self.state.energy
                rate = math.sqrt(max(e_val, 0.0))
                rate += math.sqrt(abs(e_val + self.state.field * self.x_cut))
                self._fourier = HalfLineFourierTable(
                    self.psi,
                    self.x_cut,
                    k_max=1.3 * self.k_numeric_max + 10.0,
                    decay_rate=rate,
                )
            return self._fourier

    def phi(self, k):
        """Momentum wavefunction; conjugate-symmetric in k."""
        table = self._table()
        if np.ndim(k) == 0:
            return table.transform(float(k))
        return table.transform_many(k)

    def gamma(self, k):
        """Momentum density |phi|^2, an even function of k."""
        value = self.phi(k)
        if np.ndim(k) == 0:
            return abs(value) ** 2
        return np.abs(value) ** 2

    def gamma_prime(self, k):
        """d(gamma)/dk at a scalar momentum."""
        table = self._table()
        kk = float(k)
        value = table.transform(kk)
        slope = table.transform_k_derivative(kk)
        return 2.0 * (value.conjugate() * slope).real


def build_state(bc, n: int, field: float,
                cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> StateFunctions:
    """Solve level (bc, n, field) and wrap it in callable profiles."""
    return StateFunctions(energy(bc, n, field), cfg)


def boundary_residual(sf: StateFunctions) -> float:
    """How well the evaluated profile satisfies its own wall condition."""
    if sf.state.bc is BoundarySpec.DIRICHLET:
        return abs(sf.psi(0.0))
    return abs(sf.psi_prime(0.0) - sf.state.bc.wall_slope * sf.psi(0.0))


def position_norm(sf: StateFunctions, cfg: ToleranceConfig | None = None) -> float:
    cfg = cfg or sf.cfg
    return integrate(sf.rho, sf.x_cut, 0.0, cfg)


def momentum_norm(sf: StateFunctions, cfg: ToleranceConfig | None = None) -> float:
    """Norm in momentum space: numeric core plus the analytic tail."""
    cfg = cfg or sf.cfg
    big_k = sf.k_numeric_max
    core = 2.0 * integrate(sf.gamma, 0.0, big_k, cfg)
    return core + sf.tail.probability_beyond(big_k)


def momentum_density_peak(sf: StateFunctions) -> float:
    return float(sf.gamma(0.0))


def energy_identity_residual(sf: StateFunctions, cfg: ToleranceConfig | None = None) -> float:
    """Mismatch of E against kinetic + wall + potential expectation values.

    Integrating the kinetic term by parts moves one boundary term onto
    the wall, where the wall condition turns it into -sigma psi(0)^2.
    """
    cfg = cfg or sf.cfg
    state = sf.state

    def slope_sq(x):
        d = sf.psi_prime(x)
        return d * d

    kinetic = integrate(slope_sq, sf.x_cut, 0.0, cfg)
    mean_x = integrate(lambda x: x * sf.rho(x), sf.x_cut, 0.0, cfg)
    sigma = state.bc.wall_slope
    wall = 0.0 if sigma is None else -sigma * sf.psi0 ** 2
    total = kinetic + wall - state.field * mean_x
    return abs(total - state.energy)


@dataclass(frozen=True)
class ExtremumInfo:
    """One interior stationary point of the wavefunction."""

    m: int
    x: float
    psi_value: float


def _newton_extremum(sf: StateFunctions, seed: float) -> float:
    e_val = sf.state.energy
    field = sf.state.field
    clip = 0.5 / sf.field_cbrt
    x = float(seed)
    for _ in range(60):
        slope = sf.psi_prime(x)
        # psi'' from the stationary equation, no finite differencing.
        curv = -(e_val + field * x) * sf.psi(x)
        if curv == 0.0:
            break
        step = slope / curv
        if step > clip:
            step = clip
        elif step < -clip:
            step = -clip
        x -= step
        if abs(step) <= 1e-13 * max(1.0, abs(x)):
            break
    if abs(x - seed) > 0.2 * max(abs(seed), 1.0 / sf.field_cbrt):
        raise DomainError(
            f"refinement wandered from seed {seed:.6g} to {x:.6g}; "
            "the regime does not describe this state"
        )
    if abs(sf.psi_prime(x)) > 1e-8:
        raise ConsistencyError(
            f"stationary-point refinement stalled at x = {x:.6g} "
            f"with slope {sf.psi_prime(x):.3e}"
        )
    return x


def extrema(sf: StateFunctions, regime: str) -> list:
    """Interior extrema of an attractive-wall state, refined from seeds.

    Seeds exist for excited levels only: in either regime the ground
    state keeps its single maximum on the wall, and each excited level
    carries n stationary points strictly inside the domain.
    """
    if sf.state.bc is not BoundarySpec.ROBIN_MINUS:
        raise DomainError("interior-extremum seeds are specific to the attractive Robin wall")
    n = sf.state.n
    f13 = sf.field_cbrt
    if regime == "weak":
        if n < 1:
            raise DomainError("the weak-field ground state has no interior extremum")
        table = root_table(n + 1)
        a_n = table.ai_zero(n)
        seeds = [((a_n - table.ai_prime_zero(m)) / f13 - 1.0, m) for m in range(1, n + 1)]
    elif regime == "strong":
        if n < 1:
            raise DomainError("the strong-field ground state presses its crest onto the wall")
        table = root_table(n + 1)
        ap_top = table.ai_prime_zero(n + 1)
        # The boundary condition pushes the Airy argument at the wall just
        # above the (n+1)th slope zero, so the innermost crest is truncated
        # and only n stationary points survive inside.
        offset = 1.0 / (ap_top * f13 * f13)
        seeds = [((ap_top - table.ai_prime_zero(m)) / f13 - offset, m)
                 for m in range(1, n + 1)]
    else:
        raise ValueError(f"regime must be 'weak' or 'strong', got {regime!r}")

    out = []
    for seed, m in seeds:
        x = _newton_extremum(sf, seed)
        out.append(ExtremumInfo(m=m, x=x, psi_value=float(sf.psi(x))))
    return out
