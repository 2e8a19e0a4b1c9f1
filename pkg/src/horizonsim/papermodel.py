"""The four-qubit evaporation circuit, its closed-form entropy plateaus, and block ensembles.

Qubits are ``m`` (infalling matter), ``g`` (auxiliary partner of ``m``),
``minus`` and ``plus`` (the Hawking pair). Information initially held by
``m`` ends up on ``plus`` without ever leaving the interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .entropy import entropy_from_probabilities
from .errors import InvalidParameterError, NotNormalizedError
from .horizon import Circuit, Crossing, TimelineEvent, make_circuit, run
from .statevec import CNOT, NORM_TOL, SWAP, Matrix2, PureState, Unitary1Q

QUBIT_NAMES = ("m", "g", "minus", "plus")
M, G, MINUS, PLUS = range(4)
VARIANTS = ("A", "B")
MODES = ("total", "radiation")

# events completed when each stage checkpoint (initial, after stage 1, 2, 3) is reached
STAGE_EVENT_COUNTS = {"A": (0, 5, 7, 10), "B": (0, 5, 7, 11)}

# (m, g) carries the matter amplitudes, (minus, plus) the Hawking pair; the
# stage-2 swaps exchange what the two groups hold
PAIR_GROUPS = {"S_prime": ("m", "g"), "S_bis": ("minus", "plus")}


def _normalized_pair(a, b, what):
    a, b = complex(a), complex(b)
    if not (math.isfinite(abs(a)) and math.isfinite(abs(b))):
        raise NotNormalizedError(f"{what}: amplitudes must be finite")
    norm2 = abs(a) ** 2 + abs(b) ** 2
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalizedError(f"{what}: |a|^2 + |b|^2 = {norm2!r}, expected 1")
    return a, b


@dataclass(frozen=True)
class ModelParams:
    lam: complex
    mu: complex
    alpha: complex
    beta: complex

    def __post_init__(self):
        lam, mu = _normalized_pair(self.lam, self.mu, "(lambda, mu)")
        alpha, beta = _normalized_pair(self.alpha, self.beta, "(alpha, beta)")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def symmetric(cls) -> "ModelParams":
        r = 1 / math.sqrt(2)
        return cls(r, r, r, r)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ModelParams":
        """Draw both coefficient pairs uniformly from the unit sphere in C^2."""
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        return cls(z[0, 0], z[0, 1], z[1, 0], z[1, 1])


@dataclass(frozen=True)
class Schedule:
    tau1: float
    tau2: float
    tau3: float
    tau4: float

    def __post_init__(self):
        taus = self.as_tuple()
        if not all(math.isfinite(t) for t in taus):
            raise InvalidParameterError(f"horizon instants must be finite, got {taus}")
        if not 0.0 < taus[0] < taus[1] < taus[2] < taus[3]:
            raise InvalidParameterError(
                f"need 0 < tau1 < tau2 < tau3 < tau4, got {taus}"
            )

    def as_tuple(self) -> tuple:
        return (float(self.tau1), float(self.tau2), float(self.tau3), float(self.tau4))


DEFAULT_SCHEDULE = Schedule(1.0, 2.0, 3.0, 4.0)


def hawking_unitary(alpha, beta) -> Matrix2:
    """Unitary with first column (alpha, beta): U|0> = alpha|0> + beta|1>."""
    alpha, beta = _normalized_pair(alpha, beta, "(alpha, beta)")
    return Matrix2([[alpha, -beta.conjugate()], [beta, alpha.conjugate()]])


def build_canonical(params: ModelParams, schedule: Schedule = DEFAULT_SCHEDULE,
                    variant: str = "A") -> Circuit:
    """Canonical evaporation circuit with every qubit starting outside.

    Variant ``A`` disentangles (m, g) with a cross-horizon CNOT whose control
    ``g`` stays outside. Variant ``B`` lets ``g`` fall in at tau3 and undoes
    the pair entirely inside.
    """
    if variant not in VARIANTS:
        raise InvalidParameterError(f"variant must be 'A' or 'B', got {variant!r}")
    t1, t2, t3, t4 = schedule.as_tuple()
    uh = hawking_unitary(params.alpha, params.beta)
    stage2 = t3 - t2
    stage3 = t4 - t3

    events = [
        TimelineEvent(0.25 * t1, CNOT(M, G)),
        TimelineEvent(0.5 * t1, Unitary1Q(uh, MINUS)),
        TimelineEvent(0.75 * t1, CNOT(MINUS, PLUS)),
        TimelineEvent(t1, Crossing(M)),
        TimelineEvent(t2, Crossing(MINUS)),
        TimelineEvent(t2 + 0.25 * stage2, SWAP(M, MINUS)),
        TimelineEvent(t2 + 0.5 * stage2, SWAP(G, PLUS)),
    ]
    if variant == "A":
        events += [
            TimelineEvent(t3, CNOT(G, M)),
            TimelineEvent(t3 + 0.5 * stage3, Unitary1Q(uh.inverse(), G)),
        ]
    else:
        events += [
            TimelineEvent(t3, Crossing(G)),
            TimelineEvent(t3 + 0.25 * stage3, CNOT(G, M)),
            TimelineEvent(t3 + 0.5 * stage3, Unitary1Q(uh.inverse(), G)),
        ]
    events.append(TimelineEvent(t4, CNOT(PLUS, MINUS)))

    factors = [(params.lam, params.mu), (1, 0), (1, 0), (1, 0)]
    return make_circuit(QUBIT_NAMES, events, factors=factors)


def _binary_entropy(a, b, what):
    a, b = _normalized_pair(a, b, what)
    return entropy_from_probabilities([abs(a) ** 2, abs(b) ** 2])


def s_prime(lam, mu) -> float:
    """Entropy gained when ``m`` falls in: -|l|^2 ln|l|^2 - |mu|^2 ln|mu|^2."""
    return _binary_entropy(lam, mu, "(lambda, mu)")


def s_bis(alpha, beta) -> float:
    """Entropy gained when ``minus`` falls in, from the Hawking amplitudes."""
    return _binary_entropy(alpha, beta, "(alpha, beta)")


_E0 = np.array([1, 0], dtype=complex)


def _bell_like(a, b):
    return np.array([a, 0, 0, b], dtype=complex)


def stage_states(params: ModelParams) -> tuple:
    """Checkpoint states written down directly, without running any gates."""
    lam, mu, alpha, beta = params.lam, params.mu, params.alpha, params.beta
    psi_m = np.array([lam, mu], dtype=complex)
    psi0 = np.kron(psi_m, np.kron(_E0, np.kron(_E0, _E0)))
    psi1 = np.kron(_bell_like(lam, mu), _bell_like(alpha, beta))
    psi2 = np.kron(_bell_like(alpha, beta), _bell_like(lam, mu))
    psi3 = np.kron(np.kron(_E0, np.kron(_E0, _E0)), psi_m)
    return tuple(PureState(v) for v in (psi0, psi1, psi2, psi3))


def run_stages(params: ModelParams, schedule: Schedule = DEFAULT_SCHEDULE,
               variant: str = "A") -> tuple:
    """Run the canonical circuit and return the engine's four checkpoint states."""
    counts = STAGE_EVENT_COUNTS[variant]
    _, _, saved = run(build_canonical(params, schedule, variant), checkpoints=counts)
    return tuple(saved[c] for c in counts)


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidParameterError(f"mode must be 'total' or 'radiation', got {mode!r}")


def _levels(sp, sb, mode):
    """Entropy plateaus before tau1, then after each of tau1..tau4."""
    if mode == "total":
        return np.array([0.0, sp, sp + sb, sp, 0.0])
    return np.array([0.0, 0.0, sb, sb, 0.0])


def _staircase_grid(grid, taus, levels):
    """Plateau values for every block (rows of ``taus``) at every grid time."""
    passed = (grid[None, None, :] >= taus[:, :, None]).sum(axis=1)
    return levels[passed]


def staircase(params: ModelParams, schedule: Schedule, mode: str, t: float) -> float:
    """Closed-form entropy of one block at time ``t`` (right-continuous at each instant)."""
    _check_mode(mode)
    if not t >= 0.0:
        raise InvalidParameterError(f"time must be non-negative, got {t!r}")
    levels = _levels(s_prime(params.lam, params.mu), s_bis(params.alpha, params.beta), mode)
    passed = sum(1 for tau in schedule.as_tuple() if t >= tau)
    return float(levels[passed])


# splitmix64 constants
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def splitmix64_mix(z: np.ndarray) -> np.ndarray:
    """The splitmix64 finalizer on a uint64 array (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _splitmix_nth(state: np.ndarray, n: int) -> np.ndarray:
    """Output ``n`` (0-based) of splitmix64 streams started at ``state``."""
    with np.errstate(over="ignore"):
        return splitmix64_mix(state + np.uint64(n + 1) * _GAMMA)


def block_uniforms(seed: int, blocks: np.ndarray, count: int = 4) -> np.ndarray:
    """Uniforms in [0, 1), ``count`` per block, depending only on (seed, block index).

    Block ``b`` seeds its own splitmix64 stream with output ``b`` of the
    stream seeded by ``seed``; 53-bit mantissas are taken from the top bits.
    """
    blocks = np.asarray(blocks, dtype=np.uint64)
    root = np.full(blocks.shape, int(seed) & _MASK64, dtype=np.uint64)
    with np.errstate(over="ignore"):
        substream = splitmix64_mix(root + (blocks + np.uint64(1)) * _GAMMA)
    cols = [_splitmix_nth(substream, i) >> np.uint64(11) for i in range(count)]
    return np.stack(cols, axis=-1).astype(np.float64) * 2.0 ** -53


@dataclass(frozen=True)
class EnsembleConfig:
    blocks: int
    schedule: Schedule
    jitter: tuple
    params: ModelParams
    seed: int
    samples: int
    t_end: float
    mode: str = "total"
    first_block: int = 0

    def __post_init__(self):
        jitter = tuple(float(w) for w in self.jitter)
        object.__setattr__(self, "jitter", jitter)
        if int(self.blocks) < 1:
            raise InvalidParameterError(f"need at least one block, got {self.blocks}")
        if int(self.first_block) < 0:
            raise InvalidParameterError("first_block must be non-negative")
        if len(jitter) != 4 or not all(math.isfinite(w) and w >= 0.0 for w in jitter):
            raise InvalidParameterError(f"need four non-negative jitter widths, got {jitter}")
        _check_mode(self.mode)
        taus = self.schedule.as_tuple()
        if not taus[0] - jitter[0] > 0.0:
            raise InvalidParameterError("tau1 - w1 must be positive so every block starts flat")
        for i in range(3):
            if not taus[i] + jitter[i] < taus[i + 1] - jitter[i + 1]:
                raise InvalidParameterError(
                    f"jitter windows {i + 1} and {i + 2} overlap: "
                    f"{taus[i]} + {jitter[i]} >= {taus[i + 1]} - {jitter[i + 1]}"
                )
        if not self.t_end > taus[3] + jitter[3]:
            raise InvalidParameterError(f"t_end must exceed tau4 + w4 = {taus[3] + jitter[3]}")
        if int(self.samples) < 2:
            raise InvalidParameterError("need at least two grid samples")


@dataclass(frozen=True)
class PageCurve:
    times: np.ndarray
    total: np.ndarray
    mean: np.ndarray


def block_instants(config: EnsembleConfig, block_ids=None) -> np.ndarray:
    """Jittered (tau1..tau4) for each block, shape (n_blocks, 4)."""
    if block_ids is None:
        block_ids = np.arange(config.first_block, config.first_block + config.blocks)
    u = block_uniforms(config.seed, block_ids, 4)
    taus = np.array(config.schedule.as_tuple())
    widths = np.array(config.jitter)
    return taus + (2.0 * u - 1.0) * widths


def ensemble_page_curve(config: EnsembleConfig) -> PageCurve:
    """Sum of independently jittered block staircases on a shared grid over [0, t_end].

    Blocks are accumulated in index order, so a given config always produces
    the same bits.
    """
    grid = np.linspace(0.0, float(config.t_end), int(config.samples))
    chunk = max(1, (1 << 22) // (4 * grid.size))
    levels = _levels(
        s_prime(config.params.lam, config.params.mu),
        s_bis(config.params.alpha, config.params.beta),
        config.mode,
    )
    total = np.zeros_like(grid)
    start, stop = config.first_block, config.first_block + config.blocks
    for lo in range(start, stop, chunk):
        ids = np.arange(lo, min(lo + chunk, stop))
        taus = block_instants(config, ids)
        per_block = _staircase_grid(grid, taus, levels)
        for row in per_block:
            total += row
    return PageCurve(grid, total, total / config.blocks)
