"""Sparse complex-amplitude states for one photon coupled to two trapped ions.

The single photonic excitation lives in one of a handful of modes: a
propagating interferometer mode (port x direction x polarization), a
"scattered at ion" marker once an ion has absorbed and re-emitted it, or
vacuum once a detector has consumed it.  Each ion sits in one of three
levels.  A pure state is a sparse map from joint basis kets to complex
amplitudes, held in canonical form (pruned below ``PRUNE_EPS``, sorted by
basis key) so that equality is structural; a mixed state is a weighted
ensemble of normalized pure states.

Global phase is never divided out automatically: ``normalize`` rescales by
a positive real factor only, and ray equality is a separate comparison
(``equal_up_to_global_phase``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

#: Amplitudes below this modulus are dropped when a state is built.
PRUNE_EPS = 1e-12
#: Tolerance for unit-norm and unit-weight checks.
NORM_TOL = 1e-9


def abs2(z: complex) -> float:
    """|z|^2 without the square root detour."""
    return z.real * z.real + z.imag * z.imag


class Polarization(Enum):
    """Circular photon polarization; each couples exactly one qubit level."""

    SIGMA_PLUS = "sigma_plus"
    SIGMA_MINUS = "sigma_minus"


class IonLevel(Enum):
    """Storable ion levels: the two metastable qubit levels and the ground level."""

    M_PLUS = "m_plus"
    M_MINUS = "m_minus"
    G = "g"


class Port(Enum):
    UPPER = "upper"
    LOWER = "lower"


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class IonId(Enum):
    ION_U = "ion_u"
    ION_L = "ion_l"

    @property
    def arm(self) -> Port:
        """The interferometer arm this ion sits on."""
        return Port.UPPER if self is IonId.ION_U else Port.LOWER


class ModeKind(Enum):
    PROPAGATING = "propagating"
    SCATTERED = "scattered"
    VACUUM = "vacuum"


_ENUM_RANK: dict[Enum, int] = {}


def _rank(member: Enum) -> int:
    rank = _ENUM_RANK.get(member)
    if rank is None:
        for i, m in enumerate(type(member)):
            _ENUM_RANK[m] = i
        rank = _ENUM_RANK[member]
    return rank


@dataclass(frozen=True)
class PhotonMode:
    """Where the single photonic excitation lives.

    Build instances through :meth:`propagating`, :meth:`scattered` or
    :meth:`vacuum`; the constructor rejects field combinations that do not
    belong to the chosen kind (vacuum carries nothing, a scattered photon
    carries only its scatter site).
    """

    kind: ModeKind
    port: Port | None = None
    direction: Direction | None = None
    polarization: Polarization | None = None
    scattered_at: IonId | None = None

    def __post_init__(self) -> None:
        if self.kind is ModeKind.PROPAGATING:
            if self.port is None or self.direction is None or self.polarization is None:
                raise ValueError("propagating mode needs port, direction and polarization")
            if self.scattered_at is not None:
                raise ValueError("propagating mode carries no scatter site")
        elif self.kind is ModeKind.SCATTERED:
            if self.scattered_at is None:
                raise ValueError("scattered mode needs a scatter site")
            if not (self.port is None and self.direction is None and self.polarization is None):
                raise ValueError("scattered mode carries no port, direction or polarization")
        else:
            if not (
                self.port is None
                and self.direction is None
                and self.polarization is None
                and self.scattered_at is None
            ):
                raise ValueError("vacuum carries no port, direction or polarization")

    @staticmethod
    def propagating(port: Port, direction: Direction, polarization: Polarization) -> "PhotonMode":
        return PhotonMode(ModeKind.PROPAGATING, port=port, direction=direction, polarization=polarization)

    @staticmethod
    def scattered(at: IonId) -> "PhotonMode":
        return PhotonMode(ModeKind.SCATTERED, scattered_at=at)

    @staticmethod
    def vacuum() -> "PhotonMode":
        return PhotonMode(ModeKind.VACUUM)

    def sort_key(self) -> tuple[int, int, int, int, int]:
        return (
            _rank(self.kind),
            -1 if self.port is None else _rank(self.port),
            -1 if self.direction is None else _rank(self.direction),
            -1 if self.polarization is None else _rank(self.polarization),
            -1 if self.scattered_at is None else _rank(self.scattered_at),
        )


@dataclass(frozen=True)
class BasisState:
    """One joint basis ket: photon mode and the two ion levels (upper, lower)."""

    photon: PhotonMode
    ion_u: IonLevel
    ion_l: IonLevel

    def sort_key(self) -> tuple[int, ...]:
        return self.photon.sort_key() + (_rank(self.ion_u), _rank(self.ion_l))


class PureState:
    """Sparse complex-amplitude map over joint basis kets, in canonical form.

    The constructor merges duplicate keys, prunes amplitudes below
    ``PRUNE_EPS`` and orders the remaining terms, so two states built from
    the same amplitudes in any insertion order compare equal.  Instances
    are immutable values and safe to share across threads.
    """

    __slots__ = ("_terms", "_index")

    def __init__(
        self,
        terms: Mapping[BasisState, complex] | Iterable[tuple[BasisState, complex]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[BasisState, complex] = {}
        for basis, amp in items:
            merged[basis] = merged.get(basis, 0j) + complex(amp)
        ordered = tuple(
            (basis, amp)
            for basis, amp in sorted(merged.items(), key=lambda kv: kv[0].sort_key())
            if abs(amp) >= PRUNE_EPS
        )
        self._terms = ordered
        self._index = dict(ordered)

    @property
    def terms(self) -> tuple[tuple[BasisState, complex], ...]:
        return self._terms

    def items(self) -> Iterator[tuple[BasisState, complex]]:
        return iter(self._terms)

    def amplitude(self, basis: BasisState) -> complex:
        return self._index.get(basis, 0j)

    def norm_squared(self) -> float:
        return sum(abs2(amp) for _, amp in self._terms)

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"PureState({len(self._terms)} terms, norm={self.norm():.6g})"


def normalize(state: PureState) -> tuple[float, PureState]:
    """Return the l2 norm of ``state`` and its unit-norm rescaling.

    Only a positive real factor is divided out; the phase of every
    amplitude is kept exactly as given.
    """
    if not state.terms:
        raise ValueError("null state")
    norm = state.norm()
    if norm == 0.0:
        raise ValueError("null state")
    inv = 1.0 / norm
    return norm, PureState((basis, amp * inv) for basis, amp in state.items())


def inner_product(bra: PureState, ket: PureState) -> complex:
    """<bra|ket>, conjugate-linear in the first argument."""
    if len(bra) > len(ket):
        return inner_product(ket, bra).conjugate()
    return sum((amp.conjugate() * ket.amplitude(basis) for basis, amp in bra.items()), 0j)


def equal_up_to_global_phase(first: PureState, second: PureState, tol: float = NORM_TOL) -> bool:
    """Whether the two states describe the same ray within ``tol``."""
    _, a = normalize(first)
    _, b = normalize(second)
    return 1.0 - abs(inner_product(a, b)) <= tol


class MixedState:
    """Weighted ensemble of normalized pure states.

    Weights lie in (0, 1] and sum to one; zero-weight branches must be
    dropped by the caller before construction.
    """

    __slots__ = ("_components",)

    def __init__(self, components: Iterable[tuple[float, PureState]]) -> None:
        comps = tuple((float(w), state) for w, state in components)
        if not comps:
            raise ValueError("mixed state needs at least one component")
        for weight, state in comps:
            if not 0.0 < weight <= 1.0:
                raise ValueError("component weights must lie in (0, 1]")
            if abs(state.norm() - 1.0) > NORM_TOL:
                raise ValueError("component states must be normalized")
        if abs(sum(w for w, _ in comps) - 1.0) > NORM_TOL:
            raise ValueError("component weights must sum to 1")
        self._components = comps

    @property
    def components(self) -> tuple[tuple[float, PureState], ...]:
        return self._components

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedState):
            return NotImplemented
        return self._components == other._components

    def __repr__(self) -> str:
        return f"MixedState({len(self._components)} components)"


def _ion_factor(state: PureState) -> dict[tuple[IonLevel, IonLevel], complex]:
    """Ion-pair amplitudes of a state whose photon mode factorizes out."""
    modes = {basis.photon for basis, _ in state.items()}
    if len(modes) != 1:
        raise ValueError("photon not separable")
    return {(basis.ion_u, basis.ion_l): amp for basis, amp in state.items()}


def ion_fidelity(ensemble: MixedState, target: PureState) -> float:
    """Overlap probability of the ensemble's two-ion factor with a pure target.

    The photon mode of every component (and of the target) must be uniform
    within that state; it is traced out before the overlap is taken.
    """
    target_amps = _ion_factor(target)
    total = 0.0
    for weight, state in ensemble.components:
        amps = _ion_factor(state)
        overlap = sum(
            (target_amps[key].conjugate() * amp for key, amp in amps.items() if key in target_amps),
            0j,
        )
        total += weight * abs2(overlap)
    return total
