"""The physical elements of the interferometer as linear maps on PureState.

Geometry: the photon enters at the lower-left, a 50-50 splitter sits at
each crossing, one ion on each arm interacts with the light passing it,
and single-photon detectors watch the two non-mirror output ports.  In
the recycling configuration a mirror closes the lower-left port (M1) and
the upper-right port (M2).

A splitter reflection carries a +i phase for forward travel and -i for
backward travel; this is the unique assignment under which an empty
interferometer routes the photon to the upper output with certainty and
a forward pass followed by the reflected backward pass is the identity.
"""

from __future__ import annotations

from enum import Enum

from .states import (
    BasisState,
    Direction,
    IonId,
    IonLevel,
    ModeKind,
    PhotonMode,
    Polarization,
    Port,
    PureState,
    abs2,
    normalize,
)

_SQRT_HALF = 2.0 ** -0.5

_OTHER_PORT = {Port.UPPER: Port.LOWER, Port.LOWER: Port.UPPER}
_FLIP = {Direction.FORWARD: Direction.BACKWARD, Direction.BACKWARD: Direction.FORWARD}
_REFLECTION_PHASE = {Direction.FORWARD: 1j, Direction.BACKWARD: -1j}
_ABSORBING_LEVEL = {
    Polarization.SIGMA_PLUS: IonLevel.M_PLUS,
    Polarization.SIGMA_MINUS: IonLevel.M_MINUS,
}


class BeamSplitterId(Enum):
    """The two identical nonpolarizing 50-50 splitters."""

    BS1 = "bs1"
    BS2 = "bs2"


class MirrorId(Enum):
    """The two enclosure mirrors and the stations they close off."""

    M1_LEFT_LOWER = "m1_left_lower"
    M2_RIGHT_UPPER = "m2_right_upper"


class DetectorPort(Enum):
    UPPER_OUT = "upper_out"
    LOWER_OUT = "lower_out"


# port the mirror sits on, and the outgoing direction it faces
_MIRROR_STATION = {
    MirrorId.M1_LEFT_LOWER: (Port.LOWER, Direction.BACKWARD),
    MirrorId.M2_RIGHT_UPPER: (Port.UPPER, Direction.FORWARD),
}

_DETECTOR_PORT = {DetectorPort.UPPER_OUT: Port.UPPER, DetectorPort.LOWER_OUT: Port.LOWER}


def beam_splitter(state: PureState, splitter: BeamSplitterId) -> PureState:
    """Apply a 50-50 nonpolarizing splitter to every propagating term.

    An amplitude on one port splits evenly over both ports; the same-port
    component picks up the direction-dependent reflection phase.
    Polarization is untouched, and scattered or vacuum terms pass through.
    Both splitters apply the identical map, so ``splitter`` only records
    which crossing is meant.
    """
    del splitter  # identical optics at both crossings
    out: list[tuple[BasisState, complex]] = []
    for basis, amp in state.items():
        mode = basis.photon
        if mode.kind is not ModeKind.PROPAGATING:
            out.append((basis, amp))
            continue
        crossed = PhotonMode.propagating(_OTHER_PORT[mode.port], mode.direction, mode.polarization)
        half = amp * _SQRT_HALF
        out.append((BasisState(crossed, basis.ion_u, basis.ion_l), half))
        out.append((basis, half * _REFLECTION_PHASE[mode.direction]))
    return PureState(out)


def ion_interaction(state: PureState, ion: IonId) -> PureState:
    """Let one ion absorb and re-scatter the photon passing on its arm.

    A propagating term on the ion's arm whose polarization addresses the
    ion's current level (sigma+ with m+, sigma- with m-) turns into a
    scattered marker at that ion with the ion dropped to the ground
    level; the other ion is untouched.  Every non-matching term (wrong
    arm, non-matching polarization/level pairing, ion already in the
    ground level) is left alone, so the map preserves the norm and
    scattered terms are fixed points.

    The scattered marker does not record which absorption channel fired,
    so amplitudes from distinct channels of one ion (sigma+ on m+ versus
    sigma- on m-, or opposite travel directions) would merge; a
    single-photon run only ever has one polarization and one direction
    in flight, which keeps the map norm-preserving.
    """
    out: list[tuple[BasisState, complex]] = []
    for basis, amp in state.items():
        mode = basis.photon
        level = basis.ion_u if ion is IonId.ION_U else basis.ion_l
        if (
            mode.kind is ModeKind.PROPAGATING
            and mode.port is ion.arm
            and _ABSORBING_LEVEL[mode.polarization] is level
        ):
            if ion is IonId.ION_U:
                basis = BasisState(PhotonMode.scattered(ion), IonLevel.G, basis.ion_l)
            else:
                basis = BasisState(PhotonMode.scattered(ion), basis.ion_u, IonLevel.G)
        out.append((basis, amp))
    return PureState(out)


def mirror(state: PureState, at: MirrorId) -> PureState:
    """Reflect the beam leaving through one enclosure mirror back inside.

    Every propagating term must sit at the mirror's station (its port,
    moving outward); reflection flips the direction and keeps port,
    polarization and amplitude (unit reflection phase).  Scattered and
    vacuum terms pass through.
    """
    port, outward = _MIRROR_STATION[at]
    out: list[tuple[BasisState, complex]] = []
    for basis, amp in state.items():
        mode = basis.photon
        if mode.kind is not ModeKind.PROPAGATING:
            out.append((basis, amp))
            continue
        if mode.port is not port or mode.direction is not outward:
            raise ValueError("photon escaped cavity")
        back = PhotonMode.propagating(port, _FLIP[outward], mode.polarization)
        out.append((BasisState(back, basis.ion_u, basis.ion_l), amp))
    return PureState(out)


def detect(state: PureState, port: DetectorPort) -> tuple[float, PureState]:
    """Project onto the photon leaving through one output port.

    Returns the click probability and the normalized post-detection state
    with the photon consumed (set to vacuum).  ``state`` is assumed
    normalized; scattered terms never reach the detectors.
    """
    want = _DETECTOR_PORT[port]
    picked: list[tuple[BasisState, complex]] = []
    prob = 0.0
    for basis, amp in state.items():
        mode = basis.photon
        if mode.kind is ModeKind.PROPAGATING and mode.port is want:
            prob += abs2(amp)
            picked.append((BasisState(PhotonMode.vacuum(), basis.ion_u, basis.ion_l), amp))
    if prob < 1e-12:
        raise ValueError("no support at detector")
    _, post = normalize(PureState(picked))
    return prob, post
