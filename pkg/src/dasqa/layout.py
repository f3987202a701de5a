"""Physical layout of a high-level architecture.

Maps an :class:`~dasqa.archgen.Architecture` onto a chip: transmons at the
grid cell centers, one coupling resonator per coupling edge (meandered to
its wavelength-derived length), and a readout chain per qubit (capacitor,
quarter-wave readout resonator, control-line port at the chip edge) with the
connecting nets. All coordinates are micrometers; option values are strings
with explicit units so they survive serialization unambiguously.

The document is single-writer: :func:`update_component` mutates geometry in
place and re-checks the layout invariants.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .archgen import Architecture
from .config import DesignConfig
from .errors import LayoutError
from .resonator import Point, polyline_length, resonator_length, synthesize_meander

KINDS = (
    "transmon",
    "coupling_resonator",
    "readout_resonator",
    "capacitor",
    "control_line",
    "connection",
)

# geometry options accepted by update_component, per component kind
KNOWN_OPTIONS = {
    "transmon": ("pad_width", "pad_height", "pad_gap"),
    "coupling_resonator": ("target_frequency", "total_length", "meander_amplitude"),
    "readout_resonator": ("target_frequency", "total_length", "meander_amplitude"),
    "capacitor": ("cap_width", "cap_plate_height", "cap_gap"),
    "control_line": ("stub_length",),
    "connection": (),
}

DEFAULT_PAD_WIDTH_UM = 455.0
DEFAULT_PAD_HEIGHT_UM = 90.0
DEFAULT_PAD_GAP_UM = 30.0

CAP_OFFSET_UM = 500.0  # qubit center to capacitor center
CHAIN_X_OFFSET_UM = 400.0  # readout chain sits right of the qubit column
READOUT_DROP_UM = 150.0  # capacitor center to readout meander start
READOUT_SPAN_UM = 800.0  # readout meander baseline
COUPLER_CLEARANCE_UM = 300.0  # pad clearance at coupling resonator ends

_QTY_RE = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)\s*(um|mm|GHz)\s*$")

_UM_PER_UNIT = {"um": 1.0, "mm": 1000.0}


def parse_quantity(value: str) -> tuple[float, str]:
    """Split a unit-bearing option value into (magnitude, unit)."""
    if not isinstance(value, str):
        raise LayoutError(f"option value must be a unit string, got {value!r}")
    m = _QTY_RE.match(value)
    if not m:
        raise LayoutError(f"malformed unit value {value!r} (expected e.g. '10um', '7.0GHz')")
    magnitude = float(m.group(1))
    if magnitude <= 0:
        raise LayoutError(f"option value must be positive, got {value!r}")
    return magnitude, m.group(2)


def length_um(value: str) -> float:
    magnitude, unit = parse_quantity(value)
    if unit not in _UM_PER_UNIT:
        raise LayoutError(f"expected a length (um/mm), got {value!r}")
    return magnitude * _UM_PER_UNIT[unit]


def frequency_ghz(value: str) -> float:
    magnitude, unit = parse_quantity(value)
    if unit != "GHz":
        raise LayoutError(f"expected a frequency in GHz, got {value!r}")
    return magnitude


def fmt_um(value: float) -> str:
    return f"{value:.9g}um"


Rect = tuple[float, float, float, float]  # x_min, y_min, width, height


@dataclass
class Component:
    name: str
    kind: str
    position: Point
    options: dict[str, str] = field(default_factory=dict)
    # resonator metadata (not options: dimensionless / enumerated)
    mode: str | None = None
    epsilon_eff: float | None = None
    anchors: tuple[Point, Point] | None = None
    # derived geometry
    rects: list[Rect] = field(default_factory=list)
    polylines: list[list[Point]] = field(default_factory=list)


@dataclass
class LayoutDocument:
    chip: Rect  # origin_x, origin_y, width, height
    components: list[Component] = field(default_factory=list)
    nets: list[tuple[str, str, str]] = field(default_factory=list)

    def component(self, name: str) -> Component:
        for comp in self.components:
            if comp.name == name:
                return comp
        raise LayoutError(f"unknown component {name!r}")

    def has_component(self, name: str) -> bool:
        return any(c.name == name for c in self.components)

    def by_kind(self, kind: str) -> list[Component]:
        return [c for c in self.components if c.kind == kind]

    def census(self) -> dict[str, int]:
        counts = {kind: 0 for kind in KINDS}
        for comp in self.components:
            counts[comp.kind] += 1
        return counts

    # -- invariants --------------------------------------------------------

    def validate(self) -> None:
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})[0]
            raise LayoutError(f"duplicate component name {dup!r}")
        for comp in self.components:
            for value in comp.options.values():
                parse_quantity(value)
        known = set(names)
        for a, b, kind in self.nets:
            for endpoint in (a, b):
                if endpoint not in known:
                    raise LayoutError(f"net endpoint {endpoint!r} does not exist")
        x0, y0, w, h = self.chip
        x1, y1 = x0 + w, y0 + h
        tol = 1e-6
        for comp in self.components:
            for rx, ry, rw, rh in comp.rects:
                if rx < x0 - tol or ry < y0 - tol or rx + rw > x1 + tol or ry + rh > y1 + tol:
                    raise LayoutError(
                        f"{comp.name}: rectangle outside chip bounds "
                        f"(chip too small for the configured pitch/margin)"
                    )
            for line in comp.polylines:
                for px, py in line:
                    if px < x0 - tol or py < y0 - tol or px > x1 + tol or py > y1 + tol:
                        raise LayoutError(
                            f"{comp.name}: path outside chip bounds "
                            f"(chip too small for the configured pitch/margin)"
                        )
        pads = [
            (comp.name, rect)
            for comp in self.components
            if comp.kind == "transmon"
            for rect in comp.rects
        ]
        for i in range(len(pads)):
            for j in range(i + 1, len(pads)):
                (na, a), (nb, b) = pads[i], pads[j]
                if na != nb and _rects_overlap(a, b):
                    raise LayoutError(f"transmon pads of {na} and {nb} overlap")

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        def num(v: float) -> float:
            return float(f"{v:.9g}")

        comps = []
        for comp in self.components:
            entry: dict = {
                "name": comp.name,
                "kind": comp.kind,
                "position_um": [num(comp.position[0]), num(comp.position[1])],
                "options": dict(sorted(comp.options.items())),
            }
            if comp.mode is not None:
                entry["mode"] = comp.mode
            if comp.epsilon_eff is not None:
                entry["epsilon_eff"] = num(comp.epsilon_eff)
            entry["geometry"] = {
                "rects": [[num(v) for v in rect] for rect in comp.rects],
                "polylines": [
                    [[num(x), num(y)] for x, y in line] for line in comp.polylines
                ],
            }
            comps.append(entry)
        return {
            "chip": {
                "origin_x_um": num(self.chip[0]),
                "origin_y_um": num(self.chip[1]),
                "width_um": num(self.chip[2]),
                "height_um": num(self.chip[3]),
            },
            "components": comps,
            "nets": [list(net) for net in self.nets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _rects_overlap(a: Rect, b: Rect) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return ax < bx + bw and bx < ax + aw and ay < by + bh and by < ay + ah


# -- geometry synthesis ------------------------------------------------------


def _rebuild_transmon(comp: Component) -> None:
    x, y = comp.position
    w = length_um(comp.options["pad_width"])
    h = length_um(comp.options["pad_height"])
    gap = length_um(comp.options["pad_gap"])
    comp.rects = [
        (x - w / 2, y + gap / 2, w, h),
        (x - w / 2, y - gap / 2 - h, w, h),
    ]
    # junction marker bridging the gap
    comp.polylines = [[(x, y - gap / 2), (x, y + gap / 2)]]


def _rebuild_resonator(comp: Component) -> None:
    if comp.anchors is None:
        raise LayoutError(f"{comp.name}: resonator has no endpoints")
    total = length_um(comp.options["total_length"])
    amplitude = length_um(comp.options["meander_amplitude"])
    comp.rects = []
    comp.polylines = [synthesize_meander(comp.anchors[0], comp.anchors[1], total, amplitude)]


def _rebuild_capacitor(comp: Component) -> None:
    x, y = comp.position
    w = length_um(comp.options["cap_width"])
    plate = length_um(comp.options["cap_plate_height"])
    gap = length_um(comp.options["cap_gap"])
    comp.rects = [
        (x - w / 2, y + gap / 2, w, plate),
        (x - w / 2, y - gap / 2 - plate, w, plate),
    ]
    comp.polylines = []


def _rebuild_control_line(comp: Component) -> None:
    x, y = comp.position
    stub = length_um(comp.options["stub_length"])
    comp.rects = []
    comp.polylines = [[(x - stub / 2, y), (x + stub / 2, y)]]


def _rebuild_connection(comp: Component) -> None:
    if comp.anchors is None:
        raise LayoutError(f"{comp.name}: connection has no endpoints")
    comp.rects = []
    comp.polylines = [[comp.anchors[0], comp.anchors[1]]]


_REBUILD = {
    "transmon": _rebuild_transmon,
    "coupling_resonator": _rebuild_resonator,
    "readout_resonator": _rebuild_resonator,
    "capacitor": _rebuild_capacitor,
    "control_line": _rebuild_control_line,
    "connection": _rebuild_connection,
}


def rebuild_geometry(comp: Component) -> None:
    _REBUILD[comp.kind](comp)


def update_component(layout: LayoutDocument, name: str, option: str, value: str) -> LayoutDocument:
    """Set one geometry option and recompute the dependent shapes.

    For resonators, changing ``target_frequency`` re-derives ``total_length``
    from the wavelength formula before re-synthesizing the meander. The
    layout invariants are re-checked after the change; on violation the
    document is left untouched.
    """
    comp = layout.component(name)
    known = KNOWN_OPTIONS[comp.kind]
    if option not in known:
        raise LayoutError(
            f"unknown option {option!r} for {comp.kind} {name!r} "
            f"(known: {', '.join(known) or 'none'})"
        )
    if option == "target_frequency":
        f_ghz = frequency_ghz(value)
        if comp.mode is None or comp.epsilon_eff is None:
            raise LayoutError(f"{name}: resonator mode/permittivity missing")
        new_len_mm = resonator_length(f_ghz, comp.epsilon_eff, comp.mode)
        staged = {
            "target_frequency": f"{f_ghz:.9g}GHz",
            "total_length": fmt_um(new_len_mm * 1000.0),
        }
    elif option in ("pad_width", "pad_height", "pad_gap", "total_length",
                    "meander_amplitude", "cap_width", "cap_plate_height",
                    "cap_gap", "stub_length"):
        length_um(value)  # validates magnitude and unit
        staged = {option: value}
    else:
        parse_quantity(value)
        staged = {option: value}

    saved_options = dict(comp.options)
    saved_rects = list(comp.rects)
    saved_polylines = [list(line) for line in comp.polylines]
    comp.options.update(staged)
    try:
        rebuild_geometry(comp)
        layout.validate()
    except LayoutError:
        comp.options = saved_options
        comp.rects = saved_rects
        comp.polylines = saved_polylines
        raise
    return layout


# -- layout construction -----------------------------------------------------


def grid_position(row: int, col: int, pitch_um: float) -> Point:
    return (col * pitch_um, -row * pitch_um)


def build_layout(arch: Architecture, config: DesignConfig) -> LayoutDocument:
    """Initial physical layout of an architecture.

    Emits, for n qubits and m coupling edges: n transmons at the grid cell
    centers, m coupling resonators cut to the wavelength of their target
    frequency (round-robin over the configured lattice), and per qubit a
    capacitor, a quarter-wave readout resonator detuned above the qubit, and
    a control-line port in an evenly spaced slot along the bottom chip edge.
    Qubit-capacitor and capacitor-readout/control connections are recorded
    as nets with straight schematic runs.
    """
    lay = config.layout
    pitch, margin = lay.pitch_um, lay.margin_um
    rows, cols = arch.layout.shape
    positions = arch.positions()
    n = arch.num_qubits

    x0, y0 = -margin, -(rows - 1) * pitch - margin
    chip: Rect = (x0, y0, (cols - 1) * pitch + 2 * margin, (rows - 1) * pitch + 2 * margin)
    doc = LayoutDocument(chip=chip)

    qubit_xy = {q: grid_position(r, c, pitch) for q, (r, c) in positions.items()}

    for q in range(n):
        comp = Component(
            name=f"Q_{q}",
            kind="transmon",
            position=qubit_xy[q],
            options={
                "pad_width": fmt_um(DEFAULT_PAD_WIDTH_UM),
                "pad_height": fmt_um(DEFAULT_PAD_HEIGHT_UM),
                "pad_gap": fmt_um(DEFAULT_PAD_GAP_UM),
            },
        )
        rebuild_geometry(comp)
        doc.components.append(comp)

    lattice = lay.coupling_freq_lattice_ghz
    for k, (a, b) in enumerate(arch.coupling.sorted_edges()):
        f_ghz = lattice[k % len(lattice)]
        total_um = resonator_length(f_ghz, lay.epsilon_eff, lay.resonator_mode) * 1000.0
        (xa, ya), (xb, yb) = qubit_xy[a], qubit_xy[b]
        span = ((xb - xa) ** 2 + (yb - ya) ** 2) ** 0.5
        if span <= 2 * COUPLER_CLEARANCE_UM:
            raise LayoutError(f"pitch {pitch} too small to attach coupler CR_{a}_{b}")
        ux, uy = (xb - xa) / span, (yb - ya) / span
        start = (xa + ux * COUPLER_CLEARANCE_UM, ya + uy * COUPLER_CLEARANCE_UM)
        end = (xb - ux * COUPLER_CLEARANCE_UM, yb - uy * COUPLER_CLEARANCE_UM)
        comp = Component(
            name=f"CR_{a}_{b}",
            kind="coupling_resonator",
            position=((start[0] + end[0]) / 2, (start[1] + end[1]) / 2),
            options={
                "target_frequency": f"{f_ghz:.9g}GHz",
                "total_length": fmt_um(total_um),
                "meander_amplitude": fmt_um(lay.meander_amplitude_um),
            },
            mode=lay.resonator_mode,
            epsilon_eff=lay.epsilon_eff,
            anchors=(start, end),
        )
        rebuild_geometry(comp)
        doc.components.append(comp)
        doc.nets.append((f"Q_{a}", f"CR_{a}_{b}", "qubit-coupler"))
        doc.nets.append((f"Q_{b}", f"CR_{a}_{b}", "qubit-coupler"))

    chip_x0, chip_y0, chip_w, _ = chip
    for q in range(n):
        x, y = qubit_xy[q]
        xc = x + CHAIN_X_OFFSET_UM
        cap_y = y - CAP_OFFSET_UM

        cap = Component(
            name=f"CAP_{q}",
            kind="capacitor",
            position=(xc, cap_y),
            options={
                "cap_width": fmt_um(240.0),
                "cap_plate_height": fmt_um(60.0),
                "cap_gap": fmt_um(40.0),
            },
        )
        rebuild_geometry(cap)
        doc.components.append(cap)

        f_read = float(arch.frequencies[q]) + lay.readout_detuning_ghz
        rd_total_um = resonator_length(f_read, lay.epsilon_eff, "quarter") * 1000.0
        rd_start = (xc, cap_y - READOUT_DROP_UM)
        rd_end = (xc, cap_y - READOUT_DROP_UM - READOUT_SPAN_UM)
        rd = Component(
            name=f"RD_{q}",
            kind="readout_resonator",
            position=((rd_start[0] + rd_end[0]) / 2, (rd_start[1] + rd_end[1]) / 2),
            options={
                "target_frequency": f"{f_read:.9g}GHz",
                "total_length": fmt_um(rd_total_um),
                "meander_amplitude": fmt_um(lay.meander_amplitude_um),
            },
            mode="quarter",
            epsilon_eff=lay.epsilon_eff,
            anchors=(rd_start, rd_end),
        )
        rebuild_geometry(rd)
        doc.components.append(rd)

        slot_x = chip_x0 + (q + 0.5) * chip_w / n
        ctl_y = chip_y0 + 150.0
        ctl = Component(
            name=f"CTL_{q}",
            kind="control_line",
            position=(slot_x, ctl_y),
            options={"stub_length": fmt_um(300.0)},
        )
        rebuild_geometry(ctl)
        doc.components.append(ctl)

        pad_gap = length_um(doc.component(f"Q_{q}").options["pad_gap"])
        pad_h = length_um(doc.component(f"Q_{q}").options["pad_height"])
        pad_bottom = (x, y - pad_gap / 2 - pad_h)
        cap_top = (xc, cap_y + 40.0 / 2 + 60.0)
        cap_bottom = (xc, cap_y - 40.0 / 2 - 60.0)

        for suffix, a_name, b_name, kind, anchors in (
            ("QC", f"Q_{q}", f"CAP_{q}", "qubit-capacitor", (pad_bottom, cap_top)),
            ("CR", f"CAP_{q}", f"RD_{q}", "capacitor-readout", (cap_bottom, rd_start)),
            ("CC", f"CAP_{q}", f"CTL_{q}", "capacitor-control", (cap_bottom, (slot_x, ctl_y))),
        ):
            conn = Component(
                name=f"CONN_{suffix}_{q}",
                kind="connection",
                position=(
                    (anchors[0][0] + anchors[1][0]) / 2,
                    (anchors[0][1] + anchors[1][1]) / 2,
                ),
                anchors=anchors,
            )
            rebuild_geometry(conn)
            doc.components.append(conn)
            doc.nets.append((a_name, b_name, kind))

    doc.validate()
    return doc


def measured_length_um(comp: Component) -> float:
    """Re-measure a resonator's arc length from its emitted polyline."""
    if not comp.polylines:
        raise LayoutError(f"{comp.name} has no path")
    return polyline_length(comp.polylines[0])
