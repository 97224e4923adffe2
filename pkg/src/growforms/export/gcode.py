"""FDM toolpath export: one closed perimeter per organism per layer,
relative extrusion so every move's E is auditable."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from ..stack import LayerStack

__all__ = ["PrinterProfile", "to_gcode", "flow_constant", "parse_gcode",
           "GcodeError"]


class GcodeError(ValueError):
    pass


@dataclass(frozen=True)
class PrinterProfile:
    nozzle_diameter: float = 0.4       # mm
    layer_height: float = 0.2          # mm
    filament_diameter: float = 1.75    # mm
    extrusion_multiplier: float = 1.0
    print_feed: float = 1800.0         # mm/min
    travel_feed: float = 6000.0        # mm/min
    bed_size: tuple[float, float] = (220.0, 220.0)
    temperature: float = 205.0         # C

    def __post_init__(self):
        values = (self.nozzle_diameter, self.layer_height, self.filament_diameter,
                  self.extrusion_multiplier, self.print_feed, self.travel_feed,
                  self.bed_size[0], self.bed_size[1], self.temperature)
        if any(v <= 0 for v in values):
            raise ValueError("printer profile values must be positive")
        if self.layer_height > self.nozzle_diameter:
            raise ValueError("layer_height must not exceed nozzle_diameter")

    def to_dict(self) -> dict:
        return {
            "nozzle_diameter": self.nozzle_diameter,
            "layer_height": self.layer_height,
            "filament_diameter": self.filament_diameter,
            "extrusion_multiplier": self.extrusion_multiplier,
            "print_feed": self.print_feed,
            "travel_feed": self.travel_feed,
            "bed_size": list(self.bed_size),
            "temperature": self.temperature,
        }


def flow_constant(profile: PrinterProfile) -> float:
    """mm of filament per mm of extrusion path."""
    filament_area = math.pi * (profile.filament_diameter / 2.0) ** 2
    return (profile.layer_height * profile.nozzle_diameter / filament_area
            * profile.extrusion_multiplier)


def _fmt(v: float) -> str:
    return f"{v:.5f}".rstrip("0").rstrip(".")


def to_gcode(stack: LayerStack, profile: PrinterProfile) -> str:
    scale = stack.config.unit_to_mm
    layers_mm = [[np.asarray(r, dtype=float) * scale for r in snap.polygons]
                 for snap in stack.layers]

    all_pts = [p for layer in layers_mm for ring in layer for p in ring]
    if all_pts:
        pts = np.array(all_pts)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        centre = (lo + hi) / 2.0
        shift = np.array(profile.bed_size) / 2.0 - centre
        for li, layer in enumerate(layers_mm):
            for ring in layer:
                ring += shift
                if (ring < 0).any() or (ring[:, 0] > profile.bed_size[0]).any() \
                        or (ring[:, 1] > profile.bed_size[1]).any():
                    raise GcodeError(
                        f"layer {li} does not fit the bed after centring"
                    )

    flow = flow_constant(profile)
    out = [
        "; generated by growforms",
        "G21 ; millimeter units",
        "G90 ; absolute positioning",
        "M83 ; relative extrusion",
        f"M104 S{_fmt(profile.temperature)}",
        f"M109 S{_fmt(profile.temperature)}",
        "G28 ; home",
    ]
    z = 0.0
    for li, layer in enumerate(layers_mm):
        z = (li + 1) * profile.layer_height
        out.append(f"G0 Z{_fmt(z)} F{_fmt(profile.travel_feed)}")
        for ring in layer:
            closed = np.vstack([ring, ring[:1]])
            x0, y0 = closed[0]
            out.append(f"G0 X{_fmt(x0)} Y{_fmt(y0)} F{_fmt(profile.travel_feed)}")
            for (xa, ya), (xb, yb) in zip(closed[:-1], closed[1:]):
                length = math.hypot(xb - xa, yb - ya)
                if length == 0.0:
                    continue
                e = length * flow
                out.append(
                    f"G1 X{_fmt(xb)} Y{_fmt(yb)} E{_fmt(e)} F{_fmt(profile.print_feed)}"
                )
    out += [
        "G1 E-2 F1800 ; retract",
        f"G0 Z{_fmt(z + 5.0)} F{_fmt(profile.travel_feed)}",
        "G0 X0 Y0 ; park",
        "M104 S0",
        "M84",
    ]
    return "\n".join(out) + "\n"


# strict subset parser: used by tests and by the export acceptance check
_WORD = r"[XYZEFS]-?\d+(?:\.\d+)?"
_PATTERNS = [re.compile(p) for p in (
    rf"^G21$",
    rf"^G90$",
    rf"^M83$",
    rf"^M104 S\d+(?:\.\d+)?$",
    rf"^M109 S\d+(?:\.\d+)?$",
    rf"^G28(?: [XYZ])*$",
    rf"^G0(?: {_WORD})+$",
    rf"^G1(?: {_WORD})+$",
    rf"^M84$",
)]


def parse_gcode(text: str) -> list[dict]:
    """Parse the documented G-code subset; raises GcodeError on any line
    outside it. Returns one record per command with its parameter words."""
    commands = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if not any(p.match(line) for p in _PATTERNS):
            raise GcodeError(f"line {lineno}: unsupported command: {raw!r}")
        parts = line.split()
        cmd = {"command": parts[0]}
        for word in parts[1:]:
            if len(word) == 1:  # bare axis in G28
                cmd[word] = None
            else:
                cmd[word[0]] = float(word[1:])
        commands.append(cmd)
    return commands
