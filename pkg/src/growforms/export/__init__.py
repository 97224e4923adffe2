from .contours import from_contour_json, to_contour_json
from .gcode import GcodeError, PrinterProfile, flow_constant, parse_gcode, to_gcode
from .mesh import to_mesh

__all__ = [
    "to_contour_json",
    "from_contour_json",
    "to_gcode",
    "parse_gcode",
    "flow_constant",
    "PrinterProfile",
    "GcodeError",
    "to_mesh",
]
