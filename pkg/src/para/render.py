"""Serialization of tiling grids: colon-separated cube strings and SVG.

A cube token is ``size:k:x1:y1:...:xk:yk`` for a dot pattern and ``1:0``
for a spacer.  The 2D form serializes one grid row, led by its cube count;
the 3D form serializes a whole grid row-major at uniform width, led by the
row count.  SVG output is deterministic: fixed styling constants, stable
element order, no timestamps.
"""

from math import cos, radians, sin

from .errors import RenderError
from .smnist import SmnistPattern, code_of_pattern, pattern_of
from .tiler import SPACER

SPACER_CUBE = (1, frozenset())

# svg styling constants
DOT_RADIUS_FRACTION = 0.3
GRID_STROKE = "#888888"
CELL_STROKE = "#000000"
DOT_FILL = "#000000"
FACE_EDGE_PX = 160
_COS30 = cos(radians(30))
_SIN30 = sin(radians(30))


def _cell_cube(cell):
    if cell is SPACER:
        return SPACER_CUBE
    pattern = pattern_of(cell)
    return pattern.side, pattern.dots


def cube_code(cube):
    """Numeric code of a parsed cube; spacers map to 0."""
    side, dots = cube
    if (side, frozenset(dots)) == SPACER_CUBE:
        return 0
    return code_of_pattern(SmnistPattern(side, dots))


def _cube_token(cube):
    side, dots = cube
    if (side, frozenset(dots)) == SPACER_CUBE:
        return "1:0"
    ordered = sorted(dots, key=lambda d: d[0] + d[1] * side)  # pixel-index order
    parts = [str(side), str(len(ordered))]
    for x, y in ordered:
        parts.append(str(x))
        parts.append(str(y))
    return ":".join(parts)


def to_prelpara_2d(row):
    """One grid row as ``count:cube:cube:...``."""
    cells = list(row)
    if not cells:
        raise RenderError("cannot serialize an empty row")
    tokens = [str(len(cells))]
    tokens.extend(_cube_token(_cell_cube(cell)) for cell in cells)
    return ":".join(tokens)


def to_prelpara_3d(g, cubes_per_row=None):
    """Whole grid, row-major at uniform width, led by the row count.

    Rows are truncated or spacer-padded to ``cubes_per_row`` when given,
    otherwise padded to the longest row.
    """
    rows = list(g.rows)
    if not rows:
        raise RenderError("cannot serialize an empty grid")
    if cubes_per_row is None:
        width = max(len(row) for row in rows)
    elif cubes_per_row < 1:
        raise RenderError(f"cubes_per_row must be >= 1, got {cubes_per_row}")
    else:
        width = cubes_per_row
    tokens = [str(len(rows))]
    for row in rows:
        cells = list(row[:width])
        cells.extend([SPACER] * (width - len(cells)))
        tokens.extend(_cube_token(_cell_cube(cell)) for cell in cells)
    return ":".join(tokens)


def parse_prelpara(s):
    """Parse a cube string back into a list of (side, dot-set) cubes.

    Accepts both forms: the declared count must equal the number of cubes
    (2D) or divide it evenly (3D row count).
    """
    fields = s.split(":") if s else []
    try:
        numbers = [int(f) for f in fields]
    except ValueError as exc:
        raise RenderError(f"cube strings hold colon-separated integers: {exc}") from None
    if not numbers:
        raise RenderError("empty cube string")
    declared, rest = numbers[0], numbers[1:]
    if declared < 1:
        raise RenderError(f"declared count must be positive, got {declared}")
    cubes = []
    pos = 0
    while pos < len(rest):
        side = rest[pos]
        pos += 1
        if pos >= len(rest):
            raise RenderError("truncated cube: size without a dot count")
        k = rest[pos]
        pos += 1
        if side == 1:
            if k != 0:
                raise RenderError("a size-1 cube is only valid as the spacer 1:0")
            cubes.append(SPACER_CUBE)
            continue
        if side < 2:
            raise RenderError(f"cube size must be >= 2, got {side}")
        if not 1 <= k <= side * side - 1:
            raise RenderError(f"a size-{side} cube needs 1..{side * side - 1} dots, got {k}")
        if pos + 2 * k > len(rest):
            raise RenderError("truncated cube: fewer coordinates than declared dots")
        dots = set()
        for _ in range(k):
            x, y = rest[pos], rest[pos + 1]
            pos += 2
            if not (0 <= x < side and 0 <= y < side):
                raise RenderError(f"dot ({x}, {y}) is outside a size-{side} cube")
            if (x, y) in dots:
                raise RenderError(f"dot ({x}, {y}) listed twice")
            dots.add((x, y))
        cubes.append((side, frozenset(dots)))
    if not cubes:
        raise RenderError("cube string contains no cubes")
    if len(cubes) != declared and len(cubes) % declared != 0:
        raise RenderError(
            f"declared {declared} but found {len(cubes)} cubes (neither equal nor a multiple)"
        )
    return cubes


# -- svg ------------------------------------------------------------------


def _fmt(v):
    if isinstance(v, float):
        text = f"{v:.4f}".rstrip("0").rstrip(".")
        return text if text not in ("-0", "") else "0"
    return str(v)


def _tag(name, **attrs):
    inner = " ".join(f'{k.replace("_", "-")}="{_fmt(v)}"' for k, v in attrs.items())
    return f"<{name} {inner}/>"


def _pattern_elements(cube, origin_x, origin_y, size, out):
    """Grid lines and dots of one cube drawn in a size x size box.

    Strokes are size-relative so faces drawn in unit coordinates and then
    matrix-scaled keep sensible line weights.
    """
    side, dots = cube
    out.append(
        _tag(
            "rect",
            x=origin_x,
            y=origin_y,
            width=size,
            height=size,
            fill="none",
            stroke=CELL_STROKE,
            stroke_width=size * 0.025,
        )
    )
    if (side, dots) == SPACER_CUBE:
        return
    step = size / side
    for i in range(1, side):
        out.append(
            _tag(
                "line",
                x1=origin_x + i * step,
                y1=origin_y,
                x2=origin_x + i * step,
                y2=origin_y + size,
                stroke=GRID_STROKE,
                stroke_width=size * 0.012,
            )
        )
        out.append(
            _tag(
                "line",
                x1=origin_x,
                y1=origin_y + i * step,
                x2=origin_x + size,
                y2=origin_y + i * step,
                stroke=GRID_STROKE,
                stroke_width=size * 0.012,
            )
        )
    for x, y in sorted(dots, key=lambda d: d[0] + d[1] * side):
        out.append(
            _tag(
                "circle",
                cx=origin_x + (x + 0.5) * step,
                cy=origin_y + (side - 1 - y + 0.5) * step,  # y grows upward
                r=DOT_RADIUS_FRACTION * step,
                fill=DOT_FILL,
            )
        )


def to_svg_2d(g, cell_px=48):
    """Flat rendering: one sub-grid per cell, dots as filled circles."""
    if cell_px < 8:
        raise RenderError(f"cell_px must be >= 8, got {cell_px}")
    rows = list(g.rows)
    width = max((len(row) for row in rows), default=0) * cell_px
    height = len(rows) * cell_px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
        f' height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    for r, row in enumerate(rows):
        for c, cell in enumerate(row):
            _pattern_elements(_cell_cube(cell), c * cell_px, r * cell_px, cell_px, parts)
    parts.append("</svg>")
    return "\n".join(parts)


def _face_matrix(which, width):
    """Affine matrix mapping a row drawn in [0,width]x[0,1] onto a cube face."""
    e = FACE_EDGE_PX
    ce, se = _COS30 * e, _SIN30 * e
    if which == "top":
        a, b, c, d, tx, ty = ce, se, ce, -se, -ce, se - e
    elif which == "left":
        a, b, c, d, tx, ty = ce, se, 0.0, e, -ce, se - e
    else:  # right
        a, b, c, d, tx, ty = ce, se - e, 0.0, e, 0.0, 0.0
    # content u spans the face, so scale the u column by 1/width
    return (a / width, b / width, c, d, tx + ce, ty + e)  # shifted into view


_FACE_ORDER = ("top", "left", "right")


def to_svg_3d(g):
    """Up to three grid rows drawn on the faces of an axonometric cube."""
    rows = list(g.rows)
    if not rows:
        raise RenderError("cannot render an empty grid")
    if len(rows) > len(_FACE_ORDER):
        raise RenderError(f"the cube has {len(_FACE_ORDER)} faces, got {len(rows)} rows")
    e = FACE_EDGE_PX
    width, height = 2 * _COS30 * e, 2 * e
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
        f' height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    face_width = max(len(row) for row in rows)
    for face, row in zip(_FACE_ORDER, rows):
        matrix = ",".join(_fmt(v) for v in _face_matrix(face, face_width))
        parts.append(f'<g transform="matrix({matrix})">')
        cells = list(row)
        cells.extend([SPACER] * (face_width - len(cells)))
        inner = []
        for i, cell in enumerate(cells):
            _pattern_elements(_cell_cube(cell), float(i), 0.0, 1.0, inner)
        parts.extend(inner)
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
