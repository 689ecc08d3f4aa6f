// Pure operations on the sentence-under-construction grid.
// Cells hold server-issued codes; 0 is the spacer. The grid kept in state
// is rectangular-ish and sparse; trimmed() is what goes to the server.

export type Grid = number[][]

export const SPACER = 0

export function emptyGrid(): Grid {
  return []
}

/** Place a code, growing rows and columns as needed (gaps become spacers). */
export function placeTile(grid: Grid, row: number, col: number, code: number): Grid {
  if (row < 0 || col < 0) throw new RangeError('cell coordinates are non-negative')
  const out = grid.map((r) => [...r])
  while (out.length <= row) out.push([])
  const cells = out[row]!
  while (cells.length <= col) cells.push(SPACER)
  cells[col] = code
  return out
}

export function clearCell(grid: Grid, row: number, col: number): Grid {
  return placeTile(grid, row, col, SPACER)
}

export function removeRow(grid: Grid, row: number): Grid {
  return grid.filter((_, i) => i !== row)
}

/** Drop trailing spacers per row and trailing empty rows: the submit form. */
export function trimmed(grid: Grid): Grid {
  const rows = grid.map((r) => {
    const cells = [...r]
    while (cells.length > 0 && cells[cells.length - 1] === SPACER) cells.pop()
    return cells
  })
  while (rows.length > 0 && rows[rows.length - 1]!.length === 0) rows.pop()
  return rows
}

/** True when there is anything to decode. */
export function hasContent(grid: Grid): boolean {
  return trimmed(grid).some((row) => row.some((c) => c !== SPACER))
}

export function equal(a: Grid, b: Grid): boolean {
  const ta = trimmed(a)
  const tb = trimmed(b)
  return ta.length === tb.length && ta.every((row, i) => {
    const other = tb[i]!
    return row.length === other.length && row.every((c, j) => c === other[j])
  })
}
