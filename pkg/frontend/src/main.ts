// DOM wiring. Interaction model: pick a tile in the palette, then click a
// grid cell to place it; the server re-decodes the grid after every edit.

import { Client, PaletteTile } from './api.js'
import { trimmed } from './grid.js'
import { WorkbenchStore } from './state.js'

const API_BASE =
  new URLSearchParams(location.search).get('api') ?? `http://${location.hostname || 'localhost'}:8787`

const store = new WorkbenchStore(new Client(API_BASE))

let selected: { code: number; label: string } | null = null

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value)
  node.append(...children)
  return node
}

function byId(id: string): HTMLElement {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node
}

// -- palette ---------------------------------------------------------------

const KIND_ORDER: PaletteTile['kind'][] = [
  'terminal',
  'predicate',
  'function',
  'variable',
  'constant',
  'sort',
]

function renderPalette(tiles: PaletteTile[]): void {
  const host = byId('palette')
  host.replaceChildren()
  for (const kind of KIND_ORDER) {
    const group = tiles.filter((t) => t.kind === kind)
    if (!group.length) continue
    const box = el('div', { class: 'palette-group' }, el('h3', {}, kind))
    for (const tile of group) {
      const button = el(
        'button',
        { class: 'tile', title: `code ${tile.code}` },
        `${tile.label} · ${tile.code}`,
      )
      button.onclick = () => {
        selected = { code: tile.code, label: tile.label }
        byId('selected').textContent = `placing: ${tile.label} (${tile.code})`
      }
      box.append(button)
    }
    host.append(box)
  }
  const eraser = el('button', { class: 'tile eraser' }, 'spacer / erase')
  eraser.onclick = () => {
    selected = { code: 0, label: 'spacer' }
    byId('selected').textContent = 'placing: spacer'
  }
  host.append(eraser)
}

// -- grid editor -------------------------------------------------------------

function renderGrid(): void {
  const { grid, palette } = store.snapshot()
  const labels = new Map(palette.map((t) => [t.code, t.label]))
  const rows = Math.max(grid.length + 1, 3)
  const cols = Math.max(...grid.map((r) => r.length), 5) + 1
  const table = byId('grid')
  table.replaceChildren()
  for (let r = 0; r < rows; r++) {
    const tr = el('tr')
    for (let c = 0; c < cols; c++) {
      const code = grid[r]?.[c] ?? 0
      const td = el(
        'td',
        { class: code === 0 ? 'cell spacer' : 'cell' },
        code === 0 ? '·' : `${labels.get(code) ?? '?'}\n${code}`,
      )
      td.onclick = () => {
        if (!selected) return
        void store.place(r, c, selected.code).catch(showError)
      }
      tr.append(td)
    }
    table.append(tr)
  }
}

// -- output panes -----------------------------------------------------------

function renderViews(): void {
  const { views, diagnostic, rendered, format } = store.snapshot()
  byId('diagnostic').textContent = diagnostic ?? ''
  byId('proto').textContent = views?.proto_text ?? ''
  byId('numeric').textContent = views?.numeric ?? ''
  byId('sticks').textContent = views?.sticks ?? ''
  byId('prelpara').textContent = views?.prelpara_rows.join('\n') ?? ''
  byId('gridcodes').textContent = views ? JSON.stringify(views.grid_codes) : ''
  const pane = byId('rendered')
  if (rendered && format.startsWith('svg')) {
    pane.innerHTML = rendered
  } else {
    pane.textContent = rendered ?? ''
  }
}

function renderSentences(): void {
  const { sentences } = store.snapshot()
  const list = byId('sentences')
  list.replaceChildren()
  for (const s of sentences) {
    const check = el('input', { type: 'checkbox', value: String(s.text_code) }) as HTMLInputElement
    check.checked = true
    list.append(el('li', {}, check, ` [${s.text_code}] ${s.source_text}`))
  }
}

function renderProof(): void {
  const { proof } = store.snapshot()
  const host = byId('proof')
  host.replaceChildren()
  if (!proof) return
  host.append(
    el('p', { class: `status ${proof.status}` }, proof.status + (proof.reason ? ` — ${proof.reason}` : '')),
  )
  const table = el('table', { class: 'trace' })
  table.append(
    el('tr', {}, el('th', {}, '#'), el('th', {}, 'clause'), el('th', {}, 'rule'), el('th', {}, 'parents'), el('th', {}, 'unifier')),
  )
  for (const step of proof.steps) {
    table.append(
      el(
        'tr',
        {},
        el('td', {}, String(step.id)),
        el('td', { class: 'clause' }, step.clause),
        el('td', {}, step.rule + (step.resolvedOn ? ` on ${step.resolvedOn}` : '')),
        el('td', {}, step.parents.join(', ')),
        el('td', {}, step.unifier),
      ),
    )
  }
  host.append(table)
}

function showError(error: unknown): void {
  byId('diagnostic').textContent = error instanceof Error ? error.message : String(error)
}

// -- boot ---------------------------------------------------------------------

function bind(): void {
  ;(byId('format') as HTMLSelectElement).onchange = (event) => {
    const format = (event.target as HTMLSelectElement).value as never
    void store.setFormat(format).catch(showError)
  }
  byId('clear').onclick = () => void store.clear()
  byId('save').onclick = () =>
    void store
      .saveToCorpus()
      .then((code) => (byId('diagnostic').textContent = `saved as sentence ${code}`))
      .catch(showError)
  byId('run-proof').onclick = () => {
    const goal = (byId('goal') as HTMLInputElement).value
    const codes = Array.from(byId('sentences').querySelectorAll('input:checked')).map((n) =>
      Number((n as HTMLInputElement).value),
    )
    void store.explore(codes, goal).catch(showError)
  }
  byId('debug-grid').onclick = () => {
    byId('diagnostic').textContent = JSON.stringify(trimmed(store.snapshot().grid))
  }
}

store.subscribe(() => {
  renderGrid()
  renderViews()
  renderSentences()
  renderProof()
})

bind()
store
  .refresh()
  .then(() => renderPalette(store.snapshot().palette))
  .then(() => renderGrid())
  .catch(showError)
