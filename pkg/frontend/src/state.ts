// Workbench state machine: holds the corpus snapshot, the sentence under
// construction, the selected render format, and the last proof trace.
// All logic is DOM-free so the end-to-end tests drive exactly what the
// page does.

import { ApiError, Client, PaletteTile, ProveResponse, RenderFormat, SentenceSummary, SentenceViews } from './api.js'
import { Grid, emptyGrid, hasContent, placeTile, removeRow, trimmed } from './grid.js'
import { TraceStep, parseTrace } from './trace.js'

export interface ProofView {
  status: ProveResponse['status']
  reason: string
  clauseCount: number
  steps: TraceStep[]
}

export interface WorkbenchState {
  sentences: SentenceSummary[]
  palette: PaletteTile[]
  grid: Grid
  views: SentenceViews | null
  diagnostic: string | null
  format: RenderFormat
  rendered: string | null
  proof: ProofView | null
}

type Listener = (state: WorkbenchState) => void

export class WorkbenchStore {
  private state: WorkbenchState = {
    sentences: [],
    palette: [],
    grid: emptyGrid(),
    views: null,
    diagnostic: null,
    format: 'prelpara2d',
    rendered: null,
    proof: null,
  }
  private listeners: Listener[] = []

  constructor(private client: Client) {}

  snapshot(): WorkbenchState {
    return this.state
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener)
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener)
    }
  }

  private update(patch: Partial<WorkbenchState>): void {
    this.state = { ...this.state, ...patch }
    for (const listener of this.listeners) listener(this.state)
  }

  /** Reload the corpus snapshot and the tile palette. */
  async refresh(): Promise<void> {
    const [sentences, palette] = await Promise.all([
      this.client.listSentences(),
      this.client.palette(),
    ])
    this.update({ sentences, palette })
  }

  tileFor(kind: PaletteTile['kind'], label: string): PaletteTile {
    const tile = this.state.palette.find((t) => t.kind === kind && t.label === label)
    if (!tile) throw new Error(`no ${kind} tile labeled ${label} in the palette`)
    return tile
  }

  /** Place a palette tile; only palette codes and spacers may enter the grid. */
  async place(row: number, col: number, code: number): Promise<void> {
    if (code !== 0 && !this.state.palette.some((t) => t.code === code)) {
      throw new Error(`code ${code} is not in the current palette`)
    }
    this.update({ grid: placeTile(this.state.grid, row, col, code) })
    await this.syncViews()
  }

  async erase(row: number, col: number): Promise<void> {
    this.update({ grid: placeTile(this.state.grid, row, col, 0) })
    await this.syncViews()
  }

  async dropRow(row: number): Promise<void> {
    this.update({ grid: removeRow(this.state.grid, row) })
    await this.syncViews()
  }

  async clear(): Promise<void> {
    this.update({ grid: emptyGrid(), views: null, diagnostic: null, rendered: null })
  }

  /** Ask the server to decode the grid; keeps either views or a diagnostic. */
  async syncViews(): Promise<void> {
    if (!hasContent(this.state.grid)) {
      this.update({ views: null, diagnostic: null, rendered: null })
      return
    }
    try {
      const views = await this.client.untile(trimmed(this.state.grid))
      this.update({ views, diagnostic: null })
      await this.renderCurrent()
    } catch (error) {
      if (error instanceof ApiError) {
        this.update({ views: null, rendered: null, diagnostic: error.message })
        return
      }
      throw error
    }
  }

  async setFormat(format: RenderFormat): Promise<void> {
    this.update({ format })
    await this.renderCurrent()
  }

  private async renderCurrent(): Promise<void> {
    const views = this.state.views
    if (!views) {
      this.update({ rendered: null })
      return
    }
    try {
      const rendered = await this.client.render({
        proto_text: views.proto_text,
        format: this.state.format,
      })
      this.update({ rendered })
    } catch (error) {
      if (error instanceof ApiError) {
        // e.g. the 3-face cube refuses grids with more than three rows
        this.update({ rendered: null, diagnostic: error.message })
        return
      }
      throw error
    }
  }

  /** Persist the sentence under construction. */
  async saveToCorpus(): Promise<number> {
    const views = this.state.views
    if (!views) throw new Error('nothing to save: the grid does not decode')
    const code = await this.client.addSentence(views.proto_text)
    await this.refresh()
    return code
  }

  /** Run the prover; goal undefined or 'false' asks for a refutation. */
  async explore(premiseCodes: number[], goal?: string): Promise<ProofView> {
    const body = {
      premise_codes: premiseCodes,
      ...(goal && goal.trim() && goal.trim() !== 'false' ? { goal } : {}),
    }
    const response = await this.client.prove(body)
    const proof: ProofView = {
      status: response.status,
      reason: response.reason,
      clauseCount: response.clause_count,
      steps: parseTrace(response.trace),
    }
    this.update({ proof })
    return proof
  }
}
