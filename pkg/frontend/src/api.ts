// Typed client for the para corpus service. The workbench computes no
// codes or patterns of its own: everything shown comes back from here.

export interface SentenceSummary {
  text_code: number
  source_text: string
}

export interface SentenceViews {
  proto_text: string
  numeric: string
  sticks: string
  grid_codes: number[][]
  prelpara_rows: string[]
}

export interface PaletteTile {
  code: number
  label: string
  kind: 'terminal' | 'sort' | 'predicate' | 'function' | 'constant' | 'variable'
  arity?: number | null
  sort?: string
}

export type RenderFormat = 'prelpara2d' | 'prelpara3d' | 'svg2d' | 'svg3d'

export interface ProveRequest {
  premise_codes?: number[]
  goal?: string
  max_clauses?: number
  max_seconds?: number
}

export interface ProveResponse {
  status: 'proved' | 'refuted' | 'unknown'
  reason: string
  clause_count: number
  trace: string[]
}

export class ApiError extends Error {
  code: string
  position?: number

  constructor(message: string, code: string, position?: number) {
    super(message)
    this.code = code
    this.position = position
  }
}

async function fail(response: Response): Promise<never> {
  let message = `${response.status} ${response.statusText}`
  let code = 'http_error'
  let position: number | undefined
  try {
    const body = await response.json()
    if (typeof body.message === 'string') message = body.message
    if (typeof body.code === 'string') code = body.code
    if (typeof body.position === 'number') position = body.position
    // fastapi validation errors arrive as {detail: ...}
    if (typeof body.detail === 'string') message = body.detail
  } catch {
    /* not json; keep the status line */
  }
  throw new ApiError(message, code, position)
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { 'content-type': 'application/json' },
      ...init,
    })
    if (!response.ok) await fail(response)
    return (await response.json()) as T
  }

  private async text(path: string, body: unknown): Promise<string> {
    const response = await fetch(this.baseUrl + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    })
    if (!response.ok) await fail(response)
    return response.text()
  }

  listSentences(): Promise<SentenceSummary[]> {
    return this.json<{ sentences: SentenceSummary[] }>('/sentences').then((b) => b.sentences)
  }

  addSentence(protoText: string): Promise<number> {
    return this.json<{ text_code: number }>('/sentences', {
      method: 'POST',
      body: JSON.stringify({ proto_text: protoText }),
    }).then((b) => b.text_code)
  }

  sentence(code: number): Promise<SentenceViews & SentenceSummary> {
    return this.json(`/sentences/${code}`)
  }

  deleteSentence(code: number): Promise<void> {
    return this.json(`/sentences/${code}`, { method: 'DELETE' }).then(() => undefined)
  }

  palette(): Promise<PaletteTile[]> {
    return this.json<{ tiles: PaletteTile[] }>('/palette').then((b) => b.tiles)
  }

  untile(gridCodes: number[][]): Promise<SentenceViews> {
    return this.json('/untile', {
      method: 'POST',
      body: JSON.stringify({ grid_codes: gridCodes }),
    })
  }

  render(body: {
    text_code?: number
    proto_text?: string
    format: RenderFormat
    cubes_per_row?: number
    cell_px?: number
  }): Promise<string> {
    return this.text('/render', body)
  }

  prove(body: ProveRequest): Promise<ProveResponse> {
    return this.json('/prove', { method: 'POST', body: JSON.stringify(body) })
  }

  translate(body: {
    codes: number[]
    target: 'prolog' | 'lean'
    goal?: string
    theorem_name?: string
  }): Promise<string> {
    return this.text('/translate', body)
  }
}
