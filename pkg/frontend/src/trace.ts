// Parser for the prover's textual trace lines, e.g.
//   [1] {Man(socrates)} <- input 1
//   [4] {Mortal(socrates)} <- resolve 2 1 {x -> socrates} on Man(socrates)
//   [5] {P(c)} <- factor 3 {y -> c}

export interface TraceStep {
  id: number
  clause: string
  rule: 'input' | 'resolve' | 'factor'
  parents: number[]
  unifier: string
  resolvedOn: string
}

const LINE = /^\[(\d+)\] (.*) <- (input|resolve|factor)\b(.*)$/

export function parseTraceLine(line: string): TraceStep {
  const match = LINE.exec(line)
  if (!match) throw new Error(`unrecognized trace line: ${line}`)
  const [, id, clause, rule, rest] = match
  const step: TraceStep = {
    id: Number(id),
    clause: clause!,
    rule: rule as TraceStep['rule'],
    parents: [],
    unifier: '',
    resolvedOn: '',
  }
  if (step.rule === 'input') return step
  const tail = rest!.trim()
  const brace = tail.indexOf('{')
  const parentPart = (brace >= 0 ? tail.slice(0, brace) : tail).trim()
  step.parents = parentPart.length ? parentPart.split(/\s+/).map(Number) : []
  if (brace >= 0) {
    const close = tail.indexOf('}', brace)
    step.unifier = tail.slice(brace + 1, close)
    const after = tail.slice(close + 1).trim()
    if (after.startsWith('on ')) step.resolvedOn = after.slice(3)
  }
  return step
}

export function parseTrace(lines: string[]): TraceStep[] {
  return lines.map(parseTraceLine)
}
