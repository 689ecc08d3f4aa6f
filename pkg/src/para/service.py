"""HTTP JSON API over one corpus.

All state changes go through a single lock and are persisted atomically
after they succeed, so a failed request leaves the corpus file
byte-identical.  Ad-hoc inputs (render/prove/untile goals and texts) are
parsed against a throwaway copy of the dictionary and never persist new
symbols.
"""

import threading

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import corpus as corpus_io
from .corpus import Corpus
from .dictionary import (
    EXISTS_CODE,
    FORALL_CODE,
    NOT_CODE,
    AND_CODE,
    OR_CODE,
    IMPLIES_CODE,
    align_translate,
    code_for,
    constant_category,
    export_dict,
    import_dict,
    variable_category,
    PREDICATE,
    FUNCTION,
    SORT,
)
from .errors import CorpusError, ParaError
from .fol import expand_iff
from .parser import parse_proto
from .printer import print_numeric, print_proto, print_sticks
from .reasoner import Bounds, format_trace, prove, refute
from .render import to_prelpara_2d, to_prelpara_3d, to_svg_2d, to_svg_3d
from .tiler import grid_codes, grid_from_codes, tile, untile
from .translate import to_lean_skeleton, to_prolog

TERMINAL_TILES = (
    (EXISTS_CODE, "exists"),
    (FORALL_CODE, "forall"),
    (NOT_CODE, "~"),
    (AND_CODE, "&"),
    (OR_CODE, "|"),
    (IMPLIES_CODE, "->"),
)

RENDER_FORMATS = ("prelpara2d", "prelpara3d", "svg2d", "svg3d")


class SentenceIn(BaseModel):
    proto_text: str


class RenderIn(BaseModel):
    text_code: int | None = None
    proto_text: str | None = None
    format: str = "prelpara2d"
    cubes_per_row: int | None = None
    cell_px: int = 48


class ProveIn(BaseModel):
    premise_codes: list[int] | None = None
    goal: str | None = None
    max_clauses: int = 50_000
    max_seconds: float = 5.0


class TranslateIn(BaseModel):
    codes: list[int]
    target: str
    goal: str | None = None
    theorem_name: str | None = None


class AlignIn(BaseModel):
    document: dict
    auto_register: bool = True


class UntileIn(BaseModel):
    grid_codes: list[list[int]]


def create_app(corpus_path=None, corpus=None):
    app = FastAPI(title="para corpus service")
    # the workbench is a static page on another origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    state = {"corpus": corpus if corpus is not None else _load_or_new(corpus_path)}
    lock = threading.RLock()

    def persist():
        if corpus_path:
            corpus_io.save(state["corpus"], corpus_path)

    @app.exception_handler(ParaError)
    async def para_error_handler(request: Request, exc: ParaError):
        status = 404 if isinstance(exc, CorpusError) and "no sentence" in str(exc) else 400
        return JSONResponse(status_code=status, content=exc.to_dict())

    # -- sentences -----------------------------------------------------

    @app.get("/sentences")
    def list_sentences():
        c = state["corpus"]
        return {
            "sentences": [
                {"text_code": s.text_code, "source_text": s.source_text} for s in c.sentences
            ]
        }

    @app.post("/sentences", status_code=201)
    def add_sentence(body: SentenceIn):
        with lock:
            code = state["corpus"].add_sentence(body.proto_text)
            persist()
            return {"text_code": code}

    @app.get("/sentences/{code}")
    def show_sentence(code: int):
        c = state["corpus"]
        sentence = c.get(code)
        return _sentence_views(sentence.formula, c.dictionary) | {
            "text_code": sentence.text_code,
            "source_text": sentence.source_text,
        }

    @app.delete("/sentences/{code}")
    def delete_sentence(code: int):
        with lock:
            state["corpus"].delete_sentence(code)
            persist()
            return {"deleted": code}

    # -- dictionary ----------------------------------------------------

    @app.get("/dictionary")
    def get_dictionary():
        return export_dict(state["corpus"].dictionary)

    @app.put("/dictionary")
    def put_dictionary(document: dict):
        with lock:
            d = import_dict(document)
            replacement = Corpus(d)
            for s in state["corpus"].sentences:
                try:
                    formula = parse_proto(s.source_text, d, auto_register=False)
                except ParaError as exc:
                    raise CorpusError(
                        f"sentence {s.text_code} does not parse under the new dictionary: {exc}"
                    ) from None
                replacement.sentences.append(
                    corpus_io.Sentence(s.text_code, s.source_text, formula)
                )
            replacement._added = state["corpus"]._added
            state["corpus"] = replacement
            persist()
            return export_dict(d)

    @app.get("/palette")
    def palette():
        d = state["corpus"].dictionary
        tiles = [{"code": c, "label": label, "kind": "terminal"} for c, label in TERMINAL_TILES]
        for i, name in d.iter_sorts():
            tiles.append({"code": code_for(SORT, i), "label": name, "kind": "sort"})
        for i, name, arity in d.iter_predicates():
            tiles.append(
                {"code": code_for(PREDICATE, i), "label": name, "kind": "predicate", "arity": arity}
            )
        for i, name, arity in d.iter_functions():
            tiles.append(
                {"code": code_for(FUNCTION, i), "label": name, "kind": "function", "arity": arity}
            )
        for t, i, name in d.iter_constants():
            tiles.append(
                {
                    "code": code_for(constant_category(t), i),
                    "label": name,
                    "kind": "constant",
                    "sort": d.sort_name(t),
                }
            )
        for t, i, name in d.iter_variables():
            tiles.append(
                {
                    "code": code_for(variable_category(t), i),
                    "label": name,
                    "kind": "variable",
                    "sort": d.sort_name(t),
                }
            )
        return {"tiles": tiles}

    # -- rendering -----------------------------------------------------

    @app.post("/render")
    def render(body: RenderIn):
        c = state["corpus"]
        if body.format not in RENDER_FORMATS:
            raise ParaError(f"format must be one of {', '.join(RENDER_FORMATS)}")
        formula, d = _resolve_formula(c, body.text_code, body.proto_text)
        grid = tile(expand_iff(formula), d)
        if body.format == "prelpara2d":
            text = "\n".join(to_prelpara_2d(row) for row in grid.rows)
        elif body.format == "prelpara3d":
            text = to_prelpara_3d(grid, body.cubes_per_row)
        elif body.format == "svg2d":
            text = to_svg_2d(grid, body.cell_px)
        else:
            text = to_svg_3d(grid)
        media = "image/svg+xml" if body.format.startswith("svg") else "text/plain"
        return PlainTextResponse(text, media_type=media)

    @app.post("/untile")
    def untile_grid(body: UntileIn):
        c = state["corpus"]
        grid = grid_from_codes(body.grid_codes)
        formula = untile(grid, c.dictionary)
        return _sentence_views(formula, c.dictionary)

    # -- reasoning and translation --------------------------------------

    @app.post("/prove")
    def prove_goal(body: ProveIn):
        c = state["corpus"]
        premises = _premises(c, body.premise_codes)
        scratch = c.dictionary.copy()
        bounds = Bounds(max_clauses=body.max_clauses, max_seconds=body.max_seconds)
        if body.goal is None or body.goal.strip() in ("false", "⊥"):
            result = refute(premises, scratch, bounds)
        else:
            goal = parse_proto(body.goal, scratch, allow_free=False)
            result = prove(premises, goal, scratch, bounds)
        return {
            "status": result.status.value,
            "reason": result.reason,
            "clause_count": result.clause_count,
            "trace": format_trace(result.trace, scratch).splitlines(),
        }

    @app.post("/translate")
    def translate(body: TranslateIn):
        c = state["corpus"]
        formulas = _premises(c, body.codes)
        if body.target == "prolog":
            return PlainTextResponse(to_prolog(formulas, c.dictionary))
        if body.target == "lean":
            scratch = c.dictionary.copy()
            goal = None
            if body.goal and body.goal.strip() not in ("false", "⊥"):
                goal = parse_proto(body.goal, scratch, allow_free=False)
            text = to_lean_skeleton(formulas, goal, scratch, theorem_name=body.theorem_name)
            return PlainTextResponse(text)
        raise ParaError("target must be prolog or lean")

    @app.post("/align")
    def align(body: AlignIn):
        c = state["corpus"]
        target = import_dict(body.document)
        out = []
        for s in c.sentences:
            moved = align_translate(s.formula, c.dictionary, target, body.auto_register)
            out.append(
                {
                    "text_code": s.text_code,
                    "source_text": print_proto(moved, target),
                    "numeric": print_numeric(moved),
                }
            )
        return {"dictionary": export_dict(target), "sentences": out}

    return app


def _load_or_new(path):
    if path:
        try:
            return corpus_io.load(path)
        except CorpusError as exc:
            if "no corpus file" not in str(exc):
                raise
    return Corpus()


def _sentence_views(formula, d):
    flat = expand_iff(formula)
    grid = tile(flat, d)
    return {
        "proto_text": print_proto(formula, d),
        "numeric": print_numeric(formula),
        "sticks": print_sticks(formula),
        "grid_codes": grid_codes(grid),
        "prelpara_rows": [to_prelpara_2d(row) for row in grid.rows],
    }


def _resolve_formula(c, text_code, proto_text):
    if (text_code is None) == (proto_text is None):
        raise ParaError("provide exactly one of text_code or proto_text")
    if text_code is not None:
        return c.get(text_code).formula, c.dictionary
    scratch = c.dictionary.copy()
    return parse_proto(proto_text, scratch), scratch


def _premises(c, codes):
    if codes is None:
        return [s.formula for s in c.sentences]
    return [c.get(code).formula for code in codes]
