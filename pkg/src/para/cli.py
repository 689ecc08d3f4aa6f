"""Command line front end.

Exit codes: 0 success, 1 user error (bad input, unknown codes, parse
failures), 2 internal error.
"""

import json
import os
import sys

import click

from . import corpus as corpus_io
from .corpus import Corpus
from .dictionary import export_dict, import_dict
from .errors import ParaError
from .fol import expand_iff
from .parser import parse_proto
from .printer import print_numeric, print_proto, print_sticks
from .reasoner import Bounds, format_trace, prove, refute
from .render import to_prelpara_2d, to_prelpara_3d, to_svg_2d, to_svg_3d
from .tiler import grid_codes, tile
from .translate import to_lean_skeleton, to_prolog

DEFAULT_CORPUS = "para_corpus.json"
DEFAULT_PORT = 8787


def _load(path, must_exist=False):
    if os.path.exists(path):
        return corpus_io.load(path)
    if must_exist:
        raise ParaError(f"no corpus file at {path}")
    return Corpus()


class _Group(click.Group):
    """Surface domain errors as normal CLI errors (exit code 1)."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ParaError as exc:
            raise click.ClickException(str(exc)) from exc


@click.group(cls=_Group)
@click.option(
    "--corpus",
    "corpus_path",
    envvar="PARA_CORPUS",
    default=DEFAULT_CORPUS,
    show_default=True,
    help="Corpus file (also via PARA_CORPUS).",
)
@click.pass_context
def cli(ctx, corpus_path):
    """Formalize sentences, draw them as dot-pattern grids, and prove things."""
    ctx.obj = corpus_path


@cli.command()
@click.argument("text")
@click.pass_obj
def add(corpus_path, text):
    """Add a sentence in the ASCII formula syntax."""
    corpus = _load(corpus_path)
    code = corpus.add_sentence(text)
    corpus_io.save(corpus, corpus_path)
    click.echo(code)


@cli.command()
@click.argument("code", type=int)
@click.pass_obj
def rm(corpus_path, code):
    """Delete a sentence by code (the code is never reused)."""
    corpus = _load(corpus_path, must_exist=True)
    corpus.delete_sentence(code)
    corpus_io.save(corpus, corpus_path)


@cli.command()
@click.pass_obj
def ls(corpus_path):
    """List sentence codes and their source text."""
    corpus = _load(corpus_path)
    for s in corpus.sentences:
        click.echo(f"{s.text_code}\t{s.source_text}")


@cli.command()
@click.argument("code", type=int)
@click.pass_obj
def show(corpus_path, code):
    """Print every notation of one sentence."""
    corpus = _load(corpus_path, must_exist=True)
    sentence = corpus.get(code)
    d = corpus.dictionary
    click.echo(f"proto:   {print_proto(sentence.formula, d)}")
    click.echo(f"numeric: {print_numeric(sentence.formula)}")
    click.echo(f"sticks:  {print_sticks(sentence.formula)}")
    grid = tile(expand_iff(sentence.formula), d)
    for row in grid_codes(grid):
        click.echo("grid:    " + " ".join(str(c) for c in row))


@cli.command()
@click.argument("code", type=int, required=False)
@click.option("--text", help="Render an ad-hoc formula instead of a stored one.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["prelpara2d", "prelpara3d", "svg2d", "svg3d"]),
    default="prelpara2d",
    show_default=True,
)
@click.option("--cubes-per-row", type=int, default=None)
@click.option("--cell-px", type=int, default=48, show_default=True)
@click.option("-o", "--output", type=click.Path(), help="Write to a file instead of stdout.")
@click.pass_obj
def render(corpus_path, code, text, fmt, cubes_per_row, cell_px, output):
    """Serialize a sentence as cube strings or SVG."""
    corpus = _load(corpus_path)
    if (code is None) == (text is None):
        raise ParaError("give either a sentence CODE or --text")
    if code is not None:
        formula, d = corpus.get(code).formula, corpus.dictionary
    else:
        d = corpus.dictionary.copy()
        formula = parse_proto(text, d)
    grid = tile(expand_iff(formula), d)
    if fmt == "prelpara2d":
        out = "\n".join(to_prelpara_2d(row) for row in grid.rows)
    elif fmt == "prelpara3d":
        out = to_prelpara_3d(grid, cubes_per_row)
    elif fmt == "svg2d":
        out = to_svg_2d(grid, cell_px)
    else:
        out = to_svg_3d(grid)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        click.echo(out)


@cli.command()
@click.option("--goal", default=None, help="Goal formula; omit or use 'false' to refute.")
@click.option("--premises", default=None, help="Comma-separated sentence codes (default: all).")
@click.option("--bounds", default=None, help="CLAUSES[:SECONDS], e.g. 50000:5.")
@click.option("--trace/--no-trace", default=True, show_default=True)
@click.pass_obj
def prove_cmd(corpus_path, goal, premises, bounds, trace):
    """Prove a goal from stored sentences, or refute them."""
    corpus = _load(corpus_path, must_exist=True)
    if premises is None:
        formulas = [s.formula for s in corpus.sentences]
    else:
        formulas = [corpus.get(int(c.strip())).formula for c in premises.split(",") if c.strip()]
    limits = Bounds()
    if bounds:
        head, _, tail = bounds.partition(":")
        try:
            limits = Bounds(
                max_clauses=int(head), max_seconds=float(tail) if tail else Bounds.max_seconds
            )
        except ValueError:
            raise ParaError(f"--bounds takes CLAUSES[:SECONDS], got {bounds!r}") from None
    scratch = corpus.dictionary.copy()
    if goal is None or goal.strip() in ("false", "⊥"):
        result = refute(formulas, scratch, limits)
    else:
        parsed = parse_proto(goal, scratch)
        result = prove(formulas, parsed, scratch, limits)
    click.echo(result.status.value + (f" ({result.reason})" if result.reason else ""))
    if trace and result.trace:
        click.echo(format_trace(result.trace, scratch))


cli.add_command(prove_cmd, name="prove")


@cli.command()
@click.argument("codes", type=int, nargs=-1)
@click.option("--prolog", "target", flag_value="prolog")
@click.option("--lean", "target", flag_value="lean")
@click.option("--dict", "target", flag_value="dict")
@click.option("--goal", default=None, help="Lean only: goal formula (default falsum).")
@click.option("--name", default=None, help="Lean only: theorem name.")
@click.option("-o", "--output", type=click.Path())
@click.pass_obj
def export(corpus_path, codes, target, goal, name, output):
    """Export sentences to Prolog or a Lean skeleton, or dump the dictionary."""
    if target is None:
        raise ParaError("pick one of --prolog, --lean or --dict")
    corpus = _load(corpus_path, must_exist=True)
    formulas = (
        [corpus.get(c).formula for c in codes]
        if codes
        else [s.formula for s in corpus.sentences]
    )
    if target == "prolog":
        out = to_prolog(formulas, corpus.dictionary)
    elif target == "lean":
        scratch = corpus.dictionary.copy()
        parsed = None
        if goal and goal.strip() not in ("false", "⊥"):
            parsed = parse_proto(goal, scratch)
        out = to_lean_skeleton(formulas, parsed, scratch, theorem_name=name)
    else:
        out = json.dumps(export_dict(corpus.dictionary), indent=2, ensure_ascii=False) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        click.echo(out, nl=False)


@cli.command(name="import")
@click.option("--dict", "dict_file", type=click.Path(exists=True), required=True)
@click.pass_obj
def import_cmd(corpus_path, dict_file):
    """Replace the corpus dictionary with an exported document."""
    corpus = _load(corpus_path)
    with open(dict_file, encoding="utf-8") as fh:
        document = json.load(fh)
    d = import_dict(document)
    replacement = Corpus(d)
    for s in corpus.sentences:
        formula = parse_proto(s.source_text, d, auto_register=False)
        replacement.sentences.append(corpus_io.Sentence(s.text_code, s.source_text, formula))
    replacement._added = corpus._added
    corpus_io.save(replacement, corpus_path)
    click.echo(f"dictionary replaced; {len(replacement.sentences)} sentences re-checked")


@cli.command()
@click.option("--port", type=int, envvar="PARA_PORT", default=DEFAULT_PORT, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_obj
def serve(corpus_path, port, host):
    """Run the HTTP service over this corpus."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(corpus_path), host=host, port=port, log_level="warning")


def main():
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except ParaError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc!r}", err=True)
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
