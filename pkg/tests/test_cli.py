import json

import pytest
from click.testing import CliRunner

from para.cli import cli

from conftest import MICE_CATS_TEXT, SOCRATES_PREMISES


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, corpus, *args, **kwargs):
    result = runner.invoke(cli, ["--corpus", str(corpus), *args], **kwargs)
    if result.exception and not isinstance(result.exception, SystemExit):
        raise result.exception
    return result


class TestSentenceCommands:
    def test_add_ls_show_rm(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        result = invoke(runner, corpus, "add", MICE_CATS_TEXT)
        assert result.exit_code == 0
        assert result.output.strip() == "7"

        result = invoke(runner, corpus, "ls")
        assert result.output.strip() == f"7\t{MICE_CATS_TEXT}"

        result = invoke(runner, corpus, "show", "7")
        assert "proto:   " + MICE_CATS_TEXT in result.output
        assert "2 32 2 96" in result.output

        assert invoke(runner, corpus, "rm", "7").exit_code == 0
        assert invoke(runner, corpus, "ls").output.strip() == ""

    def test_add_failure_leaves_file_untouched(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        before = corpus.read_bytes()
        result = invoke(runner, corpus, "add", "P(c")
        assert result.exit_code == 1
        assert "Error" in result.output
        assert corpus.read_bytes() == before

    def test_rm_unknown_code_is_user_error(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        assert invoke(runner, corpus, "rm", "11").exit_code == 1

    def test_corpus_path_from_environment(self, runner, tmp_path):
        corpus = tmp_path / "env.json"
        result = runner.invoke(cli, ["add", "P(c)"], env={"PARA_CORPUS": str(corpus)})
        assert result.exit_code == 0
        assert corpus.exists()


class TestRenderCommand:
    def test_prelpara_to_stdout(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", MICE_CATS_TEXT)
        result = invoke(runner, corpus, "render", "7", "--format", "prelpara2d")
        assert result.output.splitlines()[0].startswith("4:")

    def test_svg_to_file(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", MICE_CATS_TEXT)
        out = tmp_path / "grid.svg"
        result = invoke(runner, corpus, "render", "7", "--format", "svg2d", "-o", str(out))
        assert result.exit_code == 0
        assert out.read_text().startswith("<svg")

    def test_adhoc_text(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        result = invoke(runner, corpus, "render", "--text", "Mouse(tom)", "--format", "prelpara3d")
        assert result.exit_code == 0
        assert result.output.startswith("1:")

    def test_code_and_text_together_rejected(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        result = invoke(runner, corpus, "render", "7", "--text", "P(c)")
        assert result.exit_code == 1


class TestProveCommand:
    def test_syllogism(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        for text in SOCRATES_PREMISES:
            invoke(runner, corpus, "add", text)
        result = invoke(runner, corpus, "prove", "--goal", "Mortal(socrates)")
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "proved"
        assert "<- resolve" in result.output

    def test_refutation_via_false_goal(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        invoke(runner, corpus, "add", "~P(c)")
        result = invoke(runner, corpus, "prove", "--goal", "false", "--no-trace")
        assert result.output.strip() == "refuted"

    def test_bounds_flag(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        result = invoke(runner, corpus, "prove", "--goal", "Q(c)", "--bounds", "100:0.5")
        assert result.output.startswith("unknown")
        result = invoke(runner, corpus, "prove", "--goal", "Q(c)", "--bounds", "nope")
        assert result.exit_code == 1


class TestExportImport:
    def test_prolog_export(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        for text in SOCRATES_PREMISES:
            invoke(runner, corpus, "add", text)
        result = invoke(runner, corpus, "export", "--prolog")
        assert "man(socrates)." in result.output
        assert "mortal(X) :- man(X)." in result.output

    def test_lean_export(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        for text in SOCRATES_PREMISES:
            invoke(runner, corpus, "add", text)
        result = invoke(runner, corpus, "export", "--lean", "--goal", "Mortal(socrates)")
        assert "theorem MortalSocrates" in result.output

    def test_dict_round_trip_through_files(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", MICE_CATS_TEXT)
        dict_file = tmp_path / "dict.json"
        result = invoke(runner, corpus, "export", "--dict", "-o", str(dict_file))
        assert result.exit_code == 0
        doc = json.loads(dict_file.read_text())
        assert doc["sorts"] == ["Animal"]
        result = invoke(runner, corpus, "import", "--dict", str(dict_file))
        assert result.exit_code == 0
        assert invoke(runner, corpus, "show", "7").exit_code == 0

    def test_incompatible_import_rejected(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", MICE_CATS_TEXT)
        dict_file = tmp_path / "dict.json"
        dict_file.write_text(json.dumps({"version": 1, "sorts": ["Animal"]}))
        result = invoke(runner, corpus, "import", "--dict", str(dict_file))
        assert result.exit_code == 1

    def test_export_without_target_is_user_error(self, runner, tmp_path):
        corpus = tmp_path / "c.json"
        invoke(runner, corpus, "add", "P(c)")
        assert invoke(runner, corpus, "export").exit_code == 1
