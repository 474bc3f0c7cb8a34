"""Command-line surface: building index files, querying, DOT export, the
self-verification suites, and the exit-code contract."""

import json

import pytest
from click.testing import CliRunner

from pdawg import Alphabet, canonical_form, from_json_dict
from pdawg.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def text_file(tmp_path):
    path = tmp_path / "text.txt"
    path.write_text("xaxay\n", "utf-8")
    return str(path)


def _build(runner, tmp_path, text_file, *extra):
    out = str(tmp_path / "index.json")
    result = runner.invoke(
        main, ["build", text_file, "--sigma", "a", "--pi", "xy", "--out", out, *extra]
    )
    assert result.exit_code == 0, result.output + str(result.exception)
    return out, json.loads(result.output)


def _load_canonical(path):
    obj = json.loads(open(path, encoding="utf-8").read())
    alphabet = Alphabet(obj["alphabet"]["sigma"], obj["alphabet"]["pi"])
    g = from_json_dict(obj["pdawg"], alphabet, tuple(obj["text"]))
    return canonical_form(g)


class TestBuild:
    def test_stats_for_the_reference_text(self, runner, tmp_path, text_file):
        _, stats = _build(runner, tmp_path, text_file)
        assert stats == {
            "n": 5,
            "nodes": 7,
            "edges": 8,
            "primary": 5,
            "secondary": 3,
            "pi_size": 2,
            "sigma_size": 1,
            "prev": "0a2a0",
            "build_steps": {"redirected_secondary": 0, "slinks_deleted": 1},
        }

    def test_empty_file(self, runner, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("", "utf-8")
        out, stats = _build(runner, tmp_path, str(path))
        assert stats["n"] == 0
        assert stats["nodes"] == 1
        assert stats["edges"] == 0
        obj = json.loads(open(out, encoding="utf-8").read())
        assert len(obj["pdawg"]["nodes"]) == 1

    def test_output_is_deterministic(self, runner, tmp_path, text_file):
        out1, stats1 = _build(runner, tmp_path, text_file, "--with-locate")
        body1 = open(out1, "rb").read()
        out2, stats2 = _build(runner, tmp_path, text_file, "--with-locate")
        assert stats1 == stats2
        assert open(out2, "rb").read() == body1

    def test_index_file_round_trips_exactly(self, runner, tmp_path, text_file):
        out, _ = _build(runner, tmp_path, text_file, "--with-locate")
        text = open(out, encoding="utf-8").read()
        assert json.dumps(json.loads(text), indent=2) + "\n" == text

    def test_engines_agree(self, runner, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("xyaxbyazxya\n", "utf-8")
        forms = []
        for engine in ("online", "offline", "rtl"):
            out = str(tmp_path / f"{engine}.json")
            result = runner.invoke(
                main,
                ["build", str(path), "--sigma", "ab", "--pi", "xyz",
                 "--out", out, "--engine", engine],
            )
            assert result.exit_code == 0, result.output
            forms.append(_load_canonical(out))
        assert forms[0] == forms[1] == forms[2]

    def test_overlapping_alphabets_is_a_usage_error(self, runner, text_file):
        result = runner.invoke(main, ["build", text_file, "--sigma", "ax", "--pi", "xy"])
        assert result.exit_code == 2

    def test_sigma_and_pi_are_both_required_once(self, runner, text_file):
        assert runner.invoke(main, ["build", text_file, "--pi", "xy"]).exit_code == 2
        assert runner.invoke(main, ["build", text_file, "--sigma", "a"]).exit_code == 2
        assert (
            runner.invoke(
                main,
                ["build", text_file, "--sigma", "a", "--pi", "xy", "--pi-auto"],
            ).exit_code
            == 2
        )

    def test_unreadable_input_fails(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["build", str(tmp_path / "absent.txt"), "--sigma", "a", "--pi", "x"],
        )
        assert result.exit_code == 2

    def test_unknown_engine_rejected(self, runner, text_file):
        result = runner.invoke(
            main,
            ["build", text_file, "--sigma", "a", "--pi", "xy", "--engine", "magic"],
        )
        assert result.exit_code == 2

    def test_unclassifiable_text_symbol_is_a_usage_error(self, runner, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("xaq\n", "utf-8")
        result = runner.invoke(main, ["build", str(path), "--sigma", "a", "--pi", "xy"])
        assert result.exit_code == 2

    def test_tokenized_text_with_sigma_file_and_pi_auto(self, runner, tmp_path):
        text = tmp_path / "tokens.txt"
        text.write_text("alpha beta alpha\n", "utf-8")
        sigma = tmp_path / "sigma.txt"
        sigma.write_text("beta\n", "utf-8")
        out = str(tmp_path / "tok.json")
        result = runner.invoke(
            main,
            ["build", str(text), "--sigma-file", str(sigma), "--pi-auto",
             "--tokenize", "--out", out],
        )
        assert result.exit_code == 0, result.output
        stats = json.loads(result.output)
        assert stats["prev"] == "0 beta 2"
        assert stats["sigma_size"] == 1
        query = runner.invoke(main, ["query", out, "gamma beta gamma", "--locate"])
        assert query.exit_code == 0
        assert query.output.strip() == "[3]"


class TestQuery:
    @pytest.fixture()
    def index(self, runner, tmp_path, text_file):
        out, _ = _build(runner, tmp_path, text_file, "--with-locate")
        return out

    def test_existence_answers(self, runner, index):
        assert runner.invoke(main, ["query", index, "ya"]).output.strip() == "true"
        assert runner.invoke(main, ["query", index, "yaxa"]).output.strip() == "false"

    def test_locate_reports_end_positions(self, runner, index):
        result = runner.invoke(main, ["query", index, "ya", "--locate"])
        assert result.output.strip() == "[2, 4]"
        assert runner.invoke(
            main, ["query", index, "xax", "--locate"]
        ).output.strip() == "[3]"

    def test_begin_positions_shift_by_the_pattern_length(self, runner, index):
        result = runner.invoke(
            main, ["query", index, "ya", "--locate", "--begin-positions"]
        )
        assert result.output.strip() == "[1, 3]"

    def test_empty_pattern_matches_every_boundary(self, runner, index):
        result = runner.invoke(main, ["query", index, "", "--locate"])
        assert result.output.strip() == "[0, 1, 2, 3, 4, 5]"

    def test_renamed_parameters_within_the_alphabet_match(self, runner, index):
        assert runner.invoke(main, ["query", index, "xa"]).output.strip() == "true"
        assert runner.invoke(main, ["query", index, "ya"]).output.strip() == "true"

    def test_unclassifiable_pattern_symbol_is_a_usage_error(self, runner, tmp_path, text_file):
        # with an explicit parameter alphabet, unknown symbols are errors
        out = str(tmp_path / "strict.json")
        result = runner.invoke(
            main,
            ["build", text_file, "--sigma", "a", "--pi", "xy", "--out", out],
        )
        assert result.exit_code == 0
        # "a" is static, "?" is neither static nor (pi is explicit) a parameter
        # unless the index was built --pi-auto
        result = runner.invoke(main, ["query", out, "a?"])
        assert result.exit_code == 2

    def test_pi_auto_index_classifies_anything(self, runner, tmp_path, text_file):
        out = str(tmp_path / "auto.json")
        result = runner.invoke(
            main, ["build", text_file, "--sigma", "a", "--pi-auto", "--out", out]
        )
        assert result.exit_code == 0
        assert runner.invoke(main, ["query", out, "?a"]).output.strip() == "true"

    def test_locate_without_stored_arrays_still_works(self, runner, tmp_path, text_file):
        out, _ = _build(runner, tmp_path, text_file)
        result = runner.invoke(main, ["query", out, "ax", "--locate"])
        assert result.output.strip() == "[3, 5]"


class TestCorruptIndexes:
    @pytest.fixture()
    def index(self, runner, tmp_path, text_file):
        out, _ = _build(runner, tmp_path, text_file, "--with-locate")
        return out

    def _mangle(self, index, fn):
        obj = json.loads(open(index, encoding="utf-8").read())
        fn(obj)
        with open(index, "w", encoding="utf-8") as f:
            json.dump(obj, f)

    def test_unparsable_file(self, runner, index):
        with open(index, "w", encoding="utf-8") as f:
            f.write("{ not json")
        assert runner.invoke(main, ["query", index, "ya"]).exit_code == 3

    def test_wrong_format_marker(self, runner, index):
        self._mangle(index, lambda o: o.update(format="something-else"))
        assert runner.invoke(main, ["query", index, "ya"]).exit_code == 3

    def test_unsupported_version(self, runner, index):
        self._mangle(index, lambda o: o.update(version=99))
        assert runner.invoke(main, ["query", index, "ya"]).exit_code == 3

    def test_damaged_body(self, runner, index):
        self._mangle(index, lambda o: o["pdawg"]["nodes"].pop())
        assert runner.invoke(main, ["query", index, "ya"]).exit_code == 3

    def test_tampered_locate_arrays(self, runner, index):
        def swap(o):
            pos = o["locate"]["positions"]
            pos[0], pos[1] = pos[1], pos[0]

        self._mangle(index, swap)
        assert runner.invoke(main, ["query", index, "ya"]).exit_code == 3


class TestDot:
    @pytest.fixture()
    def index(self, runner, tmp_path, text_file):
        out, _ = _build(runner, tmp_path, text_file)
        return out

    def test_pdawg_dot_shows_both_edge_classes_and_links(self, runner, index):
        result = runner.invoke(main, ["dot", index])
        assert result.exit_code == 0
        out = result.output
        assert out.startswith("digraph pdawg {")
        assert out.count("doublecircle") == 1
        assert 'color="black:invis:black"' in out  # primary edges
        assert "style=dashed" in out  # suffix links
        assert runner.invoke(main, ["dot", index]).output == out

    def test_tree_and_automaton_variants(self, runner, index, tmp_path):
        tree = runner.invoke(main, ["dot", index, "--structure", "pstree"])
        assert tree.exit_code == 0
        assert tree.output.startswith("digraph pstree {")
        target = tmp_path / "auto.dot"
        auto = runner.invoke(
            main, ["dot", index, "--structure", "psauto", "--out", str(target)]
        )
        assert auto.exit_code == 0
        assert target.read_text("utf-8").startswith("digraph psauto {")

    def test_unknown_structure_rejected(self, runner, index):
        assert (
            runner.invoke(main, ["dot", index, "--structure", "galaxy"]).exit_code == 2
        )


class TestSelftest:
    def test_all_suites_pass_on_a_small_budget(self, runner):
        result = runner.invoke(main, ["selftest", "--max-len", "4", "--seed", "7"])
        assert result.exit_code == 0, result.output
        for name in ("encodings", "pdawg", "matching", "duality", "rtl", "bounds"):
            assert f"suite={name} ok" in result.output

    def test_suite_selection(self, runner):
        result = runner.invoke(
            main, ["selftest", "--suites", "bounds", "--max-len", "4"]
        )
        assert result.exit_code == 0
        assert "suite=bounds ok" in result.output
        assert "suite=encodings" not in result.output

    def test_unknown_suite_rejected(self, runner):
        assert runner.invoke(main, ["selftest", "--suites", "nope"]).exit_code == 2


def test_version_flag(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
