"""CLI grammar, formats, exit codes, and byte-determinism."""

import json
import math

import numpy as np
import pytest

import cellcomplex as cx
from cellcomplex import io
from cellcomplex.cli import main
from cellcomplex.core import BoundaryMatrix

import helpers


@pytest.fixture
def toy_file(tmp_path, toy):
    path = tmp_path / "toy.json"
    path.write_text(io.dumps(io.complex_to_json(toy)))
    return str(path)


@pytest.fixture
def square_points(tmp_path):
    path = tmp_path / "points.csv"
    path.write_text("0,0\n1,0\n1,1\n0,1\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidateCommand:
    def test_valid_toy(self, capsys, toy_file):
        code, out, _ = run(capsys, "validate", toy_file)
        assert code == 0
        assert json.loads(out) == {"valid": True, "failures": []}

    def test_nd_flag(self, capsys, toy_file):
        code, out, _ = run(capsys, "validate", "--nd", toy_file)
        assert code == 0 and json.loads(out)["valid"]

    def test_invalid_complex_exits_one(self, capsys, tmp_path, toy_graph):
        b2 = BoundaryMatrix(6, 1, ())
        broken = cx.CellComplex(
            2, (*toy_graph.cells, ("f",)), (toy_graph.boundary(1), b2)
        )
        path = tmp_path / "broken.json"
        path.write_text(io.dumps(io.complex_to_json(broken)))
        code, out, _ = run(capsys, "validate", "--nd", str(path))
        assert code == 1
        doc = json.loads(out)
        assert not doc["valid"]
        assert doc["failures"][0]["condition"] == "cell-acyclic"


class TestBettiCommand:
    def test_csv_output(self, capsys, toy_file):
        code, out, _ = run(capsys, "--output", "csv", "betti", toy_file)
        assert code == 0 and out == "1,0,0\n"

    def test_json_default(self, capsys, toy_file):
        code, out, _ = run(capsys, "betti", toy_file)
        assert code == 0
        assert json.loads(out)["betti"] == [1, 0, 0]

    def test_integer_flag(self, capsys, toy_file):
        code, out, _ = run(capsys, "betti", "--integer", toy_file)
        doc = json.loads(out)
        assert doc["coefficients"] == "integer" and doc["betti"] == [1, 0, 0]


class TestSpectrumCommand:
    def test_csv_rows_and_determinism(self, capsys, toy_file):
        code, first, _ = run(capsys, "spectrum", toy_file, "--dim", "1")
        assert code == 0
        code, second, _ = run(capsys, "spectrum", toy_file, "--dim", "1")
        assert first == second
        rows = [line.split(",") for line in first.strip().splitlines()]
        assert len(rows) == 6
        assert {tag for _, tag in rows} == {"gradient", "curl"}

    def test_json_output(self, capsys, toy_file):
        code, out, _ = run(capsys, "--output", "json", "spectrum", toy_file, "--dim", "0")
        doc = json.loads(out)
        assert len(doc["eigenvalues"]) == 5
        assert doc["tags"].count("harmonic") == 1


class TestSignalCommands:
    def write_signal(self, tmp_path, values):
        path = tmp_path / "signal.json"
        path.write_text(json.dumps({"dim": 1, "values": values}))
        return str(path)

    def test_decompose_components_sum(self, capsys, tmp_path, toy_file):
        signal = self.write_signal(tmp_path, [1, 2, 3, 4, 5, 6])
        code, out, _ = run(capsys, "decompose", toy_file, "--dim", "1", "--signal", signal)
        assert code == 0
        doc = json.loads(out)
        total = (
            np.array(doc["gradient"]["values"])
            + np.array(doc["curl"]["values"])
            + np.array(doc["harmonic"]["values"])
        )
        assert np.allclose(total, [1, 2, 3, 4, 5, 6], atol=1e-9)

    def test_filter_identity_round_trips(self, capsys, tmp_path, toy_file):
        signal = self.write_signal(tmp_path, [1, -1, 0.5, 2, 0, 3])
        code, out, _ = run(
            capsys, "filter", toy_file, "--dim", "1", "--signal", signal,
            "--filter", "identity",
        )
        assert code == 0
        assert np.allclose(json.loads(out)["values"], [1, -1, 0.5, 2, 0, 3], atol=1e-9)

    def test_unknown_filter_exits_one(self, capsys, tmp_path, toy_file):
        signal = self.write_signal(tmp_path, [0, 0, 0, 0, 0, 0])
        code, _, err = run(
            capsys, "filter", toy_file, "--dim", "1", "--signal", signal,
            "--filter", "bandpass",
        )
        assert code == 1 and "bandpass" in err

    def test_weights_file(self, capsys, tmp_path, toy_file):
        signal = self.write_signal(tmp_path, [1, 2, 3, 4, 5, 6])
        weights = tmp_path / "weights.json"
        weights.write_text(
            json.dumps({"weights": [[1] * 5, [2, 1, 1, 1, 1, 1], [1, 1]]})
        )
        code, out, _ = run(
            capsys, "decompose", toy_file, "--dim", "1", "--signal", signal,
            "--weights", str(weights),
        )
        assert code == 0 and json.loads(out)["harmonic"]["dim"] == 1


class TestBuildCommands:
    def test_build_vr_round_trips_schema(self, capsys, square_points):
        code, out, _ = run(capsys, "build", "vr", square_points, "--eps", "1", "--maxdim", "2")
        assert code == 0
        cc = io.complex_from_json(json.loads(out))
        assert [len(layer) for layer in cc.cells] == [4, 4]

    def test_build_cubical(self, capsys):
        code, out, _ = run(capsys, "build", "cubical", "4", "4")
        cc = io.complex_from_json(json.loads(out))
        assert [len(layer) for layer in cc.cells] == [16, 24, 9]

    def test_product(self, capsys, tmp_path):
        k2 = helpers.k2_paper()
        path = tmp_path / "k2.json"
        path.write_text(io.dumps(io.complex_to_json(k2)))
        code, out, _ = run(capsys, "product", str(path), str(path))
        cc = io.complex_from_json(json.loads(out))
        assert [len(layer) for layer in cc.cells] == [4, 4, 1]


class TestLiftCommands:
    @pytest.fixture
    def graph_file(self, tmp_path, toy_graph):
        path = tmp_path / "graph.json"
        path.write_text(io.dumps(io.complex_to_json(toy_graph)))
        return str(path)

    def test_lift_tree(self, capsys, graph_file):
        code, out, _ = run(capsys, "lift", "tree", graph_file)
        cc = io.complex_from_json(json.loads(out))
        assert cc.n_cells(2) == 2

    def test_lift_tree_with_root(self, capsys, graph_file):
        code, out, _ = run(capsys, "lift", "tree", graph_file, "--root", "3")
        assert code == 0 and io.complex_from_json(json.loads(out)).n_cells(2) == 2

    def test_lift_chordless(self, capsys, graph_file):
        code, out, _ = run(capsys, "lift", "chordless", graph_file)
        cc = io.complex_from_json(json.loads(out))
        assert cc.cells[2] == ("0-1-2-3", "0-3-4")

    def test_lift_window(self, capsys, tmp_path):
        square = cx.from_tuples(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
        graph = tmp_path / "square.json"
        graph.write_text(io.dumps(io.complex_to_json(square)))
        coords = tmp_path / "coords.csv"
        coords.write_text("0,0\n1,0\n1,1\n0,1\n")
        code, out, _ = run(capsys, "lift", "window", str(graph), "--coords", str(coords))
        cc = io.complex_from_json(json.loads(out))
        assert cc.cells[2] == ("0-1-2-3",)


class TestPersistCommand:
    def test_square_csv(self, capsys, square_points):
        code, out, _ = run(capsys, "persist", square_points, "--max-eps", "2", "--max-dim", "2")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()]
        h1 = [row for row in rows if row[0] == "1"]
        assert len(h1) == 1
        assert float(h1[0][1]) == pytest.approx(1.0)
        assert float(h1[0][2]) == pytest.approx(math.sqrt(2))
        assert any(row[2] == "inf" for row in rows)

    def test_json_output(self, capsys, square_points):
        code, out, _ = run(
            capsys, "--output", "json", "persist", square_points,
            "--max-eps", "2", "--max-dim", "1",
        )
        doc = json.loads(out)
        assert any(bar["death"] == "inf" for bar in doc["bars"])

    def test_determinism(self, capsys, square_points):
        _, first, _ = run(capsys, "persist", square_points, "--max-eps", "2", "--max-dim", "2")
        _, second, _ = run(capsys, "persist", square_points, "--max-eps", "2", "--max-dim", "2")
        assert first == second


class TestExitCodes:
    def test_usage_error_is_two(self):
        with pytest.raises(SystemExit) as info:
            main(["no-such-command"])
        assert info.value.code == 2

    def test_bad_tolerance_is_usage_error(self, toy_file):
        with pytest.raises(SystemExit) as info:
            main(["--tolerance", "-1", "betti", toy_file])
        assert info.value.code == 2

    def test_missing_file_is_one(self, capsys):
        code, _, err = run(capsys, "betti", "/nonexistent/toy.json")
        assert code == 1 and err

    def test_schema_error_is_one(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 1}')
        code, _, err = run(capsys, "validate", str(path))
        assert code == 1 and "error" in err
