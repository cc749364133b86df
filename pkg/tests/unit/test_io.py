"""Unit tests for IO module."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

HALF_MODEL = {"kind": "real", "states": 1, "loopback": 0, "valuation": {"p": ["1/2"]}}

TWO_WORLD_MODEL = {
    "kind": "bi",
    "worlds": 2,
    "states": 1,
    "loopback": 0,
    "valuation": {"p": [[0, 0]], "q": []},
}


class TestFormatDetection:
    """Test format detection."""

    def test_detect_json(self):
        """Test JSON format detection."""
        from gtl_cli.io.formats import FileFormat, detect_format

        assert detect_format(Path("grid.json")) == FileFormat.JSON

    def test_detect_dot(self):
        """Test DOT format detection."""
        from gtl_cli.io.formats import FileFormat, detect_format

        assert detect_format(Path("quasi.dot")) == FileFormat.DOT
        assert detect_format(Path("quasi.gv")) == FileFormat.DOT

    def test_detect_tables(self):
        """Test table format detection."""
        from gtl_cli.io.formats import FileFormat, detect_table_format

        assert detect_table_format("m.csv") == FileFormat.CSV
        assert detect_table_format("m.TSV") == FileFormat.TSV
        assert detect_table_format("m.pq") == FileFormat.PARQUET

    def test_unknown_format(self):
        """Test unknown format raises error."""
        from gtl_cli.io.formats import detect_format

        with pytest.raises(ValueError, match="Cannot detect format"):
            detect_format(Path("file.xyz"))

    def test_not_a_table(self):
        """Test that JSON is not a table format."""
        from gtl_cli.io.formats import detect_table_format

        with pytest.raises(ValueError, match="not a table"):
            detect_table_format("m.json")


class TestModelCodec:
    """Test model files."""

    def test_real_model(self):
        """Test decoding a real model."""
        from gtl_cli.core.semantics import RealModel
        from gtl_cli.io.models import model_from_dict

        m = model_from_dict(HALF_MODEL)
        assert isinstance(m, RealModel)
        assert m.valuation["p"] == (Fraction(1, 2),)

    def test_bi_model(self):
        """Test decoding a bi-relational model."""
        from gtl_cli.core.semantics import BiModel
        from gtl_cli.io.models import model_from_dict

        m = model_from_dict(TWO_WORLD_MODEL)
        assert isinstance(m, BiModel)
        assert m.world_count == 2
        assert m.heights("p") == (1,)
        assert m.heights("q") == (0,)

    def test_integer_values(self):
        """Test that 0 and 1 may be written as integers."""
        from gtl_cli.io.models import model_from_dict

        m = model_from_dict({"kind": "real", "states": 2, "loopback": 1, "valuation": {"p": [0, 1]}})
        assert m.valuation["p"] == (0, 1)

    def test_floats_rejected(self):
        """Test that float values are refused."""
        from gtl_cli.core.errors import ModelError
        from gtl_cli.io.models import model_from_dict

        data = dict(HALF_MODEL, valuation={"p": [0.5]})
        with pytest.raises(ModelError, match="num/den"):
            model_from_dict(data)

    def test_missing_field(self):
        """Test a model without loopback."""
        from gtl_cli.core.errors import ModelError
        from gtl_cli.io.models import model_from_dict

        data = {k: v for k, v in HALF_MODEL.items() if k != "loopback"}
        with pytest.raises(ModelError, match="loopback"):
            model_from_dict(data)

    def test_unknown_kind(self):
        """Test an unknown model kind."""
        from gtl_cli.core.errors import ModelError
        from gtl_cli.io.models import model_from_dict

        with pytest.raises(ModelError, match="Unknown model kind"):
            model_from_dict(dict(HALF_MODEL, kind="fuzzy"))

    def test_not_downward_closed(self):
        """Test a bi-relational valuation with a hole."""
        from gtl_cli.core.errors import ModelError
        from gtl_cli.io.models import model_from_dict

        data = dict(TWO_WORLD_MODEL, valuation={"p": [[1, 0]]})
        with pytest.raises(ModelError, match="downward closed"):
            model_from_dict(data)

    def test_dump_and_load(self, tmp_dir):
        """Test writing then reading a model file."""
        from gtl_cli.io.models import dump_model, load_model, model_from_dict

        m = model_from_dict(TWO_WORLD_MODEL)
        dump_model(m, tmp_dir / "m.json")
        assert load_model(tmp_dir / "m.json") == m
        assert json.loads((tmp_dir / "m.json").read_text())["kind"] == "bi"

    def test_rationals_written_as_strings(self, tmp_dir):
        """Test that real values are written as exact strings."""
        from gtl_cli.io.models import dump_model, model_from_dict

        dump_model(model_from_dict(HALF_MODEL), tmp_dir / "m.json")
        assert json.loads((tmp_dir / "m.json").read_text())["valuation"]["p"] == ["1/2"]

    def test_wrong_kind(self, half_model_file, two_world_model_file):
        """Test loading a model of the other kind."""
        from gtl_cli.core.errors import ModelError
        from gtl_cli.io.models import load_bi_model, load_real_model

        with pytest.raises(ModelError, match="expected kind 'bi'"):
            load_bi_model(half_model_file)
        with pytest.raises(ModelError, match="expected kind 'real'"):
            load_real_model(two_world_model_file)


class TestCertificates:
    """Test witness and quasimodel files."""

    @pytest.fixture(scope="class")
    def witness(self):
        from gtl_cli.core.decision import decide
        from gtl_cli.core.formula import parse

        return decide(parse("F (p -> X p)")).witness

    def test_witness_round_trip(self, witness, tmp_dir):
        """Test that a written witness reads back equal and still verifies."""
        from gtl_cli.core.decision import verify_witness
        from gtl_cli.io.certificates import load_witness, witness_to_dict, write_json

        write_json(witness_to_dict(witness), tmp_dir / "w.json")
        loaded = load_witness(tmp_dir / "w.json")
        assert loaded == witness
        assert verify_witness(loaded.formula, loaded).ok

    def test_witness_layout(self, witness):
        """Test the JSON layout of a witness."""
        from gtl_cli.io.certificates import witness_to_dict

        data = witness_to_dict(witness)
        assert data["formula"] == "F (p -> X p)"
        assert len(data["relations"]) == len(data["moments"]) - 1
        assert all(isinstance(s, str) for chain in data["moments"] for t in chain for s in t)

    def test_witness_unknown_formula(self, witness):
        """Test a moment mentioning a formula outside the closure."""
        from gtl_cli.core.errors import CertificateFormatError
        from gtl_cli.io.certificates import witness_from_dict, witness_to_dict

        data = witness_to_dict(witness)
        data["moments"][0][0].append("q")
        with pytest.raises(CertificateFormatError, match="moment 0"):
            witness_from_dict(data)

    def test_witness_bad_pivot(self, witness):
        """Test a non-integer pivot."""
        from gtl_cli.core.errors import CertificateFormatError
        from gtl_cli.io.certificates import witness_from_dict, witness_to_dict

        data = dict(witness_to_dict(witness), pivot="0")
        with pytest.raises(CertificateFormatError, match="pivot"):
            witness_from_dict(data)

    def test_witness_missing_field(self):
        """Test a witness without moments."""
        from gtl_cli.core.errors import CertificateFormatError
        from gtl_cli.io.certificates import witness_from_dict

        with pytest.raises(CertificateFormatError, match="'moments'"):
            witness_from_dict({"formula": "p", "pivot": 0})

    def test_quasimodel_round_trip(self, witness, tmp_dir):
        """Test that a written quasimodel reads back equal."""
        from gtl_cli.core.decision import witness_to_quasimodel
        from gtl_cli.io.certificates import load_quasimodel, quasimodel_to_dict, write_json

        q = witness_to_quasimodel(witness)
        write_json(quasimodel_to_dict(q), tmp_dir / "q.json")
        assert load_quasimodel(tmp_dir / "q.json") == q

    def test_quasimodel_bad_label(self):
        """Test a label index past the closure."""
        from gtl_cli.core.errors import CertificateFormatError
        from gtl_cli.io.certificates import quasimodel_from_dict

        data = {"sigma": ["p"], "worlds": [{"id": 0, "component": 0, "rank": 0, "label": [3]}], "rel": []}
        with pytest.raises(CertificateFormatError, match="outside the closure"):
            quasimodel_from_dict(data)

    def test_quasimodel_unordered_closure(self):
        """Test a closure listing a parent before its child."""
        from gtl_cli.core.errors import CertificateFormatError
        from gtl_cli.io.certificates import quasimodel_from_dict

        with pytest.raises(CertificateFormatError, match="bad closure"):
            quasimodel_from_dict({"sigma": ["X p", "p"], "worlds": [], "rel": []})

    def test_dot(self, witness, tmp_dir):
        """Test DOT export of a quasimodel."""
        from gtl_cli.core.decision import witness_to_quasimodel
        from gtl_cli.io.certificates import quasimodel_graph, write_dot

        q = witness_to_quasimodel(witness)
        g = quasimodel_graph(q)
        assert set(g.nodes) == set(q.ids)
        assert set(q.rel) <= set(g.edges)

        write_dot(q, tmp_dir / "q.dot")
        text = (tmp_dir / "q.dot").read_text()
        assert "digraph" in text
        assert "->" in text


class TestGridExport:
    """Test grid JSON."""

    def test_layout(self):
        """Test paths, queue and log of a short unwinding."""
        from gtl_cli.core.formula import closure, parse
        from gtl_cli.core.quasimodel import quotient
        from gtl_cli.core.semantics import BiModel, PeriodicFlow
        from gtl_cli.core.unwind import unwind_bounded
        from gtl_cli.io.certificates import grid_to_dict

        m = BiModel(2, PeriodicFlow(1, 0), {"p": {(0, 0)}})
        grid = unwind_bounded(quotient(m, closure(parse("p | ~p"))), 1, 2)
        data = grid_to_dict(grid)
        assert data["length"] == 2
        assert [p["worlds"] for p in data["paths"]] == [[0, 0], [1, 1]]
        assert data["processed"][1]["defect"] == {
            "kind": "implies",
            "path": 0,
            "formula": "p -> bot",
            "column": 0,
        }
        assert all(entry["kind"] for entry in data["queue"])


class TestTables:
    """Test table export."""

    ROWS = [{"index": 0, "length": 1, "chain": "({p})"}, {"index": 1, "length": 2, "chain": "({p}, {})"}]

    def test_write_csv(self, tmp_dir):
        """Test CSV output."""
        import pandas as pd

        from gtl_cli.io.tables import write_table

        assert write_table(self.ROWS, tmp_dir / "t.csv") == 2
        df = pd.read_csv(tmp_dir / "t.csv")
        assert list(df.columns) == ["index", "length", "chain"]
        assert df["length"].tolist() == [1, 2]

    def test_write_tsv(self, tmp_dir):
        """Test TSV output with explicit columns."""
        from gtl_cli.io.tables import write_table

        write_table(self.ROWS, tmp_dir / "t.tsv", columns=["chain", "index"])
        header = (tmp_dir / "t.tsv").read_text().splitlines()[0]
        assert header == "chain\tindex"

    def test_write_parquet(self, tmp_dir):
        """Test Parquet output."""
        import pandas as pd

        from gtl_cli.io.tables import write_table

        write_table(self.ROWS, tmp_dir / "t.parquet")
        df = pd.read_parquet(tmp_dir / "t.parquet")
        assert len(df) == 2
        assert df["chain"].tolist()[1] == "({p}, {})"

    def test_rejects_json(self, tmp_dir):
        """Test that non-table extensions are rejected."""
        from gtl_cli.io.tables import write_table

        with pytest.raises(ValueError):
            write_table(self.ROWS, tmp_dir / "t.json")
