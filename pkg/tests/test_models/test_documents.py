import pytest
from pydantic import ValidationError

from quantum_clifford.models.config import RunConfig
from quantum_clifford.models.documents import ModuleDocument, ReportDocument, RootSystemDocument
from quantum_clifford.modules import simple_module
from quantum_clifford.roots import build_root_system
from quantum_clifford.utils import linalg


class TestRootSystemDocument:
    def test_g2(self):
        """Test the summary of G2 (no cominuscule node)."""
        document = RootSystemDocument.from_root_system(build_root_system("G", 2))
        assert document.highest_root == [3, 2]
        assert len(document.positive_roots) == 6
        assert document.cominuscule_nodes == []

    def test_nodes_are_one_based(self, sl3):
        """Test that cominuscule nodes use the CLI numbering."""
        document = RootSystemDocument.from_root_system(sl3)
        assert document.cominuscule_nodes == [1, 2]
        assert document.cartan == [[2, -1], [-1, 2]]


class TestModuleDocument:
    def test_seed_module_document(self, sl2_vector):
        """Test the serialized form of the sl2 vector representation."""
        document = ModuleDocument.from_module(sl2_vector)
        assert document.denominator == 2
        assert document.weights == [[1], [-1]]
        assert document.E == {"0": {"0,1": "1"}}
        assert document.F == {"0": {"1,0": "1"}}

    def test_round_trip_preserves_matrices(self, sl3):
        """Test that a reloaded module has identical generators and still satisfies U_q."""
        module = simple_module(sl3, (1, 1))
        reloaded = ModuleDocument.model_validate_json(
            ModuleDocument.from_module(module).model_dump_json()
        ).to_module()
        assert reloaded.label == (1, 1)
        assert reloaded.weights == module.weights
        for i in sl3.indices:
            assert linalg.equal(reloaded.E(i), module.E(i))
            assert linalg.equal(reloaded.F(i), module.F(i))
        reloaded.verify_relations()

    def test_invalid_position(self):
        """Test that matrix positions must read "row,col"."""
        with pytest.raises(ValidationError, match="Invalid matrix position"):
            ModuleDocument(
                root_type="A",
                rank=1,
                denominator=2,
                weights=[[1], [-1]],
                active=[0],
                E={"0": {"0;1": "1"}},
                F={"0": {}},
            )


class TestReportDocument:
    @pytest.fixture
    def report(self):
        config = RunConfig(root_type="A", rank=1, cache_dir=None)
        return ReportDocument(command="braiding", config=config)

    def test_check_marks_failure(self, report):
        """Test that one failed verification fails the report."""
        assert report.check("Yang-Baxter", True)
        assert report.passed
        assert not report.check("symmetry", False, "sigma^2 != 1")
        assert report.status == "failed"
        assert [v.name for v in report.verifications] == ["Yang-Baxter", "symmetry"]

    def test_payload_drops_cache_dir(self, report):
        """Test that the printed payload does not depend on the cache location."""
        payload = report.payload()
        assert "cache_dir" not in payload["config"]
        assert payload["config"]["root_type"] == "A"
        assert payload["status"] == "ok"
