import json
import shutil

import pytest

from mslekg.dataset import DatasetError, load_bundled, load_manifest
from mslekg.maturity import run_cq_suite
from mslekg.model import Iri
from mslekg.namespaces import MATVOC, MSLE, OWL, RDF, RDFS, SSN
from mslekg.shacl import validate
from mslekg.skos import lint_vocabulary
from mslekg.sparql import evaluate, parse_query


def test_manifest_roles_and_counts(bundled, data_dir):
    manifest = load_manifest(data_dir)
    roles = {entry.role for entry in manifest}
    assert roles == {"schema", "instances", "alignment", "shapes", "cq_suite"}
    graph_total = sum(
        e.triple_count for e in manifest if e.role in ("schema", "instances", "alignment")
    )
    assert len(bundled.graph) == graph_total


def test_expected_schema_content(bundled):
    g = bundled.graph
    for name in (
        "Electron_Microscope",
        "Scanning_Electron_Microscope",
        "Transmission_Electron_Microscope",
        "Focused_Ion_Beam_Microscope",
        "Single_Beam",
        "Single_Beam_Electron_Microscope",
        "Dual_Beam",
        "Optional_Equipment",
        "SEM_Stage",
        "Detectors",
        "4QBSD_Detector",
        "STEM_Detector",
        "EsB",
        "In_Lens_Detector",
        "SESI",
        "Camera",
        "Gas_Injection_System",
    ):
        assert list(g.match(MSLE[name], None, None)), f"missing class {name}"
    for prop in (
        "hasHighTension",
        "hasDetector",
        "hasLocation",
        "hasInjection",
        "hasSEMmagnification",
        "hasFIBmagnification",
        "hasParameter",
        "operateWith",
        "magnification",
    ):
        assert list(g.match(MSLE[prop], None, None)), f"missing property {prop}"


def test_alignment_triples(bundled):
    g = bundled.graph
    assert list(g.match(MSLE.Equipment, RDFS.subClassOf, SSN.Sensor))
    assert list(g.match(MSLE.Equipment, RDFS.subClassOf, MATVOC.Observer))
    samplers = {t.s for t in g.match(None, RDFS.subClassOf, SSN.Sampler)}
    assert samplers == {
        MSLE["4QBSD_Detector"],
        MSLE.STEM_Detector,
        MSLE.EsB,
        MSLE.In_Lens_Detector,
        MSLE.SESI,
        MSLE.Camera,
    }
    assert list(g.match(MSLE.HasEmployed, RDFS.subClassOf, None)) == []
    assert list(g.match(MSLE.HasEmployed, None, None))


def test_sampler_cq_excludes_stray_tokens(bundled):
    case = next(c for c in bundled.suite.cases if c.id == "ssn-samplers")
    query = parse_query(case.query, bundled.suite.prefixes)
    got = {row["Detectors"] for row in evaluate(bundled.graph, query).rows}
    assert Iri(MSLE.base + "Nothing") not in got
    assert len(got) == 6


def test_gis_cq_lists_exactly_the_four_injections(bundled):
    case = next(c for c in bundled.suite.cases if c.id == "fei-strata-400s-injection-types")
    query = parse_query(case.query, bundled.suite.prefixes)
    got = {row["GIS"] for row in evaluate(bundled.graph, query).rows}
    assert got == {MSLE.Tungsten_W, MSLE.Carbon_C, MSLE.Platinum_Pt, MSLE.XeF2}


def test_bundled_data_conforms_to_bundled_shapes(bundled):
    assert validate(bundled.graph, bundled.shapes).conforms


def test_every_class_labelled_and_defined(bundled):
    assert lint_vocabulary(bundled.graph) == []


def test_every_case_nonempty_except_documented_negative(bundled):
    report = run_cq_suite(bundled.graph, bundled.suite)
    assert all(v.passed for v in report.verdicts)
    for case in bundled.suite.cases:
        if case.id == "ion-beam-high-tension-as-printed":
            assert case.expected == []  # documented value discrepancy
        else:
            assert case.expected


def test_data_dir_override(tmp_path, monkeypatch, data_dir):
    target = tmp_path / "corpus"
    shutil.copytree(data_dir, target)
    monkeypatch.setenv("MSLE_DATA_DIR", str(target))
    data = load_bundled()
    assert len(data.graph) > 0
    assert validate(data.graph, data.shapes).conforms


def test_missing_file_error_names_file(tmp_path, data_dir):
    target = tmp_path / "corpus"
    shutil.copytree(data_dir, target)
    (target / "msle-instances.ttl").unlink()
    with pytest.raises(DatasetError) as excinfo:
        load_bundled(target)
    assert "msle-instances.ttl" in str(excinfo.value)


def test_wrong_triple_count_detected(tmp_path, data_dir):
    target = tmp_path / "corpus"
    shutil.copytree(data_dir, target)
    manifest = json.loads((target / "manifest.json").read_text())
    manifest["files"][0]["triple_count"] += 1
    (target / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(DatasetError) as excinfo:
        load_bundled(target)
    assert "msle-schema.ttl" in str(excinfo.value)


def test_corrupt_turtle_reported(tmp_path, data_dir):
    target = tmp_path / "corpus"
    shutil.copytree(data_dir, target)
    path = target / "msle-alignment.ttl"
    path.write_text(path.read_text() + "\nbroken statement without dot\n")
    with pytest.raises(DatasetError) as excinfo:
        load_bundled(target)
    assert "msle-alignment.ttl" in str(excinfo.value)


def test_instruments_record_high_tension_30(bundled):
    q = parse_query(
        "SELECT ?instrument WHERE "
        '{ ?instrument MSLE:hasHighTension "30"^^xsd:integer }',
        bundled.suite.prefixes,
    )
    got = {row["instrument"] for row in evaluate(bundled.graph, q).rows}
    assert got == {MSLE.Zeiss_Auriga_60, MSLE.FEI_Strata_400s}


def test_equivalence_axiom_stored_longhand(bundled):
    g = bundled.graph
    (restriction,) = [t.o for t in g.match(MSLE.Dual_Beam, OWL.equivalentClass)]
    assert list(g.match(restriction, OWL.onProperty, MSLE.hasPart))
    (intersection,) = [t.o for t in g.match(restriction, OWL.someValuesFrom)]
    (cell1,) = [t.o for t in g.match(intersection, OWL.intersectionOf)]
    firsts = set()
    while True:
        firsts.update(t.o for t in g.match(cell1, RDF.first))
        rest = [t.o for t in g.match(cell1, RDF.rest)]
        if not rest or rest[0] == RDF.nil:
            break
        cell1 = rest[0]
    assert firsts == {MSLE.Scanning_Electron_Microscope, MSLE.Focused_Ion_Beam_Microscope}

