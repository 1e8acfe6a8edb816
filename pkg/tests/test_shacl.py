import logging
from decimal import Decimal

import pytest

from mslekg.model import Graph, Literal, Triple
from mslekg.namespaces import MSLE, RDF, RDFS, XSD
from mslekg.shacl import Component, ShapeParseError, parse_shapes, validate
from mslekg.turtle import parse_turtle

ZEISS = MSLE.Zeiss_Auriga_60
RANGE_MESSAGE = "The high tension for the dual beam needs to be in the proper range."

SHAPE_HEADER = """\
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix MSLE: <http://www.semanticweb.org/hr7456/ontologies/2021/8/MSLE#> .
"""


def shapes_from(text):
    return parse_shapes(parse_turtle(SHAPE_HEADER + text))


@pytest.fixture()
def overrange_graph(overrange_fixture_path):
    return parse_turtle(overrange_fixture_path.read_text(encoding="utf-8"))


class TestShapeParsing:
    def test_bundled_shapes(self, bundled):
        assert len(bundled.shapes) == 1
        shape = bundled.shapes[0]
        assert shape.id == MSLE.MSLEShape
        assert shape.target_classes == [MSLE.Dual_Beam]
        paths = [p.path for p in shape.property_shapes]
        assert paths == [
            MSLE.hasHighTension,
            MSLE.hasHighTension,
            MSLE.hasDetector,
            MSLE.hasLocation,
        ]
        range_shape = shape.property_shapes[0]
        assert range_shape.min_inclusive == Decimal("0.1")
        assert range_shape.max_inclusive == Decimal("30")
        assert range_shape.max_count == 1
        assert range_shape.message == RANGE_MESSAGE
        assert range_shape.message_lang == "en"
        assert shape.property_shapes[1].datatype == XSD.integer
        assert shape.property_shapes[2].min_count == 1
        assert shape.property_shapes[3].min_count == 1

    def test_empty_graph_yields_no_shapes(self):
        assert parse_shapes(Graph()) == []

    def test_non_integer_count_rejected(self):
        with pytest.raises(ShapeParseError):
            shapes_from(
                'MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;'
                ' sh:property [ sh:path MSLE:p ; sh:minCount "x" ] .'
            )

    def test_missing_path_rejected(self):
        with pytest.raises(ShapeParseError) as excinfo:
            shapes_from(
                "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
                " sh:property [ sh:minCount 1 ] ."
            )
        assert "sh:path" in str(excinfo.value)

    def test_non_numeric_bound_rejected(self):
        with pytest.raises(ShapeParseError):
            shapes_from(
                "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
                ' sh:property [ sh:path MSLE:p ; sh:minInclusive "low" ] .'
            )

    def test_missing_target_class_rejected(self):
        with pytest.raises(ShapeParseError):
            shapes_from("MSLE:S a sh:NodeShape ; sh:property [ sh:path MSLE:p ] .")

    def test_unknown_shacl_predicate_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="mslekg.shacl"):
            shapes = shapes_from(
                "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
                " sh:property [ sh:path MSLE:p ; sh:pattern \"x\" ] ."
            )
        assert len(shapes) == 1
        assert "pattern" in caplog.text

    def test_inverted_bounds_rejected(self):
        with pytest.raises(ShapeParseError):
            shapes_from(
                "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
                " sh:property [ sh:path MSLE:p ; sh:minCount 3 ; sh:maxCount 1 ] ."
            )


class TestValidation:
    def test_overrange_fixture_three_violations(self, bundled, overrange_graph):
        report = validate(overrange_graph, bundled.shapes)
        assert not report.conforms
        assert len(report.results) == 3
        by_component = {(r.component, r.path) for r in report.results}
        assert by_component == {
            (Component.MAX_INCLUSIVE, MSLE.hasHighTension),
            (Component.MIN_COUNT, MSLE.hasDetector),
            (Component.MIN_COUNT, MSLE.hasLocation),
        }
        messages = {r.component: r.message for r in report.results}
        assert messages[Component.MAX_INCLUSIVE] == RANGE_MESSAGE
        assert messages[Component.MIN_COUNT] in (
            "Needs to define a detector",
            "The location for the equipment needs to be defined.",
        )
        range_result = next(r for r in report.results if r.component is Component.MAX_INCLUSIVE)
        assert range_result.value == Literal("35", XSD.integer.value)
        assert range_result.focus_node == ZEISS

    def test_repaired_graph_conforms(self, bundled, overrange_graph):
        g = overrange_graph
        g.remove(Triple(ZEISS, MSLE.hasHighTension, Literal("35", XSD.integer.value)))
        g.insert(Triple(ZEISS, MSLE.hasHighTension, Literal("30", XSD.integer.value)))
        g.insert(Triple(ZEISS, MSLE.hasDetector, MSLE.Zeiss_Auriga_60_STEM))
        g.insert(Triple(ZEISS, MSLE.hasLocation, Literal("KIT")))
        report = validate(g, bundled.shapes)
        assert report.conforms
        assert report.results == []

    def test_empty_data_graph_conforms(self, bundled):
        assert validate(Graph(), bundled.shapes).conforms

    def test_empty_shape_list_conforms(self, bundled):
        assert validate(bundled.graph, []).conforms

    def test_conforms_iff_no_results(self, bundled, overrange_graph):
        for graph in (bundled.graph, overrange_graph, Graph()):
            report = validate(graph, bundled.shapes)
            assert report.conforms == (len(report.results) == 0)

    def test_removing_type_removes_focus(self, bundled, overrange_graph):
        overrange_graph.remove(Triple(ZEISS, RDF.type, MSLE.Dual_Beam))
        report = validate(overrange_graph, bundled.shapes)
        assert report.conforms
        assert all(r.focus_node != ZEISS for r in report.results)

    def test_datatype_component(self):
        shapes = shapes_from(
            "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
            " sh:property [ sh:path MSLE:p ; sh:datatype xsd:integer ] ."
        )
        good, bad = Graph(), Graph()
        for g, literal in ((good, Literal("35", XSD.integer.value)), (bad, Literal("35"))):
            g.insert(Triple(MSLE.x, RDF.type, MSLE.C))
            g.insert(Triple(MSLE.x, MSLE.p, literal))
        assert validate(good, shapes).conforms
        report = validate(bad, shapes)
        assert [r.component for r in report.results] == [Component.DATATYPE]

    def test_range_and_datatype_enforced_independently(self, bundled):
        # integer 0 violates the 0.1 lower bound but satisfies the
        # datatype shape; decimal 0.5 is in range but fails the datatype
        g = Graph()
        g.insert(Triple(MSLE.x, RDF.type, MSLE.Dual_Beam))
        g.insert(Triple(MSLE.x, MSLE.hasDetector, MSLE.STEM_Detector))
        g.insert(Triple(MSLE.x, MSLE.hasLocation, Literal("KIT")))
        g.insert(Triple(MSLE.x, MSLE.hasHighTension, Literal("0", XSD.integer.value)))
        report = validate(g, bundled.shapes)
        assert [r.component for r in report.results] == [Component.MIN_INCLUSIVE]

        g.remove(Triple(MSLE.x, MSLE.hasHighTension, Literal("0", XSD.integer.value)))
        g.insert(Triple(MSLE.x, MSLE.hasHighTension, Literal("0.5", XSD.decimal.value)))
        report = validate(g, bundled.shapes)
        assert [r.component for r in report.results] == [Component.DATATYPE]

    def test_cross_type_numeric_comparison(self):
        shapes = shapes_from(
            "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
            " sh:property [ sh:path MSLE:p ; sh:minInclusive 0.1 ; sh:maxInclusive 30 ] ."
        )
        cases = [
            (Literal("0.1", XSD.decimal.value), True),
            (Literal("30", XSD.integer.value), True),
            (Literal("2.9e1", XSD.double.value), True),
            (Literal("30.01", XSD.decimal.value), False),
            (Literal("0", XSD.integer.value), False),
        ]
        for literal, ok in cases:
            g = Graph()
            g.insert(Triple(MSLE.x, RDF.type, MSLE.C))
            g.insert(Triple(MSLE.x, MSLE.p, literal))
            assert validate(g, shapes).conforms == ok, literal

    def test_non_numeric_value_violates_range_component(self):
        shapes = shapes_from(
            "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
            " sh:property [ sh:path MSLE:p ; sh:maxInclusive 30 ] ."
        )
        for value in (Literal("high"), MSLE.NotALiteral):
            g = Graph()
            g.insert(Triple(MSLE.x, RDF.type, MSLE.C))
            g.insert(Triple(MSLE.x, MSLE.p, value))
            report = validate(g, shapes)
            assert [r.component for r in report.results] == [Component.MAX_INCLUSIVE]

    def test_max_count(self):
        shapes = shapes_from(
            "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
            " sh:property [ sh:path MSLE:p ; sh:maxCount 1 ] ."
        )
        g = Graph()
        g.insert(Triple(MSLE.x, RDF.type, MSLE.C))
        g.insert(Triple(MSLE.x, MSLE.p, Literal("a")))
        g.insert(Triple(MSLE.x, MSLE.p, Literal("b")))
        report = validate(g, shapes)
        assert [r.component for r in report.results] == [Component.MAX_COUNT]

    def test_default_message_names_component(self):
        shapes = shapes_from(
            "MSLE:S a sh:NodeShape ; sh:targetClass MSLE:C ;"
            " sh:property [ sh:path MSLE:p ; sh:minCount 1 ] ."
        )
        g = Graph()
        g.insert(Triple(MSLE.x, RDF.type, MSLE.C))
        report = validate(g, shapes)
        assert "MinCount" in report.results[0].message

    def test_inference_flag_extends_targets(self, bundled):
        g = Graph()
        g.insert(Triple(MSLE.SubDual, RDFS.subClassOf, MSLE.Dual_Beam))
        g.insert(Triple(MSLE.x, RDF.type, MSLE.SubDual))
        assert validate(g, bundled.shapes).conforms  # no asserted Dual_Beam type
        report = validate(g, bundled.shapes, infer=True)
        assert not report.conforms

    def test_report_json_shape(self, bundled, overrange_graph):
        payload = validate(overrange_graph, bundled.shapes).to_dict()
        assert set(payload) == {"conforms", "results"}
        assert payload["conforms"] is False
        for result in payload["results"]:
            assert set(result) == {"focusNode", "path", "value", "component", "message"}

