import pytest

from metallifts.scenario import Scenario, ScenarioError, parse_scenario

GOOD = """\
# a minimal scenario
scenario demo
chart x y
params alpha=1 beta=1

structure P kind=product
  row 0 , 1
  row 1 , 0

field X
  row x*y , y^2

connection Zero
  block
    row 0 , 0
    row 0 , 0
  block
    row 0 , 0
    row 0 , 0

distribution R
  generator 1 , -(x + y)

check metallic_from_product P
check nijenhuis_zero P
"""


def test_parse_good_scenario():
    sc = parse_scenario(GOOD, "demo.scn")
    assert sc.name == "demo"
    assert sc.chart.variables == ("x", "y")
    assert sc.params.alpha == 1 and sc.params.beta == 1
    assert set(sc.structures) == {"P"}
    assert sc.structures["P"][0] == "product"
    assert set(sc.fields) == {"X"}
    assert set(sc.connections) == {"Zero"}
    assert set(sc.distributions) == {"R"}
    assert [c.kind for c in sc.checks] == ["metallic_from_product",
                                           "nijenhuis_zero"]
    assert sc.checks[0].args == ("P",)


def scenario_error(text):
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text, "bad.scn")
    return str(err.value)


def test_missing_name():
    msg = scenario_error("chart x y\nparams alpha=1 beta=1\ncheck metallic P\n")
    assert "scenario NAME" in msg


def test_missing_checks():
    msg = scenario_error("scenario s\nchart x y\nparams alpha=1 beta=1\n")
    assert "no checks" in msg


def test_unknown_directive_reports_line():
    msg = scenario_error("scenario s\nchart x y\nparams alpha=1 beta=1\n"
                         "frobnicate\ncheck metallic P\n")
    assert "bad.scn:4" in msg and "frobnicate" in msg


def test_declarations_need_header_first():
    msg = scenario_error("scenario s\nstructure P kind=product\n")
    assert "chart and params" in msg


def test_bad_params():
    msg = scenario_error("scenario s\nchart x y\nparams alpha=0 beta=1\n")
    assert "invalid params" in msg
    msg = scenario_error("scenario s\nchart x y\nparams gamma=1 beta=1\n")
    assert "alpha=" in msg


def test_wrong_matrix_shape():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\n"
        "structure P kind=product\n  row 0 , 1\ncheck metallic P\n")
    assert "2x2" in msg


def test_unknown_structure_kind():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\n"
        "structure P kind=weird\n")
    assert "kind" in msg


def test_bad_expression_reports_line_and_position():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\n"
        "field X\n  row x + , y\ncheck metallic P\n")
    assert "bad.scn:5" in msg


def test_row_outside_declaration():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\nrow 1 , 0\n")
    assert "outside" in msg


def test_generator_line_only_in_distributions():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\n"
        "structure P kind=product\n  generator 1 , 0\n")
    assert "row" in msg


def test_block_only_in_connections():
    msg = scenario_error(
        "scenario s\nchart x y\nparams alpha=1 beta=1\n"
        "field X\n  block\n")
    assert "connection" in msg


def test_comments_and_blank_lines_ignored():
    text = GOOD.replace("check nijenhuis_zero P",
                        "  # trailing note\n\ncheck nijenhuis_zero P  # ok")
    sc = parse_scenario(text)
    assert len(sc.checks) == 2
