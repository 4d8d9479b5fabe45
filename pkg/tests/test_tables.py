"""Reference-table reproduction with pass/fail cells."""

import pytest

from shuttervlc.tables import (TABLE_NAMES, TableCell, format_table,
                               reproduce_table)


@pytest.mark.parametrize("name", TABLE_NAMES)
def test_all_reference_tables_pass(name):
    cells = reproduce_table(name)
    assert cells
    for cell in cells:
        assert cell.passed, f"{name}/{cell.name}: {cell.computed}"


def test_unknown_table_rejected():
    with pytest.raises(ValueError):
        reproduce_table("NOPE")


def test_cell_tolerance_logic():
    assert TableCell("x", 1.001, 1.0, 0.01).passed
    assert not TableCell("x", 1.1, 1.0, 0.01).passed
    d = TableCell("x", 1.0, 1.0, 0.0, "cm").to_dict()
    assert d["pass"] and d["unit"] == "cm"


def test_format_table_marks_status():
    text = format_table("GEOMETRY", reproduce_table("GEOMETRY"))
    assert "min_separation_h" in text
    assert "[PASS]" in text and "[FAIL]" not in text
