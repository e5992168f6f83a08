import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(path, capsys):
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out.strip()


def test_two_chart_surface_keeps_nine_fields():
    ns = runpy.run_path(str(Path(__file__).parent.parent / "demos" / "two_chart_surface.py"))
    assert len(ns["fields"]) == 10 and len(ns["kept"]) == 9
    assert ns["fp"].derived == (9, 6, 3, 0)
