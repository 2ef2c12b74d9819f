import subprocess
import sys

import pytest

from sweep_plots.plot import PlotJob, SweepCsvError, main, read_sweep_csv, render


def make_csv(path, labels, points_per_curve=4):
    lines = ["x,value_ebits,curve_label"]
    for label in labels:
        for i in range(points_per_curve):
            x = -0.5 + 0.1 * i
            lines.append(f"{x},{1.0 + 0.01 * i},{label}")
    path.write_text("\n".join(lines) + "\n")


def sweep_csv_from_primary(tmp_path, figure):
    """Generate a real CSV through the primary CLI (the shared contract)."""
    out = tmp_path / f"fig{figure}.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "chm_mub.cli", "ep-sweep", "--figure", str(figure),
         "--grid-points", "13", "--output", str(out)],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        pytest.skip(f"primary CLI unavailable: {proc.stderr}")
    return out


@pytest.mark.parametrize("figure,expected", [(3, 7), (4, 4), (5, 7)])
def test_render_figure_csvs(tmp_path, figure, expected):
    csv_path = sweep_csv_from_primary(tmp_path, figure)
    out = tmp_path / f"fig{figure}.png"
    labels = render(PlotJob(str(csv_path), str(out), title=f"figure {figure}", y_max_line=1.585))
    assert len(labels) == expected
    assert out.stat().st_size > 0
    # the script entry point also succeeds on the same file
    out2 = tmp_path / f"fig{figure}_cli.png"
    assert main([str(csv_path), str(out2), "--refline"]) == 0
    assert out2.exists()


def test_cli_exit_codes(tmp_path):
    csv_path = tmp_path / "curves.csv"
    make_csv(csv_path, ["a", "b"])
    out = tmp_path / "curves.png"
    assert main([str(csv_path), str(out), "--title", "t", "--refline"]) == 0
    assert out.exists()
    assert main([str(tmp_path / "missing.csv"), str(out)]) == 1


def test_empty_curve_set_errors(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("x,value_ebits,curve_label\n")
    with pytest.raises(SweepCsvError):
        read_sweep_csv(str(path))
    assert main([str(path), str(tmp_path / "o.png")]) == 1


def test_bad_header_errors(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,z\n")
    with pytest.raises(SweepCsvError):
        read_sweep_csv(str(path))


def test_single_point_curve_renders(tmp_path):
    path = tmp_path / "one.csv"
    make_csv(path, ["solo"], points_per_curve=1)
    out = tmp_path / "one.png"
    labels = render(PlotJob(str(path), str(out)))
    assert labels == ["solo"]
    assert out.exists()


def test_render_does_not_modify_csv_and_is_deterministic(tmp_path):
    path = tmp_path / "curves.csv"
    make_csv(path, ["a", "b", "c"])
    before = path.read_bytes()
    out1 = tmp_path / "r1.png"
    out2 = tmp_path / "r2.png"
    render(PlotJob(str(path), str(out1)))
    render(PlotJob(str(path), str(out2)))
    assert path.read_bytes() == before
    assert out1.read_bytes() == out2.read_bytes()
