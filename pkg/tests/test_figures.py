import csv
import xml.etree.ElementTree as ET

import pytest

from polyred import analytic, figures
from polyred.figures import FigureId


@pytest.mark.parametrize("fid", list(FigureId))
def test_jobs_are_well_formed(fid):
    for full in (False, True):
        job = figures.build_job(fid, paper_scale=full)
        assert job.series
        for s in job.series:
            assert s.degrees and (s.exact or s.trials >= 1)


def test_paper_scale_counts():
    assert figures.build_job("fig2-z1-low", paper_scale=True).series[1].trials == 1_000_000
    assert figures.build_job("fig3-pm1", paper_scale=True).series[0].trials == 150_000_000
    fig4 = figures.build_job("fig4-z1-high", paper_scale=True).series[0]
    assert fig4.trials == 10_000 and fig4.sigma == 2.0
    assert figures.build_job("fig9-matrix", paper_scale=True).series[1].degrees[-1] == 40


def test_trials_from_halfwidth():
    # a ratio halfwidth hw at 5 sigma means T = (5 / (2 hw baseline))^2
    T = figures._trials_for_halfwidth(0.251, 100)
    assert abs(5 / (2 * T**0.5) * 201 - 0.251) < 1e-4


def test_trials_override():
    job = figures.build_job("fig1-chela-lowK", trials=123)
    assert {s.trials for s in job.series} == {123}


def _read(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def _check_svg(path):
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    text = path.read_text()
    assert "<image" not in text and "href=\"http" not in text


def test_pm1_figure(tmp_path):
    csv_path, svg_path = figures.figure("fig3-pm1", tmp_path, trials=1000)
    rows = _read(csv_path)
    assert list(rows[0]) == figures.COLUMNS
    assert [int(r["degree"]) for r in rows] == list(range(2, 33))
    p = {int(r["degree"]): float(r["p_hat"]) for r in rows}
    for d in range(3, 32, 2):
        assert p[d + 1] < p[d]
        assert float(next(r for r in rows if int(r["degree"]) == d)["analytic_overlay"]) == pytest.approx(
            analytic.pm1_main_term(d))
    assert all(r["analytic_overlay"] == "" for r in rows if int(r["degree"]) % 2 == 0)
    _check_svg(svg_path)


def test_z1_exact_points(tmp_path, monkeypatch):
    real = figures.build_job

    def small(fid, paper_scale=False, trials=None):
        job = real(fid, paper_scale, trials)
        series = tuple(type(s)(s.name, s.family, s.degrees[:8], s.trials, s.sigma, s.support, s.exact)
                       for s in job.series)
        return type(job)(job.figure_id, job.title, series, job.ratio, job.overlay, job.log_y, job.ylabel)

    monkeypatch.setattr(figures, "build_job", small)
    csv_path, svg_path = figures.figure("fig2-z1-low", tmp_path, trials=500)
    rows = _read(csv_path)
    exact = {int(r["degree"]): r for r in rows if r["series"] == "exact"}
    assert float(exact[3]["p_hat"]) == 0.5 and float(exact[3]["ci_halfwidth"]) == 0.0
    assert int(exact[5]["trials"]) == 16
    assert float(exact[7]["analytic_overlay"]) == pytest.approx(analytic.z1_main_term(7))
    _check_svg(svg_path)


def test_matrix_figure_above_bound(tmp_path, monkeypatch):
    real = figures.build_job

    def small(fid, paper_scale=False, trials=None):
        job = real(fid, paper_scale, trials)
        s = job.series[0]
        s = type(s)(s.name, s.family, tuple(range(2, 13)), 4000, s.sigma)
        return type(job)(job.figure_id, job.title, (s,), job.ratio, job.overlay, True, job.ylabel)

    monkeypatch.setattr(figures, "build_job", small)
    csv_path, svg_path = figures.figure("fig9-matrix", tmp_path)
    for r in _read(csv_path):
        assert float(r["p_hat"]) >= float(r["analytic_overlay"]) - float(r["ci_halfwidth"])
    _check_svg(svg_path)


def test_csv_is_deterministic(tmp_path):
    a = figures.figure("fig8-binomial", tmp_path / "a", trials=300, seed=4)[0].read_text()
    b = figures.figure("fig8-binomial", tmp_path / "b", trials=300, seed=4)[0].read_text()
    assert a == b


def test_svg_is_deterministic(tmp_path):
    a = figures.figure("fig6-zeroK", tmp_path / "a", trials=200)[1].read_bytes()
    b = figures.figure("fig6-zeroK", tmp_path / "b", trials=200)[1].read_bytes()
    assert a == b


def test_ratio_figure_rows(tmp_path):
    rows = _read(figures.figure("fig7-kuba", tmp_path, trials=400)[0])
    assert {r["K"] for r in rows} == {"10", "50", "100", "500"}
    assert all(r["ratio"] != "" and r["analytic_overlay"] == "1.0" for r in rows)


def test_errors(tmp_path):
    with pytest.raises(ValueError):
        figures.build_job("fig10")
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError):
        figures.figure("fig3-pm1", blocker, trials=10)
