"""Rendering pipeline: every preset fixture, determinism, and error paths."""

import hashlib
from pathlib import Path

import pytest

from figures.cli import main
from figures.render import (FIGURE_PRESETS, FigureSpec, load_rows, render)

FIXTURES = Path(__file__).parent / "fixtures"

# curves per figure = schemes x parameter-group values
EXPECTED_CURVES = {
    "fig2": 8, "fig3": 8, "fig4": 8, "fig5": 8, "fig6": 8, "fig7": 8,
    "fig8": 6, "fig9": 1, "fig10": 1, "fig11": 6,
    "fig9-td": 1, "fig9-te": 1, "fig9-sr": 1,
    "fig10-td": 1, "fig10-te": 1, "fig10-sr": 1,
}


def spec_for(preset, out_path, **kw):
    group_keys, title = FIGURE_PRESETS[preset]
    base = dict(input_path=str(FIXTURES / f"{preset}.csv"),
                output_path=str(out_path), group_keys=group_keys, title=title)
    base.update(kw)
    return FigureSpec(**base)


@pytest.mark.parametrize("preset", sorted(FIGURE_PRESETS))
def test_every_preset_renders_one_image(preset, tmp_path):
    out = tmp_path / f"{preset}.png"
    result = render(spec_for(preset, out))
    assert out.exists() and out.stat().st_size > 0
    assert len(result.curves) == EXPECTED_CURVES[preset]
    assert result.y_scale == ("log" if result.metric == "sop" else "linear")

    rows = load_rows(str(FIXTURES / f"{preset}.csv"))
    assert len({row["metric"] for row in rows}) == 1
    group_keys = FIGURE_PRESETS[preset][0]
    seen = {tuple(row[k] for k in group_keys) for row in rows}
    assert len(result.curves) == len(seen)


def test_rendering_is_byte_deterministic(tmp_path):
    for preset in ("fig2", "fig5", "fig8"):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render(spec_for(preset, a))
        render(spec_for(preset, b))
        assert a.read_bytes() == b.read_bytes()
        assert len(a.read_bytes()) > 10_000


def test_rendering_leaves_input_untouched(tmp_path):
    src = FIXTURES / "fig5.csv"
    before = hashlib.sha256(src.read_bytes()).hexdigest()
    render(spec_for("fig5", tmp_path / "out.png"))
    assert hashlib.sha256(src.read_bytes()).hexdigest() == before


def test_single_row_csv_renders(tmp_path):
    csv_path = tmp_path / "one.csv"
    header = "scheme,metric,gamma_T_dB,K,Lambda,Phi,R_th,analytic,asymptotic,mc_mean,mc_stderr,n_trials,seed"
    csv_path.write_text(header + "\nSTS,prob_nonzero,20,2,0.9,0.1,0.5,0.25,0.3,,,0,1\n")
    out = tmp_path / "one.png"
    result = render(FigureSpec(input_path=str(csv_path), output_path=str(out)))
    assert out.exists() and result.curves == ("STS",)


def test_blank_cells_parse_as_none(tmp_path):
    csv_path = tmp_path / "blank.csv"
    header = "scheme,metric,gamma_T_dB,K,Lambda,Phi,R_th,analytic,asymptotic,mc_mean,mc_stderr,n_trials,seed"
    csv_path.write_text(header + "\nMIS,sop,10,2,0.8,0.1,0.5,0.4,,,,0,1\n")
    (row,) = load_rows(str(csv_path))
    assert row["asymptotic"] is None and row["mc_mean"] is None
    assert row["analytic"] == 0.4 and row["K"] == 2


def test_missing_column_is_rejected(tmp_path):
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("scheme,metric,gamma_T_dB\nSTS,sop,10\n")
    with pytest.raises(ValueError, match="lacks columns"):
        load_rows(str(csv_path))


def test_unknown_group_key_is_rejected(tmp_path):
    with pytest.raises(ValueError, match="grouping key"):
        render(spec_for("fig2", tmp_path / "x.png", group_keys=("scheme", "nope")))


def test_empty_metric_selection_is_rejected(tmp_path):
    with pytest.raises(ValueError, match="no rows with metric"):
        render(spec_for("fig2", tmp_path / "x.png", metric="sop"))


def test_multi_metric_file_needs_filter(tmp_path):
    fig2 = (FIXTURES / "fig2.csv").read_text().splitlines()
    fig5 = (FIXTURES / "fig5.csv").read_text().splitlines()
    mixed = tmp_path / "mixed.csv"
    mixed.write_text("\n".join(fig2 + fig5[1:]) + "\n")
    with pytest.raises(ValueError, match="pick one"):
        render(FigureSpec(input_path=str(mixed), output_path=str(tmp_path / "x.png")))
    result = render(FigureSpec(input_path=str(mixed), metric="sop",
                               output_path=str(tmp_path / "x.png"),
                               group_keys=("scheme", "Lambda")))
    assert result.metric == "sop" and len(result.curves) == 8


def test_figure_spec_needs_group_keys():
    with pytest.raises(ValueError, match="group_keys"):
        FigureSpec(input_path="a.csv", output_path="b.png", group_keys=())


def test_cli_renders_preset(tmp_path, capsys):
    out = tmp_path / "fig7.png"
    code = main(["--input", str(FIXTURES / "fig7.csv"),
                 "--preset", "fig7", "--out", str(out)])
    assert code == 0 and out.exists()
    assert "8 curves" in capsys.readouterr().out


def test_cli_unknown_preset_exits_with_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["--input", str(FIXTURES / "fig2.csv"), "--preset", "nope",
              "--out", str(tmp_path / "x.png")])
    assert err.value.code == 2


def test_cli_reports_missing_input(tmp_path, capsys):
    code = main(["--input", str(tmp_path / "absent.csv"),
                 "--out", str(tmp_path / "x.png")])
    assert code == 1
    assert "secrecyfig" in capsys.readouterr().err


def test_cli_group_by_override(tmp_path, capsys):
    out = tmp_path / "flat.png"
    code = main(["--input", str(FIXTURES / "fig3.csv"), "--out", str(out),
                 "--group-by", "scheme"])
    assert code == 0
    assert "4 curves" in capsys.readouterr().out
