from fractions import Fraction as F

from cakecut.cli import main
from cakecut.families import egalitarian_tight, intro_two_player
from cakecut.render import render_to_file


def test_render_bytes_deterministic(tmp_path):
    bundle = egalitarian_tight(4, F(1, 100))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_to_file(bundle.instance, bundle.canonical_partial, str(a))
    render_to_file(bundle.instance, bundle.canonical_partial, str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.stat().st_size > 1000


def test_render_instance_only(tmp_path):
    bundle = intro_two_player()
    out = tmp_path / "plain.svg"
    render_to_file(bundle.instance, None, str(out))
    text = out.read_text()
    assert text.lstrip().startswith("<?xml")
    assert "player 2" in text or "player" in text


def test_render_cli_round(tmp_path):
    out = tmp_path / "gen"
    assert main(["generate", "egalitarian-tight", "--n", "4", "--out", str(out)]) == 0
    fig = tmp_path / "fig.svg"
    code = main([
        "render", str(out / "instance.json"), str(fig),
        "--division", str(out / "canonical_partial.json"),
    ])
    assert code == 0 and fig.exists()
    again = tmp_path / "fig2.svg"
    main([
        "render", str(out / "instance.json"), str(again),
        "--division", str(out / "canonical_partial.json"),
    ])
    assert fig.read_bytes() == again.read_bytes()
