import json

import pytest

from ftspanner.cli import main, run_build, run_verify
from ftspanner.formats import FormatError, parse_instance, parse_spanner
from ftspanner.generate import generate, shape
from ftspanner.geodesic import SimplePolygon, engine_for
from ftspanner.svg import render_svg


def test_generate_is_deterministic():
    assert generate("domain", 15, "two-holes", 3).to_text() == generate("domain", 15, "two-holes", 3).to_text()


def test_convex_points_strictly_inside():
    inst = generate("polygon", 10, "convex-8", 1)
    eng = engine_for(inst.domain())
    for p in inst.points:
        assert eng.contains(p.coords) and eng.edges.boundary_distance(p.coords) > 0


def test_zero_weight_range():
    assert all(p.weight == 0 for p in generate("rd", 10, seed=2, weight_range=(0, 0)).points)


@pytest.mark.parametrize("name", ["convex-5", "star-12", "comb-3", "L", "U", "square-hole", "two-holes"])
def test_shapes_are_valid(name):
    outer, holes = shape(name)
    SimplePolygon(outer)
    for h in holes:
        SimplePolygon(h)


def test_unknown_shape():
    with pytest.raises(ValueError):
        shape("blob")


@pytest.mark.parametrize("mode,name", [("rd", None), ("polygon", "U"), ("domain", "two-holes")])
def test_instance_round_trip(mode, name):
    text = generate(mode, 12, name, 5).to_text()
    inst = parse_instance(text)
    assert inst.to_text() == text
    assert parse_instance(inst.to_text()).points == inst.points


def test_spanner_round_trip_and_order():
    inst = generate("domain", 20, "square-hole", 1)
    sf = run_build(inst, 1, 0.5, True)
    text = sf.to_text()
    back = parse_spanner(text)
    assert back.to_text() == text
    keys = [(u, v) for u, v, _ in back.edges]
    assert all(u < v for u, v in keys) and keys == sorted(keys)
    rep = run_verify(inst, back)
    assert rep.passed and rep.t_bound == 11.0


def test_rd_two_points():
    inst = generate("rd", 2, seed=0)
    sf = run_build(inst, 1, 0.5)
    assert [e[:2] for e in sf.edges] == [[0, 1]]


def test_rebuild_identical(tmp_path):
    inst = generate("polygon", 12, "comb-3", 0)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_build(inst, 1, 0.5, False, str(a))
    run_build(inst, 1, 0.5, False, str(b))
    assert a.read_bytes() == b.read_bytes()


def test_diagnostics_name_invariant_and_offset():
    text = generate("rd", 3, seed=0).to_text()
    doc = json.loads(text)
    doc["points"][1][-1] = -1.0
    bad = text.replace(json.dumps(json.loads(text)["points"][1]), json.dumps(doc["points"][1]))
    with pytest.raises(FormatError) as e:
        parse_instance(bad)
    assert "negative" in e.value.invariant
    assert bad.encode()[e.value.offset:].startswith(b"[")
    assert e.value.offset == bad.encode().index(json.dumps(doc["points"][1]).encode())
    with pytest.raises(FormatError) as e:
        parse_instance(text[:40])
    assert e.value.offset is not None


def test_spanner_rejects_unsorted_edges():
    inst = generate("rd", 5, seed=0)
    sf = run_build(inst, 1, 0.5)
    sf.edges = list(reversed(sf.edges))
    with pytest.raises(FormatError, match="order"):
        parse_spanner(sf.to_text())


def test_point_outside_domain_rejected():
    text = generate("domain", 4, "square-hole", 0).to_text()
    doc = json.loads(text)
    row = json.dumps(doc["points"][2])
    bad = text.replace(row, json.dumps([0.5, 0.5, 0.1]))
    with pytest.raises(FormatError, match="free space"):
        parse_instance(bad)


def test_svg():
    inst = generate("domain", 6, "square-hole", 0)
    plain = render_svg(inst)
    assert "<line" not in plain.split('class="edges"')[1].split("</g>")[0]
    assert plain.count("<circle") == 6
    assert 'class="hole"' in plain
    sf = run_build(inst, 1, 0.5)
    a = render_svg(inst, sf.edges, removed=[2])
    assert a == render_svg(inst, sf.edges, removed=[2])
    assert a.startswith("<?xml") and "</svg>" in a


def test_cli_pipeline(tmp_path, capsys):
    inst, sp, rep, svg = (str(tmp_path / f) for f in ("i.json", "s.json", "r.json", "x.svg"))
    assert main(["gen", "--mode", "polygon", "--shape", "L", "--n", "12", "--seed", "4", "-o", inst]) == 0
    assert main(["build", inst, "--k", "1", "--eps", "0.5", "--refine", "-o", sp]) == 0
    assert main(["verify", inst, sp, "-o", rep]) == 0
    assert json.loads(open(rep).read())["passed"] is True
    assert main(["verify", inst, sp, "--trials", "5", "--seed", "2"]) == 0
    assert main(["verify", inst, sp, "--t-bound", "1.0001"]) == 1
    assert main(["stats", inst, sp]) == 0
    assert main(["render", inst, sp, "--remove", "0,3", "-o", svg]) == 0
    assert open(svg).read().count("<circle") == 12
    capsys.readouterr()


def test_cli_input_errors(tmp_path, capsys):
    broken = tmp_path / "b.json"
    broken.write_text('{"version": "nope"}')
    assert main(["build", str(broken), "-o", str(tmp_path / "s.json")]) == 2
    assert "version" in capsys.readouterr().err
    a, b = tmp_path / "a.json", tmp_path / "c.json"
    main(["gen", "--n", "5", "--seed", "1", "-o", str(a)])
    main(["gen", "--n", "5", "--seed", "2", "-o", str(b)])
    main(["build", str(a), "-o", str(tmp_path / "sa.json")])
    assert main(["verify", str(b), str(tmp_path / "sa.json")]) == 2
    assert main(["gen", "--n", "80", "-o", str(a)]) == 0
    main(["build", str(a), "--k", "3", "-o", str(tmp_path / "big.json")])
    assert main(["verify", str(a), str(tmp_path / "big.json")]) == 2
    assert "trials" in capsys.readouterr().err
